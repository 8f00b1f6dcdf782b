import subprocess
import sys

import pytest

from clawdiamond import generators
from clawdiamond.cli import check_invariants, main
from clawdiamond.graph import Graph, claw_graph, cycle_graph, line_graph, parse_graph, parse_instance, path_graph, write_graph
from clawdiamond.kernel import parse_annotated
from clawdiamond.sat import parse_dimacs
from clawdiamond.solvers import solve_branching

CLAW = "p edge 4 3\ne 1 2\ne 1 3\ne 1 4\n"


@pytest.fixture
def run(tmp_path, capsys):
    def _run(*argv, files=None):
        for name, text in (files or {}).items():
            (tmp_path / name).write_text(text)
        args = [str(tmp_path / a) if (tmp_path / a).exists() else a for a in argv]
        code = main(args)
        out, err = capsys.readouterr()
        return code, out, err

    return _run


def test_solve_claw(run):
    code, out, _ = run("solve", "claw.graph", "--k", "1", files={"claw.graph": CLAW})
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "SOLUTION yes" and len(lines) == 2 and lines[1].startswith("d 1 ")


def test_solve_no(run):
    code, out, _ = run("solve", "claw.graph", "--k", "0", files={"claw.graph": CLAW})
    assert (code, out) == (0, "SOLUTION no\n")


def test_solve_verify_roundtrip(run, tmp_path):
    g = generators.gen_random(5, 8, 0.5)
    (tmp_path / "g.graph").write_text(write_graph(g))
    code, out, _ = run("solve", "g.graph", "--k", "3")
    (tmp_path / "w.txt").write_text(out)
    if out.startswith("SOLUTION yes"):
        code, verdict, _ = run("verify", "g.graph", "w.txt")
        assert code == 0 and verdict.startswith("HDS yes")


def test_verify_rejects_non_edge(run):
    code, _, err = run("verify", "claw.graph", "d.txt", files={"claw.graph": CLAW, "d.txt": "d 2 3\n"})
    assert code == 1 and err.startswith("error:")


def test_oracle_minimal(run):
    code, out, _ = run("oracle", "claw.graph", "--k", "1", "--all-minimal", files={"claw.graph": CLAW})
    assert code == 0 and out.count("\nm ") == 3


def test_oracle_scale_refusal(run):
    code, _, err = run("oracle", "claw.graph", "--k", "3", "--max-subsets", "2", files={"claw.graph": CLAW})
    assert code == 2 and err.startswith("refused:")


def test_reduce_sat_one_clause(run, tmp_path):
    code, out, _ = run("reduce-sat", "one.cnf", "--layout", str(tmp_path / "lay.txt"), files={"one.cnf": "p cnf 3 1\n1 2 3 0\n"})
    assert code == 0
    g, k = parse_instance(out)
    assert (g.n, k) == (37, 13)
    assert (tmp_path / "lay.txt").read_text().startswith("u 1 1\n")


def test_reduce_sat_normalizes(run):
    code, out, err = run("reduce-sat", "two.cnf", files={"two.cnf": "p cnf 2 1\n1 2 0\n"})
    assert code == 0 and "normalized" in err
    g, k = parse_instance(out)
    assert g.n == 25 * 2 + 4 * 3 and k == 10 * 2 + 3


def test_compress_clean_graph(run):
    clean = write_graph(cycle_graph(6))
    code, out, _ = run("compress", "c.graph", "--k", "3", files={"c.graph": clean})
    assert code == 0 and "c status yes" in out
    a = parse_annotated(out)
    assert a.graph.n == 0 and a.k == 0


def test_compress_encode_pipeline(run, tmp_path):
    g = generators.gen_near_domino(4, 6, 0.6, 2)
    (tmp_path / "g.graph").write_text(write_graph(g))
    code, out, _ = run("compress", "g.graph", "--k", "2")
    assert code == 0
    (tmp_path / "a.txt").write_text(out)
    code, cnf, _ = run("encode-annotated", "a.txt")
    assert code == 0
    phi = parse_dimacs(cnf)
    assert phi.num_vars >= 0 and cnf.count("c d ") == len(parse_annotated(out).deletable())


def test_kernelize_closure(run, tmp_path):
    for seed in range(6):
        g = generators.gen_near_domino(seed, 5, 0.6, 1)
        (tmp_path / "g.graph").write_text(write_graph(g))
        code, out, _ = run("kernelize", "g.graph", "--k", "1")
        assert code == 0
        h, k = parse_instance(out)
        if h.n <= 12:
            assert solve_branching(h, k).answer == solve_branching(g, 1).answer


def test_decompose(run):
    code, out, _ = run("decompose", "p.graph", files={"p.graph": write_graph(path_graph(3))})
    assert code == 0
    assert sorted(out.splitlines()) == ["b 1: 1", "b 2: 3", "b 3: 1 2", "b 4: 2 3"]


def test_decompose_rejects_claw(run):
    code, _, err = run("decompose", "claw.graph", files={"claw.graph": CLAW})
    assert code == 1 and "claw" in err


def test_parse_error_exit(run):
    code, _, err = run("solve", "bad.graph", "--k", "1", files={"bad.graph": "p edge 2 1\ne 1 5\n"})
    assert code == 1 and "line 2" in err


def test_missing_file(run):
    code, _, err = run("solve", "/nonexistent/x.graph", "--k", "1")
    assert code == 1


def test_generators_deterministic(run):
    a = run("gen-random", "--n", "9", "--p", "0.4", "--seed", "7")[1]
    b = run("gen-random", "--n", "9", "--p", "0.4", "--seed", "7")[1]
    assert a == b and parse_graph(a).n == 9
    a = run("gen-domino", "--n", "7", "--p", "0.5", "--seed", "2")[1]
    assert a == run("gen-domino", "--n", "7", "--p", "0.5", "--seed", "2")[1]
    a = run("gen-3sat", "--n", "5", "--m", "4", "--seed", "1")[1]
    assert a == run("gen-3sat", "--n", "5", "--m", "4", "--seed", "1")[1]
    assert parse_dimacs(a).num_clauses == 4


def test_gen_3sat_too_few_vars(run):
    code, _, err = run("gen-3sat", "--n", "2", "--m", "1")
    assert code == 1


def test_output_flag(run, tmp_path):
    target = tmp_path / "out.graph"
    assert run("gen-random", "--n", "4", "--p", "1", "-o", str(target))[0] == 0
    assert parse_graph(target.read_text()).m == 6


def test_check_invariants(run):
    code, out, _ = run("check-invariants", "g.graph", "--k", "2", files={"g.graph": write_graph(generators.gen_near_domino(1, 6, 0.6, 2))})
    assert code == 0 and all(line.startswith("ok ") for line in out.splitlines())


def test_check_invariants_function():
    report = check_invariants(claw_graph(), 0)
    assert report[0][0] == "modulator" and report[0][1]


def test_module_entry_point(tmp_path):
    path = tmp_path / "claw.graph"
    path.write_text(CLAW)
    proc = subprocess.run([sys.executable, "-m", "clawdiamond", "solve", str(path), "--k", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("SOLUTION yes")


class TestGenerators:
    def test_empty(self):
        assert generators.gen_random(1, 0, 0.5) == Graph(0)
        assert generators.gen_3sat(1, 0, 0).clauses == ()

    def test_3sat_single_subset(self):
        phi = generators.gen_3sat(9, 3, 1)
        assert sorted(abs(l) for l in phi.clauses[0]) == [1, 2, 3]

    def test_3sat_error(self):
        with pytest.raises(ValueError):
            generators.gen_3sat(0, 2, 1)

    def test_line_graphs_named(self):
        assert line_graph(path_graph(3))[0] == Graph(2, [(0, 1)])

    @pytest.mark.parametrize("seed", range(20))
    def test_triangle_free(self, seed):
        h = generators.triangle_free(seed, 9, 0.6)
        assert all(not h.adj[u] & h.adj[v] for u, v in h.edges)
