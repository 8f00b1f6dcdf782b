"""CNF formulas, DIMACS I/O and satisfiability checks.

``brute_force_sat`` evaluates every assignment at once, 8 per byte, with numpy.
Formulas too large to enumerate go to CaDiCaL via python-sat.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from pysat.solvers import Solver


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise FormulaError(f"literal {lit} invalid for {self.num_vars} variables")
        if any(not c for c in self.clauses) and self.clauses != ((),):
            raise FormulaError("empty clause outside the canonical FALSE formula")

    @property
    def is_false(self) -> bool:
        return self.clauses == ((),)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def evaluate(self, assignment: dict[int, bool]) -> bool:
        return all(any(assignment.get(abs(l), False) == (l > 0) for l in c) for c in self.clauses)

    def occurring_vars(self) -> list[int]:
        return sorted({abs(l) for c in self.clauses for l in c})


FALSE = CnfFormula(0, ((),))


def parse_dimacs(text: str | bytes) -> CnfFormula:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    num_vars = declared = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts or parts[0] in ("c", "%"):
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf" or num_vars is not None:
                raise FormulaError(f"line {lineno}: bad problem line")
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormulaError(f"line {lineno}: bad problem line") from None
            continue
        if num_vars is None:
            raise FormulaError(f"line {lineno}: clause before problem line")
        try:
            lits = [int(t) for t in parts]
        except ValueError:
            raise FormulaError(f"line {lineno}: non-integer literal") from None
        for lit in lits:
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            elif abs(lit) > num_vars:
                raise FormulaError(f"line {lineno}: literal {lit} exceeds {num_vars} variables")
            else:
                current.append(lit)
    if num_vars is None:
        raise FormulaError("missing 'p cnf' line")
    if current:
        raise FormulaError("last clause is not terminated by 0")
    if len(clauses) != declared:
        raise FormulaError(f"problem line declares {declared} clauses, found {len(clauses)}")
    if any(not c for c in clauses):
        return FALSE
    return CnfFormula(num_vars, tuple(clauses))


def write_dimacs(phi: CnfFormula, comments: list[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {phi.num_vars} {phi.num_clauses}")
    lines.extend(" ".join(map(str, c + (0,))) for c in phi.clauses)
    return "\n".join(lines) + "\n"


# --- exhaustive ---------------------------------------------------------------

@lru_cache(maxsize=4)
def _columns(n: int) -> tuple[np.ndarray, ...]:
    index = np.arange(1 << n, dtype=np.uint32)
    return tuple(np.packbits(((index >> v) & 1).astype(bool)) for v in range(n))


def brute_force_sat(phi: CnfFormula, max_vars: int = 24) -> dict[int, bool] | None:
    """A satisfying assignment found by checking all ``2**num_vars`` assignments, or None.

    The returned assignment is the one with the smallest index (variable 1 is the
    least significant bit).
    """
    n = phi.num_vars
    if n > max_vars:
        raise FormulaError(f"{n} variables exceed the exhaustive limit of {max_vars}")
    if phi.is_false:
        return None
    cols = _columns(n)
    width = len(cols[0]) if n else 1
    alive = np.full(width, 0xFF, dtype=np.uint8)
    for clause in phi.clauses:
        acc = np.zeros(width, dtype=np.uint8)
        for lit in clause:
            col = cols[abs(lit) - 1]
            acc |= col if lit > 0 else ~col
        alive &= acc
    hits = np.flatnonzero(np.unpackbits(alive)[: 1 << n])
    if hits.size == 0:
        return None
    first = int(hits[0])
    return {v: bool(first >> (v - 1) & 1) for v in range(1, n + 1)}


# --- CDCL (python-sat) ----------------------------------------------------------

def solve_cdcl(phi: CnfFormula) -> dict[int, bool] | None:
    """A model found by CaDiCaL through python-sat, or None if unsatisfiable."""
    if phi.is_false:
        return None
    with Solver(name="cadical153", bootstrap_with=[list(c) for c in phi.clauses]) as solver:
        if not solver.solve():
            return None
        model = {abs(l): l > 0 for l in solver.get_model() or ()}
    return {v: model.get(v, False) for v in range(1, phi.num_vars + 1)}


def satisfiable(phi: CnfFormula, exhaustive_limit: int = 20) -> bool:
    """Exhaustive check when small enough, CDCL otherwise."""
    if phi.num_vars <= exhaustive_limit:
        return brute_force_sat(phi, max_vars=exhaustive_limit) is not None
    return solve_cdcl(phi) is not None
