"""Exact solvers and a polynomial kernel for {claw, diamond}-free edge deletion."""

from .domino import (
    AttachmentMap,
    BagDecomposition,
    ModulatorViolation,
    NotDominoError,
    bag_decomposition,
    compute_attachment,
    validate_decomposition,
)
from .graph import (
    ContractError,
    Graph,
    GraphFormatError,
    delete_edges,
    induced_subgraph,
    is_simplicial,
    parse_graph,
    write_graph,
)
from .kernel import (
    AnnotatedInstance,
    build_u,
    compress,
    kernelize_full,
    mark_and_extract_s,
)
from .obstructions import Modulator, NoInstance, Obstruction, build_modulator, find_obstruction, is_hds
from .reductions import (
    annotated_to_cnf,
    cnf_to_3sat,
    sat3_to_graph,
    verify_clause_gadget,
    verify_variable_gadget,
)
from .sat import CnfFormula, parse_dimacs, write_dimacs
from .solvers import ScaleGuardError, SolveResult, brute_force_min_hds, solve_annotated, solve_branching

__version__ = "0.1.0"

__all__ = [
    "AnnotatedInstance",
    "AttachmentMap",
    "BagDecomposition",
    "CnfFormula",
    "ContractError",
    "Graph",
    "GraphFormatError",
    "Modulator",
    "ModulatorViolation",
    "NoInstance",
    "NotDominoError",
    "Obstruction",
    "ScaleGuardError",
    "SolveResult",
    "annotated_to_cnf",
    "bag_decomposition",
    "brute_force_min_hds",
    "build_modulator",
    "build_u",
    "cnf_to_3sat",
    "compress",
    "compute_attachment",
    "delete_edges",
    "find_obstruction",
    "induced_subgraph",
    "is_hds",
    "is_simplicial",
    "kernelize_full",
    "mark_and_extract_s",
    "parse_dimacs",
    "parse_graph",
    "sat3_to_graph",
    "solve_annotated",
    "solve_branching",
    "validate_decomposition",
    "verify_clause_gadget",
    "verify_variable_gadget",
    "write_dimacs",
    "write_graph",
]
