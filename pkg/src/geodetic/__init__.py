"""Minimum geodetic sets in digraphs: exact, ditree and feedback-edge-number solvers."""

from __future__ import annotations

from .decomposition import Decomposition, decompose, extract_candidates
from .digraph import Digraph, classify_vertices, extremal_vertices, strongly_connected_components
from .dispatch import solve_dispatch
from .ditree import contract_ditree, solve_ditree
from .errors import (
    GeodeticError,
    HasTwoCycle,
    InvalidDigraph,
    NotATree,
    ParseError,
    PreconditionViolated,
    StructuralMismatch,
)
from .exact import mandatory_set, solve_exact
from .fen import solve_fen
from .generators import gen_3dm, gen_dag, gen_ditree, gen_oriented_fen, gen_oriented_tree
from .metric import ClosureEngine, closure, interval, is_geodetic
from .reduction import ThreeDMInstance, reduce_3dm, solve_3dm_exact, verify_reduction
from .results import CapExceeded, SolveResult

__version__ = "0.1.0"
