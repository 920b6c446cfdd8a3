"""Error-correcting identifying codes: verification, existence, exact
minimization, a 3SAT reduction and certified graph families."""

from __future__ import annotations

from .codes import CodeKind, VerificationReport, is_errcode, share, sigma, verify_code
from .existence import ExistenceReport, check_existence, check_existence_special, enumerate_admitting_graphs
from .graph import Graph, GraphError, canonical_form, format_graph, parse_graph
from .solver import OptimalCode, max_nondetectors_cubic, min_errcode, min_errcode_oracle

__version__ = "0.1.0"

__all__ = [
    "CodeKind", "VerificationReport", "is_errcode", "share", "sigma", "verify_code",
    "ExistenceReport", "check_existence", "check_existence_special", "enumerate_admitting_graphs",
    "Graph", "GraphError", "canonical_form", "format_graph", "parse_graph",
    "OptimalCode", "max_nondetectors_cubic", "min_errcode", "min_errcode_oracle",
]
