"""3SAT -> ERR-IC reduction: DIMACS parsing, gadget construction, brute-force
satisfiability and the satisfiability round trip.

Vertex layout: variable i (0-based) owns ids 10*i .. 10*i+9, clause j owns
10*N + 8*j .. 10*N + 8*j + 7. Offsets inside the blocks are given by
VAR_LABELS and CLAUSE_LABELS.

The equivalence "minimum ERR:IC has size 9N + 8M iff the formula is
satisfiable" needs every literal to occur in some clause: a literal with no
clause edge is pinned into every code by the distinguishing requirements
(see ``covers_all_literals``).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

from .codes import is_errcode
from .graph import Graph
from .solver import forced_detectors, min_errcode

VAR_LABELS = ("x", "xbar", "y", "z", "p", "a", "b", "s1", "s2", "s3")
CLAUSE_LABELS = ("c", "d", "u", "v", "w1", "w2", "w3", "w4")

# 15 internal edges; s1, s2, s3 and z have degree 2 and pin the 8 non-literal
# vertices; y and z differ only by the two literals plus {a, s3}.
_V = {name: i for i, name in enumerate(VAR_LABELS)}
VAR_EDGES = tuple((_V[a], _V[b]) for a, b in [
    ("x", "y"), ("x", "p"), ("x", "a"),
    ("xbar", "y"), ("xbar", "p"), ("xbar", "b"),
    ("a", "b"), ("z", "y"), ("z", "a"),
    ("s1", "p"), ("s1", "b"), ("s2", "p"), ("s2", "a"), ("s3", "b"), ("s3", "y"),
])

# 10 internal edges; d, w2 and w4 have degree 2; c and d differ only by
# {u, v} plus c's three literal neighbors.
_C = {name: i for i, name in enumerate(CLAUSE_LABELS)}
CLAUSE_EDGES = tuple((_C[a], _C[b]) for a, b in [
    ("c", "d"), ("c", "v"), ("d", "u"),
    ("u", "w1"), ("w1", "w2"), ("w2", "v"),
    ("v", "w3"), ("w3", "w4"), ("w4", "u"), ("w1", "w3"),
])

VAR_BLOCK = len(VAR_LABELS)
CLAUSE_BLOCK = len(CLAUSE_LABELS)
SAT_CAP = 24


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class Formula:
    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ReductionError("formula needs at least one variable")
        for k, cl in enumerate(self.clauses):
            if len(cl) != 3:
                raise ReductionError(f"clause {k + 1} has {len(cl)} literals, expected 3")
            vs = [abs(l) for l in cl]
            if any(l == 0 or abs(l) > self.num_vars for l in cl):
                raise ReductionError(f"clause {k + 1} has a literal outside 1..{self.num_vars}")
            if len(set(vs)) != 3:
                raise ReductionError(f"clause {k + 1} repeats a variable")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in cl) for cl in self.clauses)

    def covers_all_literals(self) -> bool:
        seen = {l for cl in self.clauses for l in cl}
        return all(v in seen and -v in seen for v in range(1, self.num_vars + 1))


def parse_dimacs(text: str) -> Formula:
    header = None
    lits: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ReductionError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ReductionError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if header is None:
            raise ReductionError(f"line {lineno}: clause before 'p cnf' header")
        try:
            lits.extend(int(t) for t in line.split())
        except ValueError:
            raise ReductionError(f"line {lineno}: non-integer literal in {line!r}") from None
    if header is None:
        raise ReductionError("missing 'p cnf N M' header")
    n, m = header
    clauses = []
    cur: list[int] = []
    for l in lits:
        if l == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(l)
    if cur:
        raise ReductionError("last clause is not terminated by 0")
    if len(clauses) != m:
        raise ReductionError(f"header declares {m} clauses, found {len(clauses)}")
    return Formula(n, tuple(clauses))


def format_dimacs(f: Formula) -> str:
    lines = [f"p cnf {f.num_vars} {f.num_clauses}"]
    lines += [" ".join(map(str, cl)) + " 0" for cl in f.clauses]
    return "\n".join(lines) + "\n"


@dataclass
class ReductionInstance:
    formula: Formula
    graph: Graph
    K: int
    literal_map: dict[int, tuple[int, int]]
    gadget_map: dict[str, list[int]]
    forced_detectors: tuple[int, ...]
    labels: dict[str, int] = field(default_factory=dict)

    def literal_vertex(self, lit: int) -> int:
        pos, neg = self.literal_map[abs(lit)]
        return pos if lit > 0 else neg

    def to_json(self) -> str:
        return json.dumps({
            "K": self.K,
            "num_vars": self.formula.num_vars,
            "num_clauses": self.formula.num_clauses,
            "literal_map": {str(k): list(v) for k, v in self.literal_map.items()},
            "gadget_map": self.gadget_map,
            "forced_detectors": list(self.forced_detectors),
            "labels": self.labels,
        }, indent=2)


def build_reduction(f: Formula) -> ReductionInstance:
    N, M = f.num_vars, f.num_clauses
    edges: list[tuple[int, int]] = []
    literal_map = {}
    gadget_map = {}
    labels = {}
    forced = []
    for i in range(N):
        base = VAR_BLOCK * i
        edges.extend((base + a, base + b) for a, b in VAR_EDGES)
        literal_map[i + 1] = (base + _V["x"], base + _V["xbar"])
        gadget_map[f"F{i + 1}"] = list(range(base, base + VAR_BLOCK))
        for name, off in _V.items():
            labels[f"{name}{i + 1}"] = base + off
        forced.extend(base + off for name, off in _V.items() if name not in ("x", "xbar"))
    start = VAR_BLOCK * N
    for j, cl in enumerate(f.clauses):
        base = start + CLAUSE_BLOCK * j
        edges.extend((base + a, base + b) for a, b in CLAUSE_EDGES)
        c = base + _C["c"]
        for lit in cl:
            pos, neg = literal_map[abs(lit)]
            edges.append((c, pos if lit > 0 else neg))
        gadget_map[f"H{j + 1}"] = list(range(base, base + CLAUSE_BLOCK))
        for name, off in _C.items():
            labels[f"{name}{j + 1}"] = base + off
        forced.extend(range(base, base + CLAUSE_BLOCK))
    g = Graph(start + CLAUSE_BLOCK * M, edges)
    return ReductionInstance(f, g, 9 * N + 8 * M, literal_map, gadget_map, tuple(sorted(forced)), labels)


def encode_assignment(inst: ReductionInstance, assignment) -> list[int]:
    """Forced detectors plus the literal vertex made true for each variable."""
    code = set(inst.forced_detectors)
    for v, val in enumerate(assignment, 1):
        pos, neg = inst.literal_map[v]
        code.add(pos if val else neg)
    return sorted(code)


def decode_assignment(inst: ReductionInstance, code) -> tuple[bool, ...]:
    code = set(code)
    if len(code) != inst.K:
        raise ReductionError(f"code has size {len(code)}, expected K={inst.K}")
    if not is_errcode(inst.graph, code):
        raise ReductionError("code is not a valid ERR:IC of the reduction graph")
    out = []
    for v in range(1, inst.formula.num_vars + 1):
        pos, neg = inst.literal_map[v]
        hits = (pos in code) + (neg in code)
        if hits != 1:
            raise ReductionError(f"variable {v} has {hits} literal detectors, expected 1")
        out.append(pos in code)
    assignment = tuple(out)
    if not inst.formula.satisfied_by(assignment):
        raise ReductionError("decoded assignment does not satisfy the formula")
    return assignment


def sat_bruteforce(f: Formula) -> tuple[bool, ...] | None:
    """First satisfying assignment (False < True, variable 1 most significant)."""
    if f.num_vars > SAT_CAP:
        raise ReductionError(f"brute force supports N <= {SAT_CAP}, got {f.num_vars}")
    for assignment in itertools.product((False, True), repeat=f.num_vars):
        if f.satisfied_by(assignment):
            return assignment
    return None


def roundtrip_check(f: Formula, budget: int | None = None) -> dict:
    """Compare brute-force satisfiability against the exact minimum ERR:IC of
    the reduction graph."""
    inst = build_reduction(f)
    sat = sat_bruteforce(f)
    kw = {} if budget is None else {"budget": budget}
    opt = min_errcode(inst.graph, **kw)
    min_size = opt.size if opt is not None else None
    report = {
        "sat": sat is not None,
        "K": inst.K,
        "min_size": min_size,
        "agrees": (sat is not None) == (min_size == inst.K),
        "detectors": list(opt.detectors) if opt is not None else None,
    }
    if min_size == inst.K:
        report["decoded"] = [int(b) for b in decode_assignment(inst, opt.detectors)]
    return report


def propagation_forced(inst: ReductionInstance) -> list[int]:
    return forced_detectors(inst.graph)


# -- formula generators ---------------------------------------------------------


def random_formula(num_vars: int, num_clauses: int, seed: int, cover_literals: bool = True,
                   max_tries: int = 10_000) -> Formula:
    """Random 3-CNF; with ``cover_literals`` every literal occurs at least once."""
    if num_vars < 3:
        raise ReductionError("3-CNF with distinct variables needs at least 3 variables")
    if cover_literals and 3 * num_clauses < 2 * num_vars:
        raise ReductionError("too few clauses to cover every literal")
    rng = random.Random(seed)
    for _ in range(max_tries):
        clauses = []
        for _ in range(num_clauses):
            vs = rng.sample(range(1, num_vars + 1), 3)
            clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
        f = Formula(num_vars, tuple(clauses))
        if not cover_literals or f.covers_all_literals():
            return f
    raise ReductionError("could not draw a literal-covering formula")


def full_unsat_formula() -> Formula:
    """All eight sign patterns over three variables."""
    return Formula(3, tuple(
        tuple(v if s else -v for v, s in zip((1, 2, 3), signs))
        for signs in itertools.product((True, False), repeat=3)
    ))


def split_unsat_formula(perm: tuple[int, int, int, int] = (1, 2, 3, 4),
                        split: tuple[bool, bool, bool, bool] = (False, False, True, True)) -> Formula:
    """Unsatisfiable 8-clause formula on four variables covering every literal.

    Each sign pattern of the first two variables is killed by two clauses
    whose third variable is perm[2] or perm[3] according to ``split``.
    """
    a, b, c, d = perm
    clauses = []
    for k, (sa, sb) in enumerate(itertools.product((True, False), repeat=2)):
        third = d if split[k] else c
        for st in (True, False):
            clauses.append((a if sa else -a, b if sb else -b, third if st else -third))
    f = Formula(4, tuple(clauses))
    assert sat_bruteforce(f) is None
    return f
