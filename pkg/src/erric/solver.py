"""Exact minimum ERR:IC solvers.

Every solver here maximizes the non-detector set X = V - S. A set S is an
ERR:IC exactly when X meets a family of capacity constraints:

* domination of v:           |X ∩ N[v]| <= |N[v]| - 3
* distinguishing of (u, v):  |X ∩ (N[u] △ N[v])| <= |N[u] △ N[v]| - 3

Only pairs at distance <= 2 can bind; farther pairs are implied by the two
domination constraints. On cubic twin-free triangle-free graphs the complement
search uses the equivalent 2-clause model (non-detectors pairwise at distance
>= 4, plus the friend condition on rival pairs).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .codes import from_mask, is_errcode
from .existence import check_existence
from .graph import Graph, all_pairs_distances, ball, find_triangles, find_twins, INFINITE

ORACLE_CAP = 20
DEFAULT_NODE_BUDGET = 5_000_000


class SolverError(ValueError):
    """Input outside a solver's contract."""


class BudgetExceeded(RuntimeError):
    """Search stopped early; ``best`` and ``bound`` bracket the optimum size."""

    def __init__(self, msg: str, best: int | None, bound: int | None):
        super().__init__(msg)
        self.best = best
        self.bound = bound


@dataclass(frozen=True)
class OptimalCode:
    detectors: tuple[int, ...]
    size: int
    method: str
    nodes_explored: int = 0

    def complement(self, n: int) -> tuple[int, ...]:
        s = set(self.detectors)
        return tuple(v for v in range(n) if v not in s)

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "detectors": list(self.detectors),
            "method": self.method,
            "nodes_explored": self.nodes_explored,
        }


@dataclass(frozen=True)
class RivalQuadruple:
    p: int
    q: int
    p_friend: int
    q_friend: int
    a: int
    b: int


# -- constraint model ----------------------------------------------------------


class PackingModel:
    """Maximize |X| subject to |X ∩ T| <= cap(T) for every constraint T."""

    def __init__(self, n: int, constraints: Iterable[tuple[Iterable[int], int]],
                 on_exclude: Sequence[Sequence[int]] | None = None):
        self.n = n
        self.members: list[tuple[int, ...]] = []
        self.masks: list[int] = []
        self.caps: list[int] = []
        seen: dict[int, int] = {}
        for T, cap in constraints:
            mask = 0
            for v in T:
                mask |= 1 << v
            # keep the tightest cap per member set
            if mask in seen:
                i = seen[mask]
                self.caps[i] = min(self.caps[i], cap)
                continue
            seen[mask] = len(self.caps)
            self.members.append(tuple(sorted(set(T))))
            self.masks.append(mask)
            self.caps.append(cap)
        self.vcons: list[list[int]] = [[] for _ in range(n)]
        for i, T in enumerate(self.members):
            for v in T:
                self.vcons[v].append(i)
        self.on_exclude = on_exclude
        self.pairwise = all(len(T) == 2 and c == 1 for T, c in zip(self.members, self.caps))
        if self.pairwise:
            conf = [0] * n
            for u, v in self.members:
                conf[u] |= 1 << v
                conf[v] |= 1 << u
            self.static_conflicts = conf

    # state = [status list, excl counts, undecided mask, n_excluded]
    def initial_state(self):
        if any(c < 0 for c in self.caps):
            return None
        status = [0] * self.n
        und = (1 << self.n) - 1
        for i, c in enumerate(self.caps):
            if c == 0:
                for v in self.members[i]:
                    if status[v] == 0:
                        status[v] = 1
                        und &= ~(1 << v)
        return [status, [0] * len(self.caps), und, 0]

    def exclude(self, state, v: int) -> bool:
        status, ec, _, _ = state
        if status[v] != 0:
            return status[v] == 2
        status[v] = 2
        state[2] &= ~(1 << v)
        state[3] += 1
        caps = self.caps
        for c in self.vcons[v]:
            ec[c] += 1
            if ec[c] > caps[c]:
                return False
            if ec[c] == caps[c]:
                for w in self.members[c]:
                    if status[w] == 0:
                        status[w] = 1
                        state[2] &= ~(1 << w)
        if self.on_exclude is not None:
            for w in self.on_exclude[v]:
                if status[w] == 2:
                    return False
                if status[w] == 0:
                    status[w] = 1
                    state[2] &= ~(1 << w)
        return True

    @staticmethod
    def include(state, v: int) -> None:
        state[0][v] = 1
        state[2] &= ~(1 << v)

    @staticmethod
    def copy(state):
        return [state[0][:], state[1][:], state[2], state[3]]

    def conflicts(self, state) -> dict[int, int]:
        """Undecided vertex -> mask of undecided vertices it cannot join in X."""
        und = state[2]
        out = {}
        if self.pairwise:
            conf = self.static_conflicts
            m = und
            while m:
                low = m & -m
                v = low.bit_length() - 1
                out[v] = conf[v] & und
                m ^= low
            return out
        ec = state[1]
        caps = self.caps
        masks = self.masks
        m = und
        while m:
            low = m & -m
            v = low.bit_length() - 1
            acc = 0
            for c in self.vcons[v]:
                if caps[c] - ec[c] == 1:
                    acc |= masks[c]
            out[v] = acc & und & ~low
            m ^= low
        return out

    @staticmethod
    def clique_cover(und: int, conf: dict[int, int]) -> int:
        """Greedy clique cover size of the undecided conflict graph; each
        clique holds at most one further exclusion."""
        count = 0
        rem = und
        while rem:
            low = rem & -rem
            v = low.bit_length() - 1
            rem ^= low
            cand = conf[v] & rem
            while cand:
                # extend with the candidate that keeps most candidates alive
                best_w, best_keep = -1, -1
                c = cand
                while c:
                    lw = c & -c
                    w = lw.bit_length() - 1
                    keep = (cand & conf[w]).bit_count()
                    if keep > best_keep:
                        best_w, best_keep = w, keep
                    c ^= lw
                rem &= ~(1 << best_w)
                cand &= conf[best_w]
            count += 1
        return count


def _pick_fail_first(und: int, conf: dict[int, int]) -> int:
    best_v, best_s = -1, -1
    m = und
    while m:
        low = m & -m
        v = low.bit_length() - 1
        s = conf[v].bit_count()
        if s > best_s:
            best_v, best_s = v, s
        m ^= low
    return best_v


class _Search:
    def __init__(self, model: PackingModel, budget: int):
        self.model = model
        self.budget = budget
        self.nodes = 0
        self.best = -1
        self.best_status = None

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded("node budget exceeded", None, None)

    def maximize(self, state, lower: int = -1) -> int:
        """Phase one: optimum number of exclusions (fail-first branching)."""
        self.best = lower
        self._max(state)
        return self.best

    def _max(self, state):
        self._tick()
        model = self.model
        und = state[2]
        if not und:
            if state[3] > self.best:
                self.best = state[3]
                self.best_status = state[0][:]
            return
        conf = model.conflicts(state)
        if state[3] + model.clique_cover(und, conf) <= self.best:
            return
        v = _pick_fail_first(und, conf)
        child = model.copy(state)
        if model.exclude(child, v):
            self._max(child)
        model.include(state, v)
        self._max(state)

    def lexmin(self, state, target: int):
        """Phase two: first completion, in ascending vertex order with
        detectors tried first, that reaches ``target`` exclusions."""
        self._tick()
        model = self.model
        und = state[2]
        if not und:
            return state[0] if state[3] >= target else None
        conf = model.conflicts(state)
        if state[3] + model.clique_cover(und, conf) < target:
            return None
        v = (und & -und).bit_length() - 1
        child = model.copy(state)
        model.include(child, v)
        found = self.lexmin(child, target)
        if found is not None:
            return found
        if model.exclude(state, v):
            return self.lexmin(state, target)
        return None


def _split(model: PackingModel, state, depth: int) -> list:
    """Disjoint subproblems from fixing the lowest undecided vertices."""
    frontier = [state]
    for _ in range(depth):
        nxt = []
        for st in frontier:
            und = st[2]
            if not und:
                nxt.append(st)
                continue
            v = (und & -und).bit_length() - 1
            a = model.copy(st)
            model.include(a, v)
            nxt.append(a)
            b = model.copy(st)
            if model.exclude(b, v):
                nxt.append(b)
        frontier = nxt
    return frontier


def _solve_sub(args):
    model, state, lower, budget = args
    s = _Search(model, budget)
    try:
        return s.maximize(state, lower), s.nodes
    except BudgetExceeded:
        return None, s.nodes


def solve_packing(model: PackingModel, budget: int = DEFAULT_NODE_BUDGET, threads: int = 1):
    """Return (status list, nodes) for the lexicographically smallest optimum,
    or (None, nodes) if even X = ∅ violates a constraint."""
    state = model.initial_state()
    if state is None:
        return None, 0
    nodes = 0
    if threads > 1:
        subs = _split(model, model.copy(state), max(1, (threads - 1).bit_length() + 1))
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_solve_sub, [(model, s, -1, budget) for s in subs]))
        nodes += sum(r[1] for r in results)
        if any(r[0] is None for r in results):
            raise BudgetExceeded("node budget exceeded in a worker", None, None)
        best = max(r[0] for r in results)
    else:
        search = _Search(model, budget)
        try:
            best = search.maximize(model.copy(state))
        except BudgetExceeded as e:
            root_ub = state[3] + model.clique_cover(state[2], model.conflicts(state))
            lo = max(search.best, 0)
            raise BudgetExceeded(
                f"node budget {budget} exceeded after {search.nodes} nodes; "
                f"optimum size in [{model.n - root_ub}, {model.n - lo}]",
                best=model.n - lo, bound=model.n - root_ub,
            ) from e
        nodes += search.nodes
    if best < 0:
        return None, nodes
    search = _Search(model, budget)
    status = search.lexmin(model.copy(state), best)
    nodes += search.nodes
    if status is None:
        raise AssertionError("lexicographic pass failed to reach the optimum")
    return status, nodes


# -- constraint builders -------------------------------------------------------


def errcode_constraints(g: Graph) -> list[tuple[tuple[int, ...], int]]:
    """Capacity constraints whose solutions X are exactly the complements of
    ERR:ICs of g."""
    closed = [g.neighbors(v) | {v} for v in range(g.n)]
    out = [(tuple(sorted(N)), len(N) - 3) for N in closed]
    for u in range(g.n):
        near = set()
        for w in g.adj[u]:
            near.add(w)
            near.update(g.adj[w])
        for v in sorted(near):
            if v <= u:
                continue
            T = closed[u] ^ closed[v]
            cap = len(T) - 3
            # implied by the two domination constraints?
            bu = min(len(closed[u] - closed[v]), len(closed[u]) - 3)
            bv = min(len(closed[v] - closed[u]), len(closed[v]) - 3)
            if cap >= 0 and bu + bv <= cap:
                continue
            out.append((tuple(sorted(T)), cap))
    return out


def _ball_forcing(g: Graph) -> list[tuple[int, ...]] | None:
    if not g.is_cubic():
        return None
    return [tuple(sorted(ball(g, v, 3) - {v})) for v in range(g.n)]


def forced_detectors(g: Graph) -> list[int]:
    """Vertices every ERR:IC must contain by zero-capacity propagation alone."""
    model = PackingModel(g.n, errcode_constraints(g))
    state = model.initial_state()
    if state is None:
        return list(range(g.n))
    return [v for v in range(g.n) if state[0][v] == 1]


def _status_to_code(status, method: str, nodes: int) -> OptimalCode:
    dets = tuple(v for v, s in enumerate(status) if s != 2)
    return OptimalCode(dets, len(dets), method, nodes)


def min_errcode(g: Graph, budget: int = DEFAULT_NODE_BUDGET, threads: int = 1) -> OptimalCode | None:
    """Minimum ERR:IC by propagating branch-and-bound; None if none exists."""
    if not check_existence(g).exists:
        return None
    model = PackingModel(g.n, errcode_constraints(g), on_exclude=_ball_forcing(g))
    status, nodes = solve_packing(model, budget, threads)
    if status is None:
        return None
    return _status_to_code(status, "branch_and_bound", nodes)


def _fast_valid(masks: Sequence[int], pair_list: Sequence[tuple[int, int]], S: int) -> bool:
    for m in masks:
        if (m & S).bit_count() < 3:
            return False
    for u, v in pair_list:
        if ((masks[u] ^ masks[v]) & S).bit_count() < 3:
            return False
    return True


def min_errcode_oracle(g: Graph) -> OptimalCode | None:
    """Try all subsets by increasing size; the first valid one is returned.

    Independent of the constraint model: every pair is checked directly.
    """
    if g.n > ORACLE_CAP:
        raise BudgetExceeded(f"oracle supports n <= {ORACLE_CAP}, got {g.n}", None, None)
    masks = g.closed_masks()
    pairs = list(itertools.combinations(range(g.n), 2))
    tried = 0
    for k in range(g.n + 1):
        for combo in itertools.combinations(range(g.n), k):
            tried += 1
            S = 0
            for v in combo:
                S |= 1 << v
            if _fast_valid(masks, pairs, S):
                return OptimalCode(combo, k, "oracle", tried)
    return None


# -- cubic complement search ---------------------------------------------------


def find_rivals(g: Graph) -> list[RivalQuadruple]:
    """Every 4-cycle p-a-q-b, once per diagonal pair and friend choice."""
    out = []
    for p, q in itertools.combinations(range(g.n), 2):
        common = sorted(g.neighbors(p) & g.neighbors(q))
        for a, b in itertools.combinations(common, 2):
            for pf in sorted(g.neighbors(p) - {a, b, q}):
                for qf in sorted(g.neighbors(q) - {a, b, p}):
                    out.append(RivalQuadruple(p, q, pf, qf, a, b))
    return out


def _cubic_precondition(g: Graph) -> None:
    if not g.is_cubic():
        bad = [v for v in range(g.n) if g.degree(v) != 3]
        raise SolverError(f"graph is not cubic: vertex {bad[0] if bad else '?'} "
                          f"has degree {g.degree(bad[0]) if bad else 0}")
    twins = find_twins(g)
    if twins:
        u, v, kind = twins[0]
        raise SolverError(f"graph has {kind} twins {u}, {v}")
    tris = find_triangles(g)
    if tris:
        raise SolverError(f"graph has triangle {tris[0]}")


def complement_constraints(g: Graph) -> list[tuple[tuple[int, int], int]]:
    dist = all_pairs_distances(g)
    out = []
    for u, v in itertools.combinations(range(g.n), 2):
        d = dist[u][v]
        if d is not INFINITE and d < 4:
            out.append(((u, v), 1))
    for r in find_rivals(g):
        if r.p_friend != r.q_friend:
            out.append(((min(r.p_friend, r.q_friend), max(r.p_friend, r.q_friend)), 1))
    return out


def nondetectors_ok(g: Graph, nondet: Iterable[int]) -> bool:
    """Distance-4 and friend conditions on a candidate non-detector set."""
    X = sorted(set(nondet))
    if len(X) > 1:
        dist = all_pairs_distances(g)
        for u, v in itertools.combinations(X, 2):
            d = dist[u][v]
            if d is not INFINITE and d < 4:
                return False
    xs = set(X)
    return all(not (r.p_friend in xs and r.q_friend in xs) for r in find_rivals(g))


def max_nondetectors_cubic(g: Graph, budget: int = DEFAULT_NODE_BUDGET, threads: int = 1) -> OptimalCode:
    """Minimum ERR:IC of a cubic twin-free triangle-free graph via a maximum
    conflict-free non-detector set."""
    _cubic_precondition(g)
    model = PackingModel(g.n, complement_constraints(g))
    status, nodes = solve_packing(model, budget, threads)
    return _status_to_code(status, "complement_search", nodes)


def solve(g: Graph, method: str = "bnb", **kw) -> OptimalCode | None:
    if method == "oracle":
        return min_errcode_oracle(g)
    if method in ("bnb", "branch_and_bound"):
        return min_errcode(g, **kw)
    if method in ("cubic", "complement_search"):
        return max_nondetectors_cubic(g, **kw)
    raise ValueError(f"unknown method {method!r}")


# -- post-hoc structural checks ------------------------------------------------


def ball_containment_violations(g: Graph, S: Iterable[int]) -> list[tuple[int, int]]:
    """(non-detector v, vertex u in B_3(v)-{v} missing from S) for cubic g."""
    S = set(S)
    out = []
    for v in range(g.n):
        if v in S:
            continue
        for u in sorted(ball(g, v, 3) - {v}):
            if u not in S:
                out.append((v, u))
    return out


def four_cycle_configurations(g: Graph) -> list[tuple[int, ...]]:
    """(a, b, c, d, e, f, g, h): 4-cycle abcd with e,f,g,h adjacent to a,b,c,d
    respectively and disjoint from the cycle. One entry per distinct choice."""
    out = []
    seen = set()
    for a in range(g.n):
        for b in g.adj[a]:
            for c in g.adj[b]:
                if c == a:
                    continue
                for d in g.adj[c]:
                    if d in (a, b) or not g.has_edge(d, a):
                        continue
                    cyc = (a, b, c, d)
                    ring = set(cyc)
                    choices = [sorted(g.neighbors(x) - ring) for x in cyc]
                    for efgh in itertools.product(*choices):
                        key = frozenset(zip(cyc, efgh))
                        if key not in seen:
                            seen.add(key)
                            out.append(cyc + efgh)
    return out


def four_cycle_violations(g: Graph, S: Iterable[int]) -> list[tuple[int, ...]]:
    S = set(S)
    return [cfg for cfg in four_cycle_configurations(g) if len(set(cfg) & S) < 7]


def certify(g: Graph, code: OptimalCode) -> None:
    """Raise AssertionError unless ``code`` is valid and, on cubic graphs,
    satisfies the B_3 containment and 4-cycle detector-count properties."""
    assert is_errcode(g, code.detectors), "solver output is not an ERR:IC"
    assert code.size == len(code.detectors)
    if g.is_cubic():
        assert not ball_containment_violations(g, code.detectors), "B_3 containment violated"
        assert not four_cycle_violations(g, code.detectors), "4-cycle detector count violated"
