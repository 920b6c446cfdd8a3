"""Simple undirected graphs on vertices 0..n-1 and the structural queries used
throughout the package (neighborhoods, distances, twins, triangles,
canonical forms, random regular graphs)."""

from __future__ import annotations

import itertools
import random
from collections import deque
from typing import Iterable, Iterator, Sequence

CANON_CAP = 10


class GraphError(ValueError):
    """Malformed graph input."""


class _Infinite:
    """Distance between vertices in different components."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


class Graph:
    """Immutable simple graph. Vertices are 0..n-1."""

    __slots__ = ("n", "edges", "adj", "_nbr_sets", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        es: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in es:
                raise GraphError(f"duplicate edge ({e[0]}, {e[1]})")
            es.add(e)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in es:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.n = n
        self.edges = frozenset(es)
        self.adj = tuple(tuple(sorted(x)) for x in nbrs)
        self._nbr_sets = tuple(frozenset(x) for x in self.adj)
        self._masks = None

    # -- basic queries -------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self._nbr_sets[v]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_regular(self, k: int | None = None) -> bool:
        degs = set(self.degrees())
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return k is None or degs == {k}

    def is_cubic(self) -> bool:
        return self.n > 0 and self.is_regular(3)

    def closed_masks(self) -> tuple[int, ...]:
        """Bitmask of N[v] for every v (cached)."""
        if self._masks is None:
            ms = []
            for v in range(self.n):
                m = 1 << v
                for u in self.adj[v]:
                    m |= 1 << u
                ms.append(m)
            self._masks = tuple(ms)
        return self._masks

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex v renamed perm[v]."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- edge-list interchange format -------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: a header "n m" then m lines "u v".

    Blank lines and lines starting with '#' are ignored. Errors carry the
    1-based line number of the offending line.
    """
    lines = [
        (i + 1, ln.strip())
        for i, ln in enumerate(text.splitlines())
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise GraphError("line 1: missing header 'n m'")
    lineno, header = lines[0]
    parts = header.split()
    try:
        if len(parts) != 2:
            raise ValueError
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphError(f"line {lineno}: malformed header {header!r}") from None
    if n < 0 or m < 0:
        raise GraphError(f"line {lineno}: negative counts in header")
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"line {lineno}: header declares {m} edges, found {len(body)}")
    seen: set[tuple[int, int]] = set()
    edges = []
    for lineno, ln in body:
        parts = ln.split()
        try:
            if len(parts) != 2:
                raise ValueError
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: malformed edge line {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex out of range in {ln!r} (n={n})")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at vertex {u}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise GraphError(f"line {lineno}: duplicate edge {e[0]} {e[1]}")
        seen.add(e)
        edges.append(e)
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


# -- neighborhoods and distances --------------------------------------------


def closed_neighborhood(g: Graph, v: int) -> frozenset[int]:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    return g.neighbors(v) | {v}


def open_neighborhood(g: Graph, v: int) -> frozenset[int]:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    return g.neighbors(v)


def bfs_distances(g: Graph, src: int) -> list:
    dist: list = [INFINITE] * g.n
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        du = dist[u]
        for w in g.adj[u]:
            if dist[w] is INFINITE:
                dist[w] = du + 1
                q.append(w)
    return dist


def distance(g: Graph, u: int, v: int):
    """Shortest-path length, or INFINITE across components."""
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError("vertex out of range")
    return bfs_distances(g, u)[v]


def all_pairs_distances(g: Graph) -> list[list]:
    return [bfs_distances(g, v) for v in range(g.n)]


def ball(g: Graph, v: int, r: int) -> frozenset[int]:
    """B_r(v): vertices within distance r of v."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    if r < 0:
        raise GraphError("radius must be nonnegative")
    seen = {v}
    frontier = [v]
    for _ in range(r):
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return frozenset(seen)


def diameter(g: Graph):
    best = 0
    for row in all_pairs_distances(g):
        for d in row:
            if d is INFINITE:
                return INFINITE
            best = max(best, d)
    return best


def is_connected(g: Graph) -> bool:
    return g.n == 0 or all(d is not INFINITE for d in bfs_distances(g, 0))


# -- structural predicates ---------------------------------------------------


def find_twins(g: Graph) -> list[tuple[int, int, str]]:
    """All pairs with N[u] = N[v] ('closed') or N(u) = N(v) ('open')."""
    out = []
    by_open: dict[frozenset, list[int]] = {}
    by_closed: dict[frozenset, list[int]] = {}
    for v in range(g.n):
        by_open.setdefault(g.neighbors(v), []).append(v)
        by_closed.setdefault(g.neighbors(v) | {v}, []).append(v)
    for kind, groups in (("closed", by_closed), ("open", by_open)):
        for vs in groups.values():
            for u, v in itertools.combinations(vs, 2):
                out.append((u, v, kind))
    out.sort()
    return out


def find_triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for u, v in g.sorted_edges():
        for w in sorted(g.neighbors(u) & g.neighbors(v)):
            if w > v:
                out.append((u, v, w))
    return out


def girth(g: Graph):
    """Length of a shortest cycle (INFINITE for forests)."""
    best = INFINITE
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in g.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    c = dist[u] + dist[w] + 1
                    if best is INFINITE or c < best:
                        best = c
    return best


# -- canonical forms ---------------------------------------------------------


def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Refine an ordered partition until equitable.

    Cell order depends only on isomorphism-invariant data, so the refined
    partition commutes with relabeling.
    """
    while True:
        idx = {}
        for i, cell in enumerate(cells):
            for v in cell:
                idx[v] = i
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple, list[int]] = {}
            for v in cell:
                sig = tuple(sorted(idx[w] for w in g.adj[v]))
                groups.setdefault(sig, []).append(v)
            out.extend(groups[s] for s in sorted(groups))
        if len(out) == len(cells):
            return out
        cells = out


def _encode(g: Graph, order: Sequence[int]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    n = g.n
    rows = []
    for i in range(n):
        row = 0
        for w in g.adj[order[i]]:
            j = pos[w]
            if j > i:
                row |= 1 << (n - 1 - j)
        rows.append(row)
    return tuple(rows)


def _leaf_codes(g: Graph, cells: list[list[int]]):
    cells = _refine(g, cells)
    for i, cell in enumerate(cells):
        if len(cell) > 1:
            for v in cell:
                rest = [w for w in cell if w != v]
                yield from _leaf_codes(g, cells[:i] + [[v], rest] + cells[i + 1:])
            return
    yield _encode(g, [c[0] for c in cells])


class CanonicalForm(bytes):
    """Isomorphism-invariant encoding; equal iff the graphs are isomorphic."""

    def hex(self) -> str:  # noqa: A003 - keep bytes.hex semantics
        return bytes.hex(self)

    @classmethod
    def fromhex(cls, s: str) -> "CanonicalForm":
        return cls(bytes.fromhex(s))

    def __repr__(self) -> str:
        return f"CanonicalForm({bytes.hex(self)})"


def canonical_form(g: Graph) -> CanonicalForm:
    """Minimal adjacency encoding over every leaf of the individualize-and-
    refine tree, seeded by the degree partition. Exact for n <= CANON_CAP."""
    if g.n > CANON_CAP:
        raise GraphError(f"canonical form supports n <= {CANON_CAP}, got n={g.n}")
    degs = sorted(set(g.degrees()))
    start = [[v for v in range(g.n) if g.degree(v) == d] for d in degs]
    best = min(_leaf_codes(g, start), default=())
    n = g.n
    nbytes = max(1, (n + 7) // 8)
    payload = bytearray([n])
    for row in best:
        payload += row.to_bytes(nbytes, "big")
    return CanonicalForm(bytes(payload))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Brute-force isomorphism test (independent of canonical_form)."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    for perm in itertools.permutations(range(g.n)):
        if all(h.has_edge(perm[u], perm[v]) for u, v in g.edges):
            return True
    return False


# -- generators ----------------------------------------------------------------


def random_regular(n: int, k: int, seed: int, max_tries: int = 10_000) -> Graph:
    """Uniform-ish simple k-regular graph via the pairing model with restarts."""
    if n < 0 or k < 0:
        raise GraphError("n and k must be nonnegative")
    if (n * k) % 2:
        raise GraphError(f"no {k}-regular graph on {n} vertices (n*k odd)")
    if k >= n and not (n == 0 and k == 0):
        raise GraphError(f"k={k} must be less than n={n}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        points = [v for v in range(n) for _ in range(k)]
        rng.shuffle(points)
        edges = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            e = (min(u, v), max(u, v))
            if u == v or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph(n, edges)
    raise GraphError(f"random_regular({n}, {k}) failed after {max_tries} attempts")


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    return Graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(*gs: Graph) -> Graph:
    edges = []
    off = 0
    for g in gs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, edges)


def iter_edge_pairs(n: int) -> Iterator[tuple[int, int]]:
    return itertools.combinations(range(n), 2)
