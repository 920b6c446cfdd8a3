"""ERR:IC existence criteria and exhaustive small-graph enumeration."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graph import CANON_CAP, CanonicalForm, Graph, canonical_form, find_triangles, find_twins

PROPERTIES = ("i", "ii", "iii", "iv")
PROPERTY_NAMES = {
    "i": "twin-free",
    "ii": "minimum degree >= 2",
    "iii": "no adjacent degree-2 vertices",
    "iv": "triangle pairs 3-distinguished",
}
ENUM_CAP = 7


@dataclass
class ExistenceReport:
    failed_properties: list[str] = field(default_factory=list)
    witnesses: dict[str, list] = field(default_factory=dict)
    criterion: str = "general"

    @property
    def exists(self) -> bool:
        return not self.failed_properties

    def __bool__(self) -> bool:
        return self.exists

    def _fail(self, prop: str, witness) -> None:
        if prop not in self.witnesses:
            self.failed_properties.append(prop)
            self.witnesses[prop] = []
        self.witnesses[prop].append(witness)

    def to_dict(self) -> dict:
        return {
            "exists": self.exists,
            "criterion": self.criterion,
            "failed_properties": list(self.failed_properties),
            "witnesses": {k: [list(w) if isinstance(w, tuple) else w for w in v]
                          for k, v in self.witnesses.items()},
        }


def _twins(g: Graph, rep: ExistenceReport) -> None:
    for u, v, kind in find_twins(g):
        rep._fail("i", (u, v, kind))


def _min_degree(g: Graph, rep: ExistenceReport) -> None:
    for v in range(g.n):
        if g.degree(v) < 2:
            rep._fail("ii", v)


def _adjacent_deg2(g: Graph, rep: ExistenceReport) -> None:
    for u, v in g.sorted_edges():
        if g.degree(u) == 2 and g.degree(v) == 2:
            rep._fail("iii", (u, v))


def _triangle_pairs(g: Graph, rep: ExistenceReport) -> None:
    masks = g.closed_masks()
    for tri in find_triangles(g):
        for a, b in itertools.combinations(tri, 2):
            if (masks[a] ^ masks[b]).bit_count() < 3:
                rep._fail("iv", tri)
                break


def check_existence(g: Graph) -> ExistenceReport:
    """Test the four necessary-and-sufficient properties for an ERR:IC.

    Property iv is enforced on all three vertex pairs of every triangle.
    """
    rep = ExistenceReport()
    _twins(g, rep)
    _min_degree(g, rep)
    _adjacent_deg2(g, rep)
    _triangle_pairs(g, rep)
    rep.failed_properties.sort(key=PROPERTIES.index)
    return rep


def check_existence_special(g: Graph) -> ExistenceReport:
    """Same verdict as check_existence, via the reduced criterion for
    triangle-free, cubic or k-regular inputs when one applies."""
    tris = find_triangles(g)
    degs = set(g.degrees())
    rep = ExistenceReport()
    if g.n and degs == {3}:
        rep.criterion = "cubic"
        _twins(g, rep)
        for t in tris:
            rep._fail("iv", t)
    elif g.n and len(degs) == 1:
        (k,) = degs
        rep.criterion = "regular"
        if k < 2:
            for v in range(g.n):
                rep._fail("ii", v)
        elif k == 2:
            for u, v in g.sorted_edges():
                rep._fail("iii", (u, v))
        else:
            _twins(g, rep)
            _triangle_pairs(g, rep)
    elif not tris:
        rep.criterion = "triangle-free"
        _twins(g, rep)
        _min_degree(g, rep)
        _adjacent_deg2(g, rep)
    else:
        return check_existence(g)
    rep.failed_properties.sort(key=PROPERTIES.index)
    return rep


# -- exhaustive enumeration ----------------------------------------------------


def _popcount8(x: np.ndarray) -> np.ndarray:
    table = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)
    return table[x]


def _survivors(n: int, lo: int, hi: int) -> list[int]:
    """Edge masks in [lo, hi) passing the vectorized necessary conditions
    (min degree >= 2, no adjacent degree-2 pair, twin-free)."""
    pairs = list(itertools.combinations(range(n), 2))
    masks = np.arange(lo, hi, dtype=np.uint32)
    nb = np.zeros((n, masks.size), dtype=np.uint16)
    deg = np.zeros((n, masks.size), dtype=np.uint8)
    bits = []
    for e, (u, v) in enumerate(pairs):
        b = ((masks >> e) & 1).astype(np.uint8)
        bits.append(b)
        deg[u] += b
        deg[v] += b
        nb[u] |= b.astype(np.uint16) << v
        nb[v] |= b.astype(np.uint16) << u
    keep = deg.min(axis=0) >= 2
    for e, (u, v) in enumerate(pairs):
        keep &= ~((bits[e] == 1) & (deg[u] == 2) & (deg[v] == 2))
    for u, v in pairs:
        keep &= nb[u] != nb[v]
        keep &= (nb[u] | (1 << u)) != (nb[v] | (1 << v))
    return [int(x) for x in masks[keep]]


def graph_from_mask(n: int, mask: int) -> Graph:
    pairs = itertools.combinations(range(n), 2)
    return Graph(n, [p for e, p in enumerate(pairs) if mask >> e & 1])


def _scan(args: tuple[int, int, int]) -> list[bytes]:
    n, lo, hi = args
    found = set()
    for mask in _survivors(n, lo, hi):
        g = graph_from_mask(n, mask)
        if check_existence(g).exists:
            found.add(bytes(canonical_form(g)))
    return sorted(found)


def enumerate_admitting_graphs(n_max: int, workers: int = 1, chunk: int = 1 << 18) -> list[CanonicalForm]:
    """Canonical forms of every graph on 1..n_max vertices admitting an ERR:IC.

    All labeled graphs are scanned; results are deduplicated and sorted, so
    the output does not depend on ``workers``.
    """
    if n_max > ENUM_CAP or n_max > CANON_CAP:
        raise ValueError(f"enumeration supports n_max <= {ENUM_CAP}, got {n_max}")
    jobs = []
    for n in range(1, n_max + 1):
        total = 1 << (n * (n - 1) // 2)
        jobs.extend((n, lo, min(lo + chunk, total)) for lo in range(0, total, chunk))
    found: set[bytes] = set()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for part in ex.map(_scan, jobs):
                found.update(part)
    else:
        for job in jobs:
            found.update(_scan(job))
    return [CanonicalForm(b) for b in sorted(found)]
