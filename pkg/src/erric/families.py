"""Concrete graph families with certified ERR:IC detector sets.

Searched ingredients (the G6 and G18 blocks, G20, the ladder and hex
patterns) live as fixtures under ``erric/data`` and can be rebuilt with
``python -m erric.fixtures``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .codes import is_errcode
from .existence import check_existence
from .graph import Graph, GraphError, format_graph, parse_graph

FAMILIES = ("G1", "G2", "G6_MOBIUS", "G18_RING", "G20", "LADDER_CYCLIC", "HEX_TORUS")


class FamilyError(ValueError):
    pass


@dataclass
class CertifiedConstruction:
    graph: Graph
    code: tuple[int, ...] | None
    claimed_size: int | None
    labels: dict[str, int] = field(default_factory=dict)
    family: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.code is not None:
            self.code = tuple(sorted(self.code))
            if self.claimed_size != len(self.code):
                raise FamilyError(f"claimed size {self.claimed_size} != |code| = {len(self.code)}")
            if not is_errcode(self.graph, self.code):
                raise FamilyError(f"{self.family} {self.params}: code fails ERR:IC verification")

    @property
    def density(self) -> Fraction | None:
        if self.claimed_size is None:
            return None
        return Fraction(self.claimed_size, self.graph.n)

    @property
    def nondetectors(self) -> tuple[int, ...] | None:
        if self.code is None:
            return None
        inside = set(self.code)
        return tuple(v for v in range(self.graph.n) if v not in inside)

    def side_file(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "n": self.graph.n,
            "labels": self.labels,
            "code": list(self.code) if self.code is not None else None,
            "claimed_size": self.claimed_size,
        }


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def build(self) -> CertifiedConstruction:
        fam = self.family.upper()
        p = dict(self.params)
        if fam in ("G1", "G2"):
            return make_small_graph(fam)
        if fam == "G6_MOBIUS":
            return make_g6_family(int(p.get("k", 2)), mobius=p.get("mobius", True))
        if fam == "G18_RING":
            return make_g18_family(int(p.get("k", 1)))
        if fam == "G20":
            return load_g20()
        if fam == "LADDER_CYCLIC":
            return make_cyclic_ladder(int(p.get("m", 8)))
        if fam == "HEX_TORUS":
            return make_hex_torus(int(p.get("rows", 4)), int(p.get("cols", 6)))
        raise FamilyError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")


def _fixture(name: str) -> dict:
    return json.loads(resources.files("erric.data").joinpath(name).read_text())


def _named_edges(raw, index):
    return [(index[a], index[b]) for a, b in raw]


# -- G1 / G2 ----------------------------------------------------------------------

SMALL_NAMES = ("a", "b", "c", "d", "a'", "b'", "c'")
_SMALL_SHARED = [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"),
                 ("a", "a'"), ("b", "b'"), ("c", "c'"), ("a'", "b'")]
_SMALL_EXTRA = {"G1": ("b'", "c'"), "G2": ("a'", "c'")}


def make_small_graph(which: str) -> CertifiedConstruction:
    which = which.upper()
    if which not in _SMALL_EXTRA:
        raise FamilyError(f"expected G1 or G2, got {which!r}")
    index = {name: i for i, name in enumerate(SMALL_NAMES)}
    g = Graph(7, _named_edges(_SMALL_SHARED + [_SMALL_EXTRA[which]], index))
    return CertifiedConstruction(g, tuple(range(7)), 7, index, which, {})


# -- G6 Möbius family ------------------------------------------------------------------


def make_g6_family(k: int, mobius: bool = True) -> CertifiedConstruction:
    """k copies of the 6-vertex block joined rail-to-rail in a ring; with
    ``mobius`` the closing pair of edges is crossed. The c vertex of every
    copy is the only non-detector."""
    if k < 2:
        raise FamilyError(f"G6 family needs k >= 2, got {k}")
    data = _fixture("g6_block.json")
    names = data["names"]
    index = {x: i for i, x in enumerate(names)}
    block = _named_edges(data["edges"], index)
    left = [index[x] for x in data["left"]]
    right = [index[x] for x in data["right"]]
    size = len(names)
    edges = []
    labels = {}
    for t in range(k):
        base = size * t
        edges += [(base + u, base + v) for u, v in block]
        labels.update({f"{x}{t + 1}": base + i for x, i in index.items()})
        nxt = size * ((t + 1) % k)
        targets = left[::-1] if (mobius and t == k - 1) else left
        edges += [(base + r, nxt + l) for r, l in zip(right, targets)]
    g = Graph(size * k, edges)
    c = index[data["designated"]]
    code = [v for v in range(g.n) if v % size != c]
    return CertifiedConstruction(g, tuple(code), len(code), labels, "G6_MOBIUS",
                                 {"k": k, "mobius": mobius})


# -- G18 ring family -----------------------------------------------------------------


def g18_block() -> tuple[list[str], list[tuple[int, int]]]:
    data = _fixture("g18_block.json")
    names = data["names"]
    index = {x: i for i, x in enumerate(names)}
    return names, _named_edges(data["edges"], index)


G18_RED = ("d", "i", "p")
G18_BLUE = ("e", "j", "n")
G18_A = tuple("abcfghklmqrs")


def g18_nondetector_recipe(k: int) -> list[tuple[int, str]]:
    """(copy, label) pairs: i and j in odd copies (1-based) except a final odd
    copy, b everywhere else."""
    out = []
    for t in range(1, k + 1):
        if t % 2 == 1 and not (k % 2 == 1 and t == k):
            out += [(t, "i"), (t, "j")]
        else:
            out.append((t, "b"))
    return out


def make_g18_family(k: int) -> CertifiedConstruction:
    """k copies of the 18-vertex block in a ring, the j vertex of each copy
    joined to the i vertex of the next (k = 1 gives the edge ij)."""
    if k < 1:
        raise FamilyError(f"G18 family needs k >= 1, got {k}")
    names, block = g18_block()
    index = {x: i for i, x in enumerate(names)}
    edges = []
    labels = {}
    for t in range(k):
        base = 18 * t
        edges += [(base + u, base + v) for u, v in block]
        labels.update({f"{x}{t + 1}": base + i for x, i in index.items()})
        edges.append((base + index["j"], 18 * ((t + 1) % k) + index["i"]))
    g = Graph(18 * k, edges)
    out = {labels[f"{x}{t}"] for t, x in g18_nondetector_recipe(k)}
    code = [v for v in range(g.n) if v not in out]
    return CertifiedConstruction(g, tuple(code), len(code), labels, "G18_RING", {"k": k})


def g18_formula(k: int) -> int:
    return 18 * k - (k + k // 2)


# -- G20 -------------------------------------------------------------------------------


def _g20_from_graph(g: Graph, seed) -> CertifiedConstruction:
    code = tuple(range(1, g.n))
    return CertifiedConstruction(g, code, len(code), {f"v{i}": i for i in range(g.n)}, "G20",
                                 {"seed": seed})


def load_g20() -> CertifiedConstruction:
    meta = _fixture("g20.json")
    g = parse_graph(resources.files("erric.data").joinpath("g20.el").read_text())
    return CertifiedConstruction(g, tuple(meta["code"]), meta["claimed_size"], meta["labels"],
                                 "G20", meta.get("params", {}))


def find_g20(seed: int, restarts: int = 200, steps: int = 20_000) -> CertifiedConstruction:
    """Search for a 20-vertex cubic, twin-free, triangle-free graph of
    diameter 3 and certify that one non-detector is the most it can carry."""
    from .fixtures import search_g20
    from .solver import max_nondetectors_cubic

    g = search_g20(seed, restarts=restarts, steps=steps)
    if g is None:
        raise FamilyError(f"no diameter-3 cubic graph found within budget (seed={seed})")
    best = max_nondetectors_cubic(g)
    if g.n - best.size != 1:
        raise FamilyError("search result carries more than one non-detector")
    return _g20_from_graph(g, seed)


# -- ladder and hex quotients -------------------------------------------------------------


def ladder_graph(m: int) -> Graph:
    """C_m □ P_2; rail r, column c is vertex r*m + c."""
    edges = []
    for c in range(m):
        edges += [(c, (c + 1) % m), (m + c, m + (c + 1) % m), (c, m + c)]
    return Graph(2 * m, edges)


def make_cyclic_ladder(m: int) -> CertifiedConstruction:
    if m < 8:
        raise FamilyError(f"cyclic ladder needs m >= 8, got {m}")
    g = ladder_graph(m)
    labels = {f"r{r}c{c}": r * m + c for r in range(2) for c in range(m)}
    if m % 8:
        return CertifiedConstruction(g, None, None, labels, "LADDER_CYCLIC", {"m": m})
    pat = _fixture("ladder_pattern.json")
    period = pat["period"]
    out = {r * m + c for r, c0 in pat["nondetectors"] for c in range(c0, m, period)}
    code = [v for v in range(g.n) if v not in out]
    return CertifiedConstruction(g, tuple(code), len(code), labels, "LADDER_CYCLIC", {"m": m})


def hex_torus_graph(rows: int, cols: int) -> Graph:
    """Brick-wall quotient: (r, c) ~ (r, c±1), and (r, c) ~ (r+1, c) when r+c is even."""
    def v(r, c):
        return (r % rows) * cols + (c % cols)
    edges = set()
    for r in range(rows):
        for c in range(cols):
            edges.add(tuple(sorted((v(r, c), v(r, c + 1)))))
            if (r + c) % 2 == 0:
                edges.add(tuple(sorted((v(r, c), v(r + 1, c)))))
    return Graph(rows * cols, sorted(edges))


def make_hex_torus(rows: int, cols: int) -> CertifiedConstruction:
    """Hexagonal torus with ``rows`` rows and ``cols`` columns.

    The stored pattern has density 5/6 and is tiled when its periods divide
    the dimensions; otherwise no code is attached.
    """
    if rows % 2 or cols % 2:
        raise FamilyError(f"hex torus needs even rows and cols, got {rows}x{cols}")
    if rows * cols < 24:
        raise FamilyError(f"hex torus needs rows*cols >= 24, got {rows * cols}")
    try:
        g = hex_torus_graph(rows, cols)
    except GraphError as exc:
        raise FamilyError(f"hex torus {rows}x{cols} is degenerate: {exc}") from None
    rep = check_existence(g)
    if not rep.exists or not g.is_cubic():
        raise FamilyError(f"hex torus {rows}x{cols} has triangles or twins ({rep.failed_properties})")
    labels = {f"r{r}c{c}": r * cols + c for r in range(rows) for c in range(cols)}
    pat = _fixture("hex_pattern.json")
    pr, pc = pat["rows_period"], pat["cols_period"]
    code = None
    if rows % pr == 0 and cols % pc == 0:
        out = {r * cols + c
               for r0, c0 in pat["nondetectors"]
               for r in range(r0, rows, pr) for c in range(c0, cols, pc)}
        candidate = [v for v in range(g.n) if v not in out]
        if is_errcode(g, candidate):
            code = tuple(candidate)
    return CertifiedConstruction(g, code, None if code is None else len(code), labels,
                                 "HEX_TORUS", {"rows": rows, "cols": cols})


# -- fixture files ----------------------------------------------------------------------


def save_construction(c: CertifiedConstruction, prefix) -> tuple[Path, Path]:
    prefix = Path(prefix)
    el, js = prefix.with_suffix(".el"), prefix.with_suffix(".json")
    el.write_text(format_graph(c.graph))
    js.write_text(json.dumps(c.side_file(), indent=2) + "\n")
    return el, js


def load_construction(prefix) -> CertifiedConstruction:
    prefix = Path(prefix)
    g = parse_graph(prefix.with_suffix(".el").read_text())
    meta = json.loads(prefix.with_suffix(".json").read_text())
    code = meta.get("code")
    return CertifiedConstruction(g, None if code is None else tuple(code), meta.get("claimed_size"),
                                 meta.get("labels", {}), meta.get("family", ""), meta.get("params", {}))
