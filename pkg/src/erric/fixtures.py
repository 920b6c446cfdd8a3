"""Regenerate the searched fixtures under ``erric/data``.

    python -m erric.fixtures [--out DIR] [--only NAME ...]

Every search is seeded and deterministic. Tests only read the committed
files; this module is the maintenance path that produced them.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from pathlib import Path

from .graph import Graph, bfs_distances, diameter, find_triangles, find_twins, format_graph, random_regular
from .solver import max_nondetectors_cubic, nondetectors_ok

DATA_DIR = Path(__file__).with_name("data")


def _dist_table(g: Graph):
    rows = [bfs_distances(g, v) for v in range(g.n)]
    if any(not isinstance(x, int) for r in rows for x in r):
        return None
    return rows


# -- G6 block ----------------------------------------------------------------------

G6_NAMES = ("c", "f", "a", "b", "d", "e")


def _g6_ring(block, left, right, k, mobius=True) -> Graph:
    edges = []
    for t in range(k):
        base, nxt = 6 * t, 6 * ((t + 1) % k)
        edges += [(base + u, base + v) for u, v in block]
        targets = left[::-1] if (mobius and t == k - 1) else left
        edges += [(base + r, nxt + l) for r, l in zip(right, targets)]
    return Graph(6 * k, edges)


def search_g6_block(ks=range(2, 6)):
    """First (in lexicographic order) 6-vertex block with four degree-2 stubs,
    diameter 3 and no triangle whose Möbius rings keep one designated
    vertex per copy as a valid non-detector set."""
    for block in itertools.combinations(itertools.combinations(range(6), 2), 7):
        g = Graph(6, block)
        stubs = [v for v in range(6) if g.degree(v) == 2]
        if sorted(g.degrees()) != [2, 2, 2, 2, 3, 3] or find_triangles(g) or diameter(g) != 3:
            continue
        for left in itertools.combinations(stubs, 2):
            rest = [v for v in stubs if v not in left]
            for right in itertools.permutations(rest):
                for c in range(6):
                    ok = True
                    for k in ks:
                        ring = _g6_ring(block, left, right, k)
                        if find_triangles(ring) or find_twins(ring) or not ring.is_cubic():
                            ok = False
                            break
                        if not nondetectors_ok(ring, [6 * t + c for t in range(k)]):
                            ok = False
                            break
                    if ok:
                        return block, left, right, c
    return None


def g6_fixture() -> dict:
    block, left, right, c = search_g6_block()
    # rename so the designated vertex is "c"
    order = [c] + [v for v in range(6) if v != c]
    name = {v: G6_NAMES[i] for i, v in enumerate(order)}
    return {
        "names": list(G6_NAMES),
        "edges": sorted(sorted((name[u], name[v]), key=G6_NAMES.index) for u, v in block),
        "left": [name[v] for v in left],
        "right": [name[v] for v in right],
        "designated": "c",
    }


# -- G18 block ------------------------------------------------------------------------

G18_NAMES = tuple("abcdefghijklmnpqrs")
_G18 = {x: i for i, x in enumerate(G18_NAMES)}
_G18_A = [_G18[x] for x in "abcfghklmqrs"]
_G18_FIXED = {tuple(sorted((_G18[u], _G18[v]))) for u, v in [("d", "i"), ("i", "p"), ("e", "j"), ("j", "n")]}


def _g18_random_block(rng):
    stubs = []
    for v in range(18):
        if v not in (_G18["i"], _G18["j"]):
            stubs += [v] * (3 - sum(v in e for e in _G18_FIXED))
    for _ in range(200):
        rng.shuffle(stubs)
        edges = set(_G18_FIXED)
        for x in range(0, len(stubs), 2):
            u, v = sorted(stubs[x:x + 2])
            if u == v or (u, v) in edges:
                break
            edges.add((u, v))
        else:
            return edges
    return None


def _g18_score(edges):
    """Violations of: no triangle, d(i, j) >= 4, every A vertex within
    distance 3 of the whole block, and some A vertex at distance >= 3 from
    both i and j."""
    g = Graph(18, edges)
    d = _dist_table(g)
    if d is None:
        return 10_000
    s = 10 * len(find_triangles(g))
    s += 10 * max(0, 4 - d[_G18["i"]][_G18["j"]])
    s += sum(max(0, max(d[x]) - 3) for x in _G18_A)
    if not any(d[x][_G18["i"]] >= 3 and d[x][_G18["j"]] >= 3 for x in _G18_A):
        s += 5
    return s


def _g18_ring(edges, k) -> Graph:
    out = []
    for t in range(k):
        out += [(18 * t + u, 18 * t + v) for u, v in edges]
        out.append((18 * t + _G18["j"], 18 * ((t + 1) % k) + _G18["i"]))
    return Graph(18 * k, out)


def _g18_certify(edges, b, ks=range(1, 5)) -> bool:
    for k in ks:
        g = _g18_ring(edges, k)
        if find_twins(g) or find_triangles(g):
            return False
        nondet = []
        for t in range(k):
            if t % 2 == 0 and not (k % 2 == 1 and t == k - 1):
                nondet += [18 * t + _G18["i"], 18 * t + _G18["j"]]
            else:
                nondet.append(18 * t + b)
        if not nondetectors_ok(g, nondet):
            return False
        if g.n - max_nondetectors_cubic(g).size != k + k // 2:
            return False
    return True


def search_g18_block(seed: int = 1, restarts: int = 500, steps: int = 3000):
    """Edge-switch local search over blocks with N(i) = {d, p} and
    N(j) = {e, n}; candidates are certified on rings k = 1..4."""
    rng = random.Random(seed)
    for _ in range(restarts):
        edges = _g18_random_block(rng)
        if edges is None:
            continue
        score = _g18_score(edges)
        for _ in range(steps):
            if score == 0:
                break
            free = sorted(e for e in edges if e not in _G18_FIXED)
            (a, b), (c, d) = rng.sample(free, 2)
            if rng.random() < 0.5:
                c, d = d, c
            e1, e2 = tuple(sorted((a, c))), tuple(sorted((b, d)))
            if len({a, b, c, d}) < 4 or e1 in edges or e2 in edges:
                continue
            trial = (edges - {(a, b), tuple(sorted((c, d)))}) | {e1, e2}
            s2 = _g18_score(trial)
            if s2 <= score:
                edges, score = trial, s2
        if score:
            continue
        dist = _dist_table(Graph(18, edges))
        for x in _G18_A:
            if dist[x][_G18["i"]] >= 3 and dist[x][_G18["j"]] >= 3 and _g18_certify(edges, x):
                return sorted(edges), x
    return None


def g18_fixture(seed: int = 1) -> dict:
    found = search_g18_block(seed)
    if found is None:
        raise RuntimeError("G18 block search failed")
    edges, x = found
    # swap labels so the designated A vertex is called "b"
    perm = list(range(18))
    perm[x], perm[_G18["b"]] = perm[_G18["b"]], perm[x]
    named = sorted(sorted((G18_NAMES[perm[u]], G18_NAMES[perm[v]]), key=G18_NAMES.index) for u, v in edges)
    return {"names": list(G18_NAMES), "edges": named, "seed": seed}


# -- G20 ----------------------------------------------------------------------------------


def _far_pairs(edges, n) -> int:
    g = Graph(n, edges)
    s = 20 * len(find_triangles(g))
    for v in range(n):
        s += sum(1 for x in bfs_distances(g, v) if not isinstance(x, int) or x > 3)
    return s


def search_g20(seed: int, restarts: int = 200, steps: int = 20_000) -> Graph | None:
    """Local search for a 20-vertex cubic triangle-free twin-free graph of diameter 3."""
    rng = random.Random(seed)
    for _ in range(restarts):
        edges = set(random_regular(20, 3, rng.randrange(1 << 30)).edges)
        score = _far_pairs(edges, 20)
        for _ in range(steps):
            if score == 0:
                break
            (a, b), (c, d) = rng.sample(sorted(edges), 2)
            if rng.random() < 0.5:
                c, d = d, c
            e1, e2 = tuple(sorted((a, c))), tuple(sorted((b, d)))
            if len({a, b, c, d}) < 4 or e1 in edges or e2 in edges:
                continue
            trial = (edges - {(a, b), tuple(sorted((c, d)))}) | {e1, e2}
            s2 = _far_pairs(trial, 20)
            if s2 <= score:
                edges, score = trial, s2
        if score == 0:
            g = Graph(20, edges)
            if not find_twins(g) and diameter(g) == 3:
                return g
    return None


# -- periodic patterns -------------------------------------------------------------------


def ladder_fixture() -> dict:
    """Period-8 pattern, one non-detector per rail: rail 0 at phase 0, rail 1
    at the first phase that is valid on m = 8 and 16 and optimal there."""
    from .families import ladder_graph

    for phase in range(8):
        ok = True
        for m in (8, 16):
            g = ladder_graph(m)
            nondet = [c for c in range(0, m, 8)] + [m + c for c in range(phase, m, 8)]
            if not nondetectors_ok(g, nondet) or g.n - max_nondetectors_cubic(g).size != len(nondet):
                ok = False
                break
        if ok:
            return {"period": 8, "nondetectors": [[0, 0], [1, phase]]}
    raise RuntimeError("no valid ladder phase")


def hex_fixture(rows: int = 4, cols: int = 6) -> dict:
    """Lexicographically least optimal non-detector set on the smallest
    girth-6 hex torus, reduced to its row period."""
    from .families import hex_torus_graph

    g = hex_torus_graph(rows, cols)
    best = max_nondetectors_cubic(g)
    inside = set(best.detectors)
    cells = sorted(divmod(v, cols) for v in range(g.n) if v not in inside)
    pr = rows
    for p in range(2, rows, 2):
        if rows % p == 0 and {((r + p) % rows, c) for r, c in cells} == set(cells):
            pr = p
            break
    return {"rows_period": pr, "cols_period": cols,
            "nondetectors": [[r, c] for r, c in cells if r < pr]}


# -- driver ---------------------------------------------------------------------------------

G20_SEED = 1


def regenerate(out: Path, only=None) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def dump(name, obj):
        path = out / name
        path.write_text(json.dumps(obj, indent=2) + "\n")
        written.append(path)

    want = set(only or ("g6", "g18", "g20", "ladder", "hex"))
    if "g6" in want:
        dump("g6_block.json", g6_fixture())
    if "g18" in want:
        dump("g18_block.json", g18_fixture())
    if "g20" in want:
        g = search_g20(G20_SEED)
        if g is None:
            raise RuntimeError("G20 search failed")
        (out / "g20.el").write_text(format_graph(g))
        written.append(out / "g20.el")
        dump("g20.json", {"family": "G20", "params": {"seed": G20_SEED},
                          "labels": {f"v{i}": i for i in range(20)},
                          "code": list(range(1, 20)), "claimed_size": 19})
    if "ladder" in want:
        dump("ladder_pattern.json", ladder_fixture())
    if "hex" in want:
        dump("hex_pattern.json", hex_fixture())
    return written


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m erric.fixtures", description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DATA_DIR)
    ap.add_argument("--only", nargs="*", choices=["g6", "g18", "g20", "ladder", "hex"])
    args = ap.parse_args(argv)
    for path in regenerate(args.out, args.only):
        print(path, file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
