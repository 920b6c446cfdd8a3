"""Domination/distinguishing counts, verifiers for IC, RED:IC, DET:IC and
ERR:IC, and exact share computation."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .graph import Graph, GraphError

Rational = Fraction


class CodeKind(enum.Enum):
    IC = "IC"
    RED_IC = "RED_IC"
    DET_IC = "DET_IC"
    ERR_IC = "ERR_IC"

    @classmethod
    def parse(cls, text: str) -> "CodeKind":
        key = text.strip().upper().replace(":", "_").replace("-", "_")
        aliases = {"ERR": "ERR_IC", "RED": "RED_IC", "DET": "DET_IC"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown code kind {text!r}") from None


# (domination, distinguishing) thresholds; DET_IC distinguishing is one-sided
REQUIREMENTS = {
    CodeKind.IC: (1, 1),
    CodeKind.RED_IC: (2, 2),
    CodeKind.DET_IC: (2, 2),
    CodeKind.ERR_IC: (3, 3),
}


@dataclass
class VerificationReport:
    kind: CodeKind
    domination_failures: list[tuple[int, int, int]] = field(default_factory=list)
    distinguishing_failures: list[tuple[int, int, dict]] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.domination_failures and not self.distinguishing_failures

    def __bool__(self) -> bool:
        return self.valid

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "valid": self.valid,
            "domination_failures": [
                {"vertex": v, "dom_count": c, "required": r} for v, c, r in self.domination_failures
            ],
            "distinguishing_failures": [
                {"u": u, "v": v, **ev} for u, v, ev in self.distinguishing_failures
            ],
        }


def to_mask(S: Iterable[int]) -> int:
    m = 0
    for v in S:
        m |= 1 << v
    return m


def from_mask(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def _check_members(g: Graph, S) -> frozenset[int]:
    S = frozenset(S)
    for v in S:
        if not 0 <= v < g.n:
            raise GraphError(f"detector {v} out of range for n={g.n}")
    return S


def dominators(g: Graph, S, v: int) -> frozenset[int]:
    """N_S[v] = N[v] ∩ S."""
    return (g.neighbors(v) | {v}) & frozenset(S)


def domination_count(g: Graph, S, v: int) -> int:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    return len(dominators(g, S, v))


def distinguishing_count(g: Graph, S, u: int, v: int) -> int:
    """|N_S[u] △ N_S[v]|."""
    if u == v:
        raise ValueError("distinguishing_count needs two distinct vertices")
    S = frozenset(S)
    return len(dominators(g, S, u) ^ dominators(g, S, v))


def verify_code(g: Graph, S, kind: CodeKind = CodeKind.ERR_IC) -> VerificationReport:
    """Check S against the requirements of ``kind``; every failure is listed."""
    S = _check_members(g, S)
    smask = to_mask(S)
    masks = [m & smask for m in g.closed_masks()]
    dom_req, dist_req = REQUIREMENTS[kind]
    rep = VerificationReport(kind)
    counts = [m.bit_count() for m in masks]
    for v in range(g.n):
        if counts[v] < dom_req:
            rep.domination_failures.append((v, counts[v], dom_req))
    for u in range(g.n):
        mu = masks[u]
        for v in range(u + 1, g.n):
            mv = masks[v]
            if kind is CodeKind.DET_IC:
                a = (mu & ~mv).bit_count()
                b = (mv & ~mu).bit_count()
                if a < dist_req and b < dist_req:
                    rep.distinguishing_failures.append(
                        (u, v, {"only_u": from_mask(mu & ~mv), "only_v": from_mask(mv & ~mu)})
                    )
            else:
                diff = mu ^ mv
                if diff.bit_count() < dist_req:
                    rep.distinguishing_failures.append(
                        (u, v, {"sym_diff": from_mask(diff), "required": dist_req})
                    )
    return rep


def is_errcode(g: Graph, S) -> bool:
    return verify_code(g, S, CodeKind.ERR_IC).valid


def _require_dominating(g: Graph, S: frozenset[int]) -> None:
    for u in range(g.n):
        if not dominators(g, S, u):
            raise ValueError(f"S does not dominate vertex {u}")


def _share(g: Graph, S: frozenset[int], v: int) -> Fraction:
    return sum((Fraction(1, len(dominators(g, S, u))) for u in sorted(g.neighbors(v) | {v})), Fraction(0))


def share(g: Graph, S, v: int) -> Fraction:
    """sh(v) = sum over u in N[v] of 1/|N[u] ∩ S|, exactly. S must dominate G."""
    S = _check_members(g, S)
    if v not in S:
        raise ValueError(f"share is defined for detectors only; {v} is not in S")
    _require_dominating(g, S)
    return _share(g, S, v)


def share_total(g: Graph, S) -> Fraction:
    S = _check_members(g, S)
    _require_dominating(g, S)
    return sum((_share(g, S, v) for v in sorted(S)), Fraction(0))


def sigma(*dom_counts: int) -> Fraction:
    """Sum of reciprocals, e.g. sigma(4, 4, 3, 3) == 7/6."""
    return sum((Fraction(1, k) for k in dom_counts), Fraction(0))
