"""Closed-form cohomology on P^1 and on projective bundles P(E) over P^1.

Normalization: ``p_* O_P(k) = Sym^k E`` for ``P = P(E)`` with ``E`` split of
rank 3.  Line bundles on ``P`` are ``O_P(a) (x) p^* O(b)``; their direct images
are computed fibrewise on P^2 (only ``R^0`` and ``R^2`` occur) and the Leray
sequence over the curve degenerates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import NamedTuple


class CohomologyVector(NamedTuple):
    h0: int
    h1: int
    h2: int
    h3: int


class AmbiguousSequence(ValueError):
    """The hypersurface long exact sequence does not reduce to isomorphisms."""


@dataclass(frozen=True)
class SplitBundle:
    """``O(e_1) + ... + O(e_r)`` with ``e_1 <= ... <= e_r``."""

    degrees: tuple

    def __post_init__(self):
        degs = tuple(sorted(int(d) for d in self.degrees))
        if not degs:
            raise ValueError("a split bundle needs at least one summand")
        object.__setattr__(self, "degrees", degs)

    @classmethod
    def of(cls, *degrees) -> "SplitBundle":
        if len(degrees) == 1 and not isinstance(degrees[0], int):
            degrees = tuple(degrees[0])
        return cls(tuple(degrees))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def __iter__(self):
        return iter(self.degrees)


@dataclass(frozen=True)
class LineBundleOnPE:
    e: SplitBundle
    a: int
    b: int

    def __post_init__(self):
        if not isinstance(self.e, SplitBundle):
            object.__setattr__(self, "e", SplitBundle.of(self.e))
        if self.e.rank != 3:
            raise ValueError("only rank-3 bundles are supported")


def h_p1_line(d: int) -> tuple:
    """``(h0, h1)`` of O(d) on P^1."""
    return max(d + 1, 0), max(-d - 1, 0)


def split_h(E: SplitBundle | None) -> tuple:
    if E is None:
        return 0, 0
    h0 = h1 = 0
    for d in E.degrees:
        a, b = h_p1_line(d)
        h0 += a
        h1 += b
    return h0, h1


def sym_power_split(E: SplitBundle, k: int) -> SplitBundle:
    if k < 0:
        raise ValueError("negative symmetric power")
    if k == 0:
        return SplitBundle((0,))
    return SplitBundle(tuple(sum(c) for c in combinations_with_replacement(E.degrees, k)))


def dual_split(E: SplitBundle) -> SplitBundle:
    return SplitBundle(tuple(-d for d in E.degrees))


def twist_split(E: SplitBundle, d: int) -> SplitBundle:
    return SplitBundle(tuple(x + d for x in E.degrees))


def pushforwards(L: LineBundleOnPE) -> tuple:
    """``(R^0 p_* L, R^2 p_* L)``; ``None`` stands for the zero sheaf."""
    e, a, b = L.e, L.a, L.b
    r0 = twist_split(sym_power_split(e, a), b) if a >= 0 else None
    if a <= -3:
        # relative duality with omega_{P/B} = O_P(-3) (x) p^* det E
        r2 = twist_split(dual_split(sym_power_split(e, -a - 3)), b - e.degree)
    else:
        r2 = None
    return r0, r2


def cohomology_PE(L: LineBundleOnPE) -> CohomologyVector:
    r0, r2 = pushforwards(L)
    h0, h1 = split_h(r0)
    h2, h3 = split_h(r2)
    return CohomologyVector(h0, h1, h2, h3)


def hypersurface_h(e, a: int, b: int) -> tuple:
    """``(h0, h1, h2)`` of O_X for X cut out by a section of ``O_P(a) (x) p^* O(b)``."""
    e = e if isinstance(e, SplitBundle) else SplitBundle.of(e)
    if a < 1:
        raise ValueError("the defining section must have positive fibre degree")
    ideal = cohomology_PE(LineBundleOnPE(e, -a, -b))
    ambient = cohomology_PE(LineBundleOnPE(e, 0, 0))
    if ideal.h0 or ideal.h1 or ambient.h1 or ambient.h2 or ambient.h3:
        raise AmbiguousSequence(
            f"ambiguous long exact sequence: H(F)={tuple(ideal)}, H(O_P)={tuple(ambient)}"
        )
    return ambient.h0, ideal.h2, ideal.h3


def h1_closed_form(e) -> int:
    """h^1(O_X) = h^0(E^dual(-1)) for det E trivial and X in |O_P(4) (x) p^*O(1)|."""
    e = e if isinstance(e, SplitBundle) else SplitBundle.of(e)
    if e.degree != 0:
        raise ValueError(f"determinant nontrivial: deg det E = {e.degree}")
    return sum(max(-d, 0) for d in e.degrees)
