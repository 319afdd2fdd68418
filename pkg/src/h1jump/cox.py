"""Line-bundle cohomology on P(O(e1)+O(e2)+O(e3)) by counting Cox-ring monomials.

The Cox ring is Q[z0, z1, x1, x2, x3] with deg z_i = (1, 0) and
deg x_k = (-e_k, 1).  A Laurent monomial of bidegree (b, a) contributes to
H^(i1 + i2), where i1 records the sign pattern of the z-exponents (all >= 0
gives 0, all <= -1 gives 1) and i2 that of the x-exponents (all >= 0 gives 0,
all <= -1 gives 2).  Mixed sign patterns contribute nothing.

This is a counting oracle: no linear algebra, no pushforward formulas.
"""

from __future__ import annotations

from .cohomology import CohomologyVector, SplitBundle, split_h, twist_split


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def x_blocks(a: int):
    """x-exponent vectors with sum ``a`` and a uniform sign pattern, with their i2."""
    if a >= 0:
        for q in _compositions(a, 3):
            yield q, 0
    if a <= -3:
        for r in _compositions(-a - 3, 3):
            yield tuple(-1 - x for x in r), 2


class CoxGrading:
    """Bigrading of the Cox ring of P(E) for a rank-3 split E."""

    def __init__(self, e):
        self.e = e if isinstance(e, SplitBundle) else SplitBundle.of(e)
        if self.e.rank != 3:
            raise ValueError("Cox grading implemented for rank 3 only")
        # sanity: global sections of O_P(1)(b) are H^0(E(b))
        b = 1 - min(self.e.degrees)
        count = sum(max(b + self.z_degree(q) + 1, 0) for q, _ in x_blocks(1))
        if count != split_h(twist_split(self.e, b))[0]:
            raise AssertionError("Cox grading disagrees with h0(E(b))")

    def z_degree(self, q) -> int:
        """``sum e_k q_k``; bidegree ``(b, a)`` then forces ``p0 + p1 = b + z_degree(q)``."""
        return sum(ek * qk for ek, qk in zip(self.e.degrees, q))

    def degree(self, p, q) -> tuple:
        """Bidegree ``(b, a)`` of the monomial ``z^p x^q``."""
        return (p[0] + p[1] - self.z_degree(q), sum(q))


def cox_cohomology(e, a: int, b: int) -> CohomologyVector:
    grading = CoxGrading(e)
    h = [0, 0, 0, 0]
    for q, i2 in x_blocks(a):
        s = b + grading.z_degree(q)
        h[i2] += max(s + 1, 0)
        h[i2 + 1] += max(-s - 1, 0)
    return CohomologyVector(*h)


def cox_witnesses(e, a: int, b: int) -> dict:
    """Contributing Laurent monomials per cohomological degree.

    Each monomial is the exponent vector ``(p0, p1, q1, q2, q3)``.
    """
    grading = CoxGrading(e)
    out = {0: [], 1: [], 2: [], 3: []}
    for q, i2 in x_blocks(a):
        s = b + grading.z_degree(q)
        for p0 in range(0, s + 1):
            out[i2].append((p0, s - p0) + q)
        for p0 in range(-1, s, -1):
            out[i2 + 1].append((p0, s - p0) + q)
    return out


def contributes(e, a: int, b: int, mono) -> int | None:
    """Cohomological degree a monomial contributes to, or ``None`` (mixed signs / wrong degree)."""
    grading = CoxGrading(e)
    p, q = tuple(mono[:2]), tuple(mono[2:])
    if grading.degree(p, q) != (b, a):
        return None
    if all(x >= 0 for x in p):
        i1 = 0
    elif all(x <= -1 for x in p):
        i1 = 1
    else:
        return None
    if all(x >= 0 for x in q):
        i2 = 0
    elif all(x <= -1 for x in q):
        i2 = 2
    else:
        return None
    return i1 + i2


def format_monomial(mono) -> str:
    names = ("z0", "z1", "x1", "x2", "x3")
    parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, mono) if k]
    return "*".join(parts) or "1"
