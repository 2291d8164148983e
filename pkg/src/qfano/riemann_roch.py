"""Orbifold Riemann-Roch for divisors tA + sXi on a Q-Fano threefold.

For a Weil divisor D that is locally i*K at a basket point of type
1/r(1, -1, b),

    chi(D) = 1 + D(D-K)(2D-K)/12 + D.c2/12 + sum_P c_P(i_P),

and with -K numerically qA the cubic term is t(t+q)(2t+q) A^3 / 12.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Iterator

from .basket import (
    Basket,
    BasketPoint,
    TorsionAssignment,
    global_index,
    kawamata_degree,
    solve_l_classes,
    twist_classes,
)
from .numerics import InvalidInput, Rational, residue

# Sign of the identification between K-multiples and the correction-term
# parameter.  Pinned by calibrate() against A^3 = 1/210 for q = 13.
ORIENTATION = 1


class UnsupportedIndex(ValueError):
    pass


class VanishingNotApplicable(ValueError):
    pass


class NoOrder(ValueError):
    pass


@lru_cache(maxsize=None)
def correction_table(r: int, b: int) -> tuple[Rational, ...]:
    """c(i) for i = 0..r-1 at a point of type 1/r(1, -1, b)."""
    out = []
    acc = Fraction(0)
    for i in range(r):
        out.append(Fraction(-i * (r * r - 1), 12 * r) + acc)
        x = (b * i) % r
        acc += Fraction(x * (r - x), 2 * r)
    return tuple(out)


def correction_term(point: BasketPoint, i: int) -> Rational:
    if not 0 <= i < point.r:
        raise InvalidInput(f"class {i} out of range for index {point.r}")
    if point.b is None:
        raise InvalidInput(f"point of index {point.r} has no twist")
    return correction_table(point.r, point.b)[i]


@dataclass(frozen=True)
class DivisorClass:
    t: int
    s: int = 0


@dataclass(frozen=True)
class Geometry:
    q: int
    basket: Basket
    l: tuple[int, ...]
    torsion: TorsionAssignment | None
    a_cubed: Rational
    a_dot_c2: Rational
    # -K ~ qA - canonical_shift * Xi; nonzero only when K + qA is torsion
    canonical_shift: int = field(default=0)

    @property
    def n(self) -> int:
        return self.torsion.n if self.torsion else 1


def a_cubed(q: int, basket: Basket, l: tuple[int, ...]) -> Rational:
    if q < 3:
        raise UnsupportedIndex(f"A^3 formula needs q >= 3, got {q}")
    a_c2 = kawamata_degree(basket) / q
    corr = sum(
        (correction_term(p, residue(ORIENTATION * -li, p.r)) for p, li in zip(basket, l)),
        Fraction(0),
    )
    return Fraction(12, (q - 1) * (q - 2)) * (1 - a_c2 / 12 + corr)


def make_geometry(q: int, basket: Basket, l: tuple[int, ...] | None = None,
                  torsion: TorsionAssignment | None = None,
                  canonical_shift: int = 0) -> Geometry:
    if l is None:
        l = solve_l_classes(q, basket)
    return Geometry(
        q=q,
        basket=basket,
        l=tuple(l),
        torsion=torsion,
        a_cubed=a_cubed(q, basket, tuple(l)),
        a_dot_c2=kawamata_degree(basket) / q,
        canonical_shift=canonical_shift,
    )


def local_class(geometry: Geometry, pos: int, D: DivisorClass) -> int:
    p = geometry.basket.points[pos]
    w = D.t * geometry.l[pos]
    if D.s:
        if geometry.torsion is None:
            raise InvalidInput("torsion multiple given but geometry has no torsion")
        w += D.s * geometry.torsion.k[pos]
    return residue(ORIENTATION * w, p.r)


def euler_characteristic(geometry: Geometry, D: DivisorClass) -> Rational:
    q, t = geometry.q, D.t
    chi = 1 + Fraction(t * (t + q) * (2 * t + q), 12) * geometry.a_cubed + t * geometry.a_dot_c2 / 12
    for pos, p in enumerate(geometry.basket.points):
        chi += correction_table(p.r, p.b)[local_class(geometry, pos, D)]
    return chi


def dim_linear_system(geometry: Geometry, D: DivisorClass) -> int:
    if D.t <= -geometry.q:
        raise VanishingNotApplicable(f"t={D.t} <= -q; D - K is not ample")
    chi = euler_characteristic(geometry, D)
    if chi.denominator != 1:
        raise ValueError(f"non-integral chi({D.t}A+{D.s}Xi) = {chi}")
    return int(chi) - 1


def anticanonical(geometry: Geometry) -> DivisorClass:
    return DivisorClass(geometry.q, residue(-geometry.canonical_shift, geometry.n))


def genus(geometry: Geometry) -> int:
    chi = euler_characteristic(geometry, anticanonical(geometry))
    if chi.denominator != 1:
        raise ValueError(f"non-integral chi(-K) = {chi}")
    return int(chi) - 2


def torsion_order(geometry: Geometry, t: TorsionAssignment | None = None) -> int:
    """Least n >= 1 with chi(n Xi) = 1, searched up to the global index."""
    if t is not None and t is not geometry.torsion:
        geometry = Geometry(geometry.q, geometry.basket, geometry.l, t,
                            geometry.a_cubed, geometry.a_dot_c2, geometry.canonical_shift)
    if geometry.torsion is None:
        raise InvalidInput("no torsion data")
    if not any(geometry.torsion.k):
        return 1
    for n in range(1, global_index(geometry.basket) + 1):
        if euler_characteristic(geometry, DivisorClass(0, n)) == 1:
            return n
    raise NoOrder("no n up to the global index has chi(n Xi) = 1")


def vanishing_holds(geometry: Geometry) -> bool:
    """chi(tA + sXi) = 0 for -q < t < 0 and 0 <= s < n."""
    return all(
        euler_characteristic(geometry, DivisorClass(t, s)) == 0
        for s in range(geometry.n)
        for t in range(-geometry.q + 1, 0)
    )


def twist_assignments(basket: Basket) -> Iterator[Basket]:
    """All twisted refinements of ``basket``, lexicographic in the twists.

    Points that already carry a twist keep it; equal indices are treated as
    a multiset so permutations are not repeated.
    """
    fixed = [p for p in basket if p.b is not None]
    groups: dict[int, int] = {}
    for p in basket:
        if p.b is None:
            groups[p.r] = groups.get(p.r, 0) + 1
    choices = [
        list(combinations_with_replacement(twist_classes(r), m)) for r, m in sorted(groups.items())
    ]
    rs = sorted(groups)
    for combo in product(*choices):
        pts = list(fixed)
        for r, bs in zip(rs, combo):
            pts.extend(BasketPoint(r, b) for b in bs)
        yield Basket(tuple(pts))


def calibrate() -> int:
    """Return the orientation sign reproducing A^3 = 1/210 for q = 13, B = (2,3,3,5,7)."""
    global ORIENTATION
    saved = ORIENTATION
    hits = []
    try:
        for sign in (1, -1):
            ORIENTATION = sign
            for tb in twist_assignments(Basket.parse("2,3,3,5,7")):
                if a_cubed(13, tb, solve_l_classes(13, tb)) == Fraction(1, 210):
                    hits.append(sign)
                    break
    finally:
        ORIENTATION = saved
    if len(hits) != 1:
        raise RuntimeError(f"calibration ambiguous: {hits}")
    return hits[0]
