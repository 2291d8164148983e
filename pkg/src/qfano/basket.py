"""Baskets of terminal cyclic quotient points and their local class data."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .numerics import InvalidInput, Rational, residue


class NoSolution(ValueError):
    pass


class InconsistentTorsion(ValueError):
    pass


def twist_classes(r: int) -> list[int]:
    """Canonical twists ``b <= r - b`` coprime to ``r``."""
    return [b for b in range(1, r // 2 + 1) if gcd(b, r) == 1]


@dataclass(frozen=True)
class BasketPoint:
    """Point of type 1/r(1, -1, b); ``b`` is None when only the index is known."""

    r: int
    b: int | None = None

    def __post_init__(self):
        if self.r < 2:
            raise InvalidInput(f"singularity index must be >= 2, got {self.r}")
        b = self.b
        if b is None and len(twist_classes(self.r)) == 1:
            b = 1
        if b is not None:
            if gcd(b, self.r) != 1:
                raise InvalidInput(f"twist {b} is not coprime to {self.r}")
            b = residue(b, self.r)
            b = min(b, self.r - b)
        object.__setattr__(self, "b", b)

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.r, self.b or 0)

    def __lt__(self, other: "BasketPoint") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        if self.b is None or len(twist_classes(self.r)) == 1:
            return str(self.r)
        return f"{self.r}:{self.b}"


@dataclass(frozen=True)
class Basket:
    points: tuple[BasketPoint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted(self.points, key=lambda p: p.sort_key)))

    @classmethod
    def of(cls, *items: int | tuple[int, int] | BasketPoint) -> "Basket":
        pts = []
        for it in items:
            if isinstance(it, BasketPoint):
                pts.append(it)
            elif isinstance(it, tuple):
                pts.append(BasketPoint(*it))
            else:
                pts.append(BasketPoint(it))
        return cls(tuple(pts))

    @classmethod
    def parse(cls, text: str) -> "Basket":
        """Parse ``"2,3,3,5,7"`` or ``"5:2,7:3"``; the empty string is the empty basket."""
        pts = []
        for chunk in text.replace(" ", "").split(","):
            if not chunk:
                continue
            r, sep, b = chunk.partition(":")
            try:
                pts.append(BasketPoint(int(r), int(b) if sep else None))
            except ValueError as exc:
                if isinstance(exc, InvalidInput):
                    raise
                raise InvalidInput(f"bad basket entry {chunk!r}") from None
        return cls(tuple(pts))

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(p.r for p in self.points)

    @property
    def twisted(self) -> bool:
        return all(p.b is not None for p in self.points)

    def indices_only(self) -> "Basket":
        return Basket(tuple(BasketPoint(p.r) for p in self.points))


@dataclass(frozen=True)
class TorsionAssignment:
    """Local classes ``k_P`` of a torsion element, as multiples of K, and its order."""

    k: tuple[int, ...]
    n: int


def kawamata_degree(basket: Basket) -> Rational:
    """-K.c2 = 24 - sum(r - 1/r)."""
    return Fraction(24) - sum((Fraction(p.r * p.r - 1, p.r) for p in basket), Fraction(0))


def global_index(basket: Basket) -> int:
    return lcm(1, *basket.indices)


def qW_equals_qQ(q: int, basket: Basket) -> bool:
    return gcd(q, global_index(basket)) == 1


def solve_l_classes(q: int, basket: Basket) -> tuple[int, ...]:
    """Local classes of A (A ~ l K near each point) from 1 + q l = 0 mod r."""
    out = []
    for pos, p in enumerate(basket):
        if gcd(q, p.r) != 1:
            raise NoSolution(f"point {pos} (index {p.r}) is not coprime to q={q}")
        out.append(residue(-pow(q, -1, p.r), p.r))
    return tuple(out)


def local_order(r: int, k: int) -> int:
    return r // gcd(r, k)


def check_torsion(basket: Basket, t: TorsionAssignment) -> None:
    if len(t.k) != len(basket):
        raise InconsistentTorsion("torsion assignment length differs from basket")
    for p, k in zip(basket, t.k):
        if not 0 <= k < p.r:
            raise InconsistentTorsion(f"k={k} out of range for index {p.r}")
        if t.n % local_order(p.r, k):
            raise InconsistentTorsion(
                f"local order {local_order(p.r, k)} at index {p.r} does not divide n={t.n}"
            )


def cover_basket(basket: Basket, t: TorsionAssignment) -> Basket:
    """Basket of the cyclic cover defined by the torsion element (indices only)."""
    check_torsion(basket, t)
    pts = []
    for p, k in zip(basket, t.k):
        o = local_order(p.r, k)
        if p.r // o > 1:
            pts.extend([BasketPoint(p.r // o)] * (t.n // o))
    return Basket(tuple(pts))


def allowed_discrepancies(r: int, m: int) -> frozenset[Rational]:
    """Discrepancies a/r of divisorial extractions of a point of index r
    whose basket has m points of index r (a divides m; a = 1 covers the
    Kawamata blowup)."""
    if r < 2 or m < 1:
        raise InvalidInput("need r >= 2 and m >= 1")
    return frozenset(Fraction(a, r) for a in range(1, m + 1) if m % a == 0)


def max_discrepancy(basket: Basket, index_divisor: int) -> Rational | None:
    counts = Counter(basket.indices)
    best = None
    for r, m in counts.items():
        if r % index_divisor:
            continue
        top = max(allowed_discrepancies(r, m))
        if best is None or top > best:
            best = top
    return best


def canonical_torsion(basket: Basket, k: Sequence[int], n: int) -> tuple[Basket, tuple[int, ...]]:
    """Canonical (basket, k) up to permuting equal points and Xi -> jXi, gcd(j, n) = 1."""
    best = None
    for j in range(1, n):
        if gcd(j, n) != 1:
            continue
        pairs = sorted(
            ((p, residue(j * ki, p.r)) for p, ki in zip(basket, k)),
            key=lambda pk: (pk[0].sort_key, pk[1]),
        )
        kk = tuple(ki for _, ki in pairs)
        if best is None or kk < best[1]:
            best = (Basket(tuple(p for p, _ in pairs)), kk)
    if best is None:
        return basket, tuple(k)
    return best


def point_types(max_index: int = 24, coprime_to: int | None = None,
                indices: Iterable[int] | None = None) -> list[BasketPoint]:
    allowed = set(indices) if indices is not None else None
    out = []
    for r in range(2, max_index + 1):
        if allowed is not None and r not in allowed:
            continue
        if coprime_to is not None and gcd(r, coprime_to) != 1:
            continue
        out.extend(BasketPoint(r, b) for b in twist_classes(r))
    return out
