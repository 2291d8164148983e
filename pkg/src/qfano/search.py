"""Candidate search: baskets under the Kawamata bound, the A^3 / integrality /
Bogomolov-Miyaoka / vanishing filters, torsion classification and the
search for indices where K + qA is a nontrivial torsion class.

The expensive part of the torsion searches is choosing local classes point
by point.  The conditions chi(tA + sXi) = 0 are linear in the per-point
correction terms, so after scaling to integers we split the points in two
halves and join on the vector of conditions for s = 0, 1, 2 (these rows are
necessary for every order n >= 2 since the conditions are periodic in s).
"""

from __future__ import annotations

import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .basket import (
    Basket,
    BasketPoint,
    TorsionAssignment,
    canonical_torsion,
    cover_basket,
    global_index,
    kawamata_degree,
    local_order,
    point_types,
    solve_l_classes,
)
from .data import load_tables
from .numerics import InvalidInput, Rational
from .riemann_roch import (
    DivisorClass,
    Geometry,
    correction_table,
    euler_characteristic,
    genus,
    make_geometry,
    twist_assignments,
)

log = logging.getLogger(__name__)

MODES = ("torsion-free", "torsion", "q-drop")
KAWAMATA_MAX_INDEX = 24  # r - 1/r < 24 forces r <= 24
FANO_INDICES = (*range(1, 12), 13, 17, 19)
FILTERS = ("coprimality", "a3-positivity", "integrality", "bogomolov-miyaoka", "vanishing")


@dataclass(frozen=True)
class DimsConstraint:
    t: int
    s: int
    op: str
    value: int

    _PATTERN = re.compile(r"^dim(\d+)A(?:\+(\d+)Xi)?(>=|<=|==|>|<)(-?\d+)$")

    @classmethod
    def parse(cls, text: str) -> "DimsConstraint":
        m = cls._PATTERN.match(text.replace(" ", ""))
        if not m:
            raise InvalidInput(f"bad dims filter {text!r}; expected e.g. dim2A>=1 or dim3A+1Xi<=2")
        t, s, op, v = m.groups()
        return cls(int(t), int(s or 0), op, int(v))

    def holds(self, value: int) -> bool:
        return {
            ">=": value >= self.value,
            "<=": value <= self.value,
            "==": value == self.value,
            ">": value > self.value,
            "<": value < self.value,
        }[self.op]

    def __str__(self) -> str:
        xi = f"+{self.s}Xi" if self.s else ""
        return f"dim{self.t}A{xi}{self.op}{self.value}"


@dataclass(frozen=True)
class SearchConfig:
    q: int
    mode: str = "torsion-free"
    max_index: int | None = None
    indices: tuple[int, ...] | None = None
    genus_threshold: int | None = None
    genus_min: int | None = None
    genus_max: int | None = None
    dims_filter: tuple[DimsConstraint, ...] = ()
    external_bounds: dict[int, int] | None = None
    workers: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidInput(f"unknown mode {self.mode!r}")
        if self.q < (3 if self.mode == "q-drop" else 2):
            raise InvalidInput(f"q={self.q} too small for mode {self.mode}")
        if self.workers < 1:
            raise InvalidInput("need at least one worker")

    @property
    def index_cap(self) -> int:
        return min(self.max_index or KAWAMATA_MAX_INDEX, KAWAMATA_MAX_INDEX)

    def bounds(self) -> dict[int, int]:
        if self.external_bounds is not None:
            return self.external_bounds
        return default_external_bounds()


@dataclass(frozen=True)
class TorsionData:
    n: int
    k: tuple[int, ...]
    cover: Basket | None = None
    cover_a_cubed: Rational | None = None
    cover_genus: int | None = None
    # order of K + qA after the best re-choice A -> A + jXi (q-drop only)
    reduced_n: int | None = None


@dataclass(frozen=True)
class CandidateRecord:
    q: int
    basket: Basket
    l: tuple[int, ...]
    a_cubed: Rational
    minus_k_c2: Rational
    genus: int
    dims: tuple[tuple[int, ...], ...]
    torsion: TorsionData | None = None
    alternatives: tuple[Basket, ...] = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return self.torsion.n if self.torsion else 1

    def sort_key(self):
        k = self.torsion.k if self.torsion else ()
        return (self.q, self.n, [p.sort_key for p in self.basket], k, self.l)

    def dim(self, t: int, s: int = 0) -> int:
        return self.dims[s][t - 1]


@dataclass(frozen=True)
class Rejection:
    basket: Basket
    filter: str

    def __bool__(self) -> bool:
        return False


# ---------------------------------------------------------------------------
# configuration data

def default_genus_threshold(q: int) -> int | None:
    return load_tables()["genus_thresholds"].get(q)


def default_external_bounds() -> dict[int, int]:
    return dict(load_tables()["external_cover_genus_bounds"])


# ---------------------------------------------------------------------------
# basket enumeration

def _types_for(config: SearchConfig) -> list[BasketPoint]:
    return point_types(config.index_cap, indices=config.indices)


def enumerate_baskets(config: SearchConfig) -> Iterator[Basket]:
    """Twisted baskets with positive Kawamata degree, in canonical order.

    Depth first over sorted point types, so every basket is emitted as a
    non-decreasing sequence and the empty basket comes first.
    """
    types = _types_for(config)
    weights = [Fraction(p.r * p.r - 1, p.r) for p in types]
    cur: list[BasketPoint] = []

    def rec(start: int, used: Fraction) -> Iterator[Basket]:
        yield Basket(tuple(cur))
        for j in range(start, len(types)):
            nxt = used + weights[j]
            if nxt < 24:
                cur.append(types[j])
                yield from rec(j, nxt)
                cur.pop()

    yield from rec(0, Fraction(0))


# ---------------------------------------------------------------------------
# torsion-free filters

def _dims(geometry: Geometry) -> tuple[tuple[int, ...], ...]:
    rows = []
    for s in range(geometry.n):
        row = []
        for t in range(1, geometry.q + 1):
            chi = euler_characteristic(geometry, DivisorClass(t, s))
            row.append(int(chi) - 1)
        rows.append(tuple(row))
    return tuple(rows)


def _first_failure(q: int, basket: Basket) -> tuple[str | None, Geometry | None]:
    """Run the filters in cost order on a twisted basket."""
    if any(gcd(q, r) != 1 for r in basket.indices):
        return "coprimality", None
    g = make_geometry(q, basket)
    if g.a_cubed <= 0:
        return "a3-positivity", g
    if (global_index(basket) * g.a_cubed).denominator != 1:
        return "integrality", g
    if (4 * q * q - 3 * q) * g.a_cubed > 4 * kawamata_degree(basket):
        return "bogomolov-miyaoka", g
    for t in range(-q + 1, 0):
        if euler_characteristic(g, DivisorClass(t)) != 0:
            return "vanishing", g
    return None, g


def _record(g: Geometry, torsion: TorsionData | None = None) -> CandidateRecord:
    return CandidateRecord(
        q=g.q,
        basket=g.basket,
        l=g.l,
        a_cubed=g.a_cubed,
        minus_k_c2=kawamata_degree(g.basket),
        genus=genus(g),
        dims=_dims(g),
        torsion=torsion,
    )


def filter_candidate(q: int, basket: Basket, mode: str = "torsion-free") -> CandidateRecord | Rejection:
    """Accept ``basket`` at index ``q`` if some twist assignment passes every filter.

    Twist assignments are tried in lexicographic order; the first survivor is
    the record, later survivors go to ``alternatives``.  A rejection names the
    furthest filter reached by any assignment.
    """
    if q < 3:
        raise InvalidInput("filters need q >= 3")
    if mode == "q-drop":
        raise InvalidInput("q-drop candidates are produced by search_q_drop")
    survivors = []
    worst = -1
    for tb in twist_assignments(basket):
        fail, g = _first_failure(q, tb)
        if fail is None:
            survivors.append(g)
        else:
            worst = max(worst, FILTERS.index(fail))
    if not survivors:
        return Rejection(basket, FILTERS[worst] if worst >= 0 else "coprimality")
    rec = _record(survivors[0])
    return replace(rec, alternatives=tuple(g.basket for g in survivors[1:]))


def _passes_config(rec: CandidateRecord, config: SearchConfig) -> bool:
    if config.genus_threshold is not None and rec.genus >= config.genus_threshold:
        return False
    if config.genus_min is not None and rec.genus < config.genus_min:
        return False
    if config.genus_max is not None and rec.genus > config.genus_max:
        return False
    for c in config.dims_filter:
        if c.t < 1 or c.t > rec.q or c.s >= rec.n:
            raise InvalidInput(f"dims filter {c} outside the computed table")
        if not c.holds(rec.dim(c.t, c.s)):
            return False
    return True


def _accept_chunk(q: int, baskets: Sequence[Basket]) -> list[CandidateRecord]:
    out = []
    for b in baskets:
        fail, g = _first_failure(q, b)
        if fail is None:
            out.append(_record(g))
    return out


def _chunks(items: list, parts: int) -> list[list]:
    size = max(1, -(-len(items) // parts))
    return [items[i:i + size] for i in range(0, len(items), size)]


def _run_parallel(fn, q: int, baskets: list[Basket], workers: int) -> list:
    if workers == 1 or len(baskets) < 2:
        return fn(q, baskets)
    out = []
    chunks = _chunks(baskets, workers * 4)
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for part in ex.map(fn, [q] * len(chunks), chunks):
            out.extend(part)
    return out


def _coprime_baskets(config: SearchConfig) -> list[Basket]:
    cfg = replace(config, indices=tuple(
        r for r in range(2, config.index_cap + 1)
        if gcd(r, config.q) == 1 and (config.indices is None or r in config.indices)
    ))
    return list(enumerate_baskets(cfg))


def _merge_twists(records: list[CandidateRecord]) -> list[CandidateRecord]:
    """Collapse twist assignments of one index multiset with equal invariants."""
    groups: dict[tuple, CandidateRecord] = {}
    order = []
    for rec in sorted(records, key=CandidateRecord.sort_key):
        key = (rec.basket.indices, rec.a_cubed, rec.genus, rec.dims,
               rec.torsion.k if rec.torsion else None)
        if key in groups:
            first = groups[key]
            groups[key] = replace(first, alternatives=first.alternatives + (rec.basket,))
        else:
            groups[key] = rec
            order.append(key)
    return [groups[k] for k in order]


def search_q(config: SearchConfig) -> list[CandidateRecord]:
    """All torsion-free candidates of index q passing the config filters."""
    if config.mode != "torsion-free":
        raise InvalidInput("search_q runs in torsion-free mode")
    recs = _run_parallel(_accept_chunk, config.q, _coprime_baskets(config), config.workers)
    recs = [r for r in _merge_twists(recs) if _passes_config(r, config)]
    return sorted(recs, key=CandidateRecord.sort_key)


# ---------------------------------------------------------------------------
# meet in the middle over per-point local classes

def _mitm(states: list[list[tuple[object, tuple[int, ...]]]],
          target: tuple[int, ...]) -> Iterator[tuple]:
    """Yield every choice of one state per point whose vectors sum to ``target``."""
    width = len(target)
    half = len(states) // 2

    def table(part):
        res: dict[tuple[int, ...], list[tuple]] = {}
        for combo in product(*part):
            if combo:
                v = tuple(map(sum, zip(*(c[1] for c in combo))))
            else:
                v = (0,) * width
            res.setdefault(v, []).append(tuple(c[0] for c in combo))
        return res

    left, right = table(states[:half]), table(states[half:])
    for v in sorted(left):
        need = tuple(a - b for a, b in zip(target, v))
        for c2 in right.get(need, ()):
            for c1 in left[v]:
                yield c1 + c2


# lcm(1..24): scales every correction term to an integer
_ALL_DEN = lcm(*range(1, KAWAMATA_MAX_INDEX + 1))


def _torsion_keys(q: int) -> list[tuple[int, int]]:
    return [(t, s) for s in (1, 2) for t in range(-q + 1, 0)]


@lru_cache(maxsize=None)
def _torsion_states(q: int, r: int, b: int, l: int) -> tuple:
    scale = 12 * _ALL_DEN
    tab = correction_table(r, b)
    keys = _torsion_keys(q)
    out = []
    for k in range(r):
        vec = tuple(int(scale * tab[(t * l + s * k) % r]) for t, s in keys)
        out.append((k, vec))
    return tuple(out)


def torsion_extensions(rec: CandidateRecord, bounds: dict[int, int] | None = None) -> list[CandidateRecord]:
    """Torsion elements Xi of order n >= 2 compatible with a torsion-free candidate.

    ``bounds`` maps q to the largest admissible genus of the cyclic cover.
    """
    q, basket = rec.q, rec.basket
    base = make_geometry(q, basket, rec.l)
    keys = _torsion_keys(q)
    scale = 12 * _ALL_DEN
    target = []
    for t, _ in keys:
        x = -scale * (1 + Fraction(t * (t + q) * (2 * t + q), 12) * base.a_cubed + t * base.a_dot_c2 / 12)
        if x.denominator != 1:
            return []
        target.append(int(x))
    states = [list(_torsion_states(q, p.r, p.b, l)) for p, l in zip(basket, rec.l)]
    out = []
    seen = set()
    for k in _mitm(states, tuple(target)):
        if not any(k):
            continue
        n = lcm(*(local_order(p.r, ki) for p, ki in zip(basket, k)))
        t = TorsionAssignment(tuple(k), n)
        g = replace(base, torsion=t)
        if any(euler_characteristic(g, DivisorClass(0, s)) == 1 for s in range(1, n)):
            continue
        if any(euler_characteristic(g, DivisorClass(tt, s)) != 0
               for s in range(n) for tt in range(-q + 1, 0)):
            continue
        cb, ck = canonical_torsion(basket, k, n)
        if (cb, ck) in seen:
            continue
        seen.add((cb, ck))
        g = make_geometry(q, cb, solve_l_classes(q, cb), TorsionAssignment(ck, n))
        cover_g = sum((euler_characteristic(g, DivisorClass(q, s)) for s in range(n)), Fraction(0)) - 2
        cover_g = int(cover_g)
        if bounds and q in bounds and cover_g > bounds[q]:
            log.debug("dropping %s k=%s: cover genus %d > %d", cb, ck, cover_g, bounds[q])
            continue
        td = TorsionData(n, ck, cover_basket(cb, TorsionAssignment(ck, n)), n * g.a_cubed, cover_g)
        out.append(_record(g, td))
    return out


def _torsion_chunk(args) -> list[CandidateRecord]:
    q, baskets, bounds = args
    out = []
    for rec in _accept_chunk(q, baskets):
        out.extend(torsion_extensions(rec, bounds))
    return out


def search_torsion(config: SearchConfig) -> list[CandidateRecord]:
    """Candidates carrying a torsion class of order n >= 2, with cover data."""
    if config.mode != "torsion":
        raise InvalidInput("search_torsion runs in torsion mode")
    if config.q < 5:
        raise InvalidInput("torsion classification needs q >= 5")
    baskets = _coprime_baskets(config)
    bounds = config.bounds()
    if config.workers == 1:
        recs = _torsion_chunk((config.q, baskets, bounds))
    else:
        recs = []
        chunks = _chunks(baskets, config.workers * 4)
        with ProcessPoolExecutor(max_workers=config.workers) as ex:
            for part in ex.map(_torsion_chunk, [(config.q, c, bounds) for c in chunks]):
                recs.extend(part)
    recs = [r for r in _merge_twists(recs) if _passes_config(r, config)]
    return sorted(recs, key=CandidateRecord.sort_key)


# ---------------------------------------------------------------------------
# K + qA torsion

def _drop_keys(q: int) -> list[tuple[int, int]]:
    return [(t, s) for s in (0, 1, 2) for t in range(-q + 1, 0)]


def _drop_scale(q: int) -> int:
    return 12 * q * (q - 1) * (q - 2) * _ALL_DEN


@lru_cache(maxsize=None)
def _drop_states(q: int, r: int, b: int) -> tuple:
    """Per local class l of A: (l, k, A^3 weight, scaled condition vector).

    With Xi = K + qA the class k of Xi is 1 + q*l.  A^3 is affine in the
    per-point weights w = (r - 1/r)/(12q) + c(-l), and each condition
    chi(tA + sXi) = 0 splits into a constant plus per-point summands.
    """
    D = _drop_scale(q)
    rho = Fraction(r * r - 1, r)
    tab = correction_table(r, b)
    out = []
    for l in range(r):
        k = (1 + q * l) % r
        w = rho / (12 * q) + tab[-l % r]
        vec = []
        for t, s in _drop_keys(q):
            x = D * (Fraction(t * (t + q) * (2 * t + q), (q - 1) * (q - 2)) * w
                     - t * rho / (12 * q) + tab[(t * l + s * k) % r])
            assert x.denominator == 1
            vec.append(int(x))
        out.append(((l, k, w), tuple(vec)))
    return tuple(out)


@lru_cache(maxsize=None)
def _drop_target(q: int) -> tuple[int, ...]:
    D = _drop_scale(q)
    out = []
    for t, _ in _drop_keys(q):
        x = -D * (1 + Fraction(t * (t + q) * (2 * t + q), q * (q - 1)) + Fraction(2 * t, q))
        out.append(int(x))
    return tuple(out)


def reduced_order(q: int, n: int) -> int:
    """Least order of (1 + qj) Xi over j, i.e. of K + qA' for A' = A + jXi."""
    return min(n // gcd(n, 1 + q * j) for j in range(n))


def _drop_basket(q: int, basket: Basket) -> list[CandidateRecord]:
    L = global_index(basket)
    if gcd(q, L) == 1:
        return []
    kc2 = kawamata_degree(basket)
    states = [list(_drop_states(q, p.r, p.b)) for p in basket]
    out = []
    for combo in _mitm(states, _drop_target(q)):
        l = tuple(c[0] for c in combo)
        k = tuple(c[1] for c in combo)
        a3 = Fraction(12, (q - 1) * (q - 2)) * (Fraction(q - 2, q) + sum((c[2] for c in combo), Fraction(0)))
        if a3 <= 0 or (L * a3).denominator != 1 or (4 * q * q - 3 * q) * a3 > 4 * kc2:
            continue
        n = lcm(*(local_order(p.r, ki) for p, ki in zip(basket, k)))
        if n == 1:
            continue
        g = Geometry(q, basket, l, TorsionAssignment(k, n), a3, kc2 / q, canonical_shift=1)
        if any(euler_characteristic(g, DivisorClass(0, s)) == 1 for s in range(1, n)):
            continue
        if any(euler_characteristic(g, DivisorClass(t, s)) != 0
               for s in range(n) for t in range(-q + 1, 0)):
            continue
        td = TorsionData(n, k, reduced_n=reduced_order(q, n))
        out.append(CandidateRecord(q, basket, l, a3, kc2, genus(g), _dims(g), td))
    return out


def _drop_chunk(q: int, baskets: Sequence[Basket]) -> list[CandidateRecord]:
    out = []
    for b in baskets:
        out.extend(_drop_basket(q, b))
    return out


@dataclass(frozen=True)
class DropResult:
    q: int
    n: int
    witnesses: tuple[CandidateRecord, ...]


def search_q_drop(q_range: Iterable[int], *, max_index: int | None = None, workers: int = 1,
                  long_running: bool = False) -> list[DropResult]:
    """Pairs (q, n) where K + qA can be a torsion class of order n >= 2.

    n is reported after re-choosing A within its class modulo Xi, which only
    keeps the part of the order sharing primes with q.  q = 3 is gated
    behind ``long_running``.
    """
    results = []
    baskets = None
    for q in sorted(set(q_range)):
        if q < 3:
            raise InvalidInput("q-drop search needs q >= 3")
        if q == 3 and not long_running:
            raise InvalidInput("q = 3 needs the long-running flag")
        if baskets is None:
            baskets = list(enumerate_baskets(SearchConfig(q=3, mode="q-drop", max_index=max_index)))
        recs = _run_parallel(_drop_chunk, q, baskets, workers)
        by_n: dict[int, list[CandidateRecord]] = {}
        for rec in sorted(recs, key=CandidateRecord.sort_key):
            by_n.setdefault(rec.torsion.reduced_n, []).append(rec)
        for n in sorted(by_n):
            results.append(DropResult(q, n, tuple(by_n[n])))
    return results


# ---------------------------------------------------------------------------
# golden tables

TABLE_IDS = ("candidate-table", "torsion-table", "torsion-dims", "q7-cases", "q8-table", "q11-table")


@dataclass(frozen=True)
class RowCheck:
    row: str
    ok: bool
    diffs: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class TableReport:
    table_id: str
    rows: tuple[RowCheck, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)


def candidate_twists(q: int, indices: Basket | str) -> list[CandidateRecord]:
    """Every surviving twist assignment of an index multiset, lexicographic."""
    if isinstance(indices, str):
        indices = Basket.parse(indices)
    out = []
    for tb in twist_assignments(indices.indices_only()):
        fail, g = _first_failure(q, tb)
        if fail is None:
            out.append(_record(g))
    return out


def find_candidate(q: int, indices: Basket | str, a_cubed: Rational | None = None) -> CandidateRecord | None:
    """First surviving twist assignment, or the first one with the given A^3."""
    for rec in candidate_twists(q, indices):
        if a_cubed is None or rec.a_cubed == a_cubed:
            return rec
    return None


def _diff(name: str, got, want) -> list[str]:
    return [] if got == want else [f"{name}: got {got}, expected {want}"]


def _check_candidate_row(row: dict) -> RowCheck:
    q = row["q"]
    rec = find_candidate(q, row["basket"], Fraction(row["A3"]) if "A3" in row else None)
    if rec is None and "A3" in row:
        rec = find_candidate(q, row["basket"])
    label = f"q={q} B=({row['basket']})"
    if rec is None:
        return RowCheck(label, False, ("not a candidate",))
    diffs = []
    if "A3" in row:
        diffs += _diff("A3", rec.a_cubed, Fraction(row["A3"]))
    if "genus" in row:
        diffs += _diff("genus", rec.genus, row["genus"])
    if "dims" in row:
        want = tuple(row["dims"])
        diffs += _diff("dims", rec.dims[0][:len(want)], want)
    return RowCheck(label, not diffs, tuple(diffs))


def _bound_ok(value: int, spec) -> bool:
    if spec is None:
        return True
    if isinstance(spec, str) and spec.startswith("<="):
        return value <= int(spec[2:])
    return value == int(spec)


def _within_bounds(rec: CandidateRecord, row: dict) -> list[str]:
    out = []
    if not _bound_ok(rec.genus, row["genus"]):
        out.append(f"genus {rec.genus} outside {row['genus']}")
    for t, spec in enumerate(row["dims"], start=1):
        if t <= rec.q and not _bound_ok(rec.dim(t), spec):
            out.append(f"dim|{t}A| = {rec.dim(t)} outside {spec}")
    return out


def _check_bound_row(row: dict) -> RowCheck:
    """Candidates below the genus threshold that meet the row's bounds.

    When the row lists index multisets, the survivors must be exactly those.
    """
    q = row["q"]
    recs = search_q(SearchConfig(q=q, genus_threshold=default_genus_threshold(q)))
    kept = [r for r in recs if not _within_bounds(r, row)]
    notes = tuple(f"B=({r.basket}) excluded: {'; '.join(_within_bounds(r, row))}"
                  for r in recs if _within_bounds(r, row))
    diffs = []
    if row.get("baskets") is not None:
        want = sorted(Basket.parse(b).indices for b in row["baskets"])
        diffs += _diff("baskets", sorted(r.basket.indices for r in kept), want)
    return RowCheck(f"q={q} ({len(kept)} of {len(recs)} candidates within bounds)",
                    not diffs, tuple(diffs), notes)


def _torsion_rows(q_values: Iterable[int]) -> list[CandidateRecord]:
    out = []
    for q in q_values:
        out.extend(search_torsion(SearchConfig(q=q, mode="torsion")))
    return out


def _row_key(basket: Basket | str, k) -> tuple:
    if isinstance(basket, str):
        basket = Basket.parse(basket)
    return (basket.indices, tuple(k))


def _check_torsion_table(rows: list[dict]) -> list[RowCheck]:
    qs = sorted({r["q"] for r in rows} | set(load_tables()["torsion_empty_q"]))
    found = {}
    for rec in _torsion_rows(qs):
        found[(rec.q,) + _row_key(rec.basket, rec.torsion.k)] = rec
    checks = []
    for row in rows:
        key = (row["q"],) + _row_key(row["basket"], row["k"])
        rec = found.pop(key, None)
        label = f"n={row['n']} q={row['q']} B=({row['basket']}) k={tuple(row['k'])}"
        if rec is None:
            checks.append(RowCheck(label, False, ("row not produced by the search",)))
            continue
        t = rec.torsion
        diffs = (
            _diff("n", t.n, row["n"])
            + _diff("genus", rec.genus, row["genus"])
            + _diff("A3", rec.a_cubed, Fraction(row["A3"]))
            + _diff("cover basket", t.cover.indices, Basket.parse(row["cover"]).indices)
            + _diff("cover A3", t.cover_a_cubed, t.n * Fraction(row["A3"]))
            + _diff("cover genus", t.cover_genus, row["cover_genus"])
        )
        checks.append(RowCheck(label, not diffs, tuple(diffs)))
    for key, rec in sorted(found.items(), key=lambda kv: kv[1].sort_key()):
        checks.append(RowCheck(f"extra q={rec.q} B=({rec.basket}) k={rec.torsion.k}", False,
                               ("search produced a row missing from the table",)))
    return checks


def _check_torsion_dims(rows: list[dict]) -> list[RowCheck]:
    checks = []
    for row in rows:
        q = row["q"]
        b = Basket.parse(row["basket"])
        match = [r for r in search_torsion(SearchConfig(q=q, mode="torsion", indices=tuple(set(b.indices))))
                 if _row_key(r.basket, r.torsion.k) == _row_key(b, row["k"])]
        label = f"q={q} B=({row['basket']}) k={tuple(row['k'])}"
        if not match:
            checks.append(RowCheck(label, False, ("row not produced by the search",)))
            continue
        rec = match[0]
        for s, want in enumerate(row["dims"]):
            for t, w in enumerate(want, start=1):
                diffs = _diff("dim", rec.dim(t, s), w)
                checks.append(RowCheck(f"{label} dim|{t}A+{s}Xi|", not diffs, tuple(diffs)))
    return checks


def verify_tables(table_id: str) -> TableReport:
    if table_id not in TABLE_IDS:
        raise InvalidInput(f"unknown table {table_id!r}; choose from {', '.join(TABLE_IDS)}")
    data = load_tables()[table_id]
    if table_id == "candidate-table":
        rows = [_check_bound_row(r) for r in data]
    elif table_id == "torsion-table":
        rows = _check_torsion_table(data)
    elif table_id == "torsion-dims":
        rows = _check_torsion_dims(data)
    else:
        rows = [_check_candidate_row(r) for r in data]
    return TableReport(table_id, tuple(rows))
