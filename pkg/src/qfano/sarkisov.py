"""Integer arithmetic of two-ray links out of a Q-Fano threefold.

For the mobile system M_k = |kA| and a divisorial extraction with
discrepancy alpha = a/r, write beta_k = t/r + m_k.  The link gives

    k * q_hat = q * s_k + (q * beta_k - k * alpha) * e
              = c0 * e + q * (s_k + m_k * e),     c0 = (q t - k a) / r,

with q_hat the index of the target, e and s_k the classes of the image of
the exceptional divisor and of M_k.  Everything here is bounded integer
search over such equations plus a few rational bounds derived from them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import floor, gcd
from pathlib import Path
from typing import Iterable, Sequence

from .basket import Basket, max_discrepancy, solve_l_classes
from .data import corpus_root, load_tables
from .numerics import InvalidInput, Rational, ceil_div, inverse_mod, parse_rational, residue

FANO_INDICES = frozenset((*range(1, 12), 13, 17, 19))


class MalformedEquation(ValueError):
    pass


class Unbounded(ValueError):
    pass


class NoBound(ValueError):
    pass


class MalformedSpec(ValueError):
    def __init__(self, path: str, line: int | None, msg: str):
        where = f"{path}:{line}" if line else path
        super().__init__(f"{where}: {msg}")
        self.path, self.line = path, line


class UnknownAxiom(KeyError):
    pass


# ---------------------------------------------------------------------------
# local arithmetic

def m_fraction(q: int, r: int, k: int) -> Rational:
    """Fractional part of beta_k at a point of index r, i.e. residue(k / q, r) / r."""
    if r < 2:
        raise InvalidInput("index must be >= 2")
    return Fraction(residue(k * inverse_mod(q, r), r), r)


def threshold_multiple(q: int, basket: Basket, k: int) -> int:
    """Largest t with |kA| ~ -tK near some basket point (0 <= t < r)."""
    best = 0
    for p, l in zip(basket, solve_l_classes(q, basket)):
        best = max(best, residue(-k * l, p.r))
    return best


def threshold_min_m(frac: Rational, t_m: Rational | int, alpha: Rational) -> int:
    """Least integer m >= 0 with frac + m >= t_m * alpha."""
    if not 0 <= frac < 1:
        raise InvalidInput(f"fractional part {frac} outside [0, 1)")
    return max(0, ceil_div(Fraction(t_m) * Fraction(alpha) - Fraction(frac), 1))


def discrepancy_lower_bound(q: int, q_hat: int, n: int, e: int, k: int, s_k: int) -> Rational:
    """b >= (q_hat k - q s_k) / (n e s_k), from pushing M_k forward with gamma_k >= 0."""
    if s_k == 0:
        raise NoBound("s_k = 0: the system may be contracted, no bound on b")
    if n < 1 or e < 1 or s_k < 0:
        raise InvalidInput("need n, e >= 1 and s_k >= 1")
    return Fraction(q_hat * k - q * s_k, n * e * s_k)


def gcd_obstruction(q: int, n: int) -> bool:
    """True when n > 1 is coprime to q, forcing the contracted divisor onto a point of index divisible by n."""
    if n < 1:
        raise InvalidInput("n must be >= 1")
    return n > 1 and gcd(n, q) == 1


def torsion_discrepancy_bound(n: int) -> Rational:
    """Largest discrepancy of an extraction over non-Gorenstein points of a
    Q-Fano (index >= 5) with torsion of order n, read off the torsion
    classification by maximizing over points whose index n divides."""
    best = None
    for row in load_tables()["torsion-table"]:
        if row["n"] != n:
            continue
        b = max_discrepancy(Basket.parse(row["basket"]), n)
        if b is not None and (best is None or b > best):
            best = b
    if best is None:
        raise NoBound(f"no torsion of order {n} in the classification")
    return best


# ---------------------------------------------------------------------------
# main equation

@dataclass(frozen=True)
class LinkContext:
    q: int
    basket: Basket | None
    r: int
    alpha_set: frozenset[Rational] = frozenset()
    q_hat_allowed: frozenset[int] = FANO_INDICES
    n: int | None = None
    d: int | None = None

    def __post_init__(self):
        for a in self.alpha_set:
            if self.r % Fraction(a).denominator:
                raise InvalidInput(f"alpha {a} has denominator not dividing {self.r}")
        if not set(self.q_hat_allowed) <= FANO_INDICES:
            raise InvalidInput("q_hat outside the Fano index set")


@dataclass(frozen=True)
class LinkEquation:
    k: int
    t: int
    s_min: int = 0
    s_max: int | None = None
    m_min: int = 0
    m_max: int | None = None
    e_min: int = 1
    e_max: int | None = None

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInput("k must be >= 1")


@dataclass(frozen=True)
class LinkSolution:
    q_hat: int
    e: int
    # one (k, s_k, m_k) per equation, m_k None for inequality feasibility
    values: tuple[tuple[int, int, int | None], ...]

    def s(self, k: int) -> int:
        return next(v[1] for v in self.values if v[0] == k)

    def m(self, k: int) -> int | None:
        return next(v[2] for v in self.values if v[0] == k)

    def __str__(self) -> str:
        parts = [f"q_hat={self.q_hat}", f"e={self.e}"]
        for k, s, m in self.values:
            parts.append(f"s{k}={s}")
            if m is not None:
                parts.append(f"m{k}={m}")
        return " ".join(parts)


def _alpha_parts(alpha: Rational, r: int) -> int:
    alpha = Fraction(alpha)
    if (alpha * r).denominator != 1:
        raise MalformedEquation(f"alpha {alpha} is not a multiple of 1/{r}")
    return int(alpha * r)


def main_constant(q: int, r: int, eq: LinkEquation, alpha: Rational) -> int:
    """c0 = (q t - k a) / r; must be an integer."""
    a = _alpha_parts(alpha, r)
    num = q * eq.t - eq.k * a
    if num % r:
        raise MalformedEquation(f"k={eq.k}: (q t - k a) = {num} is not divisible by r={r}")
    return num // r


def derive_caps(equations: Sequence[LinkEquation], context: LinkContext, alpha: Rational) -> dict:
    """Finite caps on e implied by q_hat <= max allowed and positive coefficients."""
    if not equations:
        raise InvalidInput("no equations")
    q = context.q
    qmax = max(context.q_hat_allowed, default=0)
    e_min = max(eq.e_min for eq in equations)
    caps = [eq.e_max for eq in equations if eq.e_max is not None]
    for eq in equations:
        ce = main_constant(q, context.r, eq, alpha) + q * eq.m_min
        if ce > 0:
            caps.append((eq.k * qmax - q * eq.s_min) // ce)
    if not caps:
        raise Unbounded("every e-coefficient is non-positive and no e cap was given")
    return {"q_hat_max": qmax, "e_min": e_min, "e_max": min(caps)}


def _per_equation(q: int, c0: int, eq: LinkEquation, q_hat: int, e: int) -> list[tuple[int, int]]:
    rhs = eq.k * q_hat - c0 * e
    if rhs % q:
        return []
    x = rhs // q  # s + m e
    out = []
    m = eq.m_min
    while True:
        if eq.m_max is not None and m > eq.m_max:
            break
        s = x - m * e
        if s < eq.s_min:
            break
        if eq.s_max is None or s <= eq.s_max:
            out.append((s, m))
        m += 1
    return out


def solve_main(equations: Sequence[LinkEquation], context: LinkContext, alpha: Rational) -> list[LinkSolution]:
    """All integer solutions of a joint system sharing (q_hat, e), lexicographic."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise InvalidInput("alpha must be positive")
    if context.alpha_set and alpha not in context.alpha_set:
        raise InvalidInput(f"alpha {alpha} not among the allowed discrepancies")
    q = context.q
    consts = [main_constant(q, context.r, eq, alpha) for eq in equations]
    caps = derive_caps(equations, context, alpha)
    out = []
    for q_hat in sorted(context.q_hat_allowed):
        for e in range(caps["e_min"], caps["e_max"] + 1):
            options = []
            for eq, c0 in zip(equations, consts):
                opts = _per_equation(q, c0, eq, q_hat, e)
                if not opts:
                    break
                options.append([(eq.k, s, m) for s, m in opts])
            else:
                for combo in product(*options):
                    out.append(LinkSolution(q_hat, e, tuple(combo)))
    return out


def check_solution(sol: LinkSolution, equations: Sequence[LinkEquation], context: LinkContext,
                   alpha: Rational) -> bool:
    for eq, (k, s, m) in zip(equations, sol.values):
        beta = Fraction(eq.t, context.r) + m
        if Fraction(k * sol.q_hat) != context.q * s + (context.q * beta - k * Fraction(alpha)) * sol.e:
            return False
    return True


def feasible_inequality(k: int, t_m: Rational, alpha: Rational, context: LinkContext,
                        s_min: int = 0, s_max: int | None = None,
                        e_min: int = 1, e_max: int | None = None) -> list[LinkSolution]:
    """(q_hat, e, s) with k q_hat >= q s + (q t_M - k) alpha e, using beta_k >= t_M alpha."""
    q = context.q
    coef = (q * Fraction(t_m) - k) * Fraction(alpha)
    if coef <= 0:
        raise Unbounded("non-positive e coefficient")
    qmax = max(context.q_hat_allowed, default=0)
    top_e = floor((k * qmax - q * s_min) / coef)
    if e_max is not None:
        top_e = min(top_e, e_max)
    out = []
    for q_hat in sorted(context.q_hat_allowed):
        for e in range(e_min, top_e + 1):
            s_top = floor((k * q_hat - coef * e) / q)
            if s_max is not None:
                s_top = min(s_top, s_max)
            for s in range(s_min, s_top + 1):
                out.append(LinkSolution(q_hat, e, ((k, s, None),)))
    return out


# ---------------------------------------------------------------------------
# axioms

AXIOMS: dict[str, str] = {
    "Prop-rat": "a non-rational Q-Fano with q_Q = q_W >= 3 has index in {3,...,9,11,13} and genus and |kA| dims within the tabulated bounds",
    "Prop-rat-dims": "the tabulated dims bounds on |k Theta| for a non-rational target force lower bounds on s_k",
    "Prop-13": "Q-Fano threefolds of index 13 are rational",
    "Prop-11": "Q-Fano threefolds of index 11 are rational",
    "Cor-ind7": "a Q-Fano of index 7 with dim|2A| >= 1 (equivalently genus >= 11) is rational",
    "Prop-torsions": "torsion in the class group of a Q-Fano of index >= 5 has order <= 3 and only occurs for q = 5, 7",
    "Cor-tor-discr": "extraction discrepancies on a Q-Fano of index >= 5 with torsion of order 2 or 3 are at most 1 or 2/9",
    "Lemma-torsion-d": "Cl(target) has torsion Z/n with n = d/e where F ~ dA",
    "Lemma-genus": "alpha < 1 implies g(target) >= g(X)",
    "Lemma-not-birational": "a non-birational contraction with q_hat > 1 makes X rational",
    "Lemma-cthreshold": "beta_k >= t alpha where M_k ~ -tK near a point",
    "Prop-discrepancies": "extractions of a terminal point have the discrepancies of the Kawamata blowup or a/r with a | m; alpha >= 1 is an integer",
    "Irreducible-exceptional": "only one of several distinct divisors can be contracted, so at most one s_k vanishes",
    "Movable-positive": "a mobile system is not contracted by a birational contraction, so s_k >= 1",
    "DelPezzo-classification": "Du Val del Pezzo surfaces of Picard rank one with dim|2L| = 0 do not exist",
}


def check_axioms(tags: Iterable[str]) -> None:
    for t in tags:
        if t not in AXIOMS:
            raise UnknownAxiom(t)


# ---------------------------------------------------------------------------
# case specs

KINDS = ("main", "inequality", "alpha-integer", "alpha-bound", "b-bound")


@dataclass(frozen=True)
class EquationSpec:
    k: int
    frac: Rational | None = None
    t_m: Rational | None = None
    bounds: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CaseSpec:
    id: str
    path: str
    kind: str
    q: int
    basket: Basket | None
    center: int
    alpha: Rational | None
    alpha_range: tuple[int, int | None] | None
    q_hat: frozenset[int]
    e_range: tuple[int, int | None]
    equations: tuple[EquationSpec, ...]
    n: int | None
    s_range: tuple[int, int | None] | None
    expect: tuple[tuple[str, ...], ...]
    axioms: tuple[str, ...]
    note: str = ""


@dataclass(frozen=True)
class Outcome:
    kind: str  # none | unique | solutions | bound
    solutions: tuple[LinkSolution, ...] = ()
    bound: Rational | None = None
    contradiction: bool | None = None
    detail: str = ""

    def __str__(self) -> str:
        if self.kind == "bound":
            c = " (contradiction)" if self.contradiction else ""
            return f"bound {self.bound}{c}"
        if self.kind == "none":
            return "no solutions"
        return "; ".join(str(s) for s in self.solutions)


@dataclass(frozen=True)
class CaseResult:
    spec: CaseSpec
    outcome: Outcome
    passed: bool
    failures: tuple[str, ...]

    @property
    def axioms(self) -> tuple[str, ...]:
        return self.spec.axioms


_RANGE = re.compile(r"^(-?\d+)\.\.(-?\d+)?$")


def _parse_range(text: str) -> tuple[int, int | None]:
    text = text.strip()
    m = _RANGE.match(text)
    if m:
        return int(m.group(1)), int(m.group(2)) if m.group(2) else None
    v = int(text)
    return v, v


def parse_int_set(text: str) -> set[int]:
    out = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, hi = _parse_range(part)
        if hi is None:
            raise ValueError(f"open range {part!r} not allowed here")
        out.update(range(lo, hi + 1))
    return out


_BOUND = re.compile(r"^([sme])(>=|<=|=)(-?\d+)$")


def _parse_equation(text: str) -> EquationSpec:
    k = None
    frac = t_m = None
    bounds: dict = {}
    for tok in text.split():
        if tok.startswith("k="):
            k = int(tok[2:])
        elif tok.startswith("frac="):
            frac = parse_rational(tok[5:])
        elif tok.startswith("tM="):
            t_m = parse_rational(tok[3:])
        else:
            m = _BOUND.match(tok)
            if not m:
                raise ValueError(f"bad equation token {tok!r}")
            var, op, val = m.groups()
            val = int(val)
            if op in (">=", "="):
                bounds[var + "_min"] = val
            if op in ("<=", "="):
                bounds[var + "_max"] = val
    if k is None:
        raise ValueError("equation needs k=")
    return EquationSpec(k, frac, t_m, bounds)


def parse_case(text: str, path: str = "<string>") -> CaseSpec:
    fields: dict[str, str] = {}
    eqs: list[EquationSpec] = []
    lines: dict[str, int] = {}
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise MalformedSpec(path, no, f"expected 'key: value', got {line!r}")
        key, val = key.strip(), val.strip()
        lines.setdefault(key, no)
        try:
            if key == "eq":
                eqs.append(_parse_equation(val))
                continue
        except ValueError as exc:
            raise MalformedSpec(path, no, str(exc)) from None
        if key in fields:
            raise MalformedSpec(path, no, f"duplicate field {key!r}")
        fields[key] = val

    def need(key: str) -> str:
        if key not in fields:
            raise MalformedSpec(path, None, f"missing field {key!r}")
        return fields[key]

    def conv(key: str, fn):
        try:
            return fn(fields[key])
        except (ValueError, InvalidInput) as exc:
            raise MalformedSpec(path, lines.get(key), f"{key}: {exc}") from None

    kind = need("kind")
    if kind not in KINDS:
        raise MalformedSpec(path, lines["kind"], f"unknown kind {kind!r}")
    q = conv("q", int) if "q" in fields else int(need("q"))
    basket = conv("basket", Basket.parse) if "basket" in fields else None
    center = conv("center", int) if "center" in fields else 1
    alpha = alpha_range = None
    if "alpha" in fields:
        if kind == "alpha-integer":
            alpha_range = conv("alpha", _parse_range)
        else:
            alpha = conv("alpha", parse_rational)
    elif center > 1:
        alpha = Fraction(1, center)
    q_hat = conv("q_hat", parse_int_set) if "q_hat" in fields else set(FANO_INDICES)
    if "q_hat_exclude" in fields:
        q_hat -= conv("q_hat_exclude", parse_int_set)
    q_hat &= FANO_INDICES
    e_range = conv("e", _parse_range) if "e" in fields else (1, None)
    n = conv("n", int) if "n" in fields else None
    s_range = conv("s", _parse_range) if "s" in fields else None
    expect = tuple(tuple(c.split()) for c in need("expect").split(";") if c.strip())
    axioms = tuple(a.strip() for a in fields.get("axioms", "").split(",") if a.strip())
    try:
        check_axioms(axioms)
    except UnknownAxiom as exc:
        raise MalformedSpec(path, lines.get("axioms"), f"unknown axiom tag {exc.args[0]!r}") from None
    if kind in ("main", "inequality", "alpha-integer", "alpha-bound") and not eqs:
        raise MalformedSpec(path, None, f"kind {kind} needs at least one eq line")
    if kind == "b-bound":
        for key in ("n", "q_hat", "k", "s"):
            need(key)
        eqs = [EquationSpec(conv("k", int))]
    return CaseSpec(
        id=fields.get("id", Path(path).stem), path=path, kind=kind, q=q, basket=basket,
        center=center, alpha=alpha, alpha_range=alpha_range, q_hat=frozenset(q_hat),
        e_range=e_range, equations=tuple(eqs), n=n, s_range=s_range, expect=expect,
        axioms=axioms, note=fields.get("note", ""),
    )


def load_case(path: str | Path) -> CaseSpec:
    path = Path(path)
    return parse_case(path.read_text(), str(path))


def _link_equation(spec: CaseSpec, es: EquationSpec, alpha: Rational, r: int) -> LinkEquation:
    if es.frac is not None:
        frac = es.frac
    elif r > 1:
        frac = m_fraction(spec.q, r, es.k)
    else:
        frac = Fraction(0)
    if (frac * r).denominator != 1:
        raise MalformedEquation(f"fractional part {frac} is not a multiple of 1/{r}")
    b = es.bounds
    m_min = b.get("m_min")
    if m_min is None:
        m_min = threshold_min_m(frac, es.t_m, alpha) if es.t_m is not None else 0
    e_lo, e_hi = spec.e_range
    return LinkEquation(
        k=es.k, t=int(frac * r),
        s_min=b.get("s_min", 0), s_max=b.get("s_max"),
        m_min=m_min, m_max=b.get("m_max"),
        e_min=max(e_lo, b.get("e_min", e_lo)),
        e_max=min(x for x in (e_hi, b.get("e_max")) if x is not None) if (e_hi is not None or "e_max" in b) else None,
    )


def _context(spec: CaseSpec, r: int, alphas: Iterable[Rational] = ()) -> LinkContext:
    return LinkContext(q=spec.q, basket=spec.basket, r=r, alpha_set=frozenset(alphas),
                       q_hat_allowed=spec.q_hat, n=spec.n)


def _as_outcome(sols: list[LinkSolution]) -> Outcome:
    if not sols:
        return Outcome("none")
    if len(sols) == 1:
        return Outcome("unique", tuple(sols))
    return Outcome("solutions", tuple(sols))


def evaluate(spec: CaseSpec) -> Outcome:
    if spec.kind == "main":
        r = spec.center
        eqs = [_link_equation(spec, es, spec.alpha, r) for es in spec.equations]
        return _as_outcome(solve_main(eqs, _context(spec, r), spec.alpha))

    if spec.kind == "alpha-integer":
        lo, hi = spec.alpha_range
        sols: list[LinkSolution] = []
        a = max(lo, 1)
        while hi is None or a <= hi:
            eqs = []
            for es in spec.equations:
                if es.t_m is None:
                    raise MalformedEquation("alpha-integer equations need tM")
                eqs.append(_link_equation(spec, EquationSpec(es.k, Fraction(0), es.t_m, es.bounds), a, 1))
            ctx = _context(spec, 1)
            # (q tM - k) a e <= k q_hat once m >= tM a; stop when even e = 1, s = s_min fails
            if all((spec.q * Fraction(es.t_m) - es.k) * a > es.k * max(spec.q_hat) - spec.q * eq.s_min
                   for es, eq in zip(spec.equations, eqs)):
                break
            sols.extend(solve_main(eqs, ctx, a))
            a += 1
        return _as_outcome(sols)

    if spec.kind == "inequality":
        (es,) = spec.equations
        b = es.bounds
        e_lo, e_hi = spec.e_range
        sols = feasible_inequality(es.k, es.t_m, spec.alpha, _context(spec, spec.center),
                                   s_min=b.get("s_min", 0), s_max=b.get("s_max"),
                                   e_min=e_lo, e_max=e_hi)
        return _as_outcome(sols)

    if spec.kind == "alpha-bound":
        (es,) = spec.equations
        s0 = es.bounds.get("s_min", 0)
        e0 = spec.e_range[0]
        q_hat = max(spec.q_hat)
        top = Fraction(es.k * q_hat - spec.q * s0, (spec.q * Fraction(es.t_m) - es.k) * e0)
        return Outcome("bound", bound=top, contradiction=top < spec.alpha,
                       detail=f"alpha <= {top}, alpha >= {spec.alpha}")

    if spec.kind == "b-bound":
        (es,) = spec.equations
        (q_hat,) = sorted(spec.q_hat)
        e = spec.e_range[0]
        lo, hi = spec.s_range
        bound = min(discrepancy_lower_bound(spec.q, q_hat, spec.n, e, es.k, s) for s in range(lo, hi + 1))
        allowed = torsion_discrepancy_bound(spec.n)
        return Outcome("bound", bound=bound, contradiction=bound > allowed,
                       detail=f"b >= {bound}, allowed <= {allowed}, "
                              f"gcd obstruction {'applies' if gcd_obstruction(spec.q, spec.n) else 'does not apply'}")

    raise MalformedSpec(spec.path, None, f"unknown kind {spec.kind}")


def _check_clause(clause: tuple[str, ...], out: Outcome) -> str | None:
    head, args = clause[0], clause[1:]
    sols = out.solutions
    if head == "none":
        return None if out.kind == "none" else f"expected no solutions, got {out}"
    if head == "unique":
        if out.kind != "unique":
            return f"expected a unique solution, got {out}"
        sol = sols[0]
        for a in args:
            key, _, val = a.partition("=")
            val = int(val)
            if key == "q_hat":
                got = sol.q_hat
            elif key == "e":
                got = sol.e
            elif key[0] in "sm" and key[1:].isdigit():
                got = sol.s(int(key[1:])) if key[0] == "s" else sol.m(int(key[1:]))
            else:
                return f"unknown field {key!r}"
            if got != val:
                return f"{key}: got {got}, expected {val}"
        return None
    if head == "pairs":
        want = {tuple(int(x) for x in a.strip("()").split(",")) for a in args}
        got = {(s.q_hat, s.e) for s in sols}
        return None if got == want else f"(q_hat, e) pairs {sorted(got)}, expected {sorted(want)}"
    if head == "q_hat_min":
        got = min((s.q_hat for s in sols), default=None)
        return None if got == int(args[0]) else f"least q_hat {got}, expected {args[0]}"
    if head == "max":
        key, _, val = args[0].partition("=")
        got = max((s.s(int(key[1:])) for s in sols), default=None)
        return None if got == int(val) else f"max {key} {got}, expected {val}"
    if head == "const":
        lhs, _, val = args[0].partition("=")
        terms = lhs.split("+")
        vals = {sum(s.s(int(t[1:])) if t[0] == "s" else s.m(int(t[1:])) for t in terms) for s in sols}
        return None if vals == {int(val)} else f"{lhs} takes values {sorted(vals)}, expected {val}"
    if head == "bound":
        if out.kind != "bound":
            return f"expected a bound, got {out}"
        want = parse_rational(args[0])
        if out.bound != want:
            return f"bound {out.bound}, expected {want}"
        if "contradiction" in args[1:] and not out.contradiction:
            return "bound does not contradict"
        return None
    return f"unknown expectation {head!r}"


def run_case(spec: CaseSpec) -> CaseResult:
    check_axioms(spec.axioms)
    out = evaluate(spec)
    failures = tuple(f for f in (_check_clause(c, out) for c in spec.expect) if f)
    return CaseResult(spec, out, not failures, failures)


def corpus_files(pattern: str = "**/*.case", root: Path | None = None) -> list[Path]:
    root = root or corpus_root()
    if not pattern.endswith(".case"):
        pattern = pattern.rstrip("/") + ("" if pattern.endswith("*") else "/*")
        pattern += ".case" if not pattern.endswith(".case") else ""
    return sorted(root.glob(pattern))


def run_corpus(pattern: str = "**/*.case", root: Path | None = None) -> list[CaseResult]:
    return [run_case(load_case(p)) for p in corpus_files(pattern, root)]
