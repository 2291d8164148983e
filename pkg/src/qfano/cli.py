"""Command-line front end: enumerate, hilbert, verify, link-solve."""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from pathlib import Path
from typing import Sequence

from . import __version__
from .basket import (
    Basket,
    BasketPoint,
    InconsistentTorsion,
    TorsionAssignment,
    check_torsion,
    local_order,
)
from .data import corpus_root
from .numerics import InvalidInput, format_rational
from .riemann_roch import (
    DivisorClass,
    dim_linear_system,
    euler_characteristic,
    genus,
    make_geometry,
    twist_assignments,
)
from .sarkisov import (
    FANO_INDICES,
    LinkContext,
    LinkEquation,
    MalformedEquation,
    MalformedSpec,
    Unbounded,
    UnknownAxiom,
    corpus_files,
    derive_caps,
    evaluate,
    load_case,
    m_fraction,
    parse_int_set,
    run_case,
    solve_main,
)
from .search import (
    FILTERS,
    TABLE_IDS,
    CandidateRecord,
    DimsConstraint,
    SearchConfig,
    _first_failure,
    default_genus_threshold,
    search_q,
    search_q_drop,
    search_torsion,
    verify_tables,
)

SCHEMA = 1
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_REJECTED, EXIT_MISSING = 0, 1, 2, 3, 4

log = logging.getLogger("qfano")


class UsageError(Exception):
    pass


class Rejected(Exception):
    pass


class MissingData(Exception):
    pass


# ---------------------------------------------------------------------------
# serialization

def record_to_json(rec: CandidateRecord) -> dict:
    out = {
        "schema": SCHEMA,
        "q": rec.q,
        "basket": [{"r": p.r, "b": p.b} for p in rec.basket],
        "l": list(rec.l),
        "n": rec.n,
        "A3": format_rational(rec.a_cubed),
        "minusKc2": format_rational(rec.minus_k_c2),
        "genus": rec.genus,
        "dims": [list(row) for row in rec.dims],
    }
    t = rec.torsion
    if t is not None:
        out["k"] = list(t.k)
        if t.cover is not None:
            out["cover"] = {
                "basket": str(t.cover),
                "A3": format_rational(t.cover_a_cubed),
                "genus": t.cover_genus,
            }
        if t.reduced_n is not None:
            out["reduced_n"] = t.reduced_n
    return out


def dumps_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_columns(records: list[dict]) -> list[str]:
    q_max = max((r["q"] for r in records), default=0)
    n_max = max((r["n"] for r in records), default=1)
    cols = ["schema", "q", "n", "basket", "l", "k", "A3", "minusKc2", "genus",
            "cover_basket", "cover_A3", "cover_genus", "reduced_n"]
    cols += [f"dim_{t}A_{s}Xi" for s in range(n_max) for t in range(1, q_max + 1)]
    return cols


def _join(xs) -> str:
    return " ".join(str(x) for x in xs)


def records_to_csv(records: list[dict]) -> str:
    buf = io.StringIO()
    cols = _csv_columns(records)
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in records:
        row = {
            "schema": r["schema"], "q": r["q"], "n": r["n"],
            "basket": ",".join(f"{p['r']}:{p['b']}" for p in r["basket"]),
            "l": _join(r["l"]), "k": _join(r["k"]) if "k" in r else "",
            "A3": r["A3"], "minusKc2": r["minusKc2"], "genus": r["genus"],
            "cover_basket": r["cover"]["basket"] if "cover" in r else "",
            "cover_A3": r["cover"]["A3"] if "cover" in r else "",
            "cover_genus": r["cover"]["genus"] if "cover" in r else "",
            "reduced_n": r.get("reduced_n", ""),
        }
        for s, dims in enumerate(r["dims"]):
            for t, d in enumerate(dims, start=1):
                row[f"dim_{t}A_{s}Xi"] = d
        w.writerow(row)
    return buf.getvalue()


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split()] if text else []


def csv_to_records(text: str) -> list[dict]:
    """Inverse of records_to_csv."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        q, n = int(row["q"]), int(row["n"])
        basket = []
        for chunk in row["basket"].split(",") if row["basket"] else []:
            r, _, b = chunk.partition(":")
            basket.append({"r": int(r), "b": int(b)})
        rec = {
            "schema": int(row["schema"]), "q": q, "n": n, "basket": basket,
            "l": _ints(row["l"]), "A3": row["A3"], "minusKc2": row["minusKc2"],
            "genus": int(row["genus"]),
            "dims": [[int(row[f"dim_{t}A_{s}Xi"]) for t in range(1, q + 1)] for s in range(n)],
        }
        if row["k"]:
            rec["k"] = _ints(row["k"])
        if row["cover_basket"] or row["cover_A3"]:
            rec["cover"] = {"basket": row["cover_basket"], "A3": row["cover_A3"],
                            "genus": int(row["cover_genus"])}
        if row["reduced_n"]:
            rec["reduced_n"] = int(row["reduced_n"])
        out.append(rec)
    return out


def atomic_write(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass
class RunManifest:
    command: str
    config: dict
    version: str = __version__
    elapsed: float = 0.0
    digest: str = ""

    @staticmethod
    def digest_of(text: str) -> str:
        return hashlib.sha256(text.encode()).hexdigest()

    def to_json(self) -> str:
        return dumps_json({"command": self.command, "config": self.config, "version": self.version,
                           "elapsed": round(self.elapsed, 3), "digest": self.digest})


# ---------------------------------------------------------------------------
# config file

_BOOL_KEYS = {"long_running", "no_threshold", "all"}
_LIST_KEYS = {"dims_filter", "table", "cases"}
_REQUIRED = {"enumerate": ("q",), "hilbert": ("q", "basket")}


def read_config(path: str) -> dict[str, str]:
    """``key = value`` lines (``#`` comments); keys are flag names without dashes."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MissingData(f"config file: {exc}") from None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{no}: expected key = value")
        out[key.strip().replace("-", "_")] = val.strip()
    return out


def _config_defaults(parser: argparse.ArgumentParser, values: dict[str, str]) -> dict:
    known = {a.dest for a in parser._actions}
    out = {}
    for key, val in values.items():
        if key not in known:
            raise UsageError(f"config key {key!r} is not a flag of this command")
        if key in _BOOL_KEYS:
            out[key] = val.lower() in ("1", "true", "yes", "on")
        elif key in _LIST_KEYS:
            out[key] = [v.strip() for v in val.split(",") if v.strip()]
        else:
            out[key] = val
    return out


# ---------------------------------------------------------------------------
# commands

def _emit(args, text: str, config: dict) -> None:
    if args.output:
        atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    if args.manifest:
        m = RunManifest(args.command, config, elapsed=time.perf_counter() - args._start,
                        digest=RunManifest.digest_of(text))
        atomic_write(args.manifest, m.to_json())


def _echo(args) -> dict:
    skip = {"func", "_start", "output", "manifest", "config"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def cmd_enumerate(args) -> int:
    dims = tuple(DimsConstraint.parse(d) for d in args.dims_filter or ())
    if args.mode == "q-drop":
        if dims:
            raise UsageError("dims filters do not apply to q-drop")
        if args.q < 3:
            raise UsageError("q-drop needs q >= 3")
        results = search_q_drop([args.q], max_index=args.max_index, workers=args.workers,
                                long_running=args.long_running)
        recs = [w for res in results for w in res.witnesses]
    else:
        if args.q < 3:
            raise UsageError("searches need q >= 3")
        threshold = None if args.no_threshold or args.mode != "torsion-free" else default_genus_threshold(args.q)
        cfg = SearchConfig(q=args.q, mode=args.mode, max_index=args.max_index,
                           genus_threshold=threshold, genus_min=args.genus_min,
                           genus_max=args.genus_max, dims_filter=dims, workers=args.workers)
        if args.mode == "torsion" and args.q < 5:
            raise UsageError("torsion mode needs q >= 5")
        recs = search_q(cfg) if args.mode == "torsion-free" else search_torsion(cfg)
    data = [record_to_json(r) for r in sorted(recs, key=CandidateRecord.sort_key)]
    text = dumps_json(data) if args.format == "json" else records_to_csv(data)
    _emit(args, text, _echo(args))
    return EXIT_OK


def _parse_points(text: str) -> list[BasketPoint]:
    pts = []
    for chunk in text.replace(" ", "").split(","):
        if not chunk:
            continue
        r, sep, b = chunk.partition(":")
        pts.append(BasketPoint(int(r), int(b) if sep else None))
    return pts


def cmd_hilbert(args) -> int:
    pts = _parse_points(args.basket)
    k = [int(x) for x in args.torsion.split(",")] if args.torsion else None
    if k is not None and len(k) != len(pts):
        raise UsageError("--torsion needs one class per basket point")
    order = sorted(range(len(pts)), key=lambda i: (pts[i].sort_key, k[i] if k else 0))
    basket = Basket(tuple(pts[i] for i in order))
    k = tuple(k[i] for i in order) if k else None
    worst = -1
    chosen = None
    for tb in twist_assignments(basket):
        fail, g = _first_failure(args.q, tb)
        if fail is not None:
            worst = max(worst, FILTERS.index(fail))
            continue
        if k is not None:
            n = lcm(*(local_order(p.r, ki) for p, ki in zip(tb, k)))
            t = TorsionAssignment(k, n)
            try:
                check_torsion(tb, t)
            except InconsistentTorsion as exc:
                raise Rejected(f"torsion: {exc}") from None
            g = make_geometry(args.q, tb, g.l, t)
            if any(euler_characteristic(g, DivisorClass(tt, s)) != 0
                   for s in range(n) for tt in range(-args.q + 1, 0)):
                worst = max(worst, FILTERS.index("vanishing"))
                continue
        chosen = g
        break
    if chosen is None:
        raise Rejected(f"basket rejected by the {FILTERS[worst] if worst >= 0 else 'coprimality'} filter")
    g = chosen
    rows = [[dim_linear_system(g, DivisorClass(t, s)) for t in range(1, args.kmax + 1)]
            for s in range(g.n)]
    if args.format == "json":
        text = dumps_json({"schema": SCHEMA, "q": g.q, "basket": str(g.basket), "n": g.n,
                           "k": list(k) if k else None, "A3": format_rational(g.a_cubed),
                           "genus": genus(g), "dims": rows})
    else:
        lines = [f"q={g.q} B=({g.basket})" + (f" k={list(k)} n={g.n}" if k else ""),
                 f"A^3 = {format_rational(g.a_cubed)}", f"genus = {genus(g)}"]
        if args.kmax > 0:
            lines.append("s\\t " + " ".join(f"{t:>3}" for t in range(1, args.kmax + 1)))
            for s, row in enumerate(rows):
                lines.append(f"{s:<3} " + " ".join(f"{d:>3}" for d in row))
        text = "\n".join(lines) + "\n"
    _emit(args, text, _echo(args))
    return EXIT_OK


def _table_json(rep) -> dict:
    return {"table": rep.table_id, "ok": rep.ok,
            "rows": [{"row": r.row, "ok": r.ok, "diffs": list(r.diffs), "notes": list(r.notes)}
                     for r in rep.rows]}


def _case_json(res) -> dict:
    return {"case": res.spec.id, "path": os.path.relpath(res.spec.path, _corpus_base()),
            "ok": res.passed, "outcome": str(res.outcome), "failures": list(res.failures),
            "axioms": list(res.axioms)}


def _corpus_base() -> str:
    return str(corpus_root())


def cmd_verify(args) -> int:
    tables: list[str] = []
    patterns: list[str] = []
    if args.all:
        tables = list(TABLE_IDS)
        patterns = ["**/*.case"]
    if args.table:
        for t in args.table:
            if t not in TABLE_IDS:
                raise UsageError(f"unknown table {t!r}; choose from {', '.join(TABLE_IDS)}")
        tables += args.table
    patterns += args.cases or []
    if not tables and not patterns:
        raise UsageError("nothing to verify: give --table, --cases or --all")
    report = {"schema": SCHEMA, "tables": [], "cases": []}
    lines = []
    for t in tables:
        rep = verify_tables(t)
        report["tables"].append(_table_json(rep))
        passed = sum(r.ok for r in rep.rows)
        lines.append(f"table {t}: {passed}/{len(rep.rows)} rows pass")
        for r in rep.rows:
            if not r.ok:
                lines.append(f"  FAIL {r.row}: {'; '.join(r.diffs)}")
    for pat in patterns:
        files = corpus_files(pat, Path(args.corpus) if args.corpus else None)
        if not files:
            raise MissingData(f"no case files match {pat!r}")
        for f in files:
            res = run_case(load_case(f))
            report["cases"].append(_case_json(res))
            lines.append(f"{'PASS' if res.passed else 'FAIL'} {res.spec.id}: {res.outcome}"
                         + (f"  [{'; '.join(res.failures)}]" if res.failures else ""))
    ok = all(t["ok"] for t in report["tables"]) and all(c["ok"] for c in report["cases"])
    report["ok"] = ok
    n_cases = len(report["cases"])
    if n_cases:
        lines.append(f"cases: {sum(c['ok'] for c in report['cases'])}/{n_cases} pass")
    text = dumps_json(report) if args.format == "json" else "\n".join(lines) + "\n"
    if args.report:
        atomic_write(args.report, dumps_json(report))
    _emit(args, text, _echo(args))
    return EXIT_OK if ok else EXIT_MISMATCH


def _inline_equation(args) -> tuple[list[LinkEquation], LinkContext]:
    for name in ("q", "k", "r"):
        if getattr(args, name) is None:
            raise UsageError(f"inline link-solve needs --{name}")
    bounds = {}
    for tok in (args.bounds or "").replace(",", " ").split():
        for op in (">=", "<=", "="):
            if op in tok:
                var, val = tok.split(op)
                if var not in ("s", "m", "e"):
                    raise UsageError(f"bad bound {tok!r}")
                if op in (">=", "="):
                    bounds[f"{var}_min"] = int(val)
                if op in ("<=", "="):
                    bounds[f"{var}_max"] = int(val)
                break
        else:
            raise UsageError(f"bad bound {tok!r}")
    t = args.t if args.t is not None else (int(m_fraction(args.q, args.r, args.k) * args.r) if args.r > 1 else 0)
    eq = LinkEquation(k=args.k, t=t, **bounds)
    q_hat = set(FANO_INDICES)
    if args.q_hat:
        q_hat = parse_int_set(args.q_hat) & FANO_INDICES
    return [eq], LinkContext(q=args.q, basket=None, r=args.r, q_hat_allowed=frozenset(q_hat))


def cmd_link_solve(args) -> int:
    caps = None
    if args.spec:
        if not Path(args.spec).exists():
            raise MissingData(f"spec file {args.spec} not found")
        spec = load_case(args.spec)
        out = evaluate(spec)
        if out.kind == "bound":
            body = [f"BOUND {format_rational(out.bound)}" + (" (contradiction)" if out.contradiction else ""),
                    out.detail]
        elif out.kind == "none":
            body = ["NO SOLUTIONS"]
        else:
            body = [str(s) for s in out.solutions]
    else:
        eqs, ctx = _inline_equation(args)
        alpha = Fraction(args.alpha) if args.alpha else Fraction(1, args.r)
        caps = derive_caps(eqs, ctx, alpha)
        sols = solve_main(eqs, ctx, alpha)
        body = [str(s) for s in sols] or ["NO SOLUTIONS"]
    if caps:
        body.append("caps: " + " ".join(f"{k}={v}" for k, v in sorted(caps.items())))
    _emit(args, "\n".join(body) + "\n", _echo(args))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qfano", description="Q-Fano threefold candidate search and link arithmetic.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="key = value file; flags override it")
        sp.add_argument("--output", help="write the result here (atomically) instead of stdout")
        sp.add_argument("--manifest", help="write a run manifest JSON here")

    e = sub.add_parser("enumerate", help="search for numerical candidates")
    e.add_argument("--q", type=int)
    e.add_argument("--mode", choices=("torsion-free", "torsion", "q-drop"), default="torsion-free")
    e.add_argument("--max-index", type=int)
    e.add_argument("--genus-min", type=int)
    e.add_argument("--genus-max", type=int)
    e.add_argument("--dims-filter", action="append", help="e.g. dim2A>=1; repeatable")
    e.add_argument("--no-threshold", action="store_true", help="keep candidates at or above the genus threshold")
    e.add_argument("--format", choices=("json", "csv"), default="json")
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--long-running", action="store_true", help="allow q = 3 in q-drop mode")
    common(e)
    e.set_defaults(func=cmd_enumerate)

    h = sub.add_parser("hilbert", help="dim |tA + sXi| table for one basket")
    h.add_argument("--q", type=int)
    h.add_argument("--basket", help='"r[:b],..."')
    h.add_argument("--kmax", type=int, default=None)
    h.add_argument("--torsion", help='local classes "k1,k2,..." of Xi, one per point')
    h.add_argument("--format", choices=("text", "json"), default="text")
    common(h)
    h.set_defaults(func=cmd_hilbert)

    v = sub.add_parser("verify", help="check golden tables and the case corpus")
    v.add_argument("--table", action="append", help=f"one of {', '.join(TABLE_IDS)}")
    v.add_argument("--cases", action="append", help='glob under the corpus, e.g. "q7/*"')
    v.add_argument("--all", action="store_true")
    v.add_argument("--corpus", help="corpus directory (default: shipped)")
    v.add_argument("--report", help="write the JSON report here")
    v.add_argument("--format", choices=("text", "json"), default="text")
    common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("link-solve", help="solve link equations")
    s.add_argument("--spec", help="case file")
    s.add_argument("--q", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--r", type=int)
    s.add_argument("--t", type=int, help="numerator of the fractional part of beta (default computed)")
    s.add_argument("--alpha", help="discrepancy, default 1/r")
    s.add_argument("--bounds", help='e.g. "s>=1,m>=3,e<=4"')
    s.add_argument("--q-hat", help='allowed target indices, e.g. "1..9"')
    common(s)
    s.set_defaults(func=cmd_link_solve)
    return p


def _subparser(parser: argparse.ArgumentParser, name: str) -> argparse.ArgumentParser:
    for a in parser._actions:
        if isinstance(a, argparse._SubParsersAction):
            return a.choices[name]
    raise KeyError(name)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    start = time.perf_counter()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return EXIT_OK if exc.code == 0 else EXIT_USAGE
        if args.config:
            sp = _subparser(parser, args.command)
            sp.set_defaults(**_config_defaults(sp, read_config(args.config)))
            try:
                args = parser.parse_args(argv)
            except SystemExit as exc:
                return EXIT_OK if exc.code == 0 else EXIT_USAGE
        for name in _REQUIRED.get(args.command, ()):
            if getattr(args, name) is None:
                raise UsageError(f"--{name} is required (flag or config file)")
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        if args.command == "hilbert" and args.kmax is None:
            args.kmax = args.q
        if args.command == "hilbert" and args.kmax < 0:
            raise UsageError("--kmax must be >= 0")
        args._start = start
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MalformedSpec, MalformedEquation, UnknownAxiom, Unbounded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Rejected as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except MissingData as exc:
        print(f"missing data: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except BrokenPipeError:
        # reader closed early, e.g. piped into head
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
