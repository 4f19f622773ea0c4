"""``ebc``: command-line front end.

Every subcommand renders a JSON document (or a plain-text rendering of the
same data). Numeric values are always decimal strings tagged with the number
of digits they are good to.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import __version__
from .arith import BigReal, PrecisionContext, const_gamma, const_pi, log_natural, to_fraction
from .cache import CacheEntry, DigitCache, canonical_key
from .characters import enumerate_characters
from .constants import (
    EBCKey,
    PeriodicFunction,
    PrimeSet,
    direct_sum_oracle,
    gamma_aq,
    gamma_omega,
    gamma_omega_aq,
    verify_identity,
    IDENTITIES,
)
from .errors import ClosedFormUnavailableError, EBCError
from .lfunctions import l_one_digamma, l_one_series
from .relations import (
    DimensionProbeSpec,
    RelationQuery,
    SetFamily,
    dimension_probe,
    find_integer_relation,
    irreducible_family_check,
    parse_family,
    probe_algebraic_ratio,
    probe_gamma_family,
    schanuel_prediction,
    schanuel_probe,
)

__all__ = ["JobSpec", "UsageError", "run", "main", "build_parser", "parse_entry"]

MIN_DIGITS, MAX_DIGITS = 10, 10000
DEFAULT_DIGITS = 50
CACHE_EXTRA = 10      # stored beyond the promised digits so re-rounding is exact

COMMAND_KEYS = {
    "compute": {"omega", "a", "q", "route"},
    "lvalue": {"q", "index", "route"},
    "chars": {"q"},
    "verify": {"identity", "omega", "a", "q", "f", "M"},
    "pslq": {"entry", "height"},
    "probe": {"kind", "omega", "q", "a", "height", "x", "y", "degree", "sets", "augment",
              "N", "d"},
    "irreducible": {"sets", "naturals"},
}


class UsageError(Exception):
    """Malformed command-line input; maps to exit status 2."""


@dataclass
class JobSpec:
    command: str
    params: dict = field(default_factory=dict)
    digits: int = DEFAULT_DIGITS
    output: str = "json"
    cache_dir: str | None = None
    no_cache: bool = False

    def __post_init__(self):
        if self.command not in COMMAND_KEYS:
            raise UsageError(f"command: unknown command {self.command!r}")
        unknown = sorted(set(self.params) - COMMAND_KEYS[self.command])
        if unknown:
            raise UsageError(f"{unknown[0]}: unknown key for {self.command}")
        if not isinstance(self.digits, int) or not MIN_DIGITS <= self.digits <= MAX_DIGITS:
            raise UsageError(f"digits: must be an integer in [{MIN_DIGITS}, {MAX_DIGITS}], "
                             f"got {self.digits!r}")
        if self.output not in ("json", "text"):
            raise UsageError(f"output: must be json or text, got {self.output!r}")


# -- parameter parsing -------------------------------------------------------------

def _param(params, key, kind, default=None, required=False):
    raw = params.get(key)
    if raw is None:
        if required:
            raise UsageError(f"{key}: required")
        return default
    try:
        return kind(raw)
    except (ValueError, TypeError, ZeroDivisionError, EBCError) as exc:
        raise UsageError(f"{key}: {exc}") from None


def _positive(x) -> int:
    n = int(x)
    if n < 1:
        raise ValueError(f"must be a positive integer, got {x}")
    return n


def _omega(x) -> PrimeSet:
    return x if isinstance(x, PrimeSet) else PrimeSet.parse(str(x))


def _rationals(x) -> tuple[Fraction, ...]:
    if isinstance(x, (list, tuple)):
        return tuple(to_fraction(v) for v in x)
    return tuple(Fraction(t.strip()) for t in str(x).split(",") if t.strip())


def _naturals(x) -> tuple[int, ...]:
    return tuple(_positive(t) for t in str(x).split(","))


def _choice(*options):
    def pick(x):
        if x not in options:
            raise ValueError(f"expected one of {', '.join(options)}, got {x!r}")
        return x
    return pick


def parse_entry(text: str, ctx: PrecisionContext) -> BigReal:
    """Entry grammar for relation searches.

    gamma | pi | log:X | sqrt:X | gamma_aq:a:q | gomega:OMEGA | ebc:OMEGA:a:q |
    L:q:k:re | L:q:k:im | a decimal or rational literal. OMEGA is '2,5' or '-'.
    """
    head, _, rest = text.partition(":")
    args = rest.split(":") if rest else []
    try:
        if head == "gamma" and not args:
            return const_gamma(ctx)
        if head == "pi" and not args:
            return const_pi(ctx)
        if head == "log" and len(args) == 1:
            return log_natural(args[0], ctx)
        if head == "sqrt" and len(args) == 1:
            x = to_fraction(args[0])
            if x < 0:
                raise ValueError("sqrt of a negative number")
            with ctx.activate():
                return BigReal(mpmath.sqrt(mpmath.mpf(x.numerator) / x.denominator), ctx)
        if head == "gamma_aq" and len(args) == 2:
            return gamma_aq(int(args[0]), _positive(args[1]), ctx)
        if head == "gomega" and len(args) == 1:
            return gamma_omega(_omega(args[0]), ctx)
        if head == "ebc" and len(args) == 3:
            omega, a, q = _omega(args[0]), int(args[1]), _positive(args[2])
            try:
                return gamma_omega_aq(EBCKey(omega, a, q), ctx)
            except ClosedFormUnavailableError:
                return direct_sum_oracle(omega, a, q, ctx)
        if head == "L" and len(args) == 3 and args[2] in ("re", "im"):
            q, k = _positive(args[0]), int(args[1])
            chars = enumerate_characters(q)
            if not 0 <= k < len(chars):
                raise ValueError(f"character index {k} out of range 0..{len(chars) - 1}")
            lv = l_one_digamma(chars[k], ctx)
            return lv.real_part if args[2] == "re" else lv.imag_part
        if not args:
            if "/" in text:
                return _rational_entry(Fraction(text), ctx)
            return BigReal.from_decimal(text, ctx)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"entry: {text!r}: {exc}") from None
    raise UsageError(f"entry: cannot parse {text!r}")


def _rational_entry(x: Fraction, ctx: PrecisionContext) -> BigReal:
    with ctx.activate():
        return BigReal(mpmath.mpf(x.numerator) / x.denominator, ctx)


# -- result rows --------------------------------------------------------------------

def _row(label, value, digits_achieved, route):
    return {"label": label, "value": value, "digits_achieved": digits_achieved, "route": route}


class _Valuer:
    """Formats BigReals, consulting the digit cache for reproducible quantities."""

    def __init__(self, cache: DigitCache, digits: int):
        self.cache = cache
        self.digits = digits
        self.ctx = PrecisionContext(digits)

    def number(self, label, value: BigReal, route):
        return _row(label, value.decimal(), value.digits, route)

    def cached(self, label, name, params, compute, route):
        """Row for a value served from the cache when possible; returns (row, value)."""
        key = canonical_key(name, params)
        hit = self.cache.get(key, self.digits)
        if hit is not None:
            value = BigReal.from_decimal(hit.decimal_string, self.ctx)
            return _row(label, value.decimal(self.digits), self.digits, route), value
        value = compute()
        if value.digits >= self.digits:
            self.cache.put(CacheEntry(key, self.digits, value.decimal(self.digits + CACHE_EXTRA)))
        return self.number(label, value, route), value

    def difference(self, label, x: BigReal, y: BigReal, route):
        """|x - y| to ``digits`` decimal places (an absolute, not relative, precision)."""
        d = abs(x - y)
        with self.ctx.activate():
            units = int(mpmath.nint(d.value * mpmath.mpf(10) ** self.digits))
        whole, frac = divmod(units, 10 ** self.digits)
        return _row(label, f"{whole}.{frac:0{self.digits}d}", self.digits, route)


def _certificate(res):
    H, P = res.certificate
    cert = {"status": res.status, "height": H, "precision": P, "iterations": res.iterations}
    if res.norm_bound is not None:
        cert["norm_bound"] = mpmath.nstr(res.norm_bound, 6)
    if res.found:
        cert["relation"] = list(res.coefficients)
        cert["residual"] = res.residual.decimal(3)
    else:
        cert["note"] = res.note
    return cert


def _relation_row(res):
    value = ",".join(map(str, res.coefficients)) if res.found else "none"
    return _row("relation(" + ",".join(res.labels) + ")", value, None, "pslq")


# -- commands ------------------------------------------------------------------------

def _cmd_compute(job, v: _Valuer):
    omega = _param(job.params, "omega", _omega, PrimeSet())
    q = _param(job.params, "q", _positive, 1)
    a = _param(job.params, "a", int, 1)
    route = _param(job.params, "route", _choice("both", "closed_form", "oracle"), "both")
    key = EBCKey(omega, a, q)
    params = {"omega": str(omega), "a": key.a, "q": q}
    rows, closed = [], None
    label = str(key)
    if route in ("both", "closed_form"):
        name = "diamond_ford" if q == 1 else "qq_formula" if key.a == q else "closed_form"
        try:
            row, closed = v.cached(label, "ebc", params, lambda: gamma_omega_aq(key, v.ctx), name)
        except ClosedFormUnavailableError as exc:
            if route == "closed_form":
                raise
            rows.append(_row(label, None, None, f"closed_form unavailable: {exc}"))
        else:
            rows.append(row)
    if route in ("both", "oracle"):
        oracle = direct_sum_oracle(omega, key.a, q, v.ctx)
        rows.append(v.number(label, oracle, "oracle"))
        if closed is not None:
            rows.append(v.difference("|closed_form - oracle|", closed, oracle, "difference"))
    return params, rows, {}


def _cmd_lvalue(job, v: _Valuer):
    q = _param(job.params, "q", _positive, required=True)
    index = _param(job.params, "index", int)
    route = _param(job.params, "route", _choice("digamma", "series", "both"), "digamma")
    chars = enumerate_characters(q)
    if index is not None:
        if not 0 <= index < len(chars):
            raise UsageError(f"index: out of range 0..{len(chars) - 1}")
        targets = [chars[index]]
    else:
        targets = chars[1:]
    rows = []
    for chi in targets:
        label = f"L(1,{chi.label})"
        chi_key = {"q": q, "chi": ",".join(map(str, chi.exponents))}
        dg = sr = None
        if route in ("digamma", "both"):
            parts = {}
            for part in ("re", "im"):
                def compute(part=part):
                    lv = l_one_digamma(chi, v.ctx)
                    return lv.real_part if part == "re" else lv.imag_part
                row, parts[part] = v.cached(f"{part} {label}", f"L.{part}", chi_key, compute,
                                            "digamma")
                rows.append(row)
            dg = parts
        if route in ("series", "both"):
            lv = l_one_series(chi, v.ctx)
            sr = {"re": lv.real_part, "im": lv.imag_part}
            rows.append(v.number(f"re {label}", sr["re"], "series"))
            rows.append(v.number(f"im {label}", sr["im"], "series"))
        if dg is not None and sr is not None:
            for part in ("re", "im"):
                rows.append(v.difference(f"|digamma - series| {part} {label}", dg[part],
                                         sr[part], "difference"))
    params = {"q": q, "index": index, "route": route}
    return params, rows, {}


def _cmd_chars(job, v: _Valuer):
    q = _param(job.params, "q", _positive, required=True)
    rows = []
    for i, chi in enumerate(enumerate_characters(q)):
        table = ",".join(str(chi(n)) for n in range(1, q + 1))
        rows.append(_row(f"{i} {chi.label} {chi.parity}", table, None, "exact"))
    return {"q": q}, rows, {}


def _cmd_verify(job, v: _Valuer):
    name = _param(job.params, "identity", _choice(*sorted(IDENTITIES)), required=True)
    params = {"identity": name}
    if name == "gs_sum":
        f = _param(job.params, "f", _rationals, required=True)
        if not f:
            raise UsageError("f: needs at least one value")
        params["f"] = ",".join(map(str, f))
        params["M"] = _param(job.params, "M", _positive, 1)
        call = {"f": PeriodicFunction(len(f), f), "M": params["M"]}
    else:
        omega = _param(job.params, "omega", _omega, PrimeSet())
        params["omega"] = str(omega)
        call = {"omega": omega}
        if name == "closed_form_vs_oracle":
            params["a"] = call["a"] = _param(job.params, "a", int, 1)
        if name in ("closed_form_vs_oracle", "qq_identity"):
            params["q"] = call["q"] = _param(job.params, "q", _positive, 1)
    rep = verify_identity(name, call, v.ctx)
    rows = [
        v.number("lhs", rep.lhs, rep.routes[0]),
        v.number("rhs", rep.rhs, rep.routes[1]),
        v.difference("|lhs - rhs|", rep.lhs, rep.rhs, "difference"),
        _row("tolerance", f"1e-{rep.tolerance_exponent}", None, "threshold"),
    ]
    return params, rows, {"pass": rep.passed}


def _cmd_pslq(job, v: _Valuer):
    entries = job.params.get("entry") or []
    if isinstance(entries, str):
        entries = [entries]
    if len(entries) < 2:
        raise UsageError("entry: at least two --entry values are required")
    height = _param(job.params, "height", _positive, 1000)
    values = [(e, parse_entry(e, v.ctx)) for e in entries]
    res = find_integer_relation(RelationQuery(tuple(values), height, v.digits))
    rows = [v.number(lbl, val, "entry") for lbl, val in values] + [_relation_row(res)]
    return {"entry": list(entries), "height": height}, rows, {"certificate": _certificate(res)}


def _probe_rows(v, res, params, predicted_found=False):
    rows = [_relation_row(res)]
    return params, rows, {"pass": res.found == predicted_found, "certificate": _certificate(res)}


def _cmd_probe(job, v: _Valuer):
    kind = _param(job.params, "kind", _choice("gamma_family", "ratio", "schanuel", "dimension"),
                  required=True)
    height = _param(job.params, "height", _positive, 10 ** 6)
    if kind == "gamma_family":
        omega = _param(job.params, "omega", _omega, PrimeSet())
        q = _param(job.params, "q", _positive, required=True)
        res = probe_gamma_family(omega, q, height, v.ctx)
        return _probe_rows(v, res, {"kind": kind, "omega": str(omega), "q": q, "height": height})
    if kind == "ratio":
        x = _param(job.params, "x", str, required=True)
        y = _param(job.params, "y", str, required=True)
        degree = _param(job.params, "degree", _positive, 3)
        res = probe_algebraic_ratio(parse_entry(x, v.ctx), parse_entry(y, v.ctx), degree,
                                    height, v.ctx)
        return _probe_rows(v, res, {"kind": kind, "x": x, "y": y, "degree": degree,
                                    "height": height})
    if kind == "schanuel":
        family = _param(job.params, "sets", parse_family, required=True)
        q = _param(job.params, "q", _positive, 1)
        a = _param(job.params, "a", int, 1)
        augment = bool(job.params.get("augment", False))
        res = schanuel_probe(family.sets, q, height, v.ctx, a=a, augment=augment)
        predicted = schanuel_prediction(family.sets, q, augment)
        params = {"kind": kind, "sets": "|".join(str(s) for s in family.sets), "q": q, "a": a,
                  "augment": augment, "height": height}
        params, rows, extra = _probe_rows(v, res, params, predicted)
        rows.insert(0, _row("predicted", "dependent" if predicted else "independent", None,
                            "prime-log rank"))
        return params, rows, extra
    # dimension
    omega = _param(job.params, "omega", _omega, PrimeSet())
    N = _param(job.params, "N", _positive, required=True)
    d = _param(job.params, "d", _positive, 1)
    try:
        spec = DimensionProbeSpec(omega, N, d)
    except EBCError as exc:
        raise UsageError(f"N: {exc}") from None
    rep = dimension_probe(spec, height, v.ctx)
    rows = [
        _row("p", str(rep.p), None, "prime search"),
        _row("ell", str(rep.ell), None, "prime search"),
        _row("lower_bound", str(rep.lower_bound), None, "min(p, ell) - 1"),
    ]
    rows += [_relation_row(r) for r in rep.results]
    params = {"kind": kind, "omega": str(omega), "N": N, "d": d, "height": height}
    certs = [_certificate(r) for r in rep.results]
    return params, rows, {"pass": any(not r.found for r in rep.results), "certificate": certs}


def _cmd_irreducible(job, v: _Valuer):
    sets = job.params.get("sets")
    nats = job.params.get("naturals")
    if (sets is None) == (nats is None):
        raise UsageError("sets: give exactly one of --sets or --naturals")
    if sets is not None:
        family = _param(job.params, "sets", parse_family)
        params = {"sets": "|".join(str(s) for s in family.sets)}
    else:
        family = SetFamily.of_naturals(_param(job.params, "naturals", _naturals))
        params = {"naturals": ",".join(map(str, family.naturals))}
    res = irreducible_family_check(family)
    rows = [
        _row("irreducible", "true" if res.irreducible else "false", None, "private primes"),
        _row("witness" if not res.irreducible else "explanation", res.explain(), None,
             "private primes"),
    ]
    return params, rows, {}


COMMANDS = {
    "compute": _cmd_compute,
    "lvalue": _cmd_lvalue,
    "chars": _cmd_chars,
    "verify": _cmd_verify,
    "pslq": _cmd_pslq,
    "probe": _cmd_probe,
    "irreducible": _cmd_irreducible,
}


# -- rendering -----------------------------------------------------------------------

def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2)


def render_text(doc: dict) -> str:
    lines = [f"command: {doc['command']}"]
    lines.append("params: " + " ".join(f"{k}={v}" for k, v in doc["params"].items()))
    lines.append(f"digits requested: {doc['digits_requested']}")
    for r in doc["results"]:
        tag = r["route"] if r["digits_achieved"] is None else f"{r['route']}, {r['digits_achieved']} digits"
        lines.append(f"  {r['label']} = {r['value']}  [{tag}]")
    if "pass" in doc:
        lines.append(f"pass: {'yes' if doc['pass'] else 'no'}")
    if "certificate" in doc:
        certs = doc["certificate"] if isinstance(doc["certificate"], list) else [doc["certificate"]]
        for c in certs:
            lines.append("certificate: " + ", ".join(f"{k}={val}" for k, val in c.items()))
    lines.append(f"elapsed: {doc['elapsed_ms']} ms")
    return "\n".join(lines)


def run(job: JobSpec) -> tuple[int, str]:
    """Execute ``job``; returns (exit status, rendered output or error message)."""
    cache = DigitCache(job.cache_dir, enabled=not job.no_cache)
    valuer = _Valuer(cache, job.digits)
    start = time.perf_counter()
    try:
        params, rows, extra = COMMANDS[job.command](job, valuer)
    except UsageError as exc:
        return 2, f"ebc {job.command}: error: {exc}"
    except EBCError as exc:
        return 1, f"ebc {job.command}: {type(exc).__name__}: {exc}"
    doc = {
        "command": job.command,
        "params": params,
        "digits_requested": job.digits,
        "results": rows,
    }
    if "pass" in extra:
        doc["pass"] = extra["pass"]
    if "certificate" in extra:
        doc["certificate"] = extra["certificate"]
    doc["elapsed_ms"] = int(round((time.perf_counter() - start) * 1000))
    return 0, render_json(doc) if job.output == "json" else render_text(doc)


# -- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=DEFAULT_DIGITS,
                        help=f"requested decimal digits ({MIN_DIGITS}..{MAX_DIGITS})")
    common.add_argument("--height", type=int, help="height bound H for relation searches")
    common.add_argument("--cache-dir", help="digit cache directory (default: $EBC_CACHE_DIR "
                                            "or the platform cache directory)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("--output", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(prog="ebc", description="Generalized Euler-Briggs constants.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="gamma(Omega, a, q) by both routes")
    p.add_argument("--omega", default="", help="comma-separated primes, e.g. 2,5 (empty: none)")
    p.add_argument("--a", default="1")
    p.add_argument("--q", default="1")
    p.add_argument("--route", default="both", choices=("both", "closed_form", "oracle"))

    p = sub.add_parser("lvalue", parents=[common], help="L(1, chi) for characters mod q")
    p.add_argument("--q", required=True)
    p.add_argument("--index", help="character index in enumeration order (0 is principal)")
    p.add_argument("--route", default="digamma", choices=("digamma", "series", "both"))

    p = sub.add_parser("chars", parents=[common], help="value tables of all characters mod q")
    p.add_argument("--q", required=True)

    p = sub.add_parser("verify", parents=[common], help="check a named identity by two routes")
    p.add_argument("--identity", required=True, choices=sorted(IDENTITIES))
    p.add_argument("--omega")
    p.add_argument("--a")
    p.add_argument("--q")
    p.add_argument("--f", help="values f(1..q) of a periodic function, e.g. 1,-1,0")
    p.add_argument("--M")

    p = sub.add_parser("pslq", parents=[common], help="integer-relation search")
    p.add_argument("--entry", action="append", required=True,
                   help="gamma, pi, log:X, sqrt:X, gamma_aq:a:q, gomega:OMEGA, ebc:OMEGA:a:q, "
                        "L:q:k:re|im or a literal; repeat for each entry")

    p = sub.add_parser("probe", parents=[common], help="relation probes")
    p.add_argument("--kind", required=True, choices=("gamma_family", "ratio", "schanuel", "dimension"))
    p.add_argument("--omega")
    p.add_argument("--q")
    p.add_argument("--a")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--degree")
    p.add_argument("--sets", help="|-separated prime sets, e.g. '2|3|2,3'")
    p.add_argument("--augment", action="store_true", default=None)
    p.add_argument("--N")
    p.add_argument("--d")

    p = sub.add_parser("irreducible", parents=[common], help="irreducible-family check")
    p.add_argument("--sets", help="|-separated prime sets, e.g. '2|3|2,3'")
    p.add_argument("--naturals", help="comma-separated naturals, e.g. 6,10,15")
    return parser


_GLOBAL = {"digits", "height", "cache_dir", "no_cache", "output", "command"}


def job_from_args(ns: argparse.Namespace) -> JobSpec:
    params = {k: val for k, val in vars(ns).items() if k not in _GLOBAL and val is not None}
    if ns.height is not None:
        if ns.command not in ("pslq", "probe"):
            raise UsageError("height: only meaningful for pslq and probe")
        params["height"] = ns.height
    return JobSpec(ns.command, params, ns.digits, ns.output, ns.cache_dir, ns.no_cache)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        job = job_from_args(ns)
    except UsageError as exc:
        print(f"ebc {ns.command}: error: {exc}", file=sys.stderr)
        return 2
    status, text = run(job)
    print(text, file=sys.stdout if status == 0 else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
