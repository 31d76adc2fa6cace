"""ndtlab command line: compute, sweep, compare, verify, gap-audit.

Configuration comes from flags and/or a JSON document (``--config``) using
the same field names; flags win. Exit codes: 0 ok, 1 verification failure,
2 bad input, 3 scheme/topology mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ndtlab import accel, dedicated, ic_schemes, planlab, wireless
from ndtlab.core import Duplex, FronthaulKind, NetworkConfig, decentralized_fraction, to_rational
from ndtlab.errors import ConfigError, NdtError, UnsupportedTopology

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_TOPOLOGY = 0, 1, 2, 3

AXES = ("mu_t", "mu_r", "r_d", "r_w")
CONFIG_FIELDS = ("kt", "kr", "mut", "mur", "rd", "rw", "nfiles", "duplex")
AXIS_FIELD = {"mu_t": "mut", "mu_r": "mur", "r_d": "rd", "r_w": "rw"}
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd")


class CliError(Exception):
    def __init__(self, message, code=EXIT_INPUT):
        super().__init__(message)
        self.code = code


# ------------------------------------------------------------------ schemes

@dataclass
class Outcome:
    total: Fraction
    fronthaul: object = None
    access: object = None
    rule: str = "sum"
    extra: tuple = ()


def _no_fh(point):
    return NetworkConfig.no_fronthaul(point["kt"], point["kr"], point["mut"], point["mur"],
                                      n_files=point["nfiles"])


def _ded(point, duplex=None):
    return NetworkConfig.dedicated(point["kt"], point["kr"], point["mut"], point["mur"], point["rd"],
                                   n_files=point["nfiles"], duplex=duplex or point["duplex"])


def _wl(point):
    return NetworkConfig.wireless(point["kt"], point["kr"], point["mut"], point["mur"], point["rw"],
                                  n_files=point["nfiles"], duplex=point["duplex"])


def _split_text(table):
    return ",".join(f"a[{r},{t}]={v}" for (r, t), v in table.nonzero().items())


def _run_nma(point, opt):
    v = ic_schemes.ndt_nma(_no_fh(point))
    return Outcome(v, Fraction(0), v)


def _run_hnd(point, opt):
    v = ic_schemes.ndt_hnd(_no_fh(point))
    return Outcome(v, Fraction(0), v)


def _run_xtl(point, opt):
    v, table = ic_schemes.ndt_xtl(_no_fh(point))
    return Outcome(v, Fraction(0), v, extra=(("split", _split_text(table)),))


def _run_lower_ic(point, opt):
    v, w = ic_schemes.ndt_lower_bound(_no_fh(point))
    return Outcome(v, extra=(("witness", f"l={w.l},s1={w.s1},s2={w.s2}"),))


def _run_sts(point, opt):
    return Outcome(dedicated.ndt_sts(_ded(point), with_local_gain=opt == "local"))


def _run_gene(point, opt):
    return Outcome(dedicated.ndt_gene(_ded(point)))


def _dedicated_runner(duplex):
    def run(point, opt):
        placement = dedicated.Placement(opt or "centralized")
        res = dedicated.ndt_dedicated(_ded(point, duplex), placement, duplex)
        mix = ",".join(f"{w}*{s.value}@mur={m}" for m, w, s in res.mix)
        extra = (("strategy", res.strategy.value), ("placement", placement.value))
        if mix:
            extra += (("mix", mix),)
        return Outcome(res.total, res.fronthaul, res.access,
                       "max" if duplex is Duplex.FULL else "sum", extra)
    return run


def _run_wireless_upper(point, opt):
    total, groups = wireless.ndt_wireless_upper(_wl(point))
    f, a = wireless.upper_split(groups)
    best = ",".join(f"({g.m},{g.n}):{g.best_i}" for g in groups)
    return Outcome(total, f, a, extra=(("best_i", best),))


def _run_wireless_lower(point, opt):
    v, l1, l2 = wireless.ndt_wireless_lower(_wl(point))
    return Outcome(v, extra=(("l1", l1), ("l2", l2)))


def _run_kstk(point, opt):
    return Outcome(wireless.ndt_kstk(_wl(point)), rule="max")


def _run_dyl(point, opt):
    return Outcome(wireless.ndt_dyl(_wl(point)))


def _need_kt2(point):
    if point["kt"] != 2:
        raise UnsupportedTopology(f"gene requires kt=2, got kt={point['kt']}")


def _need_2x2(point):
    if (point["kt"], point["kr"]) != (2, 2):
        raise UnsupportedTopology(f"kstk requires kt=2 and kr=2, got {point['kt']}x{point['kr']}")


# id -> (runner, allowed options, topology check)
SCHEMES = {
    "nma": (_run_nma, (), None),
    "hnd": (_run_hnd, (), None),
    "xtl": (_run_xtl, (), None),
    "lower-ic": (_run_lower_ic, (), None),
    "sts": (_run_sts, ("local",), None),
    "gene": (_run_gene, (), _need_kt2),
    "dedicated-half": (_dedicated_runner(Duplex.HALF), ("centralized", "decentralized"), None),
    "dedicated-full": (_dedicated_runner(Duplex.FULL), ("centralized", "decentralized"), None),
    "wireless-upper": (_run_wireless_upper, (), None),
    "wireless-lower": (_run_wireless_lower, (), None),
    "kstk": (_run_kstk, (), _need_2x2),
    "dyl": (_run_dyl, (), None),
}


def parse_scheme(text: str) -> tuple:
    """``name[:option]`` -> (name, option or None)."""
    name, _, opt = text.strip().partition(":")
    if name not in SCHEMES:
        raise CliError(f"unknown scheme {name!r}; known: {', '.join(SCHEMES)}")
    allowed = SCHEMES[name][1]
    if opt and opt not in allowed:
        raise CliError(f"scheme {name} does not take option {opt!r}"
                       + (f" (allowed: {', '.join(allowed)})" if allowed else ""))
    return name, opt or None


def check_topology(schemes, point):
    for name, _ in schemes:
        check = SCHEMES[name][2]
        if check is not None:
            try:
                check(point)
            except UnsupportedTopology as exc:
                raise CliError(str(exc), EXIT_TOPOLOGY) from exc


def evaluate(scheme, point) -> Outcome:
    name, opt = scheme
    return SCHEMES[name][0](point, opt)


def evaluate_or_na(scheme, point):
    try:
        return evaluate(scheme, point).total
    except NdtError:
        return None


# ----------------------------------------------------------------- config

def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CliError(f"config {path} must hold a JSON object")
    return doc


def merged_options(args, keys) -> dict:
    """File values overridden by every flag the user actually gave."""
    doc = _load_json(args.config) if getattr(args, "config", None) else {}
    unknown = set(doc) - set(keys) - {"comment"}
    if unknown:
        raise CliError(f"unknown config field(s): {', '.join(sorted(unknown))}")
    out = {k: doc.get(k) for k in keys}
    for k in keys:
        v = getattr(args, k, None)
        if v is not None:
            out[k] = v
    return out


def _int(value, name):
    if isinstance(value, bool):
        raise CliError(f"{name} must be an integer")
    try:
        v = int(str(value))
    except ValueError as exc:
        raise CliError(f"{name} must be an integer, got {value!r}") from exc
    return v


def _rat(value, name):
    try:
        return to_rational(value, name)
    except ConfigError as exc:
        raise CliError(str(exc)) from exc


def base_point(opts) -> dict:
    if opts.get("kt") is None or opts.get("kr") is None:
        raise CliError("kt and kr are required")
    point = {"kt": _int(opts["kt"], "kt"), "kr": _int(opts["kr"], "kr")}
    for k in ("mut", "mur", "rd", "rw"):
        point[k] = _rat(opts[k] if opts.get(k) is not None else 0, k)
    point["nfiles"] = None if opts.get("nfiles") is None else _int(opts["nfiles"], "nfiles")
    duplex = opts.get("duplex") or "half"
    if duplex not in ("half", "full"):
        raise CliError(f"duplex must be half or full, got {duplex!r}")
    point["duplex"] = duplex
    # validate the shared fields once so bad input fails before any work
    try:
        NetworkConfig(point["kt"], point["kr"], point["mut"], point["mur"], n_files=point["nfiles"],
                      fronthaul=FronthaulKind.DEDICATED, rate=max(point["rd"], point["rw"]))
        for k in ("rd", "rw"):
            if point[k] < 0:
                raise ConfigError(f"{k} must be >= 0, got {point[k]}")
    except ConfigError as exc:
        raise CliError(str(exc)) from exc
    return point


def scheme_list(value) -> list:
    if value is None:
        items = []
    elif isinstance(value, str):
        items = [s for s in value.split(",") if s.strip()]
    elif isinstance(value, list):
        items = [str(s) for s in value]
    else:
        raise CliError("schemes must be a list or a comma-separated string")
    if not items:
        raise CliError("the scheme list is empty")
    return [parse_scheme(s) for s in items]


def grid(opts) -> tuple:
    axis = opts.get("axis")
    if axis not in AXES:
        raise CliError(f"axis must be one of {', '.join(AXES)}, got {axis!r}")
    for k in ("start", "stop", "step"):
        if opts.get(k) is None:
            raise CliError(f"a sweep needs {k}")
    start, stop, step = (_rat(opts[k], k) for k in ("start", "stop", "step"))
    if step <= 0:
        raise CliError(f"step must be > 0, got {step}")
    if start > stop:
        raise CliError(f"start {start} exceeds stop {stop}")
    count = math.floor((stop - start) / step) + 1
    return axis, [start + k * step for k in range(count)]


def point_at(base, axis, value) -> dict:
    p = dict(base)
    p[AXIS_FIELD[axis]] = value
    return p


def _threads() -> int:
    raw = os.environ.get("NDT_LAB_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise CliError(f"NDT_LAB_THREADS must be an integer, got {raw!r}")
    return min(8, os.cpu_count() or 1)


def run_grid(schemes, base, axis, values) -> list:
    """rows of (axis value, [total or None per scheme]) in axis order."""
    def row(v):
        p = point_at(base, axis, v)
        return v, [evaluate_or_na(s, p) for s in schemes]

    workers = _threads()
    if workers == 1:
        return [row(v) for v in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(row, values))


# ----------------------------------------------------------------- output

def fmt_num(v) -> str:
    if v is None:
        return "NA"
    x = float(v)
    if x == 0:
        return "0"
    return f"{x:.12g}"


def scheme_label(scheme) -> str:
    name, opt = scheme
    return f"{name}:{opt}" if opt else name


def to_csv(axis, schemes, rows) -> str:
    lines = [",".join([axis] + [scheme_label(s) for s in schemes])]
    for v, vals in rows:
        lines.append(",".join([fmt_num(v)] + [fmt_num(x) for x in vals]))
    return "\n".join(lines) + "\n"


def _ticks(lo, hi, n=5):
    return [lo + (hi - lo) * k / n for k in range(n + 1)]


def to_svg(axis, schemes, rows, title="") -> str:
    w, h = 800, 600
    left, right, top, bottom = 80, 180, 40, 60
    xs = [float(v) for v, _ in rows]
    ys = [float(x) for _, vals in rows for x in vals if x is not None]
    x0, x1 = (min(xs), max(xs)) if xs else (0.0, 1.0)
    y0, y1 = (min(ys), max(ys)) if ys else (0.0, 1.0)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = (y1 - y0) * 0.05
    y0, y1 = y0 - pad, y1 + pad
    pw, ph = w - left - right, h - top - bottom

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + (y1 - y) / (y1 - y0) * ph

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
           f'<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>',
           f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>']
    if title:
        out.append(f'<text x="{left + pw / 2:.2f}" y="24" text-anchor="middle" font-size="16">{title}</text>')
    for t in _ticks(x0, x1):
        out.append(f'<line x1="{sx(t):.2f}" y1="{top + ph}" x2="{sx(t):.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(t):.2f}" y="{top + ph + 20}" text-anchor="middle" font-size="12">{t:.3g}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<line x1="{left - 5}" y1="{sy(t):.2f}" x2="{left}" y2="{sy(t):.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{sy(t) + 4:.2f}" text-anchor="end" font-size="12">{t:.3g}</text>')
    out.append(f'<text x="{left + pw / 2:.2f}" y="{h - 15}" text-anchor="middle" font-size="14">{axis}</text>')
    out.append(f'<text x="20" y="{top + ph / 2:.2f}" text-anchor="middle" font-size="14" '
               f'transform="rotate(-90 20 {top + ph / 2:.2f})">NDT</text>')
    for k, scheme in enumerate(schemes):
        color = PALETTE[k % len(PALETTE)]
        dash = "" if k < len(PALETTE) else ' stroke-dasharray="6 3"'
        segment = []
        segments = []
        for v, vals in rows:
            if vals[k] is None:
                if segment:
                    segments.append(segment)
                segment = []
            else:
                segment.append(f"{sx(float(v)):.2f},{sy(float(vals[k])):.2f}")
        if segment:
            segments.append(segment)
        for seg in segments:
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="2"{dash} points="{" ".join(seg)}"/>')
        ly = top + 20 + 22 * k
        out.append(f'<line x1="{left + pw + 15}" y1="{ly}" x2="{left + pw + 45}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{left + pw + 50}" y="{ly + 4}" font-size="12">{scheme_label(scheme)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from exc


# ---------------------------------------------------------------- commands

def _val(v) -> str:
    return "NA" if v is None else str(v)


def cmd_compute(args) -> int:
    opts = merged_options(args, CONFIG_FIELDS + ("scheme",))
    if not opts.get("scheme"):
        raise CliError("compute needs --scheme")
    scheme = parse_scheme(opts["scheme"])
    point = base_point(opts)
    check_topology([scheme], point)
    try:
        res = evaluate(scheme, point)
    except UnsupportedTopology as exc:
        raise CliError(str(exc), EXIT_TOPOLOGY) from exc
    except NdtError as exc:
        raise CliError(str(exc)) from exc
    lines = [f"scheme={scheme_label(scheme)}",
             f"fronthaul={_val(res.fronthaul)}",
             f"access={_val(res.access)}",
             f"total={res.total}",
             f"total_float={fmt_num(res.total)}",
             f"rule={res.rule}"]
    lines += [f"{k}={v}" for k, v in res.extra]
    print("\n".join(lines))
    return EXIT_OK


SWEEP_FIELDS = CONFIG_FIELDS + ("schemes", "axis", "start", "stop", "step", "output", "format", "title")


def sweep_setup(args):
    opts = merged_options(args, SWEEP_FIELDS)
    schemes = scheme_list(opts.get("schemes"))
    axis, values = grid(opts)
    base = base_point(opts)
    for v in values:
        check_topology(schemes, point_at(base, axis, v))
    return opts, schemes, base, axis, values


def cmd_sweep(args) -> int:
    opts, schemes, base, axis, values = sweep_setup(args)
    fmt = opts.get("format")
    out = opts.get("output")
    if fmt is None:
        fmt = "svg" if out and str(out).endswith(".svg") else "csv"
    if fmt not in ("csv", "svg"):
        raise CliError(f"format must be csv or svg, got {fmt!r}")
    rows = run_grid(schemes, base, axis, values)
    text = to_csv(axis, schemes, rows) if fmt == "csv" else to_svg(axis, schemes, rows, opts.get("title") or "")
    _write(out, text)
    return EXIT_OK


def cmd_compare(args) -> int:
    opts = merged_options(args, SWEEP_FIELDS)
    schemes = scheme_list(opts.get("schemes"))
    if len(schemes) != 2:
        raise CliError(f"compare needs exactly two schemes, got {len(schemes)}")
    base = base_point(opts)
    if opts.get("axis") is None:
        axis, values = "mu_t", [base["mut"]]
    else:
        axis, values = grid(opts)
    for v in values:
        check_topology(schemes, point_at(base, axis, v))
    rows = run_grid(schemes, base, axis, values)
    lines = [",".join([axis] + [scheme_label(s) for s in schemes] + ["ratio"])]
    for v, (a, b) in rows:
        ratio = None if a is None or b is None or b == 0 else Fraction(a) / Fraction(b)
        lines.append(",".join([fmt_num(v), fmt_num(a), fmt_num(b), fmt_num(ratio)]))
    _write(opts.get("output"), "\n".join(lines) + "\n")
    return EXIT_OK


MC_SIGMAS = 5


def mc_tolerance(f: float, bits: int, sets: int, k: int) -> float:
    # 5 standard deviations of the per-set average, plus the rounding of
    # mu*bits to a whole number of cached bits at each of the k nodes
    return MC_SIGMAS * math.sqrt(max(f * (1 - f), 0.0) / (bits * sets)) + k / bits


def cmd_verify(args) -> int:
    opts = merged_options(args, CONFIG_FIELDS + ("seed", "bits"))
    point = base_point(opts)
    seed = _int(opts["seed"] if opts.get("seed") is not None else 0, "seed")
    bits = _int(opts["bits"] if opts.get("bits") is not None else 10**5, "bits")
    try:
        cfg = _wl(point)
        plan = planlab.build_plan_wireless(cfg)
        upper, groups = wireless.ndt_wireless_upper(cfg)
        expected = wireless.upper_split(groups)
        report = planlab.verify_plan(plan, cfg, expected=expected)
        sample = planlab.sample_decentralized_placement(cfg, bits, seed)
    except NdtError as exc:
        raise CliError(str(exc)) from exc
    lines = [f"config: kt={cfg.k_t} kr={cfg.k_r} mut={cfg.mu_t} mur={cfg.mu_r} rw={cfg.r_w}"]
    lines += [f"{name}: {'PASS' if ok else 'FAIL'}" for name, ok in sorted(report.checks.items())]
    lines += report.violations
    match = report.total == upper
    lines.append(f"plan: fronthaul={report.fronthaul} access={report.access} total={report.total}")
    lines.append(f"wireless_upper: total={upper}")
    lines.append(f"upper_match: {'PASS' if match else 'FAIL'}")
    mc_ok = True
    for (r, t), emp in sorted(sample.items()):
        exact = float(decentralized_fraction(cfg, r, t))
        tol = mc_tolerance(exact, bits, comb(cfg.k_r, r) * comb(cfg.k_t, t), cfg.k_t + cfg.k_r)
        ok = abs(emp - exact) <= tol
        mc_ok &= ok
        lines.append(f"mc f[{r},{t}]: empirical={emp:.9f} analytic={exact:.9f} "
                     f"tol={tol:.3g} {'PASS' if ok else 'FAIL'}")
    lines.append(f"monte_carlo: {'PASS' if mc_ok else 'FAIL'} (seed={seed} bits={bits})")
    ok = report.passed and match and mc_ok
    lines.append(f"result: {'PASS' if ok else 'FAIL'}")
    print("\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def _rw_list(text) -> list:
    vals = [_rat(s, "rw") for s in str(text).split(",") if s.strip()]
    if not vals or any(v <= 0 for v in vals):
        raise CliError("gap-audit needs a non-empty list of positive rw values")
    return vals


def cmd_gap_audit(args) -> int:
    if args.kmin < 2 or args.kmax < args.kmin:
        raise CliError("need 2 <= kmin <= kmax")
    step = _rat(args.mu_step, "mu-step")
    if not 0 < step <= 1:
        raise CliError("mu-step must lie in (0, 1]")
    mus = [k * step for k in range(math.floor(1 / step) + 1)]
    rws = _rw_list(args.rw)
    points = violations = 0
    worst, worst_at = 0.0, None
    messages = []
    for k_t in range(args.kmin, args.kmax + 1):
        for k_r in range(args.kmin, args.kmax + 1):
            tabs = None if args.exact else accel.tables(k_t, k_r)
            for mu_t in mus:
                for mu_r in mus:
                    for rw in rws:
                        points += 1
                        if args.exact:
                            cfg = NetworkConfig.wireless(k_t, k_r, mu_t, mu_r, rw)
                            up = wireless.ndt_wireless_upper(cfg)[0]
                            lo = wireless.ndt_wireless_lower(cfg)[0]
                            bad_order = lo > up
                        else:
                            up, lo = accel.wireless_bounds_float(k_t, k_r, mu_t, mu_r, rw, tabs)
                            bad_order = lo > up * (1 + 1e-9) + 1e-12
                        gap = float(wireless.gap_ratio(up, lo)) if lo > 0 else None
                        where = f"kt={k_t} kr={k_r} mut={mu_t} mur={mu_r} rw={rw}"
                        if gap is not None and gap > worst:
                            worst, worst_at = gap, where
                        if bad_order or (gap is not None and gap > wireless.GAP_LIMIT):
                            violations += 1
                            messages.append(f"violation: {where} upper={fmt_num(up)} lower={fmt_num(lo)}")
    print("\n".join(messages + [
        f"mode={'exact' if args.exact else 'float'}",
        f"points={points}",
        f"violations={violations}",
        f"worst_gap={worst:.6f}",
        f"worst_at={worst_at}",
        f"result={'PASS' if violations == 0 else 'FAIL'}",
    ]))
    return EXIT_OK if violations == 0 else EXIT_FAIL


# ------------------------------------------------------------------ parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _config_flags(p):
    p.add_argument("--config", help="JSON file with the same field names as the flags")
    p.add_argument("--kt", help="number of ENs")
    p.add_argument("--kr", help="number of UEs")
    p.add_argument("--mut", help="EN cache size, p/q or decimal")
    p.add_argument("--mur", help="UE cache size, p/q or decimal")
    p.add_argument("--rd", help="dedicated fronthaul gain")
    p.add_argument("--rw", help="wireless fronthaul gain")
    p.add_argument("--nfiles", help="library size (default kr)")
    p.add_argument("--duplex", choices=("half", "full"))


def _sweep_flags(p):
    _config_flags(p)
    p.add_argument("--schemes", help="comma-separated scheme ids")
    p.add_argument("--axis", choices=AXES)
    p.add_argument("--start")
    p.add_argument("--stop")
    p.add_argument("--step")
    p.add_argument("--output", help="output path, '-' for stdout")
    p.add_argument("--format", choices=("csv", "svg"))
    p.add_argument("--title")


def build_parser():
    parser = _Parser(prog="ndtlab", description="NDT calculator for cache-aided RANs")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("compute", help="one scheme at one point")
    _config_flags(p)
    p.add_argument("--scheme")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="sweep one axis, CSV or SVG")
    _sweep_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="pointwise ratio of two schemes")
    _sweep_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify", help="build and check the wireless delivery plan")
    _config_flags(p)
    p.add_argument("--seed")
    p.add_argument("--bits")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gap-audit", help="check upper/lower <= 12 over a grid")
    p.add_argument("--kmin", type=int, default=2)
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--mu-step", default="1/10")
    p.add_argument("--rw", default="1/2,1,2,4,8")
    p.add_argument("--exact", action="store_true", help="exact rationals instead of float kernels")
    p.set_defaults(func=cmd_gap_audit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
