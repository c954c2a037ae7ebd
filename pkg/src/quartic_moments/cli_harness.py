"""Command-line entry point: family, moment, verify, report, euler.

Exit codes: 0 success, 1 verification failure, 2 invalid input.
Settings resolve as command-line flag, then ``--config`` file
(``key=value`` lines, ``#`` comments), then environment (``QML_THREADS``),
then built-in defaults.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

import mpmath

from . import dirichlet_series as ds
from . import gauss_generating as gg
from . import gauss_sums as gs
from . import lfun_moment_engine as lf
from .errors import InvalidInput, QuarticLabError
from .galois_fields import make_field
from .poly_ring import rings
from .quartic_chars import DIVISOR_CLOSURE, PREDICATES, char_eval, check_genus, enumerate_family

DEFAULTS = {
    "q": 3, "g": None, "predicate": DIVISOR_CLOSURE, "count_only": False, "out": None,
    "via": "direct", "threads": None, "seed": 0, "precision": 40, "trunc": 25,
    "umax": 3, "vmax": 5, "max_deg_f": 3, "max_deg_v": 2, "max_deg_p": 2, "max_i": 5,
    "max_alpha": 4, "f": "1", "kmax": None, "budget": 10 ** 7, "n_max": 3,
    "samples": 5, "nmax": 12, "json": False, "omega_sign": 1,
}
INT_KEYS = {"q", "threads", "seed", "precision", "trunc", "umax", "vmax", "max_deg_f",
            "max_deg_v", "max_deg_p", "max_i", "max_alpha", "kmax", "budget", "n_max",
            "samples", "nmax", "omega_sign"}
BOOL_KEYS = {"count_only", "json"}
SUITES = ("gauss", "gauss-table", "fe", "perron", "recurrence", "euler", "evenness")
CSV_COLUMNS = ["g", "family_size", "moment", "main_term_magnitude", "ratio",
               "|ratio-1|", "nonvanishing_count"]


class VerificationFailed(Exception):
    pass


# ------------------------------------------------------------------ config
def read_config(path: str) -> dict:
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise InvalidInput(f"cannot read config {path}: {exc}") from None
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidInput(f"{path}:{num}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip().replace("-", "_")] = v.strip()
    return out


def _coerce(key: str, value):
    if value is None:
        return None
    if key in INT_KEYS and isinstance(value, str):
        try:
            return int(value)
        except ValueError:
            raise InvalidInput(f"{key} must be an integer, got {value!r}") from None
    if key in BOOL_KEYS and isinstance(value, str):
        return value.lower() in ("1", "true", "yes", "on")
    return value


def resolve_config(args: argparse.Namespace, environ=None) -> dict:
    environ = os.environ if environ is None else environ
    file_cfg = read_config(args.config) if getattr(args, "config", None) else {}
    cfg = {}
    for key, default in DEFAULTS.items():
        val = getattr(args, key, None)
        if val is None or (key in BOOL_KEYS and val is False):
            if key in file_cfg:
                val = file_cfg[key]
            elif key == "threads" and environ.get("QML_THREADS"):
                val = environ["QML_THREADS"]
            elif val is None:
                val = default
        cfg[key] = _coerce(key, val)
    unknown = set(file_cfg) - set(DEFAULTS)
    if unknown:
        raise InvalidInput(f"unknown config keys: {', '.join(sorted(unknown))}")
    if cfg["threads"] is None:
        cfg["threads"] = os.cpu_count() or 1
    if cfg["threads"] < 1:
        raise InvalidInput("threads must be >= 1")
    if cfg["predicate"] not in PREDICATES:
        raise InvalidInput(f"predicate must be one of {PREDICATES}")
    make_field(cfg["q"])  # NotPrime / WrongResidue
    return cfg


def parse_g_list(text) -> list[int]:
    if text is None or str(text).strip() == "":
        raise InvalidInput("no genus given")
    try:
        gs_ = [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise InvalidInput(f"bad genus list {text!r}") from None
    if not gs_:
        raise InvalidInput("empty genus list")
    for g in gs_:
        check_genus(g)
    return gs_


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------- commands
def cmd_family(cfg: dict) -> int:
    g = parse_g_list(cfg["g"])
    if len(g) != 1:
        raise InvalidInput("family takes a single genus")
    base, ext = rings(cfg["q"])
    members = list(enumerate_family(ext, g[0], cfg["predicate"]))
    if cfg["count_only"] or not cfg["out"]:
        print(len(members))
    if cfg["out"]:
        lines = [f"{ext.format(ch.modulus)}\t{base.format(ch.conductor)}" for ch in members]
        _emit("\n".join(lines), cfg["out"])
    return 0


def _moment_report(cfg: dict, g: int, via: str) -> lf.MomentReport:
    rep = lf.moment_direct(cfg["q"], g, cfg["predicate"], cfg["omega_sign"], cfg["threads"],
                           cfg["trunc"], cfg["precision"], cfg["seed"])
    rep.config = {k: cfg[k] for k in sorted(cfg) if k not in ("out",)}
    if via in ("nsum", "both"):
        if cfg["predicate"] != DIVISOR_CLOSURE:
            raise InvalidInput("the N-sum route describes the divisor-closure family only")
        nsum = lf.moment_via_nsum(cfg["q"], g)
        rep.extra["moment_nsum"] = nsum.to_json()
        rep.extra["routes_equal"] = nsum == rep.moment
        if via == "both" and nsum != rep.moment:
            raise VerificationFailed(f"direct {rep.moment} != nsum {nsum}")
    return rep


def cmd_moment(cfg: dict) -> int:
    g = parse_g_list(cfg["g"])
    if len(g) != 1:
        raise InvalidInput("moment takes a single genus")
    rep = _moment_report(cfg, g[0], cfg["via"])
    _emit(rep.dumps(), cfg["out"])
    return 0


def cmd_report(cfg: dict) -> int:
    gl = parse_g_list(cfg["g"])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for g in gl:
        rep = _moment_report(cfg, g, "direct")
        w.writerow([g, rep.family_size, repr(rep.moment_float), repr(rep.main_magnitude),
                    repr(rep.ratio), repr(abs(rep.ratio - 1)), rep.nonvanishing_count])
    _emit(buf.getvalue(), cfg["out"])
    return 0


def cmd_euler(cfg: dict) -> int:
    q, D, dps = cfg["q"], cfg["trunc"], cfg["precision"]
    with mpmath.workdps(dps):
        u = mpmath.mpf(1) / q ** 2
        v = 1 / mpmath.sqrt(q)
        P = ds.euler_P(q, u, D, dps)
        Z = ds.euler_Z(q, u, v, D, dps)
        out = {"q": q, "trunc_degree": D, "precision": dps,
               "P": mpmath.nstr(P.value, dps - 5), "P_delta_last": float(P.delta_last),
               "Z": mpmath.nstr(Z.value, dps - 5), "Z_delta_last": float(Z.delta_last)}
        if cfg["g"] is not None:
            g = parse_g_list(cfg["g"])[0]
            mt = ds.main_term(q, g, D, dps)
            out["main_term"] = {"g": g, "magnitude": mt.magnitude, "paper_form": mt.paper_form}
    _emit(json.dumps(out, indent=2), cfg["out"])
    return 0


# ------------------------------------------------------------------ suites
def _suite_gauss(cfg):
    q = cfg["q"]
    _, E = rings(q)
    cache = gs.GaussCache(E, budget=cfg["budget"])
    Vs = [()] + [V for d in range(cfg["max_deg_v"] + 1) for V in E.enumerate_monic(d)]
    cases = 0
    for d in range(1, cfg["max_deg_f"] + 1):
        for f in E.enumerate_monic(d):
            brute = gs.gauss_sums_brute(E, Vs, f, cfg["budget"])
            for V, b in zip(Vs, brute):
                cases += 1
                fac = gs.gauss_sum_factored(E, V, f, cache)
                if fac != b:
                    return False, cases, f"V={E.format(V)} f={E.format(f)}: factored {fac} brute {b}"
    return True, cases, None


def _suite_gauss_table(cfg):
    q = cfg["q"]
    _, E = rings(q)
    cache = gs.GaussCache(E, budget=cfg["budget"])
    cases = 0
    for P in E.primes_upto(cfg["max_deg_p"]):
        V1s = [V for V in E.enumerate_all(1) if V and E.rem(V, P)]
        for i in range(1, cfg["max_i"] + 1):
            for a in range(cfg["max_alpha"] + 1):
                Vs = [E.mul(V1, E.pow(P, a)) for V1 in V1s]
                for V, x in zip(Vs, gs.prime_power_gauss_exhaustive(E, Vs, P, i)):
                    cases += 1
                    want = gs.prime_power_gauss(E, V, P, i, cache)
                    if x != want:
                        return False, cases, (f"P={E.format(P)} i={i} alpha={a} V={E.format(V)}: "
                                              f"summed {x} table {want}")
    return True, cases, None


def _suite_fe(cfg):
    q = cfg["q"]
    _, E = rings(q, cfg["omega_sign"])
    cases = 0
    for n in range(1, cfg["n_max"] + 1):
        for r in lf.family_l_data(q, 3 * (n - 1), cfg["predicate"], cfg["omega_sign"],
                                  cfg["threads"]):
            lp = lf.LPoly(r.modulus, r.coeffs, q, r.beyond)
            res = lf.verify_fe(lp, n, cfg["samples"], cfg["seed"])
            cases += 1
            bad = max(res.max_residual, res.self_dual_residual, abs(abs(res.omega) - 1))
            if bad >= 1e-9 or r.beyond != (0, 0):
                return False, cases, (f"F={E.format(r.modulus)} residual {bad:.3e} "
                                      f"c_2n={r.beyond}")
    return True, cases, None


def _suite_perron(cfg):
    A = ds.a4_direct(cfg["q"], cfg["umax"], cfg["vmax"], cfg["predicate"])
    N = ds.a4_nsum(cfg["q"], cfg["umax"], cfg["vmax"])
    diff = A.diff(N)
    if diff:
        a, b, x, y = diff[0]
        return False, A.size(), f"u^{a} v^{b}: direct {x} nsum {y}"
    return True, A.size(), None


def _suite_recurrence(cfg):
    _, E = rings(cfg["q"])
    f = E.parse(cfg["f"])
    if not f or f[-1] != 1:
        raise InvalidInput("f must be monic")
    rep = gg.verify_recurrence(E, f, cfg["kmax"])
    for c in rep.checks:
        print(f"  as stated  k={c.k} class={c.klass} {'PASS' if c.passed else 'FAIL'}  "
              f"C(f,k+4)={c.lhs}  Q^5 C(f,k)={c.rhs}")
    checked = rep.corrected()
    for c in checked:
        print(f"  verified   k={c.k} class={c.klass} {'PASS' if c.passed else 'FAIL'}  "
              f"C(f,k+4)={c.lhs}  rhs={c.rhs}")
    fail = next((c for c in checked if not c.passed), None)
    if fail is not None:
        return False, len(checked), f"k={fail.k}: C(f,k+4)={fail.lhs} rhs={fail.rhs}"
    return bool(checked), len(checked), None if checked else "no applicable k"


def _suite_euler(cfg):
    q, D, dps = cfg["q"], cfg["trunc"], cfg["precision"]
    with mpmath.workdps(dps):
        u = mpmath.mpf(1) / q ** 2
        v = 1 / mpmath.sqrt(q)
        checks = []
        P1, P2 = ds.euler_P(q, u, D - 5, dps).value, ds.euler_P(q, u, D, dps).value
        checks.append(("P stable", abs(P2 - P1)))
        Z1, Z2 = ds.euler_Z(q, u, v, D - 5, dps).value, ds.euler_Z(q, u, v, D, dps).value
        checks.append(("Z stable", abs(Z2 - Z1)))
        checks.append(("P dual path", abs(ds.euler_P_explicit(q, u, 8, dps) - ds.euler_P(q, u, 8, dps).value)))
        third = mpmath.mpf(1) / 3
        for uu, vv in ((u, v), (u, third), (mpmath.mpf(1) / q ** 3, third)):
            zd = ds.z_direct(q, uu, vv, cfg["nmax"], dps)
            checks.append((f"z_direct vs truncated Euler ({float(uu):.4g},{float(vv):.4g})",
                           abs(zd - ds.euler_Z_truncated(q, uu, vv, cfg["nmax"], dps))))
            print(f"  info: z_direct vs converged Z ({float(uu):.4g},{float(vv):.4g}) "
                  f"= {float(abs(zd - ds.euler_Z(q, uu, vv, D, dps).value)):.3e}")
    for name, err in checks:
        print(f"  {name}: {float(err):.3e}")
        if err >= 1e-10:
            return False, len(checks), f"{name}: {float(err):.3e}"
    return True, len(checks), None


def _suite_evenness(cfg):
    _, E = rings(cfg["q"], cfg["omega_sign"])
    cases = 0
    for n in range(1, cfg["n_max"] + 1):
        for chi in enumerate_family(E, 3 * (n - 1), cfg["predicate"]):
            for a in range(1, cfg["q"]):
                cases += 1
                k = char_eval(E, chi, (a,))
                if k != 0:
                    return False, cases, f"F={E.format(chi.modulus)} chi({a}) = i^{k}"
    return True, cases, None


SUITE_FUNCS = {"gauss": _suite_gauss, "gauss-table": _suite_gauss_table, "fe": _suite_fe,
               "perron": _suite_perron, "recurrence": _suite_recurrence, "euler": _suite_euler,
               "evenness": _suite_evenness}


def cmd_verify(cfg: dict, suite: str) -> int:
    t0 = time.perf_counter()
    ok, cases, counterexample = SUITE_FUNCS[suite](cfg)
    ms = int((time.perf_counter() - t0) * 1000)
    print(f"{suite:<12} {'PASS' if ok else 'FAIL'}  cases={cases}  time_ms={ms}")
    if counterexample:
        print(f"first counterexample: {counterexample}")
    summary = {"suite": suite, "passed": ok, "cases": cases, "runtime_ms": ms,
               "counterexample": counterexample, "q": cfg["q"]}
    if cfg["json"] or cfg["out"]:
        _emit(json.dumps(summary, indent=2), cfg["out"])
    return 0 if ok else 1


# ------------------------------------------------------------------ parser
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int)
    common.add_argument("--config")
    common.add_argument("--threads", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--out")
    common.add_argument("--precision", type=int)
    common.add_argument("--trunc", type=int, help="Euler product truncation degree")
    common.add_argument("--budget", type=int, help="brute-force residue ceiling")
    common.add_argument("--predicate", choices=PREDICATES)
    common.add_argument("--omega-sign", dest="omega_sign", type=int, choices=(1, -1))
    common.add_argument("--json", action="store_true", default=None)

    ap = argparse.ArgumentParser(prog="quartic-lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("family", parents=[common], help="enumerate the genus-g family")
    p.add_argument("--g")
    p.add_argument("--count-only", dest="count_only", action="store_true", default=None)
    p = sub.add_parser("moment", parents=[common], help="first moment and main term")
    p.add_argument("--g")
    p.add_argument("--via", choices=("direct", "nsum", "both"))
    p = sub.add_parser("verify", parents=[common], help="run an identity suite")
    p.add_argument("suite", choices=SUITES)
    for flag in ("umax", "vmax", "max-deg-f", "max-deg-v", "max-deg-p", "max-i", "max-alpha",
                 "kmax", "n-max", "samples", "nmax"):
        p.add_argument(f"--{flag}", dest=flag.replace("-", "_"), type=int)
    p.add_argument("--f")
    p = sub.add_parser("report", parents=[common], help="CSV trend table")
    p.add_argument("--g", help="comma-separated genera")
    p = sub.add_parser("euler", parents=[common], help="Euler constants P and Z")
    p.add_argument("--g")
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        if args.command == "family":
            return cmd_family(cfg)
        if args.command == "moment":
            return cmd_moment(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite)
        if args.command == "report":
            return cmd_report(cfg)
        if args.command == "euler":
            return cmd_euler(cfg)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except InvalidInput as exc:
        print(f"invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except QuarticLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
