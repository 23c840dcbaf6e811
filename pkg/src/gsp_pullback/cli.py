"""Command line interface.

Exact rationals are always written as strings; every float carries an
``error_bound``.  Parameters are resolved as flags > config file > defaults,
the config file being a flat ``key = value`` document.  When no ``--output``
is given and ``GSP_PULLBACK_OUTPUT_DIR`` is set, results are written there.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import arch, blattner, hecke, lfactors, oracles
from .exact import rational_to_str

OUTPUT_DIR_ENV = "GSP_PULLBACK_OUTPUT_DIR"

DEFAULTS = {
    "blattner": {"lambda": None, "weight": None},
    "satake": {"n": 1, "q": None, "depth": 4, "volumes": False},
    "zeta": {"n": 1, "q": 2, "alphas": None, "chi": "1", "s": "3/2", "depth": 24},
    "lfactor": {"n": 1, "q": 2, "alphas": None, "chi": "1", "s": "2", "modulus": None, "images": None,
                "method": "euler", "primes": 10000, "omit": ""},
    "gauss": {"modulus": 1, "images": ""},
    "volume": {"n": 1, "p": 2, "m": 1},
    "arch": {"n": None, "kvec": None, "z": None, "level": 1},
    "constants": {"n": None, "kvec": "10,10", "rmin": 1, "rmax": None, "level": 1, "sweep": False, "kmax": 14},
    "verify": {"suite": "all", "seed": 0, "tolerance": None},
}


class CLIError(ValueError):
    pass


# ---------------------------------------------------------------------------
# parsing helpers


def _ints(text) -> list[int]:
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    return [int(x) for x in str(text).replace(" ", "").split(",") if x]


def _rationals(text) -> list[Fraction]:
    return [Fraction(x) for x in str(text).replace(" ", "").split(",") if x]


def _bool(v) -> bool:
    if isinstance(v, bool):
        return v
    return str(v).strip().lower() in ("1", "true", "yes", "on")


def _kvec(text, n) -> tuple[int, ...]:
    k = _ints(text)
    if n not in (None, ""):
        n = int(n)
        if len(k) == 1:
            k = k * n
        elif len(k) != n:
            raise CLIError(f"k-vector {tuple(k)} has length {len(k)}, expected n = {n}")
    return tuple(k)


def _factorization(N: int) -> dict[int, int]:
    return lfactors.factorize(N) if N > 1 else {}


def _fmt_float(x: float) -> str:
    return f"{x:.15e}"


def _fmt_number(x) -> dict | str:
    if isinstance(x, Fraction):
        return rational_to_str(x)
    return {"value": _fmt_float(float(x)), "error_bound": "0.000e+00"}


def load_config(path: str | None) -> dict[str, str]:
    if not path:
        return {}
    text = Path(path).read_text(encoding="utf-8")
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    cp.read_string("[config]\n" + text)
    return {k.replace("-", "_"): v for k, v in cp["config"].items()}


def resolve(cmd: str, flags: dict, config: dict) -> dict:
    """Merge defaults, config file and flags for one subcommand."""
    params = dict(DEFAULTS[cmd])
    for key in params:
        if key in config:
            params[key] = config[key]
    for key, val in flags.items():
        if val is not None and key in params:
            params[key] = val
    return params


# ---------------------------------------------------------------------------
# commands


def cmd_blattner(p: dict) -> dict:
    if p["lambda"] is None or p["weight"] is None:
        raise CLIError("blattner needs --lambda and --weight")
    lam = blattner.HCParameter(_ints(p["lambda"]))
    if not blattner.parity_condition(lam):
        raise CLIError(f"validation error: lambda = {tuple(lam)} violates the parity condition")
    w = _ints(p["weight"])
    if len(w) == 1:
        w = w * lam.n
    ktype = blattner.KTypeVector(w)
    return {"lambda": list(lam), "ktype": list(ktype), "multiplicity": blattner.blattner_multiplicity(lam, ktype)}


def cmd_satake(p: dict) -> dict:
    n, D = int(p["n"]), int(p["depth"])
    q = None if p["q"] in (None, "", "symbolic") else int(p["q"])
    if _bool(p["volumes"]):
        if q is None:
            raise CLIError("--volumes needs a numeric --q")
        ser = hecke.cartan_volume_series(n, q, D)
        return {"n": n, "q": q, "depth": D, "volumes": [rational_to_str(c) for c in ser.coeffs]}
    ser = hecke.rationality_series(n, D, q)
    names = [f"X{i}" for i in range(1, n + 1)] + ([] if q is not None else ["q"])
    return {
        "n": n,
        "q": "symbolic" if q is None else q,
        "depth": D,
        "variables": names,
        "coefficients": [c.to_json() for c in ser.coeffs],
    }


def _satake_from(p: dict) -> hecke.SatakeData:
    n, q = int(p["n"]), int(p["q"])
    alphas = _rationals(p["alphas"]) if p["alphas"] else [Fraction(1)] * n
    return hecke.SatakeData(n, q, tuple(alphas), Fraction(p["chi"]))


def cmd_zeta(p: dict) -> dict:
    sd = _satake_from(p)
    s = Fraction(p["s"])
    D = int(p["depth"])
    ser = hecke.unramified_zeta_series(sd, s, D)
    closed = hecke.unramified_zeta_closed(sd, s)
    diff = abs(ser.value - closed)
    bound = ser.tail_bound + ser.rounding_allowance
    out = {
        "n": sd.n,
        "q": sd.q,
        "alphas": [rational_to_str(a) for a in sd.alphas],
        "chi": rational_to_str(sd.chi_value),
        "s": rational_to_str(s),
        "depth": D,
        "exact": ser.exact,
        "agree": bool(diff <= bound),
    }
    if ser.exact:
        out["series"] = rational_to_str(ser.value)
        out["closed"] = rational_to_str(closed)
        out["tail_bound"] = rational_to_str(ser.tail_bound)
        out["tail_bound_float"] = f"{float(ser.tail_bound):.3e}"
    else:
        out["series"] = {"value": _fmt_float(ser.value), "error_bound": f"{bound:.3e}"}
        out["closed"] = {"value": _fmt_float(closed), "error_bound": f"{abs(closed) * 1e-14:.3e}"}
        out["tail_bound"] = f"{ser.tail_bound:.3e}"
    if not out["agree"]:
        raise CLIError(f"series and closed form disagree beyond the bound: {json.dumps(out)}")
    return out


def _character(p: dict) -> lfactors.DirichletCharacter:
    N = int(p["modulus"])
    images = _ints(p["images"]) if p.get("images") else [0] * len(lfactors.unit_group_generators(N))
    return lfactors.DirichletCharacter.from_generator_images(N, images)


def cmd_lfactor(p: dict) -> dict:
    if p["modulus"] not in (None, ""):
        chi = _character(p)
        s = float(Fraction(p["s"]))
        omit = _ints(p["omit"]) if p["omit"] else []
        if omit:
            val = lfactors.partial_l_omit(chi, s, omit, int(p["primes"]), p["method"])
        else:
            val = lfactors.dirichlet_lvalue(chi, s, p["method"], int(p["primes"]))
        return {"modulus": chi.N, "s": str(p["s"]), "method": p["method"], "omit": omit, "L": val.to_json()}
    sd = _satake_from(p)
    lf = lfactors.standard_lfactor(sd)
    s = Fraction(p["s"])
    val = lf.evaluate(s)
    return {
        "n": sd.n,
        "q": sd.q,
        "degree": lf.degree,
        "denominator_coefficients": [rational_to_str(c) for c in lf.denominator.coeffs],
        "s": rational_to_str(s),
        "value": _fmt_number(val),
    }


def cmd_gauss(p: dict) -> dict:
    chi = _character(p)
    g = lfactors.gauss_sum(chi)
    return {
        "modulus": chi.N,
        "conductor": chi.conductor(),
        "primitive": chi.is_primitive(),
        "parity": chi.parity,
        "gauss_sum": {"re": _fmt_float(g.real), "im": _fmt_float(g.imag), "error_bound": f"{1e-12 * max(chi.N, 1):.3e}"},
        "abs_squared": {"value": _fmt_float(abs(g) ** 2), "error_bound": f"{1e-11 * max(chi.N, 1):.3e}"},
    }


def cmd_volume(p: dict) -> dict:
    n, pr, m = int(p["n"]), int(p["p"]), int(p["m"])
    order = lfactors.sp_order_mod(n, pr, m)
    return {"n": n, "p": pr, "m": m, "order": str(order), "volume": rational_to_str(Fraction(1, order))}


def cmd_arch(p: dict) -> dict:
    if p["kvec"] is None:
        raise CLIError("arch needs --kvec")
    ctx = arch.ArchContext(_kvec(p["kvec"], p["n"]))
    (a, b), R = arch.a_k(ctx)
    out = {
        "n": ctx.n,
        "kvec": list(ctx.kvec),
        "lambda": list(ctx.lam),
        "A_k": {"two_power": f"2^({a}*z + {b})", "rational_part": f"({R.num})/({R.den})"},
        "gamma_n": f"({arch.gamma_n(ctx.n).num})/({arch.gamma_n(ctx.n).den})",
        "alpha_n": arch.alpha_n(ctx.n).to_json(),
        "siegel_volume": arch.siegel_volume(ctx.n).to_json(),
    }
    if p["z"] is not None:
        z = Fraction(p["z"])
        out["z"] = rational_to_str(z)
        out["gamma_n_at_z"] = rational_to_str(arch.ratfun_eval(arch.gamma_n(ctx.n), z))
        if z.denominator == 1:
            out["A_k_at_z"] = rational_to_str(arch.a_k_value(ctx, z))
            r = int(z) + 1
            if r in arch.critical_points(ctx.kvec):
                N = int(p["level"])
                out["c_krnN"] = {"r": r, "N": N, "value": rational_to_str(arch.c_krnN(ctx.kvec, r, ctx.n, _factorization(N)))}
    return out


def constants_rows(kvecs, rmin: int, rmax: int | None, N: int) -> list[list]:
    rows = []
    for kv in kvecs:
        ctx = arch.ArchContext(kv)
        for r in arch.critical_points(ctx.kvec):
            if r < rmin or (rmax is not None and r > rmax):
                continue
            rows.append(
                [
                    ",".join(map(str, ctx.kvec)),
                    r,
                    rational_to_str(arch.a_k_value(ctx, r - 1)),
                    rational_to_str(arch.c_krnN(ctx.kvec, r, ctx.n, _factorization(N))),
                ]
            )
    return rows


def cmd_constants(p: dict) -> str:
    N = int(p["level"])
    rmin = int(p["rmin"])
    rmax = None if p["rmax"] in (None, "") else int(p["rmax"])
    if _bool(p["sweep"]):
        kmax = int(p["kmax"])
        kvecs = [(k1, k2) for k2 in range(6, kmax + 1) for k1 in range(k2, kmax + 1) if (k1 - k2) % 2 == 0]
    else:
        kvecs = [_kvec(p["kvec"], p["n"])]
    rows = constants_rows(kvecs, rmin, rmax, N)
    if not rows:
        raise CLIError("empty critical range")
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerow(["kvec", "r", "A_k(r-1)", "c_krnN"])
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# verify


def _check(check: str, ok: bool, **info) -> dict:
    return {**info, "check": check, "passed": bool(ok)}


def _numeric_check(res: oracles.OracleResult, tol: float) -> dict:
    info = res.to_json()
    info.pop("name", None)
    return _check(res.name, res.passes(tol), tolerance=f"{tol:.1e}", **info)


def verify_suite(suite: str, seed: int, tolerance: float | None) -> list[dict]:
    quad_tol = 1e-6 if tolerance is None else tolerance
    mc_tol = 1e-4 if tolerance is None else tolerance
    want = (lambda name: suite in ("all", name))
    report: list[dict] = []
    if want("selberg"):
        report.append(_numeric_check(oracles.quad_selberg(1, 4), quad_tol))
        cfg = oracles.QuadratureConfig(method="montecarlo", seed=seed)
        report.append(_numeric_check(oracles.quad_selberg(2, 5, cfg), mc_tol))
        report.append(_numeric_check(oracles.quad_selberg(2, 5), quad_tol))
    if want("beta"):
        for x, y in ((1, 1), (2, 3), (0.5, 0.5)):
            report.append(_numeric_check(oracles.quad_beta(x, y), quad_tol))
    if want("kak"):
        for k, s in ((4, 0.5), (2, 1.5)):
            report.append(_numeric_check(oracles.kak_zeta_n1(k, s), quad_tol))
    if want("measure"):
        for k in (2, 3):
            for res in oracles.measure_consistency_n1(k):
                res.name = f"measure_{res.name}_k{k}"
                report.append(_numeric_check(res, quad_tol))
    if want("neretin"):
        for args in ((2, 2, 2), (3, 3, 3), (2.5, 2, 3)):
            res = oracles.neretin_n1(*args)
            res.name = f"neretin_{args}"
            report.append(_numeric_check(res, quad_tol))
    if want("exact"):
        report.extend(_exact_checks(seed))
    if not report:
        raise CLIError(f"unknown suite {suite!r}")
    return report


def _exact_checks(seed: int) -> list[dict]:
    from . import symplectic

    out = []
    ok = all(
        blattner.blattner_multiplicity(lam, [lam[0] + 1 + m] * n) == 1
        for n in range(1, 4)
        for lam in blattner.parity_valid_parameters(n, 9)
        for m in (0, 2)
    )
    out.append(_check("blattner_scalar_ktypes", ok))
    ok = all(arch.a_k_expression(arch.ArchContext(kv)) == arch.b_lambda_general(arch.ArchContext(kv))
             for kv in ((5, 3), (9, 7, 5), (8, 6), (9, 9, 5)))
    out.append(_check("archimedean_dual_route", ok))
    ok = True
    for i in range(10):
        g = symplectic.random_gsp(2, seed * 1000 + i, 5)
        ok &= symplectic.coset_conjugate(2, 2, "full-diagonal", g)[1] == 1
    out.append(_check("coset_full_diagonal", ok))
    ok = hecke.cartan_volume_series(1, 2, 6).coeffs == tuple(
        [Fraction(1)] + [Fraction(2 ** (2 * e - 1) * 3) for e in range(1, 7)]
    )
    out.append(_check("cartan_volumes_n1", ok))
    out.append(_check("sp4_f2_order", lfactors.sp_order_bruteforce(2, 2) == lfactors.sp_order_mod(2, 2, 1)))
    return out


def cmd_verify(p: dict) -> tuple[dict, int]:
    tol = None if p["tolerance"] in (None, "") else float(p["tolerance"])
    report = verify_suite(p["suite"], int(p["seed"]), tol)
    ok = all(r["passed"] for r in report)
    return {"suite": p["suite"], "seed": int(p["seed"]), "passed": ok, "checks": report}, (0 if ok else 1)


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gsp-pullback", description=__doc__.splitlines()[0])
    ap.add_argument("--config", help="flat key = value file; flags override it")
    ap.add_argument("--output", help="output file (default: stdout, or $%s/<command>.<ext>)" % OUTPUT_DIR_ENV)
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("blattner", help="Blattner multiplicity of a K-type")
    b.add_argument("--lambda", dest="lambda_")
    b.add_argument("--weight")

    s = sub.add_parser("satake", help="rationality theorem coefficients")
    s.add_argument("--n", type=int)
    s.add_argument("--q")
    s.add_argument("--depth", type=int)
    s.add_argument("--volumes", action="store_const", const=True)

    z = sub.add_parser("zeta", help="unramified zeta integral, series against closed form")
    for name in ("--n", "--q", "--depth"):
        z.add_argument(name, type=int)
    for name in ("--alphas", "--chi", "--s"):
        z.add_argument(name)

    lf = sub.add_parser("lfactor", help="standard local factor or Dirichlet L-value")
    for name in ("--n", "--q", "--primes", "--modulus"):
        lf.add_argument(name, type=int)
    for name in ("--alphas", "--chi", "--s", "--images", "--omit"):
        lf.add_argument(name)
    lf.add_argument("--method", choices=["euler", "hurwitz"])

    g = sub.add_parser("gauss", help="Gauss sum of a Dirichlet character")
    g.add_argument("--modulus", type=int)
    g.add_argument("--images")

    v = sub.add_parser("volume", help="|Sp_2n(Z/p^m)| and the congruence subgroup volume")
    for name in ("--n", "--p", "--m"):
        v.add_argument(name, type=int)

    a = sub.add_parser("arch", help="archimedean factors")
    a.add_argument("--n", type=int)
    a.add_argument("--kvec")
    a.add_argument("--z")
    a.add_argument("--level", type=int)

    for name in ("constants", "table"):
        c = sub.add_parser(name, help="CSV of A_k(r-1) and c_{k,r,n,N} over critical r")
        c.add_argument("--n", type=int)
        c.add_argument("--kvec")
        c.add_argument("--rmin", type=int)
        c.add_argument("--rmax", type=int)
        c.add_argument("--level", "--N", dest="level", type=int)
        c.add_argument("--sweep", action="store_const", const=True)
        c.add_argument("--kmax", type=int)

    vf = sub.add_parser("verify", help="run oracle and exact checks")
    vf.add_argument("--suite", choices=["all", "selberg", "beta", "kak", "measure", "neretin", "exact"])
    vf.add_argument("--seed", type=int)
    vf.add_argument("--tolerance", type=float)
    return ap


def _emit(text: str, command: str, ext: str, output: str | None) -> None:
    if output is None and os.environ.get(OUTPUT_DIR_ENV):
        out_dir = Path(os.environ[OUTPUT_DIR_ENV])
        out_dir.mkdir(parents=True, exist_ok=True)
        output = str(out_dir / f"{command}.{ext}")
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    command = "constants" if args.command == "table" else args.command
    flags = {k.rstrip("_"): v for k, v in vars(args).items() if k not in ("command", "config", "output")}
    try:
        params = resolve(command, flags, load_config(args.config))
        code = 0
        if command == "constants":
            text, ext = cmd_constants(params), "csv"
        else:
            if command == "verify":
                result, code = cmd_verify(params)
            else:
                result = globals()[f"cmd_{command}"](params)
            text, ext = json.dumps(result, indent=2, sort_keys=True) + "\n", "json"
    except (ValueError, ZeroDivisionError, KeyError, AssertionError) as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "type": type(exc).__name__}) + "\n")
        return 2
    _emit(text, command, ext, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
