"""Command-line surface: evaluate, tabulate, decide, generate, verify.

Emission is deterministic by construction: rows are sorted, floats are
printed in shortest round-trip form, and nothing environment-dependent
(timings, paths, hostnames) reaches stdout, so identical config + seed
yields byte-identical output suitable for regression diffing.

Exit codes: 0 success (and Admissible verdicts), 2 domain or input error,
3 quadrature failure, 10 Inadmissible, 11 Unknown, 1 other internal
numerical failure.  Every nonzero exit writes one JSON object to stderr
with the error class, message, and exit code.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from .abel import CosineSum, calibrate_constant, dual_abel, inverse_dual_abel
from .errors import (CalibrationError, ContourTooCloseError, DomainError,
                     JetDepthError, NonConvergenceError, NotEnoughZerosError,
                     QuadratureError, UnsupportedParametersError)
from .geometry import SpaceParams, sphere_area
from .hypergeom import DEFAULT_TOL
from .selftest import report_text, run_selftest
from .spherical import RADIUS_CAP, phi_ode_oracle, phi_report
from .transforms import DistKind, ball_transform_quadrature, transform
from .tworadius import (check_pair, generate_inadmissible_pair,
                        verify_annihilation)
from .zeros import (DEFAULT_CERT_HEIGHT, DEFAULT_ZERO_TOL, LAMBDA_MAX_CAP,
                    Admissibility, spectral_zero_set)

__all__ = ["RunConfig", "main"]


@dataclass(frozen=True)
class RunConfig:
    """Shared run parameters; config file values are overridden by flags."""

    space: tuple = (0, 0)
    tol_series: float = DEFAULT_TOL
    tol_zero: float = DEFAULT_ZERO_TOL
    tol_quad: float = 1e-10
    delta: float = 1e-6
    lam_max: float = 20.0
    r_max: float = 5.0
    strip_height: float = DEFAULT_CERT_HEIGHT
    fmt: str = "csv"
    seed: int = 0

    def __post_init__(self):
        p, q = self.space
        if p != int(p) or q != int(q) or p < 0 or q < 0:
            raise DomainError(f"space must be nonnegative integers, got "
                              f"{self.space}")
        for name in ("tol_series", "tol_zero", "tol_quad", "delta"):
            if not (getattr(self, name) > 0.0):
                raise DomainError(f"{name} must be positive")
        if not (0.0 < self.lam_max <= LAMBDA_MAX_CAP):
            raise DomainError(f"lambda-max must lie in (0, {LAMBDA_MAX_CAP}]")
        if not (0.0 < self.r_max <= RADIUS_CAP):
            raise DomainError(f"r-max must lie in (0, {RADIUS_CAP}]")
        if not (0.0 < self.strip_height <= 10.0):
            raise DomainError("strip-height must lie in (0, 10]")
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.fmt!r}")

    @property
    def params(self) -> SpaceParams:
        return SpaceParams(int(self.space[0]), int(self.space[1]))


# config-file key -> (RunConfig field, parser); flags use the same names
_CONFIG_KEYS = {
    "space": ("space", lambda s: _parse_space(s)),
    "tol": ("tol_series", float),
    "zero-tol": ("tol_zero", float),
    "quad-tol": ("tol_quad", float),
    "delta": ("delta", float),
    "lambda-max": ("lam_max", float),
    "r-max": ("r_max", float),
    "strip-height": ("strip_height", float),
    "format": ("fmt", str),
    "seed": ("seed", int),
}


def _parse_space(text: str) -> tuple:
    parts = str(text).split(",")
    if len(parts) != 2:
        raise DomainError(f"space must be P,Q — got {text!r}")
    try:
        return (int(parts[0]), int(parts[1]))
    except ValueError:
        raise DomainError(f"space must be two integers, got {text!r}")


def _parse_complex(text: str) -> complex:
    s = str(text).strip().replace(" ", "")
    try:
        return complex(float(s))
    except ValueError:
        pass
    for cand in (s, s.replace("i", "j")):
        try:
            return complex(cand)
        except ValueError:
            continue
    raise DomainError(f"cannot parse {text!r} as a real or complex number")


def _parse_real(text: str, what: str) -> float:
    try:
        return float(str(text).strip())
    except ValueError:
        raise DomainError(f"cannot parse {what} {text!r} as a real number")


def _expand_token(tok: str, parse):
    # "a:b:n" expands to n equally spaced points, endpoints included
    if ":" in tok:
        a, b, n = tok.split(":")
        lo, hi, cnt = float(a), float(b), int(n)
        if cnt < 1:
            raise DomainError(f"grid count must be >= 1 in {tok!r}")
        if cnt == 1:
            return [parse(a)]
        return [float(x) if parse is _parse_real_tok else complex(x)
                for x in np.linspace(lo, hi, cnt)]
    return [parse(tok)]


def _parse_real_tok(tok):
    return _parse_real(tok, "grid value")


def _parse_complex_tok(tok):
    return _parse_complex(tok)


def _parse_grid(text: str, complex_ok: bool) -> list:
    parse = _parse_complex_tok if complex_ok else _parse_real_tok
    out = []
    for tok in str(text).split(","):
        tok = tok.strip()
        if tok:
            out.extend(_expand_token(tok, parse))
    if not out:
        raise DomainError(f"empty grid {text!r}")
    return out


def _read_config_file(path: str) -> dict:
    vals = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value")
            key, _, raw = line.partition("=")
            key = key.strip().lower()
            if key not in _CONFIG_KEYS:
                raise DomainError(f"{path}:{lineno}: unknown key {key!r}")
            field, parse = _CONFIG_KEYS[key]
            vals[field] = parse(raw.strip())
    return vals


def _build_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        cfg = replace(cfg, **_read_config_file(args.config))
    flag_vals = {}
    for key, (field, parse) in _CONFIG_KEYS.items():
        raw = getattr(args, field, None)
        if raw is not None:
            flag_vals[field] = parse(raw) if isinstance(raw, str) else raw
    return replace(cfg, **flag_vals) if flag_vals else cfg


# ---------------------------------------------------------------------------
# emission helpers

def _f(x) -> str:
    return repr(float(x))


def _cjson(z):
    if z is None:
        return None
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _emit_csv(header, rows):
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)


def _emit_json(obj):
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _scope_json(cfg: RunConfig, verdict=None) -> dict:
    scope = {
        "lambda_max": cfg.lam_max,
        "strip_height": cfg.strip_height,
        "zero_tol": cfg.tol_zero,
        "series_tol": cfg.tol_series,
        "delta": cfg.delta,
    }
    if verdict is not None:
        scope["description"] = verdict.scope
    return scope


# ---------------------------------------------------------------------------
# subcommands

def _cmd_eval_phi(cfg: RunConfig, args) -> int:
    lams = _parse_grid(args.lam, complex_ok=True)
    rs = _parse_grid(args.r, complex_ok=False)
    params = cfg.params
    rows = []
    for lam in lams:
        for r in rs:
            rep = phi_report(params, lam, float(r), cfg.tol_series)
            rows.append((lam.real, lam.imag, float(r), rep.value.real,
                         rep.value.imag, rep.est_error))
    rows.sort(key=lambda row: (row[0], row[1], row[2]))
    if cfg.fmt == "csv":
        header = ("p", "q", "lambda_re", "lambda_im", "r", "phi_re",
                  "phi_im", "est_error")
        _emit_csv(header, [(params.p, params.q) + tuple(map(_f, row))
                           for row in rows])
    else:
        _emit_json({
            "table": "eval-phi",
            "space": [params.p, params.q],
            "columns": ["lambda_re", "lambda_im", "r", "phi_re", "phi_im",
                        "est_error"],
            "rows": [list(row) for row in rows],
        })
    return 0


def _quad_route(params: SpaceParams, kind: DistKind, r: float, lam: complex,
                cfg: RunConfig) -> complex:
    """Second route for the transform table, independent of the phi series."""
    if kind is DistKind.BALL:
        return ball_transform_quadrature(params, r, lam,
                                         epsrel=cfg.tol_quad).value
    if kind is DistKind.SPHERE:
        return sphere_area(params, r) * phi_ode_oracle(params, lam, r)
    return phi_ode_oracle(params, lam, r) - 1.0


def _cmd_transform(cfg: RunConfig, args) -> int:
    kind = DistKind.parse(args.kind)
    r = _parse_real(args.r, "radius")
    lams = _parse_grid(args.lam, complex_ok=True)
    params = cfg.params
    rows = []
    for lam in sorted(lams, key=lambda z: (z.real, z.imag)):
        cf = transform(params, kind, r, lam, cfg.tol_series)
        qd = _quad_route(params, kind, r, lam, cfg)
        rows.append((lam.real, lam.imag, cf.value.real, cf.value.imag,
                     qd.real, qd.imag, abs(cf.value - qd)))
    if cfg.fmt == "csv":
        header = ("p", "q", "kind", "r", "lambda_re", "lambda_im",
                  "closed_re", "closed_im", "quad_re", "quad_im", "abs_diff")
        _emit_csv(header, [(params.p, params.q, kind.value, _f(r))
                           + tuple(map(_f, row)) for row in rows])
    else:
        _emit_json({
            "table": "transform",
            "space": [params.p, params.q],
            "kind": kind.value,
            "r": r,
            "columns": ["lambda_re", "lambda_im", "closed_re", "closed_im",
                        "quad_re", "quad_im", "abs_diff"],
            "rows": [list(row) for row in rows],
        })
    return 0


_VERDICT_EXIT = {
    Admissibility.ADMISSIBLE: 0,
    Admissibility.INADMISSIBLE: 10,
    Admissibility.UNKNOWN: 11,
}


def _cmd_check_pair(cfg: RunConfig, args) -> int:
    kind = DistKind.parse(args.kind)
    r1 = _parse_real(args.r1, "r1")
    r2 = _parse_real(args.r2, "r2")
    sc = check_pair(cfg.params, kind, r1, r2, cfg.lam_max, cfg.delta,
                    cfg.strip_height, tol=cfg.tol_zero,
                    tol_series=cfg.tol_series)
    v = sc.verdict
    _emit_json({
        "command": "check-pair",
        "space": [cfg.params.p, cfg.params.q],
        "kind": kind.value,
        "r1": r1,
        "r2": r2,
        "verdict": v.admissible.value,
        "witness": _cjson(v.witness),
        "witness_residuals": (None if v.witness_residuals is None
                              else list(v.witness_residuals)),
        "min_gap": v.min_gap,
        "evidence": [{"r": e.r, "transform_abs": e.transform_abs,
                      "scale": e.scale, "rel": e.rel} for e in sc.evidence],
        "scope": _scope_json(cfg, v),
        "notes": list(v.notes),
    })
    return _VERDICT_EXIT[v.admissible]


def _cmd_counterexample(cfg: RunConfig, args) -> int:
    kind = DistKind.parse(args.kind)
    lam0 = _parse_real(args.lambda0, "lambda0")
    r1, r2, cert = generate_inadmissible_pair(cfg.params, kind, lam0,
                                              cfg.r_max)
    _emit_json({
        "command": "counterexample",
        "space": [cfg.params.p, cfg.params.q],
        "kind": kind.value,
        "lambda0": lam0,
        "r_max": cfg.r_max,
        "r1": r1,
        "r2": r2,
        "certificate": {
            "tol": cert.tol,
            "ok": cert.ok,
            "entries": [{"r": e.r, "transform_abs": e.transform_abs,
                         "scale": e.scale, "rel": e.rel}
                        for e in cert.entries],
        },
        "scope": _scope_json(cfg),
    })
    return 0


def _cmd_verify(cfg: RunConfig, args) -> int:
    kind = DistKind.parse(args.kind)
    lam0 = _parse_complex(args.lambda0)
    r = _parse_real(args.r, "radius")
    centers = _parse_grid(args.centers, complex_ok=False)
    rep = verify_annihilation(cfg.params, kind, lam0, r, centers)
    _emit_json({
        "command": "verify",
        "space": [cfg.params.p, cfg.params.q],
        "kind": kind.value,
        "lambda0": _cjson(rep.lambda0),
        "r": rep.r,
        "scale": rep.scale,
        "transform_value": _cjson(rep.transform_value),
        "records": [{"center": rec.center, "value_re": rec.value.real,
                     "value_im": rec.value.imag, "rel": rec.rel,
                     "method": rec.method} for rec in rep.records],
        "max_rel": rep.max_rel,
        "note": rep.note,
        "scope": _scope_json(cfg),
    })
    return 0


def _cmd_zeros(cfg: RunConfig, args) -> int:
    kind = DistKind.parse(args.kind)
    r = _parse_real(args.r, "radius")
    zs = spectral_zero_set(cfg.params, r, kind, cfg.lam_max,
                           cfg.strip_height, tol=cfg.tol_zero,
                           tol_series=cfg.tol_series)
    params = cfg.params
    if cfg.fmt == "csv":
        header = ("p", "q", "kind", "r", "axis", "index", "zero", "residual",
                  "multiplicity", "certified", "certified_count",
                  "rectangle_count")
        tail = (str(zs.certified), str(zs.certified_count),
                str(zs.rectangle_count))
        rows = []
        for j, (z, res, m) in enumerate(zip(zs.zeros, zs.residuals,
                                            zs.multiplicities)):
            rows.append((params.p, params.q, kind.value, _f(r), "real",
                         j, _f(z), _f(res), m) + tail)
        for j, (z, res, m) in enumerate(zip(zs.imag_zeros, zs.imag_residuals,
                                            zs.imag_multiplicities)):
            rows.append((params.p, params.q, kind.value, _f(r), "imag",
                         j, _f(z), _f(res), m) + tail)
        _emit_csv(header, rows)
    else:
        _emit_json({
            "command": "zeros",
            "space": [params.p, params.q],
            "kind": kind.value,
            "r": r,
            "window": list(zs.window),
            "zeros": list(zs.zeros),
            "residuals": list(zs.residuals),
            "multiplicities": list(zs.multiplicities),
            "imag_window": (None if zs.imag_window is None
                            else list(zs.imag_window)),
            "imag_zeros": list(zs.imag_zeros),
            "imag_residuals": list(zs.imag_residuals),
            "imag_multiplicities": list(zs.imag_multiplicities),
            "origin_zero": zs.origin_zero,
            "certified": zs.certified,
            "certified_count": zs.certified_count,
            "rectangle_count": zs.rectangle_count,
            "cert_height": zs.cert_height,
            "cert_window": (None if zs.cert_window is None
                            else list(zs.cert_window)),
            "notes": list(zs.notes),
            "scope": _scope_json(cfg),
        })
    return 0


def _parse_terms(text: str) -> CosineSum:
    """';'-separated terms, each "coef:lambda,k" — e.g. "1:1.0,0;0.5:2,1"."""
    terms = []
    for part in str(text).split(";"):
        part = part.strip()
        if not part:
            continue
        head, sep, rest = part.partition(":")
        if not sep:
            raise DomainError(f"term {part!r} must look like coef:lambda,k")
        bits = rest.split(",")
        if len(bits) != 2:
            raise DomainError(f"term {part!r} must look like coef:lambda,k")
        terms.append((_parse_complex(head), _parse_complex(bits[0]),
                      int(bits[1])))
    if not terms:
        raise DomainError("no terms given")
    return CosineSum(tuple(terms))


def _cmd_abel_roundtrip(cfg: RunConfig, args) -> int:
    cs = _parse_terms(args.terms)
    params = cfg.params
    pts = (_parse_grid(args.samples, complex_ok=False) if args.samples
           else [float(x) for x in np.linspace(0.4, 4.9, 10)])
    ss = dual_abel(cs, params)
    constant = calibrate_constant(params)
    floor = 1e-14 * max(cs.coef_scale, 1e-300)
    samples = []
    worst = 0.0
    for x in pts:
        got = inverse_dual_abel(params, ss.t_jet, math.cosh(x), constant)
        ref = cs.evaluate(x)
        rel = abs(got - ref) / max(abs(ref), floor)
        worst = max(worst, rel)
        samples.append({"x": x, "rel_err": rel})
    _emit_json({
        "command": "abel-roundtrip",
        "space": [params.p, params.q],
        "terms": [{"coef": _cjson(c), "lambda": _cjson(lam), "k": k}
                  for (c, lam, k) in cs.terms],
        "constant": constant,
        "samples": samples,
        "max_rel_err": worst,
    })
    return 0


def _cmd_selftest(cfg: RunConfig, args) -> int:
    rep = run_selftest(cfg.seed)
    sys.stdout.write(report_text(rep))
    return 0 if rep.all_passed else 1


# ---------------------------------------------------------------------------
# wiring

def _common_flags(sp):
    sp.add_argument("--space", dest="space", metavar="P,Q")
    sp.add_argument("--config", dest="config", metavar="PATH")
    sp.add_argument("--tol", dest="tol_series", metavar="TOL")
    sp.add_argument("--zero-tol", dest="tol_zero", metavar="TOL")
    sp.add_argument("--quad-tol", dest="tol_quad", metavar="TOL")
    sp.add_argument("--delta", dest="delta", metavar="SEP")
    sp.add_argument("--lambda-max", dest="lam_max", metavar="L")
    sp.add_argument("--r-max", dest="r_max", metavar="R")
    sp.add_argument("--strip-height", dest="strip_height", metavar="H")
    sp.add_argument("--format", dest="fmt", choices=("csv", "json"))
    sp.add_argument("--seed", dest="seed", metavar="N")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drharm",
        description="Radial harmonic analysis on the spaces X^(p,q): "
                    "spherical functions, transforms, zero sets, two-radius "
                    "decisions.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eval-phi", help="tabulate phi_lambda(r)")
    _common_flags(sp)
    sp.add_argument("--lam", required=True,
                    help="lambda grid: comma list and/or a:b:n spans")
    sp.add_argument("--r", required=True, help="radius grid")
    sp.set_defaults(fn=_cmd_eval_phi)

    sp = sub.add_parser("transform",
                        help="spherical Fourier transform, both routes")
    _common_flags(sp)
    sp.add_argument("--kind", required=True)
    sp.add_argument("--r", required=True)
    sp.add_argument("--lam", required=True)
    sp.set_defaults(fn=_cmd_transform)

    sp = sub.add_parser("check-pair", help="two-radius admissibility verdict")
    _common_flags(sp)
    sp.add_argument("--kind", required=True)
    sp.add_argument("--r1", required=True)
    sp.add_argument("--r2", required=True)
    sp.set_defaults(fn=_cmd_check_pair)

    sp = sub.add_parser("counterexample",
                        help="generate an inadmissible pair at lambda0")
    _common_flags(sp)
    sp.add_argument("--kind", required=True)
    sp.add_argument("--lambda0", required=True)
    sp.set_defaults(fn=_cmd_counterexample)

    sp = sub.add_parser("verify",
                        help="residuals of a counterexample annihilation")
    _common_flags(sp)
    sp.add_argument("--kind", required=True)
    sp.add_argument("--lambda0", required=True)
    sp.add_argument("--r", required=True)
    sp.add_argument("--centers", default="0,1,2,3,4,5")
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("zeros", help="certified spectral zero set")
    _common_flags(sp)
    sp.add_argument("--kind", required=True)
    sp.add_argument("--r", required=True)
    sp.set_defaults(fn=_cmd_zeros)

    sp = sub.add_parser("abel-roundtrip",
                        help="inverse-of-image error for a cosine sum")
    _common_flags(sp)
    sp.add_argument("--terms", required=True,
                    help="';'-separated coef:lambda,k terms, e.g. 1:1.0,0")
    sp.add_argument("--samples", default=None,
                    help="sample grid on the line (default 0.4:4.9:10)")
    sp.set_defaults(fn=_cmd_abel_roundtrip)

    sp = sub.add_parser("selftest", help="deterministic invariant sweep")
    _common_flags(sp)
    sp.set_defaults(fn=_cmd_selftest)

    return parser


_DOMAIN_ERRORS = (DomainError, UnsupportedParametersError,
                  NotEnoughZerosError, JetDepthError, ValueError)


def _error_exit(exc: Exception, code: int) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc),
               "exit_code": code}
    json.dump(payload, sys.stderr)
    sys.stderr.write("\n")
    return code


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _build_config(args)
        return args.fn(cfg, args)
    except _DOMAIN_ERRORS as exc:
        return _error_exit(exc, 2)
    except QuadratureError as exc:
        return _error_exit(exc, 3)
    except (NonConvergenceError, ContourTooCloseError,
            CalibrationError) as exc:
        return _error_exit(exc, 1)
    except OSError as exc:
        return _error_exit(exc, 2)


if __name__ == "__main__":
    sys.exit(main())
