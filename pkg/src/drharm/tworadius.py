"""Two-radius scenario layer: decisions, counterexamples, verification.

A pair of radii is admissible for a distribution family when the two
spectral functions share no zero in the searched window; the two-radius
theorems then force functions annihilated by both distributions to vanish
(or to be harmonic, for the mean-value family).  An inadmissible pair comes
with an explicit counterexample: the eigenfunction phi_lambda at the common
zero lambda is annihilated by every translate of both distributions, since
radial T acts on phi_lambda by the scalar FT(lambda).

This module packages the decision (check_pair), the constructive direction
(generate_inadmissible_pair: pick lambda0, take two zeros of the radial
function r |-> FT_r(lambda0)), and the numerical verification that the
counterexample does annihilate (verify_annihilation: eigen-relation values
at translated centers plus an independent quadrature at the center itself).
Verdicts never claim more than the searched scope; that scope rides along
inside the embedded PairVerdict.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, NotEnoughZerosError
from .geometry import SpaceParams, ball_volume, sphere_area
from .spherical import phi
from .transforms import DistKind, ball_transform_quadrature, transform
from .zeros import (DEFAULT_CERT_HEIGHT, DEFAULT_SCAN_STEP, DEFAULT_ZERO_TOL,
                    Admissibility, PairVerdict, common_zero, radial_zeros)

__all__ = [
    "RadiusResidual",
    "Certificate",
    "CenterResidual",
    "AnnihilationReport",
    "Scenario",
    "check_pair",
    "generate_inadmissible_pair",
    "verify_annihilation",
    "harmonicity_scenario",
]

CENTER_CAP = 5.0


@dataclass(frozen=True)
class RadiusResidual:
    """|FT_r(lambda)| at one radius, relative to the distribution's scale."""

    r: float
    transform_abs: float
    scale: float
    rel: float


@dataclass(frozen=True)
class Certificate:
    """Per-radius transform residuals certifying a generated pair."""

    lambda0: float
    kind: DistKind
    entries: tuple
    tol: float
    ok: bool


@dataclass(frozen=True)
class CenterResidual:
    """Functional value on the translated counterexample at one center."""

    center: float
    value: complex
    rel: float
    method: str  # "eigen-relation" or "quadrature"


@dataclass(frozen=True)
class AnnihilationReport:
    params: SpaceParams
    kind: DistKind
    lambda0: complex
    r: float
    scale: float
    transform_value: complex
    records: tuple
    max_rel: float
    note: str


@dataclass(frozen=True)
class Scenario:
    """A decided two-radius question with its verifying evidence.

    evidence is nonempty exactly when the verdict is Inadmissible: each
    entry records |FT_{r_j}(witness)| relative to the distribution scale,
    i.e. the verified counterexample.
    """

    params: SpaceParams
    kind: DistKind
    r1: float
    r2: float
    lam_max: float
    delta: float
    verdict: PairVerdict
    evidence: tuple

    def __post_init__(self):
        inadmissible = self.verdict.admissible is Admissibility.INADMISSIBLE
        if inadmissible != bool(self.evidence):
            raise DomainError(
                "evidence must be present iff the verdict is Inadmissible")


def _dist_scale(params: SpaceParams, kind: DistKind, r: float) -> float:
    if kind is DistKind.BALL:
        return ball_volume(params, r)
    if kind is DistKind.SPHERE:
        return sphere_area(params, r)
    if kind is DistKind.MEAN_VALUE:
        return 1.0
    raise DomainError(f"unknown kind {kind!r}")


def _witness_evidence(params: SpaceParams, kind: DistKind, witness: complex,
                      radii) -> tuple:
    out = []
    for r in radii:
        tv = transform(params, kind, r, witness)
        scale = _dist_scale(params, kind, r)
        out.append(RadiusResidual(r=float(r), transform_abs=abs(tv.value),
                                  scale=scale, rel=abs(tv.value) / scale))
    return tuple(out)


def check_pair(params: SpaceParams, kind: DistKind, r1: float, r2: float,
               lam_max: float = 20.0, delta: float = 1e-6,
               cert_height: float = DEFAULT_CERT_HEIGHT,
               scan_step: float = DEFAULT_SCAN_STEP,
               tol: float = DEFAULT_ZERO_TOL,
               tol_series: float = 1e-12) -> Scenario:
    """Decide admissibility of (r1, r2) within the searched window.

    Delegates the spectral-zero work to the zeros module; an Admissible
    verdict means the theorem's hypothesis holds within (0, lam_max] and the
    certification strip (plus the imaginary segment for the mean-value
    kind); the scope is recorded in the verdict.  Equal radii are permitted
    (every zero is then common).
    """
    verdict = common_zero(params, r1, r2, kind, lam_max, delta, cert_height,
                          scan_step, tol, tol_series)
    evidence = ()
    if verdict.admissible is Admissibility.INADMISSIBLE:
        evidence = _witness_evidence(params, kind, verdict.witness, (r1, r2))
    return Scenario(params=params, kind=kind, r1=float(r1), r2=float(r2),
                    lam_max=float(lam_max), delta=float(delta),
                    verdict=verdict, evidence=evidence)


def generate_inadmissible_pair(params: SpaceParams, kind: DistKind,
                               lambda0: float, r_max: float = 5.0,
                               tol: float = 1e-7):
    """First two zeros of r |-> FT_r(lambda0), with transform residuals.

    The returned (r1, r2) share the spectral zero lambda0 by construction,
    so the pair is inadmissible with counterexample phi_{lambda0}.  Raises
    NotEnoughZerosError when the radial function has fewer than two zeros in
    (0, r_max] (e.g. mean-value kind at rho > 0, where the real spectrum
    admits none).
    """
    lam = float(lambda0)
    zs = radial_zeros(params, lam, r_max, kind)
    if len(zs) < 2:
        raise NotEnoughZerosError(
            f"the {kind.value} radial function at lambda0 = {lam} has "
            f"{len(zs)} zero(s) in (0, {r_max}]; need two")
    r1, r2 = zs[0], zs[1]
    entries = _witness_evidence(params, kind, complex(lam), (r1, r2))
    ok = all(e.rel <= tol for e in entries)
    cert = Certificate(lambda0=lam, kind=kind, entries=entries, tol=tol, ok=ok)
    return r1, r2, cert


def verify_annihilation(params: SpaceParams, kind: DistKind, lambda0: complex,
                        r: float, centers) -> AnnihilationReport:
    """Residuals of the distribution on translates of phi_{lambda0}.

    For radial T the translated functional value is the eigen-relation
    product FT_r(lambda0) * phi_{lambda0}(s) at center distance s; those
    values inherit smallness from the transform factor, so the substantive
    independent check is the center value s = 0 recomputed without the
    closed form: direct quadrature of the ball integral, the area-times-phi
    product for the sphere, and phi - 1 for the mean value.  All residuals
    are relative to the distribution's scale (vol(B_r), vol(S_r), or 1).
    """
    lam = complex(lambda0)
    ss = sorted(float(s) for s in centers)
    if ss and not (0.0 <= ss[0] and ss[-1] <= CENTER_CAP):
        raise DomainError(f"centers must lie in [0, {CENTER_CAP}]")
    tv = transform(params, kind, r, lam)
    scale = _dist_scale(params, kind, r)
    records = []
    for s in ss:
        val = tv.value * phi(params, lam, s)
        records.append(CenterResidual(center=s, value=val,
                                      rel=abs(val) / scale,
                                      method="eigen-relation"))
    if kind is DistKind.BALL:
        qv = ball_transform_quadrature(params, r, lam).value
    elif kind is DistKind.SPHERE:
        qv = sphere_area(params, r) * phi(params, lam, r)
    else:
        qv = phi(params, lam, r) - 1.0
    records.append(CenterResidual(center=0.0, value=qv, rel=abs(qv) / scale,
                                  method="quadrature"))
    max_rel = max(rec.rel for rec in records)
    return AnnihilationReport(
        params=params, kind=kind, lambda0=lam, r=float(r), scale=scale,
        transform_value=tv.value, records=tuple(records), max_rel=max_rel,
        note="translated values scale with the transform factor by the "
             "eigen-relation; the center quadrature is the independent leg")


def harmonicity_scenario(params: SpaceParams, r1: float, r2: float,
                         lam_max: float = 20.0, delta: float = 1e-6,
                         cert_height: float = DEFAULT_CERT_HEIGHT,
                         scan_step: float = DEFAULT_SCAN_STEP,
                         tol: float = DEFAULT_ZERO_TOL,
                         tol_series: float = 1e-12) -> Scenario:
    """Mean-value two-radius question: does the pair force harmonicity?

    check_pair with the mean-value kind; the underlying zero search covers
    the real window, the certification strip, and the imaginary segment
    lambda = i mu, mu in (0, rho + 2] with the trivial +-i rho excluded
    (those solve phi_lambda(r) = 1 for every r).
    """
    return check_pair(params, DistKind.MEAN_VALUE, r1, r2, lam_max, delta,
                      cert_height, scan_step, tol, tol_series)
