"""Reflection coefficients of layered mirrors at imaginary frequencies.

For an evanescent wave in the gap with decay constant kappa, the decay
constant inside a medium follows from conservation of the transverse
wavevector:

    kappa_medium^2 = kappa^2 + (eps*mu - eps0*mu0) * xi^2

(gap response eps0, mu0).  With a vacuum gap this is the familiar radicand
xi^2 (eps mu - 1) + kappa^2.  The TM single-interface coefficient from
medium a onto medium b is

    r_TM = (eps_b kappa_a - eps_a kappa_b) / (eps_b kappa_a + eps_a kappa_b)

and r_TE is the same with eps <-> mu.  A finite layer b of thickness w on a
substrate c composes through the Moebius map

    r_abc = (r_ab + r_bc e^{-2 kappa_b w}) / (1 + r_ab r_bc e^{-2 kappa_b w})

which maps [-1, 1] onto itself, so multilayer coefficients of passive media
stay within [-1, 1].

Sign convention: a perfectly conducting substrate gives r_TM = +1 and
r_TE = -1.  Only products of coefficients from the two mirrors enter the
pressure, so results do not depend on this choice.

Metallic (Drude-type) responses diverge like 1/xi^2 at zero frequency; at
xi = 0 the coefficients below are evaluated as the analytic xi -> 0+ limit
of the lossless model, e.g. r_TE -> (kappa - sqrt(kappa^2 + W)) /
(kappa + sqrt(kappa^2 + W)) with W the pole strength, which is finite and
nonzero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import UnsupportedConfigurationError
from .materials import Kind, ResponseModel, ResponseSample, response_sample

__all__ = [
    "Pol",
    "Layer",
    "MirrorStack",
    "Kinematics",
    "kappa_in_medium",
    "fresnel",
    "stack_reflection",
]

_CLAMP_SLACK = 1e-12


class Pol(Enum):
    TE = "TE"
    TM = "TM"


@dataclass(frozen=True)
class Layer:
    """A finite layer: material plus thickness in units of c/Omega."""

    material: ResponseModel
    thickness: float

    def __post_init__(self):
        t = float(self.thickness)
        if not math.isfinite(t) or t <= 0.0:
            raise ValueError("layer thickness must be finite and > 0")
        object.__setattr__(self, "thickness", t)


@dataclass(frozen=True)
class MirrorStack:
    """Ordered finite layers (gap side first) over a semi-infinite substrate."""

    layers: tuple[Layer, ...]
    substrate: ResponseModel

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))

    @classmethod
    def homogeneous(cls, material: ResponseModel) -> "MirrorStack":
        return cls(layers=(), substrate=material)


@dataclass(frozen=True)
class Kinematics:
    """Imaginary frequency xi and gap decay constant kappa_gap.

    Scalars or broadcastable arrays.  Valid points satisfy
    kappa_gap^2 >= xi^2 eps0 mu0 so the transverse wavevector is real.
    """

    xi: object
    kappa_gap: object


def _clamped_sqrt(rad):
    """sqrt with tiny negative round-off clamped to zero."""
    rad = np.asarray(rad, dtype=float)
    scale = np.maximum(1.0, np.abs(rad))
    bad = rad < -1e-12 * scale
    if np.any(bad):
        raise ValueError("negative radicand: kinematics violate kappa >= xi*sqrt(eps0*mu0)")
    return np.sqrt(np.maximum(rad, 0.0))


def _clamp_reflection(r):
    mag = np.abs(r)
    if np.any(mag > 1.0 + _CLAMP_SLACK) or np.any(np.isnan(r)):
        raise RuntimeError("reflection coefficient left [-1, 1] beyond round-off")
    return np.clip(r, -1.0, 1.0)


def kappa_in_medium(eps, mu, kin: Kinematics, gap_eps=1.0, gap_mu=1.0):
    """Decay constant inside a medium of response (eps, mu).

    Infinite eps or mu is treated as a perfect-mirror sentinel (result inf).
    For pole-type responses at xi = 0 use `stack_reflection`, which evaluates
    the limit analytically.
    """
    xi = np.asarray(kin.xi, dtype=float)
    kap = np.asarray(kin.kappa_gap, dtype=float)
    prod = np.asarray(eps, dtype=float) * np.asarray(mu, dtype=float)
    with np.errstate(invalid="ignore"):
        rad = kap * kap + (prod - gap_eps * gap_mu) * xi * xi
    rad = np.where(np.isinf(prod), np.inf, rad)
    out = _clamped_sqrt(rad)
    return float(out) if out.ndim == 0 else out


def _sentinel(kind: Kind):
    if kind is Kind.PERFECT_ELECTRIC:
        return "electric"
    if kind is Kind.PERFECT_MAGNETIC:
        return "magnetic"
    return None


def _sentinel_r(pol: Pol, which: str, incident_from_sentinel: bool):
    r_tm = 1.0 if which == "electric" else -1.0
    r = r_tm if pol is Pol.TM else -r_tm
    return -r if incident_from_sentinel else r


def _kappa_from_s(kappa, s_med, s_gap):
    with np.errstate(invalid="ignore"):
        rad = kappa * kappa + (s_med - s_gap)
    rad = np.where(np.isinf(s_med), np.inf, rad)
    return _clamped_sqrt(rad)


def _static_ratio(coef_b, deg_b, coef_a, deg_a):
    """Limit of (B - A)/(B + A) for B ~ coef_b xi^-deg_b, A ~ coef_a xi^-deg_a."""
    if deg_b > deg_a:
        return 1.0
    if deg_a > deg_b:
        return -1.0
    with np.errstate(invalid="ignore", divide="ignore"):
        return (coef_b - coef_a) / (coef_b + coef_a)


def _static_interface(pol, sa, sb, ka, kb):
    """xi = 0 limit of the interface coefficient for pole-type responses."""
    if pol is Pol.TM:
        fa, fb = sa.eps, sb.eps
        pa, pb = sa.eps_pole, sb.eps_pole
    else:
        fa, fb = sa.mu, sb.mu
        pa, pb = sa.mu_pole, sb.mu_pole
    double_a = sa.eps_pole > 0.0 and sa.mu_pole > 0.0
    double_b = sb.eps_pole > 0.0 and sb.mu_pole > 0.0
    # B = f_b * kappa_a, A = f_a * kappa_b; each factor may carry a power
    # of 1/xi (2 from a response pole, 1 from a doubly metallic kappa).
    coef_b = (pb if pb > 0.0 else fb) * (
        math.sqrt(sa.eps_pole * sa.mu_pole) if double_a else ka
    )
    deg_b = (2 if pb > 0.0 else 0) + (1 if double_a else 0)
    coef_a = (pa if pa > 0.0 else fa) * (
        math.sqrt(sb.eps_pole * sb.mu_pole) if double_b else kb
    )
    deg_a = (2 if pa > 0.0 else 0) + (1 if double_b else 0)
    return _static_ratio(coef_b, deg_b, coef_a, deg_a)


def _interface_r(pol, sa: ResponseSample, sb: ResponseSample, kappa, s_gap, static_mask):
    """Single-interface coefficient from medium a onto medium b (arrays)."""
    a_s, b_s = _sentinel(sa.kind), _sentinel(sb.kind)
    shape = np.broadcast_shapes(np.shape(kappa), np.shape(s_gap))
    if a_s and b_s:
        if a_s == b_s:
            return np.zeros(shape)
        raise UnsupportedConfigurationError(
            "interface between perfect electric and perfect magnetic media"
        )
    if b_s or a_s:
        return np.full(shape, _sentinel_r(pol, b_s or a_s, incident_from_sentinel=bool(a_s)))

    ka = _kappa_from_s(kappa, sa.s, s_gap)
    kb = _kappa_from_s(kappa, sb.s, s_gap)
    if pol is Pol.TM:
        fa, fb = sa.eps, sb.eps
        has_pole = sa.eps_pole > 0.0 or sb.eps_pole > 0.0
    else:
        fa, fb = sa.mu, sb.mu
        has_pole = sa.mu_pole > 0.0 or sb.mu_pole > 0.0
    with np.errstate(invalid="ignore", over="ignore"):
        r = (fb * ka - fa * kb) / (fb * ka + fa * kb)
    static_mask = np.broadcast_to(static_mask, np.shape(r))
    if has_pole and np.any(static_mask):
        r = np.where(static_mask, _static_interface(pol, sa, sb, ka, kb), r)
    return _clamp_reflection(r)


def _stack_r(samples, thicknesses, pol, kappa, s_gap, static_mask):
    """Reflection of the sampled media chain [gap, layer..., substrate].

    Evaluated substrate outward: each Moebius step keeps the coefficient
    inside [-1, 1], so clamping only absorbs round-off.
    """
    n_layers = len(thicknesses)
    r = _interface_r(pol, samples[n_layers], samples[n_layers + 1], kappa, s_gap, static_mask)
    for j in range(n_layers - 1, -1, -1):
        lay = samples[j + 1]
        k_lay = _kappa_from_s(kappa, lay.s, s_gap)
        with np.errstate(over="ignore"):
            damp = np.exp(-2.0 * k_lay * thicknesses[j])
        r_ab = _interface_r(pol, samples[j], lay, kappa, s_gap, static_mask)
        r = _clamp_reflection((r_ab + r * damp) / (1.0 + r_ab * r * damp))
    return r


def _sample_chain(stack: MirrorStack, gap: ResponseModel, xi):
    media = [gap] + [lay.material for lay in stack.layers] + [stack.substrate]
    return [response_sample(m, xi) for m in media], tuple(
        lay.thickness for lay in stack.layers
    )


def stack_reflection(stack: MirrorStack, gap: ResponseModel, pol: Pol, kin: Kinematics):
    """Multilayer reflection coefficient of `stack` seen from the gap."""
    xi = np.asarray(kin.xi, dtype=float)
    kappa = np.asarray(kin.kappa_gap, dtype=float)
    samples, widths = _sample_chain(stack, gap, xi)
    s_gap = samples[0].s
    if np.any(np.isinf(s_gap)):
        raise UnsupportedConfigurationError(
            "gap medium with a doubly metallic response has no propagation band"
        )
    static = xi == 0.0
    out = _stack_r(samples, widths, pol, kappa, s_gap, static)
    return float(out) if np.ndim(kin.xi) == 0 and np.ndim(kin.kappa_gap) == 0 else out


def fresnel(pol: Pol, medium_a, medium_b, kin: Kinematics, gap=None):
    """Single-interface coefficient between media given as (eps, mu) pairs.

    The wave is incident from medium a onto medium b; decay constants are
    taken relative to `gap` (a pair, defaulting to medium a, which makes the
    vacuum-gap case the textbook formula).  Perfect mirrors enter as inf
    sentinels; an interface between a perfect electric and a perfect
    magnetic medium is rejected.
    """
    ea, ma = (np.asarray(v, dtype=float) for v in medium_a)
    eb, mb = (np.asarray(v, dtype=float) for v in medium_b)
    if gap is None:
        gap = medium_a
    ge, gm = (float(v) for v in gap)

    a_s = "electric" if np.any(np.isinf(ea)) else ("magnetic" if np.any(np.isinf(ma)) else None)
    b_s = "electric" if np.any(np.isinf(eb)) else ("magnetic" if np.any(np.isinf(mb)) else None)
    if a_s and b_s:
        if a_s == b_s:
            return 0.0
        raise UnsupportedConfigurationError(
            "interface between perfect electric and perfect magnetic media"
        )
    if b_s or a_s:
        return _sentinel_r(pol, b_s or a_s, incident_from_sentinel=bool(a_s))

    ka = kappa_in_medium(ea, ma, kin, ge, gm)
    kb = kappa_in_medium(eb, mb, kin, ge, gm)
    if pol is Pol.TM:
        num, den = eb * ka - ea * kb, eb * ka + ea * kb
    else:
        num, den = mb * ka - ma * kb, mb * ka + ma * kb
    out = _clamp_reflection(num / den)
    return float(out) if out.ndim == 0 else out
