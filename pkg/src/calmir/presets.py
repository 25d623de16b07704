"""Bundled demonstration scenarios.

Eight named material pairings spanning the interesting phenomenology:

* fig1a -- two identical non-magnetic metals (strength 1, metallic).
* fig1b -- two identical left-handed media, overlapping electric and
  magnetic resonances (0.3, 1, 0.3, 1): impedance-matched, weak attraction.
* fig1c -- two identical metals (strength 3), one coated with a thick
  (w = 20 pi c/Omega) mainly magnetic layer: attraction, repulsion around
  the layer-dominated range, attraction again beyond w.
* fig1d -- a purely dielectric mirror (3, 1) facing a mainly magnetic one
  (0.1, 1, 0.3, 1): repulsion window at zero temperature.
* fig3a..fig3d -- as fig1d with the magnetic mirror's static permittivity
  set to 1, 1.01, 1.03, 1.1 (oscillator strength sqrt(eps(0) - 1), fixed
  resonance): growing dielectric mismatch progressively restores
  short-distance attraction (fig3b coincides with fig1d).

All presets use a vacuum gap, zero temperature and a logarithmic sweep from
Lambda/400 to 50 Lambda (Lambda = 2 pi c/Omega).
"""

from __future__ import annotations

import math

from .materials import ResponseModel, VACUUM
from .reflection import Layer, MirrorStack
from .scenario import Scenario, SweepGrid

__all__ = ["PRESET_NAMES", "preset", "preset_scenario"]

LAMBDA = 2.0 * math.pi  # resonance wavelength in units c/Omega

_DRUDE1 = ResponseModel.drude(1.0)
_DRUDE3 = ResponseModel.drude(3.0)
_LEFT_HANDED = ResponseModel.lorentz(0.3, 1.0, 0.3, 1.0)
_DIELECTRIC = ResponseModel.lorentz(3.0, 1.0)
_COATING = ResponseModel.lorentz(0.1, 1.0, 0.3, 1.0)


def _magnetic(eps_strength: float) -> ResponseModel:
    # fixed resonance at the reference frequency, variable oscillator strength
    return ResponseModel.lorentz(eps_strength, 1.0, 0.3, 1.0)


_PRESETS = {
    "fig1a": {
        "materials": {"metal": _DRUDE1},
        "mirror1": ("metal", ()),
        "mirror2": ("metal", ()),
    },
    "fig1b": {
        "materials": {"lhm": _LEFT_HANDED},
        "mirror1": ("lhm", ()),
        "mirror2": ("lhm", ()),
    },
    "fig1c": {
        "materials": {"metal": _DRUDE3, "coating": _COATING},
        "mirror1": ("metal", ()),
        "mirror2": ("metal", (("coating", 10.0 * LAMBDA),)),
    },
    "fig1d": {
        "materials": {"dielectric": _DIELECTRIC, "magnetic": _COATING},
        "mirror1": ("dielectric", ()),
        "mirror2": ("magnetic", ()),
    },
}
# oscillator strengths giving static permittivities 1, 1.01, 1.03, 1.1
for _name, _strength in (
    ("fig3a", 0.0),
    ("fig3b", 0.1),
    ("fig3c", math.sqrt(0.03)),
    ("fig3d", math.sqrt(0.1)),
):
    _PRESETS[_name] = {
        "materials": {"dielectric": _DIELECTRIC, "magnetic": _magnetic(_strength)},
        "mirror1": ("dielectric", ()),
        "mirror2": ("magnetic", ()),
    }

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset(name: str):
    """Mirror stacks and gap medium of a named preset: (mirror1, mirror2, gap)."""
    scn = preset_scenario(name)
    return scn.mirror1, scn.mirror2, scn.gap


def preset_scenario(name: str) -> Scenario:
    """The full scenario (materials table, default sweep, T = 0)."""
    try:
        spec = _PRESETS[name]
    except KeyError:
        raise ValueError(
            f"unknown preset '{name}' (known: {', '.join(PRESET_NAMES)})"
        ) from None
    materials = dict(spec["materials"])

    def stack(which):
        sub_id, layers = spec[which]
        return MirrorStack(
            tuple(Layer(materials[mid], w) for mid, w in layers),
            materials[sub_id],
        )

    return Scenario(
        materials=materials,
        mirror1=stack("mirror1"),
        mirror2=stack("mirror2"),
        gap=VACUUM,
        temperature=0.0,
        sweep=SweepGrid(LAMBDA / 400.0, 50.0 * LAMBDA, 64, "log"),
    )
