"""Fourier-series initial curves, named presets, and the curve CSV format.

Every closed curve here is a finite trigonometric polynomial per coordinate
in the parameter u in [0, 1). Presets cover the linked test configurations:
two Hopf-linked circle pairs of opposite sign, Listing's figure-eight knot,
and the circle/ellipse threaded through it.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .geometry import DiscreteCurve, resample_uniform

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class FourierTerm:
    """One harmonic: cos_coef*cos(2*pi*f*u + phase) + sin_coef*sin(2*pi*f*u + phase)."""

    frequency: int
    cos_coef: float = 0.0
    sin_coef: float = 0.0
    phase: float = 0.0


@dataclass(frozen=True)
class FourierCoordinate:
    constant: float = 0.0
    terms: tuple[FourierTerm, ...] = ()

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        out = np.full_like(u, self.constant)
        for term in self.terms:
            arg = TWO_PI * term.frequency * u + term.phase
            if term.cos_coef:
                out = out + term.cos_coef * np.cos(arg)
            if term.sin_coef:
                out = out + term.sin_coef * np.sin(arg)
        return out


@dataclass(frozen=True)
class FourierCurve:
    """Closed curve whose coordinates are finite Fourier series, 1-periodic in u."""

    x: FourierCoordinate = field(default_factory=FourierCoordinate)
    y: FourierCoordinate = field(default_factory=FourierCoordinate)
    z: FourierCoordinate = field(default_factory=FourierCoordinate)

    def evaluate(self, u) -> np.ndarray:
        """Exact series evaluation; scalar u gives a (3,) point, arrays map rowwise."""
        u = np.asarray(u, dtype=float)
        pts = np.stack([self.x(u), self.y(u), self.z(u)], axis=-1)
        return pts

    def sample(self, m: int, uniformize: bool = True) -> DiscreteCurve:
        """Sample at u_k = k/m, k = 0..m-1, optionally redistributed by arc length.

        The raw parameter sampling reproduces the series nodes exactly;
        uniformize (the default) then equalizes node spacing, which the
        evolution scheme prefers. A single arc-length pass leaves chords of
        equal arcs unequal where the curvature varies, so the resampling is
        iterated (it converges to equal chords; already-uniform samplings
        are fixed points and pass through unchanged).
        """
        if m < 3:
            raise ValueError(f"need at least 3 samples, got {m}")
        u = np.arange(m) / m
        curve = DiscreteCurve(self.evaluate(u))
        if uniformize:
            for _ in range(4):
                curve = resample_uniform(curve, m)
                seg = np.linalg.norm(curve.nodes - np.roll(curve.nodes, 1, axis=0), axis=1)
                if seg.max() / seg.min() < 1.0 + 1e-6:
                    break
        return curve


def _circle_xy() -> FourierCurve:
    return FourierCurve(
        x=FourierCoordinate(terms=(FourierTerm(1, cos_coef=1.0),)),
        y=FourierCoordinate(terms=(FourierTerm(1, sin_coef=1.0),)),
    )


def _circle_xz_offset() -> FourierCurve:
    return FourierCurve(
        x=FourierCoordinate(constant=1.0, terms=(FourierTerm(1, cos_coef=1.0),)),
        z=FourierCoordinate(terms=(FourierTerm(1, sin_coef=1.0),)),
    )


def _circle_xy_rotated() -> FourierCurve:
    return FourierCurve(
        x=FourierCoordinate(terms=(FourierTerm(1, sin_coef=-1.0),)),
        y=FourierCoordinate(terms=(FourierTerm(1, cos_coef=1.0),)),
    )


def _circle_xz_offset_flipped() -> FourierCurve:
    return FourierCurve(
        x=FourierCoordinate(constant=1.0, terms=(FourierTerm(1, cos_coef=1.0),)),
        z=FourierCoordinate(terms=(FourierTerm(1, sin_coef=-1.0),)),
    )


def _eight_knot() -> FourierCurve:
    # phases are radians
    return FourierCurve(
        x=FourierCoordinate(terms=(FourierTerm(2, cos_coef=3.0),)),
        y=FourierCoordinate(terms=(FourierTerm(3, sin_coef=2.0, phase=0.5),)),
        z=FourierCoordinate(
            terms=(
                FourierTerm(5, cos_coef=0.5, phase=0.5),
                FourierTerm(3, sin_coef=0.5, phase=0.5),
            )
        ),
    )


def _knot_circle() -> FourierCurve:
    return FourierCurve(
        x=FourierCoordinate(terms=(FourierTerm(1, cos_coef=1.0),)),
        z=FourierCoordinate(terms=(FourierTerm(1, sin_coef=1.0),)),
    )


def _knot_ellipse() -> FourierCurve:
    return FourierCurve(
        x=FourierCoordinate(constant=-1.5, terms=(FourierTerm(1, cos_coef=1.0),)),
        y=FourierCoordinate(constant=0.5),
        z=FourierCoordinate(terms=(FourierTerm(1, sin_coef=0.8),)),
    )


PRESETS: dict[str, tuple[FourierCurve, ...]] = {
    "linked-circles-neg": (_circle_xy(), _circle_xz_offset()),
    "linked-circles-pos": (_circle_xy_rotated(), _circle_xz_offset_flipped()),
    "eight-knot": (_eight_knot(),),
    "knot-circle": (_knot_circle(),),
    "knot-ellipse": (_knot_ellipse(),),
}


def preset(name: str) -> tuple[FourierCurve, ...]:
    """All member curves of a named preset."""
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise ValueError(f"unknown preset {name!r}; known presets: {known}") from None


def preset_curve(spec: str) -> FourierCurve:
    """Resolve a preset spec like ``eight-knot`` or ``linked-circles-neg:2``.

    The ``:k`` suffix (1-based) selects a member of a multi-curve preset and
    is required whenever the preset holds more than one curve.
    """
    name, _, index = spec.partition(":")
    members = preset(name)
    if not index:
        if len(members) > 1:
            raise ValueError(
                f"preset {name!r} holds {len(members)} curves; select one with "
                f"{name}:1 .. {name}:{len(members)}"
            )
        return members[0]
    try:
        k = int(index)
    except ValueError:
        raise ValueError(f"bad preset index {index!r} in {spec!r}") from None
    if not 1 <= k <= len(members):
        raise ValueError(f"preset {name!r} has members 1..{len(members)}, got {k}")
    return members[k - 1]


def load_curve_csv(path) -> DiscreteCurve:
    """Read a curve file: header ``x,y,z``, one node per row, implicitly closed.

    A file whose last row exactly repeats the first is accepted; the duplicate
    closing row is dropped.
    """
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header[:3]] != ["x", "y", "z"]:
            raise ValueError(f"{path}: expected a CSV header 'x,y,z', got {header!r}")
        rows = [[float(v) for v in row[:3]] for row in reader if row]
    if len(rows) >= 2 and rows[0] == rows[-1]:
        rows = rows[:-1]
    return DiscreteCurve(np.asarray(rows, dtype=float))


def write_curve_csv(path, curve) -> None:
    """Write a curve to the implicit-closure CSV format with 17 significant digits."""
    nodes = curve.nodes if isinstance(curve, DiscreteCurve) else np.asarray(curve, float)
    with open(path, "w", newline="") as fh:
        fh.write("x,y,z\n")
        for row in nodes:
            fh.write("%.17g,%.17g,%.17g\n" % tuple(row))
