"""Flat-limit studies R0 -> infinity for the curved spectra and wavefunctions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..params import Geometry, PhysParams, QuantumNumbers


@dataclass(frozen=True)
class LimitRow:
    radius: float
    curved: float
    flat: float
    difference: float  # curved - flat (hyperboloid: minus e^2/R0 first)
    ratio: float  # previous difference / this difference (nan on first row)


@dataclass(frozen=True)
class LimitReport:
    geometry: Geometry
    rows: tuple
    target_ratio: float
    ratio_tol: float

    @property
    def ratios(self) -> list:
        return [r.ratio for r in self.rows[1:]]

    @property
    def passed(self) -> bool:
        return all(abs(x - self.target_ratio) <= self.ratio_tol for x in self.ratios)


def limit_study(p: PhysParams, q: QuantumNumbers, geometry: Geometry,
                radii=(10.0, 20.0, 40.0, 80.0), ratio_tol: float = 0.2) -> LimitReport:
    """|E_curved(R0) - E_flat| along a doubling sequence of radii.

    The curvature correction scales as 1/R0^2, so successive differences
    should shrink by a factor 4 per doubling.
    """
    from ..flat import flat_energy
    from ..hyperboloid import hyper_energy
    from ..sphere import sphere_energy

    geometry = Geometry(geometry)
    e_flat = flat_energy(p.replace(geometry=Geometry.FLAT), q)
    rows = []
    prev = None
    for R in radii:
        pc = p.replace(geometry=geometry, r_curv=float(R))
        if geometry is Geometry.SPHERE:
            e = sphere_energy(pc, q)
            diff = e - e_flat
        elif geometry is Geometry.HYPERBOLOID:
            e = hyper_energy(pc, q)
            diff = (e - p.e2 / R) - e_flat
        else:
            raise ValueError("limit study needs a curved geometry")
        ratio = float("nan") if prev is None else prev / diff
        rows.append(LimitRow(float(R), e, e_flat, diff, ratio))
        prev = diff
    return LimitReport(geometry, tuple(rows), 4.0, ratio_tol)


def wavefunction_limit(p: PhysParams, q: QuantumNumbers, geometry: Geometry,
                       radius: float, r) -> float:
    """sup over r of |R_curved(x = r/R0) - R_flat(r)|.

    Both functions are normalized against r^2 dr in the limit, so no extra
    factor is needed.
    """
    from .. import flat, hyperboloid, sphere

    geometry = Geometry(geometry)
    r = np.asarray(r, dtype=float)
    fs = flat.FlatBoundState.build(p.replace(geometry=Geometry.FLAT), q)
    rf = flat.radial_eval(fs, r)
    pc = p.replace(geometry=geometry, r_curv=float(radius))
    if geometry is Geometry.SPHERE:
        st = sphere.SphereBoundState.build(pc, q)
        rc = sphere.quasi_radial_eval(st, r / radius)
    else:
        st = hyperboloid.HyperBoundState.build(pc, q)
        rc = hyperboloid.quasi_radial_eval(st, r / radius)
    return float(np.max(np.abs(rc - rf)))
