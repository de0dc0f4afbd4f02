"""Curve data for the distortion-overlap, loss and success figures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import success_curves
from .grid import OnePhotonAmp, SpectralGrid, lorentzian_values, normalize
from .roots import NoCrossingError
from .scatter import (
    TlsParams,
    epsilon1_analytic,
    epsilon_b_analytic,
    eta_analytic,
    eta_numeric,
    matching_sigma,
)

DEFAULT_BETAS = (1.0, 0.95, 0.90)


@dataclass(frozen=True)
class SweepSpec:
    """What to sweep: beta values, a spectral-width range, grid override."""

    beta_values: tuple = DEFAULT_BETAS
    sigma_range: tuple = (0.02, 5.0)
    sigma_count: int = 120
    n_points: int | None = None

    def __post_init__(self):
        lo, hi = self.sigma_range
        if lo <= 0 or hi <= lo:
            raise ValueError(f"bad sigma_range {self.sigma_range}")
        if any(not 0.0 < b <= 1.0 for b in self.beta_values):
            raise ValueError(f"beta values must lie in (0, 1], "
                             f"got {self.beta_values}")

    def sigmas(self) -> np.ndarray:
        lo, hi = self.sigma_range
        return np.geomspace(lo, hi, self.sigma_count)


def _eta_at(p: TlsParams, sigma: float, n_points: int | None) -> float:
    if p.gamma_loss == 0.0:
        return eta_analytic(sigma, p.gamma_wg)
    grid = SpectralGrid.for_pulse_width(sigma, p.gamma_wg, n_points=n_points)
    f = normalize(OnePhotonAmp(grid, lorentzian_values(grid, sigma)))
    return eta_numeric(p, f)


def fig1b_data(spec: SweepSpec) -> list:
    """Distortion overlap and half squared single-photon survival vs width.

    Rows hold (beta, sigma_over_gamma, eta, half_eps1_sq, is_crossing); the
    crossing flag marks rows where eta - eps_1^2/2 changes sign before the
    next row, i.e. the sorting operating points.
    """
    rows = []
    for beta in spec.beta_values:
        p = TlsParams.from_beta(beta)
        sigmas = spec.sigmas()
        etas = [_eta_at(p, s, spec.n_points) for s in sigmas]
        halves = [0.5 * epsilon1_analytic(p, s) ** 2 for s in sigmas]
        diffs = [e - h for e, h in zip(etas, halves)]
        for i, sigma in enumerate(sigmas):
            crossing = (i + 1 < len(sigmas)
                        and diffs[i] * diffs[i + 1] <= 0.0
                        and (diffs[i] != 0.0 or diffs[i + 1] != 0.0))
            rows.append({
                "beta": float(beta),
                "sigma_over_gamma": float(sigma),
                "eta": float(etas[i]),
                "half_eps1_sq": float(halves[i]),
                "is_crossing": bool(crossing),
            })
    return rows


def loss_curves(spec: SweepSpec, branch: str = "upper") -> list:
    """Pair and two-single-photon loss at the matched operating point."""
    rows = []
    for beta in spec.beta_values:
        p = TlsParams.from_beta(beta)
        row = {"beta": float(beta), "matched": True}
        try:
            sigma = matching_sigma(p, branch=branch, n_points=spec.n_points)
        except NoCrossingError:
            row.update(matched=False, sigma=float("nan"),
                       two_photon_loss=float("nan"),
                       two_singles_loss=float("nan"))
            rows.append(row)
            continue
        eps1 = epsilon1_analytic(p, sigma)
        eps_b = epsilon_b_analytic(p, sigma)
        row.update(sigma=float(sigma),
                   two_photon_loss=1.0 + eps1**2 - eps_b,
                   two_singles_loss=1.0 - eps1**2)
        rows.append(row)
    return rows


def fig3_data(spec: SweepSpec, branch: str = "upper") -> list:
    """Bell-measurement and CZ success probabilities vs beta."""
    rows = success_curves(spec.beta_values, branch=branch,
                          n_points=spec.n_points)
    return [{"beta": r["beta"], "bell_success": r["bell_success"],
             "cz_success": r["cz_success"], "matched": r["matched"]}
            for r in rows]
