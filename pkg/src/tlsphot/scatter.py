"""Two-level-scatterer transfer functions and exact few-photon scattering maps.

A two-level emitter chirally coupled to a waveguide transmits a monochromatic
photon with the coefficient

    t(delta) = (delta + i(gamma - Gamma)/2) / (delta + i(gamma + Gamma)/2),

where Gamma is the coupling to the guided mode, gamma the loss rate into all
other modes, and delta the detuning from resonance.  Photon pairs acquire in
addition a spectrally entangled ("bound") component generated by the kernel

    T = (i sqrt(Gamma) / 2 pi) delta(k1 + k2 - p1 - p2) s(p1) s(p2)
        (s(k1) + s(k2)),          s(delta) = (1 - t(delta)) / (i sqrt(Gamma)).

The momentum-conserving delta function is consumed analytically: outputs are
parametrized by the total detuning P = p1 + p2 and the bound term reduces to

    out_b(p1, p2) = (i sqrt(Gamma) / 2 pi) s(p1) s(p2) I(P),
    I(P) = integral dk psi(k, P - k) [s(k) + s(P - k)],

an anti-diagonal sum that costs O(N) per diagonal on the uniform grid (O(N^2)
total instead of the naive O(N^4)).  For a product input f x f the scalar
figures eta, eps_1 and eps_b reduce further to 1-D convolutions, which is how
the fast paths below evaluate them; the dense map is retained as the general
route and the two are cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import fftconvolve

from .grid import (
    OnePhotonAmp,
    SpectralGrid,
    TwoPhotonAmp,
    inner2,
    lorentzian_values,
    normalize,
    product_state,
    require_symmetric,
)
from .roots import NoCrossingError, bisect, golden_max


@dataclass(frozen=True)
class TlsParams:
    """Emitter rates: waveguide coupling Gamma and residual loss gamma.

    The directional beta factor beta_dir = Gamma / (gamma + Gamma) is 1 for a
    lossless scatterer.
    """

    gamma_wg: float = 1.0
    gamma_loss: float = 0.0

    def __post_init__(self):
        if self.gamma_wg <= 0:
            raise ValueError(f"gamma_wg must be positive, got {self.gamma_wg}")
        if self.gamma_loss < 0:
            raise ValueError(
                f"gamma_loss must be non-negative, got {self.gamma_loss}"
            )

    @property
    def beta_dir(self) -> float:
        return self.gamma_wg / (self.gamma_loss + self.gamma_wg)

    @classmethod
    def from_beta(cls, beta: float, gamma_wg: float = 1.0) -> "TlsParams":
        if not 0.0 < beta <= 1.0:
            raise ValueError(f"beta_dir must be in (0, 1], got {beta}")
        return cls(gamma_wg=gamma_wg, gamma_loss=gamma_wg * (1.0 / beta - 1.0))


def transfer_coeff(p: TlsParams, delta):
    """Single-photon transmission t(delta); vectorized over delta."""
    num = delta + 0.5j * (p.gamma_loss - p.gamma_wg)
    den = delta + 0.5j * (p.gamma_loss + p.gamma_wg)
    return num / den


def s_coeff(p: TlsParams, delta):
    """Scattering amplitude s(delta) = (1 - t(delta)) / (i sqrt(Gamma))."""
    return (1.0 - transfer_coeff(p, delta)) / (1j * np.sqrt(p.gamma_wg))


@dataclass
class ScatterOneResult:
    """Scattered single photon: unnormalized output, survival eps_1, loss."""

    out: OnePhotonAmp
    epsilon1: float
    lost: float


def scatter_one(p: TlsParams, f: OnePhotonAmp) -> ScatterOneResult:
    """Scatter a single photon: f(delta) -> f(delta) t(delta)."""
    t = transfer_coeff(p, f.grid.samples)
    out = OnePhotonAmp(f.grid, f.values * t)
    eps1 = out.norm_sq()
    return ScatterOneResult(out=out, epsilon1=eps1, lost=1.0 - eps1)


def _antidiagonal_sums(psi: np.ndarray, s: np.ndarray, h: float) -> np.ndarray:
    """I(P_q) = h * sum_m psi[m, q-m] (s_m + s_{q-m}) for q = 0 .. 2N-2."""
    n = psi.shape[0]
    out = np.zeros(2 * n - 1, dtype=complex)
    for m in range(n):
        out[m:m + n] += psi[m, :] * (s[m] + s)
    out *= h
    return out


def scatter_two(p: TlsParams, psi: TwoPhotonAmp) -> TwoPhotonAmp:
    """Scatter a symmetric two-photon amplitude off the emitter.

    Returns the full (unnormalized) output amplitude

        out(p1, p2) = t(p1) t(p2) psi(p1, p2)
                      + (i sqrt(Gamma) / 2 pi) s(p1) s(p2) I(p1 + p2)

    with the bound-term integral I evaluated by anti-diagonal sums.
    """
    require_symmetric(psi.values)
    grid = psi.grid
    t = transfer_coeff(p, grid.samples)
    s = s_coeff(p, grid.samples)
    kappa = 0.5j * np.sqrt(p.gamma_wg) / np.pi
    bound_i = _antidiagonal_sums(psi.values, s, grid.spacing)
    n = grid.n_points
    out = np.empty((n, n), dtype=complex)
    for m in range(n):
        # (s_m * s) before the kappa scaling keeps the rows exactly symmetric
        out[m, :] = (t[m] * t) * psi.values[m, :] \
            + ((s[m] * s) * kappa) * bound_i[m:m + n]
    return TwoPhotonAmp(grid, out)


def product_image(p: TlsParams, f: OnePhotonAmp) -> TwoPhotonAmp:
    """Linear part of the pair output: (t f) x (t f), unnormalized."""
    g = scatter_one(p, f).out
    return product_state(OnePhotonAmp(g.grid, g.values))


def bound_amplitude(p: TlsParams, f: OnePhotonAmp) -> TwoPhotonAmp:
    """Bound (spectrally entangled) part of the pair output for input f x f."""
    grid = f.grid
    s = s_coeff(p, grid.samples)
    h = grid.spacing
    # For psi = f x f the anti-diagonal sums collapse to a 1-D convolution.
    bound_i = 2.0 * h * fftconvolve(f.values * s, f.values)
    kappa = 0.5j * np.sqrt(p.gamma_wg) / np.pi
    n = grid.n_points
    out = np.empty((n, n), dtype=complex)
    for m in range(n):
        out[m, :] = ((s[m] * s) * kappa) * bound_i[m:m + n]
    return TwoPhotonAmp(grid, out)


def _product_bound_overlap(p: TlsParams, f: OnePhotonAmp) -> complex:
    """<(t f) x (t f) | bound> via the same anti-diagonal reduction.

    This is inner2(product_image, bound_amplitude) with the double sum
    factored through the convolution structure of the bound term, avoiding
    the N x N arrays.
    """
    grid = f.grid
    t = transfer_coeff(p, grid.samples)
    s = s_coeff(p, grid.samples)
    h = grid.spacing
    g = f.values * t
    bound_i = 2.0 * h * fftconvolve(f.values * s, f.values)
    u = grid.weights * np.conj(g) * s
    kappa = 0.5j * np.sqrt(p.gamma_wg) / np.pi
    return complex(kappa * np.sum(fftconvolve(u, u) * bound_i))


def eta_numeric(p: TlsParams, f: OnePhotonAmp, dense: bool = False) -> float:
    """Distortion overlap eta = |<product image | bound>| / 2 for input f x f.

    The default path factors the overlap through the anti-diagonal reduction;
    ``dense=True`` materializes both two-photon amplitudes and calls inner2
    (identical result, used as a cross-check).
    """
    if dense:
        return 0.5 * abs(inner2(product_image(p, f), bound_amplitude(p, f)))
    return 0.5 * abs(_product_bound_overlap(p, f))


def epsilon_b_numeric(p: TlsParams, f: OnePhotonAmp) -> float:
    """Squared norm of the bound amplitude, <bound|bound>, for input f x f."""
    grid = f.grid
    s = s_coeff(p, grid.samples)
    h = grid.spacing
    bound_i = 2.0 * h * fftconvolve(f.values * s, f.values)
    v = grid.weights * np.abs(s) ** 2
    scale = p.gamma_wg / (4.0 * np.pi**2)
    return float(scale * np.sum(fftconvolve(v, v) * np.abs(bound_i) ** 2))


def eta_analytic(sigma: float, gamma_wg: float = 1.0) -> float:
    """Closed-form eta for a resonant Lorentzian pulse, lossless emitter."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    g = gamma_wg
    return (4 * g**2 * sigma * (3 * g**2 + 38 * g * sigma + 96 * sigma**2)
            / ((g + 2 * sigma) ** 3 * (3 * g + 2 * sigma) * (g + 6 * sigma)))


def epsilon1_analytic(p: TlsParams, sigma: float) -> float:
    """Closed-form single-photon survival for a resonant Lorentzian pulse."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    g, G = p.gamma_loss, p.gamma_wg
    return 1.0 - 4 * g * G * (g + G + 4 * sigma) / (
        (g + G) * (g + G + 2 * sigma) ** 2)


def epsilon_b_analytic(p: TlsParams, sigma: float) -> float:
    """Closed-form <bound|bound> for a resonant Lorentzian pulse."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    G = p.gamma_loss + p.gamma_wg
    g = p.gamma_wg
    return (16 * g**4 * sigma * (38 * sigma * G + 3 * G**2 + 96 * sigma**2)
            / (G**2 * (G + 2 * sigma) ** 3 * (3 * G + 2 * sigma)
               * (G + 6 * sigma)))


@dataclass
class ScatterTwoResult:
    """Pair output split along / orthogonal to the product image.

    ``coeff_along`` multiplies the unit-norm product image (t f) x (t f) and
    equals eps_1 (1 - 2 eta / eps_1^2); ``coeff_orth`` is the norm of the
    orthogonal remainder, sqrt(eps_b - 4 eta^2 / eps_1^2); ``lost`` the
    probability scattered out of the guided mode.  ``bound_overlap`` is the
    overlap of the normalized product image with the bound amplitude, which
    the decomposition requires to be real and negative; ``phase_residual``
    reports how far its phase is from pi.
    """

    out: TwoPhotonAmp
    coeff_along: complex
    coeff_orth: float
    lost: float
    bound_overlap: complex
    phase_residual: float


def decompose(p: TlsParams, f: OnePhotonAmp) -> ScatterTwoResult:
    """Scatter f x f and resolve the output against the product image."""
    psi_out = scatter_two(p, product_state(f))
    prod = product_image(p, f)
    eps1 = scatter_one(p, f).epsilon1
    prod_normed = TwoPhotonAmp(prod.grid, prod.values / eps1)
    along = inner2(prod_normed, psi_out)
    out_norm_sq = psi_out.norm_sq()
    orth_sq = max(0.0, out_norm_sq - abs(along) ** 2)
    c = inner2(prod_normed, bound_amplitude(p, f))
    phase_residual = abs(np.angle(-c)) if c != 0 else 0.0
    return ScatterTwoResult(
        out=psi_out,
        coeff_along=along,
        coeff_orth=float(np.sqrt(orth_sq)),
        lost=1.0 - out_norm_sq,
        bound_overlap=c,
        phase_residual=phase_residual,
    )


def _eta_of_sigma(p: TlsParams, sigma: float,
                  n_points: int | None = None) -> float:
    """eta at spectral width sigma: closed form when lossless, else numeric."""
    if p.gamma_loss == 0.0:
        return eta_analytic(sigma, p.gamma_wg)
    grid = SpectralGrid.for_pulse_width(sigma, p.gamma_wg, n_points=n_points)
    f = normalize(OnePhotonAmp(grid, lorentzian_values(grid, sigma)))
    return eta_numeric(p, f)


def matching_sigma(p: TlsParams, branch: str = "upper",
                   sigma_lo: float = 0.01, sigma_hi: float = 30.0,
                   xtol: float = 1e-12,
                   n_points: int | None = None) -> float:
    """Spectral width solving the matching condition eta = eps_1^2 / 2.

    The mismatch eta(sigma) - eps_1(sigma)^2 / 2 is single-humped, so the
    peak located by golden-section search brackets one root on each side;
    ``branch`` selects ``"lower"`` or ``"upper"`` (the upper crossing is the
    recommended operating point, having the smaller loss).

    Raises
    ------
    NoCrossingError
        If the hump never reaches eps_1^2 / 2 for these emitter parameters.
    """
    if branch not in ("lower", "upper"):
        raise ValueError(f"branch must be 'lower' or 'upper', got {branch!r}")

    def mismatch(sigma: float) -> float:
        return (_eta_of_sigma(p, sigma, n_points)
                - 0.5 * epsilon1_analytic(p, sigma) ** 2)

    peak, peak_val = golden_max(mismatch, sigma_lo, sigma_hi, xtol=1e-6)
    if peak_val <= 0.0:
        raise NoCrossingError(
            f"matching condition unreachable at beta_dir={p.beta_dir:.4f}: "
            f"max(eta - eps1^2/2) = {peak_val:.3e}"
        )
    if branch == "lower":
        return bisect(mismatch, sigma_lo, peak, xtol=xtol)
    hi = sigma_hi
    while mismatch(hi) > 0.0:
        hi *= 2.0
        if hi > 1e6:
            raise NoCrossingError("upper matching bracket ran away")
    return bisect(mismatch, peak, hi, xtol=xtol)
