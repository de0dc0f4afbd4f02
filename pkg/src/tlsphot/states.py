"""Few-photon multi-rail states (at most two photons total) and linear optics.

A :class:`FewPhotonState` stores a coherent superposition over rail-occupation
patterns: a vacuum amplitude, a spectral amplitude per singly occupied rail,
and a two-photon spectral amplitude per unordered rail pair.  Same-rail pair
amplitudes are exchange symmetric and normalized so that their discrete
double integral is the occupation probability (a pair of identical photons in
a unit mode f on one rail has amplitude f(x) f(y)).  For a cross-rail pair
(r, s) with r before s in the rail order, axis 0 of the stored array belongs
to the photon on r.

Probability that leaks out of the tracked rails (emitter loss, loss channels,
discarded sorter branches) accumulates in the scalar ``lost_mass``; the total
probability including it stays 1 up to quadrature error of the two-photon
scattering map.

All operations return new states; stored arrays are never mutated in place,
so untouched amplitudes are shared between input and output states.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .grid import (
    OnePhotonAmp,
    SpectralGrid,
    TwoPhotonAmp,
    require_symmetric,
)
from .scatter import TlsParams, scatter_two, transfer_coeff

_PRUNE_SQ = 1e-28  # drop amplitudes whose probability falls below this


@dataclass
class FewPhotonState:
    grid: SpectralGrid
    rails: tuple
    carriers: dict
    vacuum_amp: complex = 0.0
    one_photon: dict = field(default_factory=dict)
    two_photon: dict = field(default_factory=dict)
    lost_mass: float = 0.0

    @classmethod
    def vacuum(cls, grid: SpectralGrid, rails, carriers=None) -> "FewPhotonState":
        rails = tuple(rails)
        if len(set(rails)) != len(rails):
            raise ValueError("duplicate rail labels")
        if carriers is None:
            carriers = {r: "orig" for r in rails}
        return cls(grid=grid, rails=rails, carriers=dict(carriers),
                   vacuum_amp=1.0 + 0.0j)

    # -- bookkeeping helpers -------------------------------------------------

    def rail_index(self, rail: str) -> int:
        try:
            return self.rails.index(rail)
        except ValueError:
            raise ValueError(f"unknown rail {rail!r}") from None

    def pair_key(self, a: str, b: str):
        if self.rail_index(a) <= self.rail_index(b):
            return (a, b)
        return (b, a)

    def norm1_sq(self, values: np.ndarray) -> float:
        return float(np.sum(self.grid.weights * np.abs(values) ** 2))

    def norm2_sq(self, values: np.ndarray) -> float:
        w = self.grid.weights
        return float(np.real(w @ (np.abs(values) ** 2) @ w))

    def surviving_norm_sq(self) -> float:
        total = abs(self.vacuum_amp) ** 2
        total += sum(self.norm1_sq(v) for v in self.one_photon.values())
        total += sum(self.norm2_sq(v) for v in self.two_photon.values())
        return total

    def total_probability(self) -> float:
        return self.surviving_norm_sq() + self.lost_mass

    def with_rail(self, rail: str, carrier: str) -> "FewPhotonState":
        """New state with an extra (empty) rail appended."""
        if rail in self.rails:
            raise ValueError(f"rail {rail!r} already exists")
        carriers = dict(self.carriers)
        carriers[rail] = carrier
        return replace(self, rails=self.rails + (rail,), carriers=carriers,
                       one_photon=dict(self.one_photon),
                       two_photon=dict(self.two_photon))

    def _pruned(self) -> "FewPhotonState":
        ones = {r: v for r, v in self.one_photon.items()
                if self.norm1_sq(v) > _PRUNE_SQ}
        twos = {k: v for k, v in self.two_photon.items()
                if self.norm2_sq(v) > _PRUNE_SQ}
        return replace(self, one_photon=ones, two_photon=twos)


def one_photon_state(grid: SpectralGrid, rails, rail: str, amp: OnePhotonAmp,
                     carriers=None) -> FewPhotonState:
    """Single photon with spectral amplitude ``amp`` on ``rail``."""
    grid.require_same(amp.grid)
    state = FewPhotonState.vacuum(grid, rails, carriers)
    state.rail_index(rail)
    state.vacuum_amp = 0.0j
    state.one_photon[rail] = amp.values.astype(complex)
    return state


def two_photon_state(grid: SpectralGrid, rails, rail_a: str, rail_b: str,
                     values: np.ndarray, carriers=None) -> FewPhotonState:
    """Photon pair on (rail_a, rail_b); axis 0 of ``values`` belongs to rail_a."""
    state = FewPhotonState.vacuum(grid, rails, carriers)
    if rail_a == rail_b:
        require_symmetric(values)
    state.vacuum_amp = 0.0j
    key = state.pair_key(rail_a, rail_b)
    state.two_photon[key] = values if key == (rail_a, rail_b) else values.T
    return state


def _sym(arr: np.ndarray) -> np.ndarray:
    return 0.5 * (arr + arr.T)


def _acc(store: dict, key, arr: np.ndarray) -> None:
    if key in store:
        store[key] = store[key] + arr
    else:
        store[key] = arr


def beamsplitter(state: FewPhotonState, rail_i: str, rail_j: str,
                 theta: float, phi: float = 0.0) -> FewPhotonState:
    """Mix two rails: a_i -> cos(t) a_i + e^{i phi} sin(t) a_j and
    a_j -> -e^{-i phi} sin(t) a_i + cos(t) a_j, frequency-pointwise.

    The lift to photon pairs carries the bosonic sqrt(2) factors between
    same-rail and cross-rail amplitudes.  Rails must share a carrier tag;
    interference between original and sum-frequency carriers is unphysical.
    """
    if rail_i == rail_j:
        raise ValueError("beamsplitter needs two distinct rails")
    state.rail_index(rail_i)
    state.rail_index(rail_j)
    if state.carriers[rail_i] != state.carriers[rail_j]:
        raise ValueError(
            f"carrier mismatch: {rail_i!r} is {state.carriers[rail_i]!r}, "
            f"{rail_j!r} is {state.carriers[rail_j]!r}"
        )
    c, s = np.cos(theta), np.sin(theta)
    m_ii, m_ij = complex(c), np.exp(1j * phi) * s
    m_ji, m_jj = -np.exp(-1j * phi) * s, complex(c)
    # photon on rail r ends up on rail d with coefficient dest[r][d]
    dest = {rail_i: ((rail_i, m_ii), (rail_j, m_ji)),
            rail_j: ((rail_i, m_ij), (rail_j, m_jj))}

    ones = {r: v for r, v in state.one_photon.items()
            if r not in (rail_i, rail_j)}
    vi = state.one_photon.get(rail_i)
    vj = state.one_photon.get(rail_j)
    if vi is not None or vj is not None:
        zero = np.zeros(state.grid.n_points, dtype=complex)
        vi = zero if vi is None else vi
        vj = zero if vj is None else vj
        ones[rail_i] = m_ii * vi + m_ij * vj
        ones[rail_j] = m_ji * vi + m_jj * vj

    twos: dict = {}
    key_ii = (rail_i, rail_i)
    key_jj = (rail_j, rail_j)
    key_x = state.pair_key(rail_i, rail_j)
    aa = state.two_photon.get(key_ii)
    bb = state.two_photon.get(key_jj)
    xc = state.two_photon.get(key_x)
    if xc is not None and key_x != (rail_i, rail_j):
        xc = xc.T  # orient axis 0 onto rail_i
    if aa is not None or bb is not None or xc is not None:
        n = state.grid.n_points
        zero2 = np.zeros((n, n), dtype=complex)
        a = zero2 if aa is None else aa
        b = zero2 if bb is None else bb
        x = zero2 if xc is None else xc
        xs = _sym(x)
        rt2 = np.sqrt(2.0)
        new_ii = m_ii**2 * a + m_ij**2 * b + rt2 * m_ii * m_ij * xs
        new_jj = m_ji**2 * a + m_jj**2 * b + rt2 * m_ji * m_jj * xs
        new_x = (rt2 * m_ii * m_ji * a + rt2 * m_ij * m_jj * b
                 + m_ii * m_jj * x + m_ji * m_ij * x.T)
        _acc(twos, key_ii, new_ii)
        _acc(twos, key_jj, new_jj)
        _acc(twos, key_x, new_x if key_x == (rail_i, rail_j) else new_x.T)

    for (ra, rb), amp in state.two_photon.items():
        touched_a = ra in (rail_i, rail_j)
        touched_b = rb in (rail_i, rail_j)
        if touched_a and touched_b:
            continue  # handled above
        if not touched_a and not touched_b:
            _acc(twos, (ra, rb), amp)
            continue
        moving, other, axis = (ra, rb, 0) if touched_a else (rb, ra, 1)
        for d, coef in dest[moving]:
            contrib = coef * amp
            axes = (d, other) if axis == 0 else (other, d)
            key = state.pair_key(*axes)
            _acc(twos, key, contrib if key == axes else contrib.T)

    out = replace(state, one_photon=ones, two_photon=twos)
    return out._pruned()


def loss_channel(state: FewPhotonState, rail: str,
                 transmission: float) -> FewPhotonState:
    """Per-photon amplitude transmission on one rail; deficit goes to lost_mass."""
    if not 0.0 <= transmission <= 1.0:
        raise ValueError(f"transmission must be in [0, 1], got {transmission}")
    state.rail_index(rail)
    t = transmission
    lost = state.lost_mass
    ones = dict(state.one_photon)
    if rail in ones:
        lost += (1.0 - t**2) * state.norm1_sq(ones[rail])
        ones[rail] = t * ones[rail]
    twos = dict(state.two_photon)
    for key, amp in state.two_photon.items():
        n_on_rail = (key[0] == rail) + (key[1] == rail)
        if n_on_rail == 0:
            continue
        factor = t**n_on_rail
        lost += (1.0 - factor**2) * state.norm2_sq(amp)
        twos[key] = factor * amp
    return replace(state, one_photon=ones, two_photon=twos,
                   lost_mass=lost)._pruned()


def apply_tls(state: FewPhotonState, rail: str, p: TlsParams) -> FewPhotonState:
    """Scatter every photon on ``rail`` off a two-level emitter.

    Single photons (and single-rail factors of cross-rail pairs) receive the
    transfer coefficient pointwise; a same-rail photon pair goes through the
    full nonlinear two-photon map.  Norm deficits accrue to lost_mass.
    """
    state.rail_index(rail)
    t = transfer_coeff(p, state.grid.samples)
    lost = state.lost_mass
    ones = dict(state.one_photon)
    if rail in ones:
        before = state.norm1_sq(ones[rail])
        ones[rail] = ones[rail] * t
        lost += before - state.norm1_sq(ones[rail])
    twos = dict(state.two_photon)
    for key, amp in state.two_photon.items():
        n_on_rail = (key[0] == rail) + (key[1] == rail)
        if n_on_rail == 0:
            continue
        before = state.norm2_sq(amp)
        if n_on_rail == 2:
            new = scatter_two(p, TwoPhotonAmp(state.grid, amp)).values
        elif key[0] == rail:
            new = t[:, None] * amp
        else:
            new = amp * t[None, :]
        twos[key] = new
        lost += before - state.norm2_sq(new)
    # The two-photon map is unitary only up to quadrature error, which can
    # push the accrued deficit slightly negative; lost_mass stays a probability.
    lost = max(lost, 0.0)
    return replace(state, one_photon=ones, two_photon=twos,
                   lost_mass=lost)._pruned()


def project_detection(state: FewPhotonState, pattern: dict) -> float:
    """Probability of a photon-count pattern, integrated over spectra.

    ``pattern`` maps rail labels to counts; omitted rails mean zero photons.
    """
    counts = {r: c for r, c in pattern.items() if c != 0}
    for r, c in counts.items():
        state.rail_index(r)
        if c not in (1, 2):
            raise ValueError(f"photon counts must be 0, 1 or 2, got {c}")
    total = sum(counts.values())
    if total > 2:
        raise ValueError("patterns hold at most two photons")
    if total == 0:
        return abs(state.vacuum_amp) ** 2
    if total == 1:
        (rail,) = counts
        v = state.one_photon.get(rail)
        return 0.0 if v is None else state.norm1_sq(v)
    if len(counts) == 1:
        (rail,) = counts
        amp = state.two_photon.get((rail, rail))
    else:
        ra, rb = counts
        amp = state.two_photon.get(state.pair_key(ra, rb))
    return 0.0 if amp is None else state.norm2_sq(amp)


def overlap(state: FewPhotonState, target: FewPhotonState) -> complex:
    """Coherent amplitude <target|state> over the surviving components.

    Components on rails the target does not carry contribute zero (the
    target holds no amplitude there).
    """
    state.grid.require_same(target.grid)
    w = state.grid.weights
    total = np.conj(target.vacuum_amp) * state.vacuum_amp
    for r, v in state.one_photon.items():
        if r not in target.rails:
            continue
        tv = target.one_photon.get(r)
        if tv is not None:
            total += np.sum(w * np.conj(tv) * v)
    for key, amp in state.two_photon.items():
        if key[0] not in target.rails or key[1] not in target.rails:
            continue
        tkey = target.pair_key(key[0], key[1])
        tamp = target.two_photon.get(tkey)
        if tamp is not None:
            if tkey != key:
                tamp = tamp.T
            total += w @ (np.conj(tamp) * amp) @ w
    return complex(total)


def fidelity(state: FewPhotonState, target: FewPhotonState) -> float:
    """|<target|state>|^2 normalized over the not-lost subspace.

    Loss is reported separately through ``state.lost_mass``; two states that
    agree on their surviving components have fidelity 1 regardless of it.
    """
    ns = state.surviving_norm_sq()
    nt = target.surviving_norm_sq()
    if ns == 0.0 or nt == 0.0:
        raise ValueError("fidelity of a fully lost state is undefined")
    return abs(overlap(state, target)) ** 2 / (ns * nt)
