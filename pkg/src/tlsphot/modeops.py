"""Active Gaussian operations: mode-selective frequency conversion and memory.

The sum-frequency pulse gate is modeled at the transfer-function level as a
beamsplitter in mode space: the component of each photon living in the pump
mode converts to a dedicated sum-frequency rail with amplitude
sqrt(efficiency); everything orthogonal to the pump passes untouched.  For a
two-photon amplitude the conversion is photon-wise, which splits it into a
both-converted piece, a single-converted piece and an untouched remainder.

The idealization the sorting argument relies on (``ideal=True``, the
default) keeps everything
except the both-converted piece on the signal rail, which realizes perfect
sorting at the matching point.  The physical photon-wise model is available
with ``ideal=False``; its single-converted branch leaves the computational
subspace and is either kept as a cross-carrier pair or discarded into
lost_mass, and :func:`leakage_metric` quantifies it.

The gradient-echo memory inverts pulse shapes, F(delta) -> F(-delta); the
global delay phase it also imparts is dropped as physically irrelevant.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .grid import OnePhotonAmp, TwoPhotonAmp
from .states import FewPhotonState, _acc

SUM_SUFFIX = "@sum"


def sum_rail(rail: str) -> str:
    """Label of the sum-frequency rail fed by the pulse gate on ``rail``."""
    return rail + SUM_SUFFIX


@dataclass(frozen=True)
class PulseGateSpec:
    """Pulse-gate configuration: extracted mode and conversion efficiency."""

    pump_mode: OnePhotonAmp
    efficiency: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.efficiency <= 1.0:
            raise ValueError(
                f"efficiency must be in [0, 1], got {self.efficiency}"
            )
        if abs(self.pump_mode.norm_sq() - 1.0) > 1e-9:
            raise ValueError("pump mode must be normalized")


def sfg_extract(state: FewPhotonState, rail: str, gate: PulseGateSpec,
                ideal: bool = True,
                keep_single_converted: bool = False) -> FewPhotonState:
    """Extract the pump-mode content of ``rail`` onto its sum-frequency rail.

    The ancilla rail is created (or reused, if present and empty).  With
    ``ideal=False`` the photon-wise single-converted branch of a same-rail
    pair is produced explicitly; by default it is discarded into lost_mass
    because one original-frequency photon plus one sum-frequency photon is
    outside the computational subspace of every circuit built here.
    """
    state.grid.require_same(gate.pump_mode.grid)
    state.rail_index(rail)
    anc = sum_rail(rail)
    if anc in state.rails:
        if (anc in state.one_photon
                or any(anc in k for k in state.two_photon)):
            raise ValueError(f"sum-frequency rail {anc!r} is not empty")
        out = state
    else:
        out = state.with_rail(anc, "sum")

    w = state.grid.weights
    pump = gate.pump_mode.values
    u = w * np.conj(pump)
    kappa = np.sqrt(gate.efficiency)
    rho = np.sqrt(1.0 - gate.efficiency)
    rt2 = np.sqrt(2.0)

    ones = dict(out.one_photon)
    twos = dict(out.two_photon)
    lost = out.lost_mass

    v = ones.get(rail)
    if v is not None:
        cp = np.sum(u * v)
        ones[rail] = v - (1.0 - rho) * cp * pump
        _acc(ones, anc, kappa * cp * pump)

    for key, amp in out.two_photon.items():
        on_rail = (key[0] == rail) + (key[1] == rail)
        if on_rail == 0:
            continue
        if on_rail == 2:
            c_bb = complex(u @ amp @ u)
            pp = np.outer(pump, pump)
            _acc(twos, (anc, anc), kappa**2 * c_bb * pp)
            if ideal:
                twos[key] = amp - (1.0 - rho**2) * c_bb * pp
                if rho > 0.0 and abs(c_bb) > 0.0:
                    cross = rt2 * rho * kappa * c_bb * pp
                    _acc(twos, out.pair_key(rail, anc),
                         cross if out.pair_key(rail, anc) == (rail, anc)
                         else cross.T)
            else:
                g1 = u @ amp
                g_perp = g1 - c_bb * pump
                qq = (amp - np.outer(pump, g1) - np.outer(g1, pump)
                      + c_bb * pp)
                single_sym = np.outer(pump, g_perp) + np.outer(g_perp, pump)
                twos[key] = qq + rho * single_sym + rho**2 * c_bb * pp
                cross = rt2 * kappa * (np.outer(g_perp, pump)
                                       + rho * c_bb * pp)
                if keep_single_converted:
                    ckey = out.pair_key(rail, anc)
                    _acc(twos, ckey,
                         cross if ckey == (rail, anc) else cross.T)
                else:
                    lost += out.norm2_sq(cross)
        else:
            # cross pair: convert the pump part of the photon on `rail`
            if key[0] == rail:
                g_other = u @ amp
                pump_part = np.outer(pump, g_other)
                moved = kappa * pump_part  # axes (anc, other)
                axes = (anc, key[1])
            else:
                g_other = amp @ u
                pump_part = np.outer(g_other, pump)
                moved = kappa * pump_part  # axes (other, anc)
                axes = (key[0], anc)
            twos[key] = amp - (1.0 - rho) * pump_part
            ckey = out.pair_key(*axes)
            _acc(twos, ckey, moved if ckey == axes else moved.T)

    result = replace(out, one_photon=ones, two_photon=twos, lost_mass=lost)
    return result._pruned()


def sfg_reverse(state: FewPhotonState, rail: str,
                gate: PulseGateSpec) -> FewPhotonState:
    """Convert pump-mode content back from the sum-frequency rail to ``rail``.

    Inverse of :func:`sfg_extract` on the pump-mode subspace (exactly so at
    unit efficiency).  Content on the ancilla that is not in the pump mode
    violates the gate contract and raises.
    """
    anc = sum_rail(rail)
    if anc not in state.rails:
        raise ValueError(f"no sum-frequency rail for {rail!r}")
    w = state.grid.weights
    pump = gate.pump_mode.values
    u = w * np.conj(pump)
    kappa = np.sqrt(gate.efficiency)
    rho = np.sqrt(1.0 - gate.efficiency)

    ones = dict(state.one_photon)
    twos = dict(state.two_photon)

    v = ones.pop(anc, None)
    if v is not None:
        cp = np.sum(u * v)
        residual = state.norm1_sq(v - cp * pump)
        if residual > 1e-12:
            raise ValueError(
                f"ancilla photon is not in the pump mode "
                f"(orthogonal weight {residual:.3e})"
            )
        _acc(ones, rail, kappa * cp * pump)
        if rho > 0.0:
            ones[anc] = rho * cp * pump

    for key in list(twos):
        n_anc = (key[0] == anc) + (key[1] == anc)
        if n_anc == 0:
            continue
        amp = twos.pop(key)
        if n_anc == 2:
            c_bb = complex(u @ amp @ u)
            pp = np.outer(pump, pump)
            residual = state.norm2_sq(amp - c_bb * pp)
            if residual > 1e-12:
                raise ValueError("ancilla pair is not in the pump mode")
            _acc(twos, (rail, rail), kappa**2 * c_bb * pp)
            if rho > 0.0:
                _acc(twos, key, rho**2 * c_bb * pp)
                cross = np.sqrt(2.0) * rho * kappa * c_bb * pp
                ckey = state.pair_key(rail, anc)
                _acc(twos, ckey, cross if ckey == (rail, anc) else cross.T)
        else:
            if key[0] == anc:
                g_other = u @ amp
                pump_part = np.outer(pump, g_other)  # axes (anc, other)
                axes = (rail, key[1])
            else:
                g_other = amp @ u
                pump_part = np.outer(g_other, pump)  # axes (other, anc)
                axes = (key[0], rail)
            residual = state.norm2_sq(amp - pump_part)
            if residual > 1e-12:
                raise ValueError(
                    "ancilla photon of a cross pair is not in the pump mode"
                )
            moved = kappa * pump_part
            ckey = state.pair_key(*axes)
            _acc(twos, ckey, moved if ckey == axes else moved.T)
            if rho > 0.0:
                _acc(twos, key, rho * pump_part)

    result = replace(state, one_photon=ones, two_photon=twos)
    return result._pruned()


def gem_invert(state: FewPhotonState, rail=None) -> FewPhotonState:
    """Invert pulse shapes, F(delta) -> F(-delta), on selected rails.

    ``rail`` may be a label, an iterable of labels, or None for every rail
    (the single-rail chain of the sign gate).  Cross-rail pairs flip only the
    axes belonging to inverted rails: a memory in one interferometer arm does
    not touch the spectator photon.
    """
    if rail is None:
        selected = set(state.rails)
    elif isinstance(rail, str):
        selected = {rail}
    else:
        selected = set(rail)
    for r in selected:
        state.rail_index(r)

    ones = {}
    for r, v in state.one_photon.items():
        ones[r] = v[::-1].copy() if r in selected else v
    twos = {}
    for key, amp in state.two_photon.items():
        flip0 = key[0] in selected
        flip1 = key[1] in selected
        if flip0 and flip1:
            twos[key] = amp[::-1, ::-1].copy()
        elif flip0:
            twos[key] = amp[::-1, :].copy()
        elif flip1:
            twos[key] = amp[:, ::-1].copy()
        else:
            twos[key] = amp
    return replace(state, one_photon=ones, two_photon=twos)


def component_phase_loss(state: FewPhotonState, rail: str, photons: int,
                         phase: float,
                         transmission: float = 1.0) -> FewPhotonState:
    """Phase and per-photon loss on the components with ``photons`` photons
    on ``rail``.

    The selected amplitudes pick up e^{i phase} * transmission**photons; the
    removed probability goes to lost_mass.
    """
    if not 0.0 <= transmission <= 1.0:
        raise ValueError(f"transmission must be in [0, 1], got {transmission}")
    if photons not in (1, 2):
        raise ValueError(f"photons must be 1 or 2, got {photons}")
    state.rail_index(rail)
    factor = np.exp(1j * phase) * transmission**photons
    mag_sq = transmission ** (2 * photons)

    ones = dict(state.one_photon)
    twos = dict(state.two_photon)
    lost = state.lost_mass
    if photons == 1 and rail in ones:
        lost += (1.0 - mag_sq) * state.norm1_sq(ones[rail])
        ones[rail] = factor * ones[rail]
    for key, amp in state.two_photon.items():
        if (key[0] == rail) + (key[1] == rail) != photons:
            continue
        lost += (1.0 - mag_sq) * state.norm2_sq(amp)
        twos[key] = factor * amp
    return replace(state, one_photon=ones, two_photon=twos,
                   lost_mass=lost)._pruned()


def leakage_metric(gate: PulseGateSpec, psi: TwoPhotonAmp) -> float:
    """Norm of the single-photon pump-mode content of a two-photon amplitude.

    This is the part a photon-wise pulse gate converts into one sum-frequency
    photon plus one unconverted photon; the branch probability is twice its
    square.  The idealized sorter assumes it vanishes, which does not hold
    for the matched orthogonal pair state, so circuits report it rather
    than relying on it.
    """
    psi.grid.require_same(gate.pump_mode.grid)
    w = psi.grid.weights
    pump = gate.pump_mode.values
    u = w * np.conj(pump)
    g1 = u @ psi.values
    g_perp = g1 - np.sum(u * g1) * pump
    return float(np.sqrt(np.sum(w * np.abs(g_perp) ** 2)))
