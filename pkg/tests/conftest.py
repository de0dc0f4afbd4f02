"""Shared fixtures: emitter parameters, matched pulses, cached circuit runs.

Circuit-level tests run on a reduced grid (delta_max 60, n 1201) that keeps
two-photon arrays at ~22 MB; quadrature errors there sit near 1e-6, far below
every asserted tolerance.  Expensive end-to-end runs are session-scoped so
the unit tests and the acceptance suite share them.
"""

import numpy as np
import pytest

import tlsphot as tp
from tlsphot.states import FewPhotonState


@pytest.fixture(scope="session")
def tls0():
    return tp.TlsParams()


@pytest.fixture(scope="session")
def tls95():
    return tp.TlsParams.from_beta(0.95)


@pytest.fixture(scope="session")
def sigma_up0(tls0):
    return tp.matching_sigma(tls0, "upper")


@pytest.fixture(scope="session")
def sigma_up95(tls95):
    return tp.matching_sigma(tls95, "upper")


@pytest.fixture(scope="session")
def circuit_grid():
    return tp.SpectralGrid(60.0, 1201)


@pytest.fixture(scope="session")
def pulse0(circuit_grid, sigma_up0):
    return tp.make_pulse(tp.PulseShape("lorentzian", sigma_up0), circuit_grid)


@pytest.fixture(scope="session")
def pulse95(circuit_grid, sigma_up95):
    return tp.make_pulse(tp.PulseShape("lorentzian", sigma_up95), circuit_grid)


def ns_input(grid, pulse, two_photon_sign=1.0):
    """(|0> + |1_f> + sign |2_f>)/sqrt(3) on a single rail."""
    amp = 1.0 / np.sqrt(3.0)
    state = FewPhotonState.vacuum(grid, ("sig",))
    state.vacuum_amp = amp
    state.one_photon["sig"] = amp * pulse.values
    state.two_photon[("sig", "sig")] = (two_photon_sign * amp
                                        * np.outer(pulse.values, pulse.values))
    return state


@pytest.fixture(scope="session")
def bell_reports0(circuit_grid, tls0, pulse0):
    return {which: tp.bell_analyzer(tp.bell_state(circuit_grid, pulse0, which),
                                    tls0, pulse0)
            for which in ("psi+", "psi-", "phi+", "phi-")}


@pytest.fixture(scope="session")
def bell_reports95(circuit_grid, tls95, pulse95):
    return {which: tp.bell_analyzer(tp.bell_state(circuit_grid, pulse95, which),
                                    tls95, pulse95)
            for which in ("psi+", "psi-", "phi+", "phi-")}


@pytest.fixture(scope="session")
def cz_basis_reports0(circuit_grid, tls0, pulse0):
    reports = {}
    for basis in tp.circuits.LOGICAL_BASIS:
        state = tp.logical_state(circuit_grid, pulse0, {basis: 1.0})
        reports[basis] = tp.cz_gate(state, tls0, pulse0)
    return reports


@pytest.fixture(scope="session")
def cz_super_report0(circuit_grid, tls0, pulse0):
    state = tp.logical_state(circuit_grid, pulse0,
                             {b: 0.5 for b in tp.circuits.LOGICAL_BASIS})
    return tp.cz_gate(state, tls0, pulse0)


@pytest.fixture(scope="session")
def cz_super_report95(circuit_grid, tls95, pulse95):
    state = tp.logical_state(circuit_grid, pulse95,
                             {b: 0.5 for b in tp.circuits.LOGICAL_BASIS})
    return tp.cz_gate(state, tls95, pulse95, compensate=True)


@pytest.fixture(scope="session")
def cz_super_report95_skewed(circuit_grid, tls95, pulse95):
    state = tp.logical_state(circuit_grid, pulse95,
                             {b: 0.5 for b in tp.circuits.LOGICAL_BASIS})
    return tp.cz_gate(state, tls95, pulse95, compensate=False)
