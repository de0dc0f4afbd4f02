"""Few-photon spectral simulator of a chiral two-level scatterer, with the
active Gaussian operations (mode-selective frequency conversion, memory-based
pulse inversion) and linear optics needed to build a photon sorter, a Bell
analyzer, a nonlinear-sign gate and a controlled-sign gate, lossy emitters
included.
"""

from .grid import (
    GridMismatchError,
    OnePhotonAmp,
    PulseShape,
    ResolutionError,
    SpectralGrid,
    TwoPhotonAmp,
    inner1,
    inner2,
    make_pulse,
    normalize,
    product_state,
    time_reverse,
)
from .scatter import (
    ScatterOneResult,
    ScatterTwoResult,
    TlsParams,
    bound_amplitude,
    decompose,
    epsilon1_analytic,
    epsilon_b_analytic,
    epsilon_b_numeric,
    eta_analytic,
    eta_numeric,
    matching_sigma,
    product_image,
    s_coeff,
    scatter_one,
    scatter_two,
    transfer_coeff,
)
from .states import (
    FewPhotonState,
    apply_tls,
    beamsplitter,
    fidelity,
    loss_channel,
    one_photon_state,
    overlap,
    project_detection,
    two_photon_state,
)
from .modeops import (
    PulseGateSpec,
    component_phase_loss,
    gem_invert,
    leakage_metric,
    sfg_extract,
    sfg_reverse,
    sum_rail,
)
from .circuits import (
    BELL_PATTERNS,
    CircuitReport,
    RAILS4,
    bell_analyzer,
    bell_state,
    cz_gate,
    identify_bell_state,
    logical_amplitudes,
    logical_state,
    make_pump,
    ns_gate,
    photon_sorter,
    success_curves,
)
from .sweeps import SweepSpec, fig1b_data, fig3_data, loss_curves
from .roots import NoCrossingError

__version__ = "0.1.0"
