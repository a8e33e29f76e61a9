"""Spectral analysis of two-particle discrete Schroedinger operators on Z^3.

Fiber operators H(k) = H0(k) - V are realized exactly on finite momentum
grids; band geometry is evaluated in closed form; eigenvalues outside the
band are counted both directly and through the Birman-Schwinger operator;
zero-energy thresholds are classified as resonances or zero eigenvalues.
"""

from .analysis import (
    BSCheck,
    CheksizReport,
    ContinuityReport,
    CriticalCoupling,
    ExistenceReport,
    NeravenReport,
    PositivityReport,
    ThresholdCount,
    ThresholdReport,
    ZSchedule,
    bs_check,
    continuity_exponent,
    critical_coupling,
    positivity_check,
    resonance_analysis,
    threshold_count,
    verify_cheksiz,
    verify_existence,
    verify_neraven,
)
from .dispersion import (
    BandGeometry,
    band_geometry,
    degenerate_directions,
    dispersion,
    dispersion_on_grid,
    eps,
)
from .model import (
    MassPair,
    MomentumGrid,
    Potential,
    Quasimomentum,
    RelativeMomentum,
    load_potential,
    momentum_kernel,
    save_potential,
)
from .operators import (
    GridOperator,
    bs_support_eigenvalues,
    build_bs,
    build_h,
    build_h0,
    build_v,
    build_vhalf,
    potential_spectrum,
)
from .spectral import (
    CountingCheck,
    SpectralReport,
    count_above,
    count_below,
    default_tie_tol,
    eig_sym,
    spectral_report,
    spectral_width,
    verify_counting_theorem,
)

__version__ = "0.1.0"
