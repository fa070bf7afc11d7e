"""s-wave scattering off an attractive square well.

Closed-form cross sections, time delay, traversal length and trapping
probability; a continuous phase branch; S-matrix poles in complex k;
peak refinement into per-resonance records; and the reference studies
(seven-well summary table, width scaling, strength sweep, figure data).
"""

from .core import (
    K_MIN,
    NumericalError,
    PotentialWell,
    RadiusExtendedSample,
    ScatterSample,
    cross_section,
    internal_momentum,
    make_well,
    phase_full,
    phase_resonant,
    phase_resonant_mod_pi,
    phase_resonant_principal,
    radius_extended,
    reaction_function,
    relative_intensity,
    s_matrix,
    scatter_sample,
    sigma_peak_positions,
    sigma_phi,
    sigma_phi_complement,
    sigma_theta,
    time_delay,
    trapping_probability,
    trapping_probability_quadrature,
    traversal_length,
    unwrap_phases,
    wavefunction,
    well_from_alpha,
)
from .experiments import (
    REFERENCE_WELLS,
    FigureData,
    ScalingReport,
    SweepPoint,
    Table1Row,
    alpha_sweep,
    figure_data,
    first_resonance,
    scaling_check,
    table1,
)
from .peaks import (
    KGrid,
    PeakHit,
    ResonanceRecord,
    first_ell_peak,
    golden_max,
    local_maxima,
    resonance_report,
    sample_grid,
)
from .poles import (
    PoleK,
    PoleSearchConfig,
    bound_poles,
    bound_states,
    denominator,
    denominator_prime,
    find_poles,
)

__version__ = "0.1.0"

__all__ = [
    "K_MIN",
    "NumericalError",
    "PotentialWell",
    "ScatterSample",
    "RadiusExtendedSample",
    "KGrid",
    "PeakHit",
    "ResonanceRecord",
    "PoleK",
    "PoleSearchConfig",
    "Table1Row",
    "SweepPoint",
    "ScalingReport",
    "FigureData",
    "REFERENCE_WELLS",
    "make_well",
    "well_from_alpha",
    "internal_momentum",
    "relative_intensity",
    "phase_resonant",
    "phase_resonant_principal",
    "phase_resonant_mod_pi",
    "phase_full",
    "unwrap_phases",
    "traversal_length",
    "time_delay",
    "trapping_probability",
    "trapping_probability_quadrature",
    "sigma_phi",
    "sigma_phi_complement",
    "sigma_theta",
    "cross_section",
    "reaction_function",
    "s_matrix",
    "scatter_sample",
    "wavefunction",
    "radius_extended",
    "sigma_peak_positions",
    "denominator",
    "denominator_prime",
    "find_poles",
    "bound_states",
    "bound_poles",
    "sample_grid",
    "golden_max",
    "local_maxima",
    "first_ell_peak",
    "resonance_report",
    "first_resonance",
    "table1",
    "alpha_sweep",
    "scaling_check",
    "figure_data",
]
