from .chain import (
    DEGENERACY_TOLERANCE,
    ChainRates,
    ClosedFormCoefficients,
    chain_from_rates,
    chain_with_ceiling,
    closed_form_coefficients,
    closed_form_pm,
    mean_switch_time_chain,
    partial_fraction_residual,
    reduce_chain,
    series_off_voltage,
    switching_time_cdf,
    switching_time_pdf,
    variance_switch_time_chain,
)
from .generator import DEFAULT_MAX_DEVICES, GeneratorAssembler, GeneratorMatrix, build_generator
from .integration import (
    absorption_density,
    closed_form_solution,
    group_by_on_count,
    integrate_master,
    marginal_resistance,
    time_grid,
    total_probability,
)
from .parallel import harmonic_number, parallel_all_on, parallel_mean_time, single_device_solution
from .solution_io import read_solution, write_solution
from .two_series import memristor1_stats, two_series_moments, two_series_rates, two_series_solution
