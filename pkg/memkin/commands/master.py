"""
master.py
---------
`memkin master`: occupation probabilities over time.

Methods:
- closed-form: the reduced chain of identical series or parallel devices
- ode: explicit integration over the full 2^N state space
- auto: the closed form when the network reduces and its exit rates are
  distinct, otherwise integration, on the reduced chain when there is one
"""

import logging
from typing import Dict, Optional, Tuple

import xarray as xr

from memkin.errors import DegeneracyError, DomainError, NotReducibleError
from memkin.exports import master_dataframe, write_dataframe
from memkin.master import (
    ChainRates,
    GeneratorAssembler,
    absorption_density,
    chain_with_ceiling,
    closed_form_solution,
    integrate_master,
    marginal_resistance,
    reduce_chain,
    time_grid,
    write_solution,
)
from memkin.montecarlo import default_horizon
from memkin.network import is_dc
from memkin.report import display_profiling_info, profiled
from memkin.settings import MemkinConfig

from .scenario import Scenario

METHODS = ("auto", "closed-form", "ode")


def _chain(topology, models) -> Optional[ChainRates]:
    try:
        return reduce_chain(topology, models)
    except NotReducibleError:
        return None


def solve_scenario(
    scenario: Scenario, config: MemkinConfig
) -> Tuple[xr.Dataset, xr.DataArray, str]:
    """
    Solution, all-ON density and the method used.

    Raises:
    - NotReducibleError: closed-form requested for a network without a chain
    - DegeneracyError: closed-form requested for coinciding exit rates
    - AccuracyError, CapacityError: integration failures
    """
    if scenario.method not in METHODS:
        raise DomainError(f"method must be one of {', '.join(METHODS)}, got {scenario.method!r}")
    solver = config["solver"]
    models = scenario.device_models()
    if scenario.spread is not None:
        logging.warning("The master equation ignores parameter spreads; using the base model")

    t_end = scenario.t_end
    if t_end is None:
        t_end = default_horizon(scenario.topology, models, None, scenario.t_end_factor)
    times = time_grid(t_end, scenario.steps)
    chain = _chain(scenario.topology, models)
    if chain is not None and solver["rate_ceiling"] is not None:
        chain = chain_with_ceiling(chain, solver["rate_ceiling"])
    ode_options = {
        "method": solver["method"],
        "rtol": solver["rtol"],
        "atol": solver["atol"],
        "max_rhs_evaluations": solver["max_rhs_evaluations"],
    }

    if scenario.method == "closed-form" and chain is None:
        raise NotReducibleError(
            "the closed form needs identical series or parallel devices under DC drive"
        )
    if scenario.method in ("closed-form", "auto") and chain is not None:
        try:
            solution = closed_form_solution(chain, times, solver["degeneracy_tolerance"])
            return solution, absorption_density(chain, solution), "closed-form"
        except DegeneracyError:
            if scenario.method == "closed-form":
                raise
            logging.info("Exit rates coincide; integrating the reduced chain instead")
        solution = integrate_master(chain, None, t_end, scenario.steps, **ode_options)
        return solution, absorption_density(chain, solution), "ode-reduced"

    assembler = GeneratorAssembler(
        scenario.topology, models, solver["max_devices"], solver["rate_ceiling"]
    )
    solution = integrate_master(
        scenario.topology,
        None,
        t_end,
        scenario.steps,
        models=models,
        rate_ceiling=solver["rate_ceiling"],
        max_devices=solver["max_devices"],
        **ode_options,
    )
    source = assembler.at(0.0) if is_dc(scenario.topology) else assembler
    return solution, absorption_density(source, solution), "ode"


def run_master(scenario: Scenario, config: MemkinConfig) -> xr.Dataset:
    """Solve, write master.csv (and the solution file when asked) and print a summary."""
    profiling_info: Dict = {}
    folder = scenario.output_folder

    with profiled("master equation", profiling_info, scenario.profile):
        solution, density, method = solve_scenario(scenario, config)
    models = scenario.device_models()
    resistances = [marginal_resistance(solution, i, model) for i, model in enumerate(models)]

    path = write_dataframe(master_dataframe(solution, density, resistances), folder, "master.csv")
    print(f"Solved with {method} up to t={float(solution.time[-1]):.6g} s; wrote: {path}")
    if scenario.save_solution is not None:
        saved = write_solution(solution, folder, "master_solution", scenario.save_solution)
        print(f"Saved solution to: {saved}")

    display_profiling_info(profiling_info, scenario.profile)
    return solution
