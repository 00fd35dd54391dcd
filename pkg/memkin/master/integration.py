"""
integration.py
--------------
Transient solution of the master equation dp/dt = Q^T p.

Solutions are xarray Datasets with a "probability" variable. The full
representation is indexed by (time, state) and carries each state's on-count
as a coordinate. The reduced representation is indexed by (time, level) and
holds the per-state probability p_m of a single state with m devices ON,
together with the binomial multiplicity C(N, m) of the level.

Functions:
- `integrate_master`: explicit Runge-Kutta integration from a generator, a
  topology or a reduced chain
- `closed_form_solution`: reduced solution from the closed form
- `group_by_on_count`, `total_probability`, `marginal_resistance`, `absorption_density`
"""

import logging
from math import comb
from typing import Optional, Union

import numpy as np
import xarray as xr
from scipy import sparse
from scipy.integrate import solve_ivp

from memkin.errors import AccuracyError, DomainError
from memkin.network import initial_state, is_dc, on_count, resolve_models
from memkin.utils import add_metadata_to_dataset

from .chain import DEGENERACY_TOLERANCE, ChainRates, chain_with_ceiling, closed_form_pm
from .generator import DEFAULT_MAX_DEVICES, GeneratorAssembler, GeneratorMatrix

PROBABILITY_EPSILON = 1e-9
NORMALIZATION_TOLERANCE = 1e-8
DEFAULT_MAX_RHS_EVALUATIONS = 2_000_000


class _BudgetExhausted(Exception):
    pass


def time_grid(t_end: float, steps: int) -> np.ndarray:
    if not np.isfinite(t_end) or t_end <= 0:
        raise DomainError(f"t_end must be positive and finite, got {t_end}")
    if steps < 1:
        raise DomainError(f"steps must be at least 1, got {steps}")
    return np.linspace(0.0, t_end, steps + 1)


def _multiplicities(n: int) -> np.ndarray:
    return np.array([comb(n, m) for m in range(n + 1)], dtype=float)


def _probability_vector(p_init, dimension: int, default_index: int) -> np.ndarray:
    if p_init is None:
        p_init = default_index
    if isinstance(p_init, (int, np.integer)):
        if not 0 <= p_init < dimension:
            raise DomainError(f"initial state {p_init} outside 0..{dimension - 1}")
        p = np.zeros(dimension)
        p[p_init] = 1.0
        return p
    p = np.asarray(p_init, dtype=float)
    if p.shape != (dimension,):
        raise DomainError(f"initial distribution has shape {p.shape}, expected ({dimension},)")
    if not np.all(np.isfinite(p)) or np.any(p < -PROBABILITY_EPSILON):
        raise DomainError("initial distribution has negative or non-finite entries")
    if abs(p.sum() - 1.0) > NORMALIZATION_TOLERANCE:
        raise DomainError(f"initial distribution sums to {p.sum()}, not 1")
    return p


def _birth_matrix(chain: ChainRates) -> sparse.csr_matrix:
    """Generator of the aggregated levels P_m = C(N, m) p_m: a pure birth chain with rates a_m."""
    a = chain.a
    levels = np.arange(chain.n)
    return sparse.csr_matrix(
        sparse.diags(-a)
        + sparse.coo_matrix((a[:-1], (levels, levels + 1)), shape=(chain.n + 1,) * 2)
    )


def _full_dataset(times: np.ndarray, p: np.ndarray, n: int) -> xr.Dataset:
    states = np.arange(1 << n)
    return xr.Dataset(
        {"probability": (("time", "state"), p)},
        coords={
            "time": times,
            "state": states,
            "on_count": ("state", np.array([on_count(int(s)) for s in states])),
        },
        attrs={"n_devices": n, "representation": "full"},
    )


def _reduced_dataset(times: np.ndarray, p: np.ndarray, n: int) -> xr.Dataset:
    """`p` holds per-state probabilities, shape (time, N + 1)."""
    return xr.Dataset(
        {"probability": (("time", "level"), p)},
        coords={
            "time": times,
            "level": np.arange(n + 1),
            "multiplicity": ("level", _multiplicities(n)),
        },
        attrs={"n_devices": n, "representation": "reduced"},
    )


def total_probability(solution: xr.Dataset) -> xr.DataArray:
    if solution.attrs["representation"] == "reduced":
        return (solution.probability * solution.multiplicity).sum("level")
    return solution.probability.sum("state")


def _check_invariants(solution: xr.Dataset):
    p = solution.probability.values
    if np.any(p < -PROBABILITY_EPSILON) or np.any(p > 1.0 + PROBABILITY_EPSILON):
        worst = float(np.max(np.maximum(-p, p - 1.0)))
        raise AccuracyError(f"occupation probability leaves [0, 1] by {worst:.3g}")
    drift = float(np.max(np.abs(total_probability(solution).values - 1.0)))
    if drift > NORMALIZATION_TOLERANCE:
        raise AccuracyError(f"total probability drifts from 1 by {drift:.3g}")


def integrate_master(
    source: Union[GeneratorMatrix, ChainRates, object],
    p_init=None,
    t_end: float = 1.0,
    steps: int = 2000,
    models=None,
    method: str = "RK45",
    rtol: float = 1e-9,
    atol: float = 1e-12,
    max_rhs_evaluations: int = DEFAULT_MAX_RHS_EVALUATIONS,
    rate_ceiling: Optional[float] = None,
    max_devices: int = DEFAULT_MAX_DEVICES,
) -> xr.Dataset:
    """
    Integrate the master equation on a uniform output grid.

    Parameters:
    - source: a GeneratorMatrix (constant rates), a ChainRates (reduced chain of
      identical devices) or a topology; under a time-varying drive the
      topology's generator is rebuilt at every right-hand-side evaluation
    - p_init (int | array, optional): initial state index or distribution; defaults
      to the topology's initial state, or state/level 0
    - t_end (float): final time in seconds
    - steps (int): number of output intervals
    - models: device model(s) for a topology source
    - method (str): explicit scipy integrator, "RK45" by default
    - rtol, atol (float): integrator tolerances
    - max_rhs_evaluations (int): evaluation budget
    - rate_ceiling (float, optional): clip every rate to this value
    - max_devices (int): full-state capacity cap for a topology source

    Returns:
    - xr.Dataset: the solution; see the module docstring for its layout

    Raises:
    - AccuracyError: if the budget runs out, the integrator fails or the
      solution leaves the probability simplex
    - CapacityError: if a topology source has too many devices

    Example:
    >> topology = SeriesTopology(n=2, drive=DCDrive(v_a=2.0))
    >> solution = integrate_master(topology, t_end=2e-3, steps=200, models=model)
    >> solution.probability.sel(state=0b11).values[-1]
    """
    times = time_grid(t_end, steps)
    settings = {"method": method, "rtol": rtol, "atol": atol, "rate_ceiling": rate_ceiling}

    if isinstance(source, ChainRates):
        chain = source if rate_ceiling is None else chain_with_ceiling(source, rate_ceiling)
        n = chain.n
        multiplicity = _multiplicities(n)
        p0 = _probability_vector(p_init, n + 1, 0) * multiplicity
        matrix_t = _birth_matrix(chain).T.tocsr()

        def rhs(t, p):
            return matrix_t @ p

    elif isinstance(source, GeneratorMatrix):
        n = source.n_devices
        p0 = _probability_vector(p_init, source.dimension, 0)
        matrix_t = source.matrix.T.tocsr()

        def rhs(t, p):
            return matrix_t @ p

    else:
        assembler = GeneratorAssembler(
            source, resolve_models(source, models), max_devices, rate_ceiling
        )
        n = assembler.n_devices
        p0 = _probability_vector(p_init, 1 << n, initial_state(source))
        if is_dc(source):
            matrix_t = assembler.at(0.0).matrix.T.tocsr()

            def rhs(t, p):
                return matrix_t @ p

        else:

            def rhs(t, p):
                return assembler.at(t).matrix.T @ p

    evaluations = 0

    def counted_rhs(t, p):
        nonlocal evaluations
        evaluations += 1
        if evaluations > max_rhs_evaluations:
            raise _BudgetExhausted()
        return rhs(t, p)

    logging.debug("Integrating %d-dimensional master equation to t=%g s", len(p0), t_end)
    try:
        result = solve_ivp(
            counted_rhs, (0.0, t_end), p0, method=method, t_eval=times, rtol=rtol, atol=atol
        )
    except _BudgetExhausted:
        raise AccuracyError(
            f"tolerance not reached within {max_rhs_evaluations} right-hand-side evaluations; "
            "rates may span too many decades, consider a rate ceiling or the closed form"
        )
    if not result.success:
        raise AccuracyError(f"integration failed: {result.message}")
    logging.debug("Integration used %d right-hand-side evaluations", evaluations)

    p = result.y.T
    if isinstance(source, ChainRates):
        solution = _reduced_dataset(times, p / multiplicity, n)
    else:
        solution = _full_dataset(times, p, n)
    add_metadata_to_dataset(solution, {"solver": settings, "rhs_evaluations": evaluations})
    _check_invariants(solution)
    return solution


def closed_form_solution(
    chain: ChainRates, times, tolerance: float = DEGENERACY_TOLERANCE
) -> xr.Dataset:
    """
    Reduced solution evaluated from the closed form at the given times.

    Raises:
    - DegeneracyError: if two exit rates coincide within the tolerance
    """
    times = np.asarray(times, dtype=float)
    p = np.stack([closed_form_pm(chain, m, times, tolerance) for m in range(chain.n + 1)], axis=1)
    solution = _reduced_dataset(times, p, chain.n)
    add_metadata_to_dataset(solution, {"solver": {"method": "closed-form"}})
    return solution


def group_by_on_count(solution: xr.Dataset) -> xr.Dataset:
    """Per-state probability of each on-count level from a full solution."""
    n = solution.attrs["n_devices"]
    levels = solution.probability.groupby("on_count").sum().rename(on_count="level")
    levels = levels.reindex(level=np.arange(n + 1), fill_value=0.0)
    return _reduced_dataset(solution.time.values, levels.values / _multiplicities(n), n)


def _device_on_probability(solution: xr.Dataset, device: int) -> xr.DataArray:
    n = solution.attrs["n_devices"]
    if not 0 <= device < n:
        raise DomainError(f"device {device} outside 0..{n - 1}")
    if solution.attrs["representation"] == "reduced":
        # states with m devices ON that include a given device
        weights = np.array([comb(n - 1, m - 1) if m > 0 else 0 for m in range(n + 1)], dtype=float)
        return (solution.probability * xr.DataArray(weights, dims="level")).sum("level")
    mask = (solution.state.values >> device) & 1
    return (solution.probability * xr.DataArray(mask, dims="state")).sum("state")


def marginal_resistance(solution: xr.Dataset, device: int, models) -> xr.DataArray:
    """
    Expected resistance of one device over time, r_off * P(OFF) + r_on * P(ON).

    Example:
    >> marginal_resistance(solution, 0, model).values[0]
    10000.0
    """
    model = models if not isinstance(models, (list, tuple)) else models[device]
    p_on = _device_on_probability(solution, device)
    return (model.r_off * (1.0 - p_on) + model.r_on * p_on).rename(f"avg_resistance_{device}")


def absorption_density(
    source: Union[GeneratorMatrix, GeneratorAssembler, ChainRates], solution: xr.Dataset
) -> xr.DataArray:
    """
    Rate of change of the all-ON probability, the network switching-time density
    while all-ON is absorbing. A GeneratorAssembler is evaluated at every grid time.
    """
    if isinstance(source, ChainRates):
        if solution.attrs["representation"] != "reduced":
            solution = group_by_on_count(solution)
        density = source.b[-1] * solution.probability.sel(level=source.n - 1, drop=True)
        density = density.drop_vars("multiplicity", errors="ignore")
    else:
        if solution.attrs["representation"] != "full":
            raise DomainError("a full generator needs a full-state solution")
        p = solution.probability.values
        if isinstance(source, GeneratorAssembler):
            times = solution.time.values
            values = np.array(
                [source.at(t).matrix[:, -1].toarray().ravel() @ p_t for t, p_t in zip(times, p)]
            )
        else:
            values = p @ source.matrix[:, -1].toarray().ravel()
        density = xr.DataArray(values, dims="time")
        density = density.assign_coords(time=solution.time)
    return density.rename("density")
