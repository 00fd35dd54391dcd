"""
generator.py
------------
Transition-rate generator of the full 2^N network state space.

State k holds device m in bit m. The generator is stored as a sparse matrix
Q with Q[i, j] the rate of the single-device flip i -> j and the diagonal
equal to minus the total departure rate, so every row sums to zero and the
occupation probabilities evolve as dp/dt = Q^T p. Both off->on and on->off
edges are present; under one-signed DC drive the opposing rates vanish.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import sparse

from memkin.errors import CapacityError
from memkin.network import (
    all_state_bits,
    device_count,
    rates_for_voltages,
    resolve_models,
    source_values,
    unit_voltage_table,
)

DEFAULT_MAX_DEVICES = 20


@dataclass(frozen=True)
class GeneratorMatrix:
    n_devices: int
    matrix: sparse.csr_matrix

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def exit_rates(self) -> np.ndarray:
        return -self.matrix.diagonal()

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def derivative(self, p: np.ndarray) -> np.ndarray:
        return self.matrix.T @ p


def _assemble(n: int, rates: np.ndarray) -> GeneratorMatrix:
    states = np.arange(1 << n)
    rows, cols, data = [], [], []
    for m in range(n):
        nonzero = rates[:, m] > 0
        rows.append(states[nonzero])
        cols.append(states[nonzero] ^ (1 << m))
        data.append(rates[nonzero, m])
    rows.append(states)
    cols.append(states)
    data.append(-rates.sum(axis=1))
    matrix = sparse.csr_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(1 << n, 1 << n),
    )
    return GeneratorMatrix(n_devices=n, matrix=matrix)


class GeneratorAssembler:
    """
    Builds generators of one topology at any time. Per-state unit voltage
    responses are computed once, so rebuilding under a time-varying drive only
    rescales them by the source values.
    """

    def __init__(
        self,
        topology,
        models=None,
        max_devices: int = DEFAULT_MAX_DEVICES,
        rate_ceiling: Optional[float] = None,
    ):
        n = device_count(topology)
        if n > max_devices:
            raise CapacityError(
                f"{n} devices means {2 ** n} network states; "
                f"the full-state cap is {max_devices} devices"
            )
        self.topology = topology
        self.models = resolve_models(topology, models)
        self.n_devices = n
        self.rate_ceiling = rate_ceiling
        self.bits = all_state_bits(n)
        self._unit_voltages = unit_voltage_table(topology, self.models, self.bits)
        logging.debug("Prepared generator assembly for %d states", 1 << n)

    def rates_at(self, t: float) -> np.ndarray:
        """(2^N, N) flip rate of every device in every state."""
        voltages = np.einsum("s,ksn->kn", source_values(self.topology, t), self._unit_voltages)
        rates = rates_for_voltages(voltages, self.models, self.bits)
        if self.rate_ceiling is not None:
            rates = np.minimum(rates, self.rate_ceiling)
        return rates

    def at(self, t: float) -> GeneratorMatrix:
        return _assemble(self.n_devices, self.rates_at(t))


def build_generator(
    topology,
    models=None,
    t: float = 0.0,
    max_devices: int = DEFAULT_MAX_DEVICES,
    rate_ceiling: Optional[float] = None,
) -> GeneratorMatrix:
    """
    Generator of the network at time t.

    Parameters:
    - topology: series, parallel or general topology
    - models: device model(s); optional for general topologies
    - t (float): time at which the drive is evaluated
    - max_devices (int): full-state capacity cap
    - rate_ceiling (float, optional): clip every rate to this value

    Returns:
    - GeneratorMatrix

    Raises:
    - CapacityError: if the topology has more devices than `max_devices`

    Example:
    >> gen = build_generator(SeriesTopology(n=2, drive=DCDrive(v_a=2.0)), model)
    >> gen.toarray().sum(axis=1)
    array([0., 0., 0., 0.])
    """
    return GeneratorAssembler(topology, models, max_devices, rate_ceiling).at(t)
