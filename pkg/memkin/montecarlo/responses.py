from threading import Lock
from typing import Dict, Sequence

import numpy as np

from memkin.network import circuit_response, source_values


class StateResponses:
    """
    Lazily computed per-unit-source circuit responses, keyed by network state.

    Responses depend only on the resistance levels, not on the switching
    parameters, so one cache serves every trial of an ensemble even when tau0
    and V0 are redrawn. Safe to share between worker threads.
    """

    def __init__(self, topology, models: Sequence):
        self.topology = topology
        self.models = list(models)
        self._voltages: Dict[int, np.ndarray] = {}
        self._currents: Dict[int, np.ndarray] = {}
        self._lock = Lock()

    def _fill(self, state: int):
        response = circuit_response(self.topology, self.models, state)
        with self._lock:
            self._voltages[state] = response.device_voltages
            self._currents[state] = response.source_currents

    def unit_voltages(self, state: int) -> np.ndarray:
        """(n_sources, N) device voltages per unit source value."""
        if state not in self._voltages:
            self._fill(state)
        return self._voltages[state]

    def unit_currents(self, state: int) -> np.ndarray:
        if state not in self._currents:
            self._fill(state)
        return self._currents[state]

    def voltages(self, state: int, t) -> np.ndarray:
        """Device voltages at time(s) t: (N,) for scalar t, (len(t), N) otherwise."""
        return source_values(self.topology, t) @ self.unit_voltages(state)
