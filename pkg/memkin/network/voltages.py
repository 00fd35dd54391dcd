"""
voltages.py
-----------
Device voltages, source currents and transition rates of a network state.

The convenience topologies use closed forms: every parallel device sees the
drive, and a series device m gets drive * R_m / sum(R). General circuits go
through modified nodal analysis. Voltages are recomputed from scratch for
each state.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from memkin.devices import DeviceState, switching_rate

from .nodal import nodal_response
from .topology import (
    GROUND,
    GeneralTopology,
    ParallelTopology,
    SeriesTopology,
    all_state_bits,
    as_bits,
    device_count,
    drives,
)


@dataclass(frozen=True)
class CircuitResponse:
    device_voltages: np.ndarray  # (n_sources, N) per unit source value
    source_currents: np.ndarray  # (n_sources, n_sources) delivered by each source per unit value


def resolve_models(topology, models=None) -> List:
    """
    One device model per device. A single model is broadcast over series and
    parallel topologies; general topologies default to their netlist models.
    """
    n = device_count(topology)
    if models is None:
        if not isinstance(topology, GeneralTopology):
            raise ValueError("series and parallel topologies need device models")
        return topology.netlist.device_models()
    if not isinstance(models, (list, tuple)):
        return [models] * n
    if len(models) != n:
        raise ValueError(f"got {len(models)} device models for {n} devices")
    return list(models)


def _levels(models: Sequence, bits: np.ndarray) -> np.ndarray:
    r_on = np.array([model.r_on for model in models])
    r_off = np.array([model.r_off for model in models])
    return np.where(bits, r_on, r_off)


def source_values(topology, t) -> np.ndarray:
    """Source voltages at t: shape (n_sources,) for scalar t, (len(t), n_sources) otherwise."""
    values = [np.asarray(drive.voltage(t), dtype=float) for drive in drives(topology)]
    return np.stack(values, axis=-1)


def circuit_response(topology, models: Sequence, state) -> CircuitResponse:
    n = device_count(topology)
    bits = as_bits(state, n)
    if isinstance(topology, SeriesTopology):
        levels = _levels(models, bits)
        total = levels.sum()
        return CircuitResponse(
            device_voltages=(levels / total)[None, :],
            source_currents=np.array([[1.0 / total]]),
        )
    if isinstance(topology, ParallelTopology):
        levels = _levels(models, bits)
        return CircuitResponse(
            device_voltages=np.ones((1, n)),
            source_currents=np.array([[np.sum(1.0 / levels)]]),
        )

    netlist = topology.netlist
    response = nodal_response(netlist, models, bits)
    column = {node: k for k, node in enumerate(response.nodes)}

    def node_voltage(node: str) -> np.ndarray:
        if node == GROUND:
            return np.zeros(len(netlist.sources))
        return response.node_voltages[:, column[node]]

    device_voltages = np.stack(
        [node_voltage(m.node_pos) - node_voltage(m.node_neg) for m in netlist.memristors], axis=1
    )
    return CircuitResponse(
        device_voltages=device_voltages, source_currents=response.source_currents
    )


def device_voltages(topology, models: Sequence, state, t=0.0) -> np.ndarray:
    """
    Voltage across every device, measured from its + to its - terminal.

    Parameters:
    - topology: series, parallel or general topology
    - models (sequence): one device model per device
    - state (int | sequence): network state
    - t (float | np.ndarray): time(s) in seconds

    Returns:
    - np.ndarray: shape (N,) for scalar t, (len(t), N) otherwise

    Example:
    >> device_voltages(SeriesTopology(n=2, drive=DCDrive(v_a=2.0)), [model] * 2, 0b00)
    array([1., 1.])
    """
    response = circuit_response(topology, models, state)
    return source_values(topology, t) @ response.device_voltages


def source_currents(topology, models: Sequence, state, t=0.0) -> np.ndarray:
    response = circuit_response(topology, models, state)
    return source_values(topology, t) @ response.source_currents


def rates_for_voltages(voltages: np.ndarray, models: Sequence, bits: np.ndarray) -> np.ndarray:
    """
    Per-device rate of leaving its current state; the last axis indexes devices.
    `bits` broadcasts against `voltages`, so one state or one state per row both work.
    """
    voltages = np.asarray(voltages, dtype=float)
    bits = np.broadcast_to(np.asarray(bits, dtype=bool), voltages.shape)
    rates = np.empty_like(voltages)
    for m, model in enumerate(models):
        v = voltages[..., m]
        rates[..., m] = np.where(
            bits[..., m],
            switching_rate(v, model, DeviceState.ON),
            switching_rate(v, model, DeviceState.OFF),
        )
    return rates


def transition_rates(topology, models: Sequence, state, t=0.0) -> np.ndarray:
    """
    Rate of flipping each device: off->on for OFF devices, on->off for ON devices.

    Example:
    >> transition_rates(ParallelTopology(n=3, drive=DCDrive(v_a=1.0)), [model] * 3, 0)
    array([1617.2..., 1617.2..., 1617.2...])
    """
    bits = as_bits(state, device_count(topology))
    return rates_for_voltages(device_voltages(topology, models, bits, t), models, bits)


def unit_voltage_table(topology, models: Sequence, bits: Optional[np.ndarray] = None) -> np.ndarray:
    """(n_states, n_sources, N) device voltages per unit source value, one row per state."""
    n = device_count(topology)
    if bits is None:
        bits = all_state_bits(n)
    if isinstance(topology, SeriesTopology):
        levels = _levels(models, bits)
        return (levels / levels.sum(axis=1, keepdims=True))[:, None, :]
    if isinstance(topology, ParallelTopology):
        return np.ones((bits.shape[0], 1, n))
    return np.stack([circuit_response(topology, models, row).device_voltages for row in bits])


def voltage_table(topology, models: Sequence, t: float = 0.0, bits: Optional[np.ndarray] = None):
    """(2^N, N) device voltages over every network state at time t."""
    unit = unit_voltage_table(topology, models, bits)
    return np.einsum("s,ksn->kn", source_values(topology, t), unit)
