"""
nodal.py
--------
Modified nodal analysis of a netlist in a given network state.

Unknowns are the non-ground node voltages followed by one branch current per
voltage source. The system is small and dense and is solved by direct
factorization. Because the circuit is linear, the response to unit source
values is enough to get voltages and currents at any time.

Functions:
- `nodal_response`: unit-source node voltages and source currents.
- `nodal_solve`: node voltages at time t.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np

from memkin.devices import DeviceState, resistance
from memkin.errors import TopologyError

from .topology import GROUND, Netlist, as_bits, floating_nodes

SINGULAR_CONDITION = 1e14
RESIDUAL_TOLERANCE = 1e-9


@dataclass(frozen=True)
class NodalResponse:
    nodes: List[str]
    node_voltages: np.ndarray  # (n_sources, n_nodes), ground excluded
    source_currents: np.ndarray  # (n_sources, n_sources), current delivered out of each + terminal


def _suspect_nodes(netlist: Netlist) -> set:
    # nodes cut off from ground once sources are removed, else the nodes tied to sources
    passive = [e for e in netlist.elements if e.kind != "source"]
    floating = floating_nodes(passive, netlist.nodes - {GROUND})
    if floating:
        return floating
    return {node for source in netlist.sources for node in source.nodes if node != GROUND}


def nodal_response(netlist: Netlist, models: Sequence, state) -> NodalResponse:
    """
    Solve the circuit once per source with that source at 1 V and the others at 0 V.

    Parameters:
    - netlist (Netlist): the circuit
    - models (sequence): one device model per memristor, in netlist order
    - state (int | sequence): network state

    Returns:
    - NodalResponse: node voltages and delivered source currents per unit source

    Raises:
    - TopologyError: if the conductance system is singular or ill-conditioned
    """
    memristors = netlist.memristors
    bits = as_bits(state, len(memristors))
    nodes = sorted(netlist.nodes - {GROUND})
    index = {node: k for k, node in enumerate(nodes)}
    sources = netlist.sources
    n_nodes, n_sources = len(nodes), len(sources)
    size = n_nodes + n_sources

    matrix = np.zeros((size, size))

    def stamp(a: str, b: str, conductance: float):
        for node in (a, b):
            if node != GROUND:
                matrix[index[node], index[node]] += conductance
        if a != GROUND and b != GROUND:
            matrix[index[a], index[b]] -= conductance
            matrix[index[b], index[a]] -= conductance

    for resistor in netlist.resistors:
        stamp(resistor.node1, resistor.node2, 1.0 / resistor.resistance)
    for memristor, model, on in zip(memristors, models, bits):
        level = resistance(DeviceState.ON if on else DeviceState.OFF, model)
        stamp(memristor.node_pos, memristor.node_neg, 1.0 / level)
    for k, source in enumerate(sources):
        row = n_nodes + k
        if source.node_pos != GROUND:
            matrix[index[source.node_pos], row] += 1.0
            matrix[row, index[source.node_pos]] += 1.0
        if source.node_neg != GROUND:
            matrix[index[source.node_neg], row] -= 1.0
            matrix[row, index[source.node_neg]] -= 1.0

    rhs = np.zeros((size, n_sources))
    rhs[n_nodes:, :] = np.eye(n_sources)

    if np.linalg.cond(matrix) > SINGULAR_CONDITION:
        raise TopologyError("singular conductance system", nodes=_suspect_nodes(netlist))
    try:
        solution = np.linalg.solve(matrix, rhs)
    except np.linalg.LinAlgError:
        raise TopologyError("singular conductance system", nodes=_suspect_nodes(netlist))

    residual = np.abs(matrix @ solution - rhs).max()
    scale = max(np.abs(matrix).max() * np.abs(solution).max(), 1.0)
    if residual > RESIDUAL_TOLERANCE * scale:
        raise TopologyError(f"nodal solution residual {residual:.3e} exceeds tolerance")
    logging.debug("Solved nodal system of size %d for state %s", size, bits.astype(int))

    return NodalResponse(
        nodes=nodes,
        node_voltages=solution[:n_nodes, :].T,
        # the branch unknown flows into the + terminal, so delivered current is its negative
        source_currents=-solution[n_nodes:, :].T,
    )


def nodal_solve(netlist: Netlist, models: Sequence, state, t: float = 0.0) -> Dict[str, float]:
    """
    Node voltages of the circuit at time t; the ground node "0" is included at 0 V.

    Example:
    >> nodal_solve(netlist, netlist.device_models(), 0, t=0.0)
    {'0': 0.0, 'n1': 2.0, 'n2': 1.0}
    """
    response = nodal_response(netlist, models, state)
    values = np.array([source.drive.voltage(t) for source in netlist.sources], dtype=float)
    voltages = {GROUND: 0.0}
    for k, node in enumerate(response.nodes):
        voltages[node] = float(values @ response.node_voltages[:, k])
    return voltages
