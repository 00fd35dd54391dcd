"""
topology.py
-----------
Circuit descriptions and network-state encoding.

Classes:
- `DCDrive`, `SineDrive`: source waveforms.
- `SeriesTopology`, `ParallelTopology`: N identical-wiring convenience circuits
  with a single source; every device has its + terminal toward the source +.
- `VoltageSource`, `Resistor`, `Memristor`, `Netlist`: general circuits.
- `GeneralTopology`: a circuit given by a netlist.

Network states are integers with device m stored in bit m (1 = ON). Helpers:
- `as_bits(state, n)`, `state_index(bits)`, `all_state_bits(n)`, `on_count(state)`.
- `series_netlist`, `parallel_netlist`: explicit netlists of the convenience circuits.
"""

from collections import defaultdict, deque
from typing import Annotated, Dict, List, Literal, Optional, Sequence, Set, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, model_validator

from memkin.devices import DeviceModel, DeviceState, ParamSpread
from memkin.errors import DomainError, TopologyError

GROUND = "0"


class _FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True, allow_inf_nan=False, extra="forbid")


class DCDrive(_FrozenModel):
    kind: Literal["dc"] = "dc"
    v_a: float

    def voltage(self, t):
        if np.ndim(t) == 0:
            return self.v_a
        return np.full(np.shape(t), self.v_a, dtype=float)


class SineDrive(_FrozenModel):
    kind: Literal["sine"] = "sine"
    amplitude: float
    frequency: PositiveFloat
    phase: float = 0.0

    @property
    def period(self) -> float:
        return 1.0 / self.frequency

    def voltage(self, t):
        value = self.amplitude * np.sin(2.0 * np.pi * self.frequency * np.asarray(t) + self.phase)
        return float(value) if np.ndim(t) == 0 else value


DriveSpec = Annotated[Union[DCDrive, SineDrive], Field(discriminator="kind")]


class VoltageSource(_FrozenModel):
    kind: Literal["source"] = "source"
    name: str
    node_pos: str
    node_neg: str
    drive: DriveSpec

    @property
    def nodes(self) -> Tuple[str, str]:
        return self.node_pos, self.node_neg


class Resistor(_FrozenModel):
    kind: Literal["resistor"] = "resistor"
    name: str
    node1: str
    node2: str
    resistance: PositiveFloat

    @property
    def nodes(self) -> Tuple[str, str]:
        return self.node1, self.node2


class Memristor(_FrozenModel):
    kind: Literal["memristor"] = "memristor"
    name: str
    node_pos: str
    node_neg: str
    model: str
    state: DeviceState = DeviceState.OFF
    spread: Optional[ParamSpread] = None

    @property
    def nodes(self) -> Tuple[str, str]:
        return self.node_pos, self.node_neg


Element = Annotated[Union[VoltageSource, Resistor, Memristor], Field(discriminator="kind")]


def _components(edges: Sequence[Tuple[str, str]], nodes: Set[str]) -> Dict[str, int]:
    adjacency = defaultdict(set)
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    label: Dict[str, int] = {}
    component = 0
    for start in sorted(nodes):
        if start in label:
            continue
        queue = deque([start])
        label[start] = component
        component += 1
        while queue:
            node = queue.popleft()
            for neighbour in adjacency[node]:
                if neighbour not in label:
                    label[neighbour] = label[start]
                    queue.append(neighbour)
    return label


def floating_nodes(elements: Sequence, nodes: Set[str]) -> Set[str]:
    """Nodes with no path to ground through any element."""
    if GROUND not in nodes:
        return set(nodes)
    label = _components([e.nodes for e in elements], nodes | {GROUND})
    return {node for node in nodes if label[node] != label[GROUND]}


class Netlist(_FrozenModel):
    elements: Tuple[Element, ...]
    models: Dict[str, DeviceModel]

    @model_validator(mode="after")
    def check_circuit(self):
        if not self.sources:
            raise ValueError("no source")
        if not self.memristors:
            raise ValueError("no memristor")
        names = [element.name for element in self.elements]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise ValueError(f"duplicate element names: {', '.join(duplicates)}")
        for element in self.elements:
            a, b = element.nodes
            if a == b:
                raise ValueError(f"element {element.name} connects node {a} to itself")
        for memristor in self.memristors:
            if memristor.model not in self.models:
                raise ValueError(
                    f"memristor {memristor.name} references undefined model {memristor.model}"
                )
            if memristor.spread is not None and self.models[memristor.model].kind != "poisson":
                raise ValueError(
                    f"memristor {memristor.name}: spreads apply to POISSON models only"
                )
        floating = floating_nodes(self.elements, self.nodes)
        if floating:
            raise ValueError(f"nodes not connected to ground: {', '.join(sorted(floating))}")
        return self

    @property
    def sources(self) -> List[VoltageSource]:
        return [e for e in self.elements if isinstance(e, VoltageSource)]

    @property
    def resistors(self) -> List[Resistor]:
        return [e for e in self.elements if isinstance(e, Resistor)]

    @property
    def memristors(self) -> List[Memristor]:
        return [e for e in self.elements if isinstance(e, Memristor)]

    @property
    def nodes(self) -> Set[str]:
        return {node for element in self.elements for node in element.nodes}

    def device_models(self) -> List:
        return [self.models[m.model] for m in self.memristors]

    def spreads(self) -> List[Optional[ParamSpread]]:
        return [m.spread for m in self.memristors]

    def initial_state(self) -> int:
        return state_index([m.state == DeviceState.ON for m in self.memristors])


class SeriesTopology(_FrozenModel):
    kind: Literal["series"] = "series"
    n: PositiveInt
    drive: DriveSpec


class ParallelTopology(_FrozenModel):
    kind: Literal["parallel"] = "parallel"
    n: PositiveInt
    drive: DriveSpec


class GeneralTopology(_FrozenModel):
    kind: Literal["general"] = "general"
    netlist: Netlist


Topology = Annotated[
    Union[SeriesTopology, ParallelTopology, GeneralTopology], Field(discriminator="kind")
]


def device_count(topology) -> int:
    if isinstance(topology, GeneralTopology):
        return len(topology.netlist.memristors)
    return topology.n


def drives(topology) -> List:
    if isinstance(topology, GeneralTopology):
        return [source.drive for source in topology.netlist.sources]
    return [topology.drive]


def is_dc(topology) -> bool:
    return all(isinstance(drive, DCDrive) for drive in drives(topology))


def initial_state(topology) -> int:
    if isinstance(topology, GeneralTopology):
        return topology.netlist.initial_state()
    return 0


def as_bits(state, n: int) -> np.ndarray:
    """Boolean vector of device states from a bitmask or a 0/1 sequence."""
    if isinstance(state, (int, np.integer)):
        if not 0 <= int(state) < (1 << n):
            raise DomainError(f"state {state} is out of range for {n} devices")
        return ((int(state) >> np.arange(n)) & 1).astype(bool)
    bits = np.asarray(state)
    if bits.shape != (n,):
        raise DomainError(f"state has {bits.size} entries, topology has {n} devices")
    if not np.all((bits == 0) | (bits == 1)):
        raise DomainError("state entries must be 0 or 1")
    return bits.astype(bool)


def state_index(bits) -> int:
    return int(sum(1 << m for m, on in enumerate(bits) if on))


def all_state_bits(n: int) -> np.ndarray:
    """(2^n, n) boolean array; row k holds the bits of state k."""
    return ((np.arange(1 << n)[:, None] >> np.arange(n)[None, :]) & 1).astype(bool)


def on_count(state: int) -> int:
    return bin(int(state)).count("1")


def series_netlist(
    n: int, model, drive, model_id: str = "m", spread: Optional[ParamSpread] = None
) -> Netlist:
    """Source between n0 and ground; device k from n{k} to n{k+1}, the last one to ground."""
    nodes = [f"n{k}" for k in range(n)] + [GROUND]
    elements = [VoltageSource(name="src", node_pos=nodes[0], node_neg=GROUND, drive=drive)]
    elements += [
        Memristor(
            name=f"M{k}", node_pos=nodes[k], node_neg=nodes[k + 1], model=model_id, spread=spread
        )
        for k in range(n)
    ]
    return Netlist(elements=tuple(elements), models={model_id: model})


def parallel_netlist(
    n: int, model, drive, model_id: str = "m", spread: Optional[ParamSpread] = None
) -> Netlist:
    elements = [VoltageSource(name="src", node_pos="n0", node_neg=GROUND, drive=drive)]
    elements += [
        Memristor(name=f"M{k}", node_pos="n0", node_neg=GROUND, model=model_id, spread=spread)
        for k in range(n)
    ]
    return Netlist(elements=tuple(elements), models={model_id: model})
