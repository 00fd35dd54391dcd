"""
parser.py
---------
Line-based netlist format.

One element per line, whitespace-separated, '#' starts a comment, keywords
are case-insensitive and node "0" is ground:

    MODEL <id> POISSON tau0=<s> v0=<V> tau1=<s> v1=<V> ron=<ohm> roff=<ohm>
    MODEL <id> APTM kon=<Hz> koff=<Hz> von=<V> voff=<V> aon=<x> aoff=<x> ron=<ohm> roff=<ohm>
    V <id> <node+> <node-> DC <volts>
    V <id> <node+> <node-> SIN <amplitude> <frequency> [<phase>]
    R <id> <node1> <node2> <ohms>
    M <id> <node+> <node-> model=<id> [state=off|on] [spread_tau0=<lo>,<hi>] [spread_v0=<lo>,<hi>]

Models may be declared before or after the devices that use them. Syntax
errors carry the line and column; semantic errors carry the line and the
offending name.
"""

import math
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from memkin.devices import (
    DeviceModel,
    DeviceState,
    PoissonExpModel,
    build_model,
    build_spread,
)
from memkin.errors import DomainError, NetlistSemanticError, NetlistSyntaxError
from memkin.network import (
    DCDrive,
    Memristor,
    Netlist,
    Resistor,
    SineDrive,
    VoltageSource,
)

# netlist key -> model field
MODEL_KEYS = {
    "poisson": {
        "tau0": "tau0",
        "v0": "v0",
        "tau1": "tau1",
        "v1": "v1",
        "ron": "r_on",
        "roff": "r_off",
    },
    "aptm": {
        "kon": "k_on",
        "koff": "k_off",
        "von": "v_on",
        "voff": "v_off",
        "aon": "alpha_on",
        "aoff": "alpha_off",
        "ron": "r_on",
        "roff": "r_off",
    },
}
DEVICE_KEYS = ("model", "state", "spread_tau0", "spread_v0")


@dataclass(frozen=True)
class _Token:
    text: str
    column: int


@dataclass
class _PendingDevice:
    name: str
    node_pos: str
    node_neg: str
    model: str
    state: DeviceState
    spread_tau0: Optional[Tuple[float, float]]
    spread_v0: Optional[Tuple[float, float]]
    line: int


def _tokenize(line: str) -> List[_Token]:
    line = line.split("#", 1)[0]
    return [_Token(match.group(), match.start() + 1) for match in re.finditer(r"\S+", line)]


class _LineParser:
    def __init__(self, tokens: List[_Token], number: int, line_length: int):
        self.tokens = tokens
        self.number = number
        self.position = 0
        self.end_column = line_length + 1

    def syntax_error(self, message: str, token: Optional[_Token] = None) -> NetlistSyntaxError:
        column = token.column if token is not None else self.end_column
        return NetlistSyntaxError(message, line=self.number, column=column)

    def next(self, expected: str) -> _Token:
        if self.position >= len(self.tokens):
            raise self.syntax_error(f"expected {expected}")
        token = self.tokens[self.position]
        self.position += 1
        return token

    def number_value(self, expected: str, token: Optional[_Token] = None) -> float:
        token = token or self.next(expected)
        try:
            value = float(token.text)
        except ValueError:
            raise self.syntax_error(f"expected {expected}, got {token.text!r}", token)
        if not math.isfinite(value):
            raise self.syntax_error(f"expected a finite number, got {token.text!r}", token)
        return value

    def remaining(self) -> List[_Token]:
        rest = self.tokens[self.position :]
        self.position = len(self.tokens)
        return rest

    def assignments(self, allowed) -> List[Tuple[str, str, _Token]]:
        result = []
        for token in self.remaining():
            key, sep, value = token.text.partition("=")
            key = key.lower()
            if not sep or not value:
                raise self.syntax_error(f"expected key=value, got {token.text!r}", token)
            if key not in allowed:
                raise self.syntax_error(f"expected one of {', '.join(allowed)}, got {key!r}", token)
            result.append((key, value, token))
        return result

    def done(self):
        if self.position < len(self.tokens):
            token = self.tokens[self.position]
            raise self.syntax_error(f"unexpected token {token.text!r}", token)


def _interval(parser: _LineParser, value: str, token: _Token) -> Tuple[float, float]:
    parts = value.split(",")
    if len(parts) != 2:
        raise parser.syntax_error(f"expected <lo>,<hi>, got {value!r}", token)
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise parser.syntax_error(f"expected numbers in <lo>,<hi>, got {value!r}", token)


def _parse_model(parser: _LineParser, models: Dict[str, DeviceModel]):
    name = parser.next("model name").text
    kind_token = parser.next("POISSON or APTM")
    kind = kind_token.text.lower()
    if kind not in MODEL_KEYS:
        raise parser.syntax_error(f"expected POISSON or APTM, got {kind_token.text!r}", kind_token)
    keys = MODEL_KEYS[kind]
    parameters = {"kind": kind}
    for key, value, token in parser.assignments(list(keys)):
        parameters[keys[key]] = parser.number_value(
            f"a number for {key}", _Token(value, token.column)
        )
    missing = [key for key, field in keys.items() if field not in parameters]
    if missing:
        raise NetlistSemanticError(
            f"model {name} is missing {', '.join(missing)}", entity=name, line=parser.number
        )
    if name in models:
        raise NetlistSemanticError(
            f"model {name} is defined twice", entity=name, line=parser.number
        )
    try:
        models[name] = build_model(parameters)
    except DomainError as e:
        raise NetlistSemanticError(f"model {name}: {e}", entity=name, line=parser.number)


def _parse_source(parser: _LineParser) -> VoltageSource:
    name = parser.next("source name").text
    node_pos = parser.next("node+").text
    node_neg = parser.next("node-").text
    kind_token = parser.next("DC or SIN")
    kind = kind_token.text.lower()
    if kind == "dc":
        drive = DCDrive(v_a=parser.number_value("a voltage"))
    elif kind == "sin":
        amplitude = parser.number_value("an amplitude")
        frequency = parser.number_value("a frequency")
        phase = parser.number_value("a phase") if parser.position < len(parser.tokens) else 0.0
        if frequency <= 0:
            raise NetlistSemanticError(
                f"source {name} needs a positive frequency", entity=name, line=parser.number
            )
        drive = SineDrive(amplitude=amplitude, frequency=frequency, phase=phase)
    else:
        raise parser.syntax_error(f"expected DC or SIN, got {kind_token.text!r}", kind_token)
    parser.done()
    return VoltageSource(name=name, node_pos=node_pos, node_neg=node_neg, drive=drive)


def _parse_resistor(parser: _LineParser) -> Resistor:
    name = parser.next("resistor name").text
    node1 = parser.next("node").text
    node2 = parser.next("node").text
    resistance = parser.number_value("a resistance")
    parser.done()
    if resistance <= 0:
        raise NetlistSemanticError(
            f"resistor {name} needs a positive resistance", entity=name, line=parser.number
        )
    return Resistor(name=name, node1=node1, node2=node2, resistance=resistance)


def _parse_device(parser: _LineParser) -> _PendingDevice:
    name = parser.next("memristor name").text
    node_pos = parser.next("node+").text
    node_neg = parser.next("node-").text
    options = {"state": DeviceState.OFF, "spread_tau0": None, "spread_v0": None}
    for key, value, token in parser.assignments(DEVICE_KEYS):
        if key == "model":
            options["model"] = value
        elif key == "state":
            if value.lower() not in ("on", "off"):
                raise parser.syntax_error(f"expected on or off, got {value!r}", token)
            options["state"] = DeviceState.ON if value.lower() == "on" else DeviceState.OFF
        else:
            options[key] = _interval(parser, value, token)
    if "model" not in options:
        raise parser.syntax_error("expected model=<id>")
    return _PendingDevice(
        name=name, node_pos=node_pos, node_neg=node_neg, line=parser.number, **options
    )


def _resolve_device(device: _PendingDevice, models: Dict[str, DeviceModel]) -> Memristor:
    if device.model not in models:
        raise NetlistSemanticError(
            f"memristor {device.name} uses undefined model {device.model}",
            entity=device.model,
            line=device.line,
        )
    model = models[device.model]
    spread = None
    if device.spread_tau0 is not None or device.spread_v0 is not None:
        if not isinstance(model, PoissonExpModel):
            raise NetlistSemanticError(
                f"memristor {device.name}: spreads apply to POISSON models only",
                entity=device.name,
                line=device.line,
            )
        try:
            spread = build_spread(
                device.spread_tau0 or (model.tau0, model.tau0),
                device.spread_v0 or (model.v0, model.v0),
            )
        except DomainError as e:
            raise NetlistSemanticError(
                f"memristor {device.name}: {e}", entity=device.name, line=device.line
            )
    return Memristor(
        name=device.name,
        node_pos=device.node_pos,
        node_neg=device.node_neg,
        model=device.model,
        state=device.state,
        spread=spread,
    )


def parse_netlist(text: str) -> Tuple[Netlist, Dict[str, DeviceModel]]:
    """
    Parse and validate a netlist.

    Parameters:
    - text (str): netlist source

    Returns:
    - tuple: (Netlist, model table by id)

    Raises:
    - NetlistSyntaxError: malformed line, with line and column
    - NetlistSemanticError: duplicate names, self-loops, undefined models,
      non-positive values, a missing source or memristor, floating nodes

    Example:
    >> netlist, models = parse_netlist(open("series2.net").read())
    >> len(netlist.memristors)
    2
    """
    models: Dict[str, DeviceModel] = {}
    elements: List = []
    element_lines: Dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw)
        if not tokens:
            continue
        parser = _LineParser(tokens, number, len(raw))
        keyword = parser.next("keyword")
        kind = keyword.text.upper()
        if kind == "MODEL":
            _parse_model(parser, models)
            continue
        if kind == "V":
            element = _parse_source(parser)
        elif kind == "R":
            element = _parse_resistor(parser)
        elif kind == "M":
            element = _parse_device(parser)
        else:
            raise parser.syntax_error(f"expected MODEL, V, R or M, got {keyword.text!r}", keyword)
        if element.name in element_lines:
            raise NetlistSemanticError(
                f"element {element.name} is defined twice "
                f"(first on line {element_lines[element.name]})",
                entity=element.name,
                line=number,
            )
        if isinstance(element, Resistor):
            nodes = (element.node1, element.node2)
        else:
            nodes = (element.node_pos, element.node_neg)
        if nodes[0] == nodes[1]:
            raise NetlistSemanticError(
                f"element {element.name} connects node {nodes[0]} to itself",
                entity=element.name,
                line=number,
            )
        element_lines[element.name] = number
        elements.append(element)

    elements = [
        _resolve_device(e, models) if isinstance(e, _PendingDevice) else e for e in elements
    ]
    try:
        netlist = Netlist(elements=tuple(elements), models=models)
    except ValidationError as e:
        message = "; ".join(error["msg"].removeprefix("Value error, ") for error in e.errors())
        raise NetlistSemanticError(message)
    return netlist, models


def _number(value: float) -> str:
    return repr(float(value))


def _render_model(name: str, model: DeviceModel) -> str:
    keys = MODEL_KEYS[model.kind]
    assignments = " ".join(f"{key}={_number(getattr(model, field))}" for key, field in keys.items())
    return f"MODEL {name} {model.kind.upper()} {assignments}"


def _render_element(element) -> str:
    if isinstance(element, VoltageSource):
        drive = element.drive
        if isinstance(drive, DCDrive):
            waveform = f"DC {_number(drive.v_a)}"
        else:
            waveform = (
                f"SIN {_number(drive.amplitude)} {_number(drive.frequency)} "
                f"{_number(drive.phase)}"
            )
        return f"V {element.name} {element.node_pos} {element.node_neg} {waveform}"
    if isinstance(element, Resistor):
        return f"R {element.name} {element.node1} {element.node2} {_number(element.resistance)}"
    line = f"M {element.name} {element.node_pos} {element.node_neg} model={element.model}"
    if element.state == DeviceState.ON:
        line += " state=on"
    if element.spread is not None:
        tau0, v0 = element.spread.tau0_range, element.spread.v0_range
        line += f" spread_tau0={_number(tau0[0])},{_number(tau0[1])}"
        line += f" spread_v0={_number(v0[0])},{_number(v0[1])}"
    return line


def render_netlist(netlist: Netlist) -> str:
    """Canonical text of a netlist: models sorted by id, then elements in order."""
    lines = [_render_model(name, netlist.models[name]) for name in sorted(netlist.models)]
    lines += [_render_element(element) for element in netlist.elements]
    return "\n".join(lines) + "\n"
