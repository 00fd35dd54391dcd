from .parser import parse_netlist, render_netlist
from .shorthand import (
    parse_interval,
    parse_model_option,
    parse_sine,
    shorthand_spread,
    shorthand_topology,
)
