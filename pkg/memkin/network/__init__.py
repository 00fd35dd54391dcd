from .nodal import NodalResponse, nodal_response, nodal_solve
from .topology import (
    GROUND,
    DCDrive,
    DriveSpec,
    GeneralTopology,
    Memristor,
    Netlist,
    ParallelTopology,
    Resistor,
    SeriesTopology,
    SineDrive,
    Topology,
    VoltageSource,
    all_state_bits,
    as_bits,
    device_count,
    drives,
    initial_state,
    is_dc,
    on_count,
    parallel_netlist,
    series_netlist,
    state_index,
)
from .voltages import (
    CircuitResponse,
    circuit_response,
    device_voltages,
    rates_for_voltages,
    resolve_models,
    source_currents,
    source_values,
    transition_rates,
    unit_voltage_table,
    voltage_table,
)
