import numpy as np
import pytest
from pydantic import ValidationError

from memkin.errors import DomainError, TopologyError
from memkin.network import (
    DCDrive,
    GeneralTopology,
    Memristor,
    Netlist,
    ParallelTopology,
    SeriesTopology,
    SineDrive,
    VoltageSource,
    all_state_bits,
    as_bits,
    device_count,
    device_voltages,
    is_dc,
    nodal_solve,
    on_count,
    parallel_netlist,
    resolve_models,
    series_netlist,
    source_currents,
    state_index,
    transition_rates,
    voltage_table,
)
from tests.conftest import GAMMA_1V


def test_state_encoding():
    np.testing.assert_array_equal(as_bits(0b101, 3), [True, False, True])
    assert state_index([1, 0, 1]) == 0b101
    assert on_count(0b1011) == 3
    bits = all_state_bits(2)
    assert bits.shape == (4, 2)
    np.testing.assert_array_equal(bits[1], [True, False])


def test_state_encoding_rejects_out_of_range():
    with pytest.raises(DomainError):
        as_bits(4, 2)
    with pytest.raises(DomainError):
        as_bits([1, 0, 1], 2)
    with pytest.raises(DomainError):
        as_bits([1, 2], 2)


def test_drives():
    assert DCDrive(v_a=2.0).voltage(0.3) == 2.0
    sine = SineDrive(amplitude=1.5, frequency=1e3)
    assert sine.period == pytest.approx(1e-3)
    assert sine.voltage(0.25e-3) == pytest.approx(1.5)
    np.testing.assert_allclose(sine.voltage(np.array([0.0, 0.5e-3])), [0.0, 0.0], atol=1e-12)
    assert is_dc(SeriesTopology(n=2, drive=DCDrive(v_a=1.0)))
    assert not is_dc(SeriesTopology(n=2, drive=sine))


def test_series_voltage_divider(series2, switching_model):
    np.testing.assert_allclose(device_voltages(series2, [switching_model] * 2, 0), [1.0, 1.0])
    np.testing.assert_allclose(
        device_voltages(series2, [switching_model] * 2, 0b01), [2e3 / 1.1e4, 2e4 / 1.1e4]
    )
    assert source_currents(series2, [switching_model] * 2, 0)[0] == pytest.approx(1e-4)


def test_parallel_devices_see_the_drive(switching_model):
    topology = ParallelTopology(n=3, drive=DCDrive(v_a=1.0))
    np.testing.assert_allclose(device_voltages(topology, [switching_model] * 3, 0b010), [1.0] * 3)
    rates = transition_rates(topology, [switching_model] * 3, 0)
    np.testing.assert_allclose(rates, [GAMMA_1V] * 3, rtol=1e-6)


def test_transition_rates_of_on_devices_vanish(series2, switching_model):
    rates = transition_rates(series2, [switching_model] * 2, 0)
    np.testing.assert_allclose(rates, [GAMMA_1V] * 2, rtol=1e-6)
    rates = transition_rates(series2, [switching_model] * 2, 0b11)
    np.testing.assert_array_equal(rates, [0.0, 0.0])


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_general_series_matches_closed_form(switching_model, n):
    drive = DCDrive(v_a=float(n))
    general = GeneralTopology(netlist=series_netlist(n, switching_model, drive))
    series = SeriesTopology(n=n, drive=drive)
    models = [switching_model] * n
    table = voltage_table(series, models)
    assert table.shape == (1 << n, n)
    np.testing.assert_allclose(voltage_table(general, models), table, rtol=1e-9)
    for state in range(1 << n):
        np.testing.assert_allclose(
            source_currents(general, models, state),
            source_currents(series, models, state),
            rtol=1e-9,
        )


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_general_parallel_matches_closed_form(switching_model, n):
    drive = DCDrive(v_a=1.0)
    general = GeneralTopology(netlist=parallel_netlist(n, switching_model, drive))
    parallel = ParallelTopology(n=n, drive=drive)
    np.testing.assert_allclose(
        voltage_table(general, [switching_model] * n),
        voltage_table(parallel, [switching_model] * n),
        rtol=1e-9,
    )


@pytest.mark.parametrize("n", [2, 5, 10])
def test_series_voltages_sum_to_drive(switching_model, n):
    table = voltage_table(SeriesTopology(n=n, drive=DCDrive(v_a=3.0)), [switching_model] * n)
    np.testing.assert_allclose(table.sum(axis=1), 3.0, rtol=1e-12)


def test_series_voltage_rises_as_neighbours_turn_on(switching_model):
    n = 5
    table = voltage_table(SeriesTopology(n=n, drive=DCDrive(v_a=5.0)), [switching_model] * n)
    for state in range(1 << n):
        for j in range(n):
            if (state >> j) & 1:
                continue
            after = state | (1 << j)
            for i in range(n):
                if i != j:
                    assert table[after, i] > table[state, i]


def test_nodal_solve(switching_model):
    netlist = series_netlist(2, switching_model, DCDrive(v_a=2.0))
    voltages = nodal_solve(netlist, netlist.device_models(), 0)
    assert voltages["0"] == 0.0
    assert voltages["n0"] == pytest.approx(2.0)
    assert voltages["n1"] == pytest.approx(1.0)


def test_netlist_rejects_floating_nodes(switching_model):
    with pytest.raises(ValidationError, match="not connected to ground"):
        Netlist(
            elements=(
                VoltageSource(name="src", node_pos="n0", node_neg="0", drive=DCDrive(v_a=1.0)),
                Memristor(name="M0", node_pos="n0", node_neg="0", model="m"),
                Memristor(name="M1", node_pos="a", node_neg="b", model="m"),
            ),
            models={"m": switching_model},
        )


def test_netlist_rejects_missing_source(switching_model):
    with pytest.raises(ValidationError, match="no source"):
        Netlist(
            elements=(Memristor(name="M0", node_pos="n0", node_neg="0", model="m"),),
            models={"m": switching_model},
        )


def test_conflicting_sources_are_a_topology_error(switching_model):
    netlist = Netlist(
        elements=(
            VoltageSource(name="s1", node_pos="n0", node_neg="0", drive=DCDrive(v_a=1.0)),
            VoltageSource(name="s2", node_pos="n0", node_neg="0", drive=DCDrive(v_a=2.0)),
            Memristor(name="M0", node_pos="n0", node_neg="0", model="m"),
        ),
        models={"m": switching_model},
    )
    with pytest.raises(TopologyError) as error:
        device_voltages(GeneralTopology(netlist=netlist), [switching_model], 0)
    assert "n0" in error.value.nodes


def test_resolve_models(series2, switching_model):
    assert resolve_models(series2, switching_model) == [switching_model, switching_model]
    with pytest.raises(ValueError):
        resolve_models(series2, [switching_model] * 3)
    general = GeneralTopology(netlist=series_netlist(2, switching_model, DCDrive(v_a=2.0)))
    assert resolve_models(general) == [switching_model, switching_model]
    assert device_count(general) == 2
