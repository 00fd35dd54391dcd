from pathlib import Path

import pytest

from memkin.devices import APTMModel, ParamSpread, PoissonExpModel
from memkin.network import DCDrive, ParallelTopology, SeriesTopology
from memkin.settings import load_config

# Device parameters of the switching experiments: tau0 = tau1 = 3e5 s, V0 = V1 = 0.05 V
SWITCHING_PARAMETERS = {"tau0": 3e5, "v0": 0.05, "tau1": 3e5, "v1": 0.05, "r_on": 1e3, "r_off": 1e4}
GAMMA_1V = 1617.2173  # off->on rate at 1 V with the parameters above

SERIES2_MEAN = 309e-6
PARALLEL2_MEAN = 928e-6
PARALLEL10_MEAN = 1.81e-3
SERIES10_MEAN = 72.4e-6
PARALLEL10_SPREAD_MEAN = 15.3e-3
SERIES10_SPREAD_MEAN = 16.4e-6

SERIES2_NETLIST = """\
# two devices in series behind a 2 V source
MODEL m POISSON tau0=3e5 v0=0.05 tau1=3e5 v1=0.05 ron=1e3 roff=1e4
V src n0 0 DC 2.0
M M0 n0 n1 model=m
M M1 n1 0 model=m
"""


@pytest.fixture(scope="session")
def switching_model() -> PoissonExpModel:
    return PoissonExpModel(**SWITCHING_PARAMETERS)


@pytest.fixture(scope="session")
def aptm_model() -> APTMModel:
    return APTMModel(
        k_on=1e5, k_off=1e5, v_on=1.0, v_off=-1.0, alpha_on=1.0, alpha_off=1.0, r_on=1e3, r_off=1e4
    )


@pytest.fixture(scope="session")
def moderate_model() -> PoissonExpModel:
    """Rates of a few hundred hertz, so explicit integration stays cheap."""
    return PoissonExpModel(tau0=1e-2, v0=1.0, tau1=1e-2, v1=1.0, r_on=1e3, r_off=2e3)


@pytest.fixture(scope="session")
def device_spread() -> ParamSpread:
    return ParamSpread(tau0_range=(2e5, 4e5), v0_range=(0.04, 0.06))


@pytest.fixture(scope="session")
def series2() -> SeriesTopology:
    return SeriesTopology(n=2, drive=DCDrive(v_a=2.0))


@pytest.fixture(scope="session")
def parallel2() -> ParallelTopology:
    return ParallelTopology(n=2, drive=DCDrive(v_a=1.0))


@pytest.fixture(scope="session")
def series10() -> SeriesTopology:
    return SeriesTopology(n=10, drive=DCDrive(v_a=10.0))


@pytest.fixture(scope="session")
def parallel10() -> ParallelTopology:
    return ParallelTopology(n=10, drive=DCDrive(v_a=1.0))


@pytest.fixture
def config() -> dict:
    return load_config()


@pytest.fixture
def scratch_folder(tmp_path) -> Path:
    folder = tmp_path / "output"
    folder.mkdir()
    return folder


@pytest.fixture
def series2_netlist_file(tmp_path) -> Path:
    path = tmp_path / "series2.net"
    path.write_text(SERIES2_NETLIST)
    return path
