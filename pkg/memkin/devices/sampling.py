import numpy as np

from .types import ParamSpread, PoissonExpModel


def sample_params(
    base: PoissonExpModel, spread: ParamSpread, rng: np.random.Generator
) -> PoissonExpModel:
    """
    Copy of `base` with tau0 and V0 drawn uniformly from the spread's intervals.

    tau0 is drawn first, then V0, so a given generator state always yields the
    same device. Degenerate intervals return the bound itself.

    Example:
    >> spread = ParamSpread(tau0_range=(2e5, 4e5), v0_range=(0.04, 0.06))
    >> sample_params(model, spread, np.random.default_rng(0))
    """
    tau0 = rng.uniform(*spread.tau0_range)
    v0 = rng.uniform(*spread.v0_range)
    return base.model_copy(update={"tau0": float(tau0), "v0": float(v0)})


def slowest_corner_model(base: PoissonExpModel, spread: ParamSpread) -> PoissonExpModel:
    return base.model_copy(update=spread.slowest_corner)


def fastest_corner_model(base: PoissonExpModel, spread: ParamSpread) -> PoissonExpModel:
    return base.model_copy(update=spread.fastest_corner)
