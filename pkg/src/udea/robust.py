"""Box-uncertainty configuration and the worst-case-favourable robust solve.

With every data cell free to move within +/- sigma, the score of the unit
under evaluation is maximised at a single corner of the box: its own inputs
drop and outputs rise by sigma while every rival's inputs rise and outputs
drop.  The robust solve is therefore one nominal solve on that transformed
("virtual") dataset.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dataset import DeaDataset, EfficiencyResult, solve_nominal

DEFAULT_EPS = 1e-9
DEFAULT_STEP = 0.01
DEFAULT_CAP = 3.6


@dataclass
class UncertaintyConfig:
    """Box half-width, admissibility cap, grid step and input clamp floor.

    All values are in scaled data units; ``nu`` may be ``inf``.
    """

    sigma: float = 0.0
    nu: float = DEFAULT_CAP
    step: float = DEFAULT_STEP
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be nonnegative")
        if self.nu < 0:
            raise ValueError("nu must be nonnegative")
        if math.isfinite(self.nu) and self.sigma > self.nu + 1e-12:
            raise ValueError("sigma exceeds the cap nu")
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.eps < 0:
            raise ValueError("eps must be nonnegative")


def transform_box(ds: DeaDataset, dmu: int, sigma: float,
                  eps: float = DEFAULT_EPS) -> DeaDataset:
    """Shift every unit to the corner of its box most favourable to ``dmu``.

    Transformed inputs are floored at ``eps`` and outputs at zero so
    uncertainty never introduces negative (or vanishing-input) data.
    Environmental output rows are left untouched.
    """
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    i = int(dmu)
    if not 0 <= i < ds.n_units:
        raise IndexError(f"unit index {dmu} out of range")
    X = ds.X + sigma
    X[:, i] = ds.X[:, i] - sigma
    Y = ds.Y - sigma
    Y[:, i] = ds.Y[:, i] + sigma
    Y[ds.env_outputs, :] = ds.Y[ds.env_outputs, :]
    if sigma > 0:
        np.maximum(X, eps, out=X)
        np.maximum(Y, 0.0, out=Y)
    return DeaDataset(names=list(ds.names), X=X, Y=Y,
                      env_outputs=ds.env_outputs.copy(),
                      input_names=list(ds.input_names),
                      output_names=list(ds.output_names),
                      scale_factors=ds.scale_factors.copy())


def robust_efficiency(ds: DeaDataset, dmu: int, sigma: float,
                      eps: float = DEFAULT_EPS) -> EfficiencyResult:
    """Best achievable score of ``dmu`` over the sigma-box: a nominal solve
    on the worst-case-favourable corner dataset."""
    return solve_nominal(transform_box(ds, dmu, sigma, eps), dmu)


def efficiency_gain_upper_bound(ds: DeaDataset, dmu: int, sigma: float,
                                binding_inputs) -> float:
    """Upper bound on the score increase available to ``dmu`` when all data
    move by at most sigma, taken over its binding input rows."""
    i = int(dmu)
    q_set = list(binding_inputs)
    if not q_set:
        raise ValueError("binding input set must be non-empty")
    others = [k for k in range(ds.n_units) if k != i]
    if not others:
        raise ValueError("bound needs at least two units")
    best = -np.inf
    for q in q_set:
        xqi = ds.X[q, i]
        if xqi <= 0:
            raise ZeroDivisionError(f"unit {i} has nonpositive input {q}")
        spread = ds.X[q, others].max() - ds.X[q, others].min()
        best = max(best, (spread + 2.0 * sigma) / xqi)
    return float(best)
