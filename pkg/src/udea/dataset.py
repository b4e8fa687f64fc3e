"""Data model and the nominal input-oriented variable-returns efficiency model.

A dataset holds I units, an N x I input matrix and an M x I output matrix.
The nominal score of unit ``i`` is the optimal value of

    min theta  s.t.  Y lam >= y_i,  X lam <= theta x_i,  sum(lam) = 1, lam >= 0

which is always feasible (the unit is its own peer) and bounded in (0, 1].
"""

from dataclasses import dataclass, field

import numpy as np

from .lp import EQ, GEQ, LEQ, LinearProgram, SolverFault, solve_lp

SCORE_TOL = 1e-6
PEER_TOL = 1e-6


@dataclass
class DeaDataset:
    """Named units with nonnegative input/output matrices.

    ``env_outputs`` flags output rows that are environmental: they enter the
    output constraints unchanged but are exempt from uncertainty transforms.
    ``scale_factors`` records the cumulative per-variable scaling applied so
    far (inputs first, then outputs).
    """

    names: list
    X: np.ndarray  # N x I
    Y: np.ndarray  # M x I
    env_outputs: np.ndarray = None  # bool, length M
    input_names: list = None
    output_names: list = None
    scale_factors: np.ndarray = None

    def __post_init__(self):
        self.names = list(self.names)
        self.X = np.atleast_2d(np.asarray(self.X, dtype=float))
        self.Y = np.atleast_2d(np.asarray(self.Y, dtype=float))
        n, i_x = self.X.shape
        m, i_y = self.Y.shape
        if i_x != i_y or i_x != len(self.names):
            raise ValueError("inconsistent unit counts across names, X and Y")
        if i_x == 0:
            raise ValueError("dataset must contain at least one unit")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate unit names")
        for mat, what in ((self.X, "input"), (self.Y, "output")):
            if not np.all(np.isfinite(mat)):
                raise ValueError(f"non-finite {what} value")
            if np.any(mat < 0):
                raise ValueError(f"negative {what} value")
        if np.any(self.X.sum(axis=0) <= 0):
            raise ValueError("every unit needs at least one positive input")
        if self.env_outputs is None:
            self.env_outputs = np.zeros(m, dtype=bool)
        else:
            self.env_outputs = np.asarray(self.env_outputs, dtype=bool)
            if self.env_outputs.shape != (m,):
                raise ValueError("env_outputs length mismatch")
        if self.input_names is None:
            self.input_names = [f"in{k + 1}" for k in range(n)]
        if self.output_names is None:
            self.output_names = [f"out{k + 1}" for k in range(m)]
        if len(self.input_names) != n or len(self.output_names) != m:
            raise ValueError("variable name length mismatch")
        if self.scale_factors is None:
            self.scale_factors = np.ones(n + m)
        else:
            self.scale_factors = np.asarray(self.scale_factors, dtype=float)
            if self.scale_factors.shape != (n + m,):
                raise ValueError("scale_factors length mismatch")

    @property
    def n_units(self):
        return len(self.names)

    @property
    def n_inputs(self):
        return self.X.shape[0]

    @property
    def n_outputs(self):
        return self.Y.shape[0]

    def variable_names(self):
        return list(self.input_names) + list(self.output_names)


@dataclass
class EfficiencyResult:
    """Score, weights and constraint diagnostics for one unit."""

    dmu: int
    theta: float
    lam: np.ndarray
    input_slacks: np.ndarray
    output_slacks: np.ndarray
    peers: list = field(default_factory=list)
    binding_inputs: list = field(default_factory=list)

    @property
    def efficient(self):
        return self.theta >= 1.0 - SCORE_TOL


def build_envelopment_lp(ds: DeaDataset, dmu: int) -> LinearProgram:
    """Assemble the envelopment program for unit ``dmu``.

    Variables are (lam_1..lam_I, theta); rows are M output >= rows, N input
    <= rows and the convexity equality.
    """
    i = _check_index(ds, dmu)
    n_var = ds.n_units + 1
    c = np.zeros(n_var)
    c[-1] = 1.0

    A = np.zeros((ds.n_outputs + ds.n_inputs + 1, n_var))
    senses = []
    b = np.zeros(ds.n_outputs + ds.n_inputs + 1)
    r = 0
    for m in range(ds.n_outputs):
        A[r, : ds.n_units] = ds.Y[m]
        b[r] = ds.Y[m, i]
        senses.append(GEQ)
        r += 1
    for n in range(ds.n_inputs):
        A[r, : ds.n_units] = ds.X[n]
        A[r, -1] = -ds.X[n, i]
        b[r] = 0.0
        senses.append(LEQ)
        r += 1
    A[r, : ds.n_units] = 1.0
    b[r] = 1.0
    senses.append(EQ)
    return LinearProgram(c=c, A=A, senses=senses, b=b)


def solve_nominal(ds: DeaDataset, dmu: int) -> EfficiencyResult:
    """Nominal efficiency score of unit ``dmu`` with slack and peer analysis."""
    i = _check_index(ds, dmu)
    lp = build_envelopment_lp(ds, i)
    sol = solve_lp(lp)
    if not sol.optimal:
        # the envelopment program is always feasible and bounded
        raise SolverFault(f"envelopment solve ended {sol.status} for unit {i}")
    lam = sol.x[: ds.n_units]
    theta = sol.x[-1]
    # slacks recomputed from lam so they are basis-independent
    output_slacks = ds.Y @ lam - ds.Y[:, i]
    input_slacks = theta * ds.X[:, i] - ds.X @ lam
    peers = [int(k) for k in np.flatnonzero(lam > PEER_TOL)]
    binding = [int(n) for n in np.flatnonzero(np.abs(input_slacks) <= 1e-7)]
    return EfficiencyResult(dmu=i, theta=float(theta), lam=lam,
                            input_slacks=input_slacks,
                            output_slacks=output_slacks,
                            peers=peers, binding_inputs=binding)


def solve_all(ds: DeaDataset) -> list:
    return [solve_nominal(ds, i) for i in range(ds.n_units)]


def is_extreme(ds: DeaDataset, dmu: int) -> bool:
    """True iff unit ``dmu`` is an extreme point of the production set.

    Operational test: exclude the unit from its own reference set (lam_i = 0)
    and re-solve.  The remaining units can radially reproduce a non-extreme
    unit at its own input level (theta <= 1); for an extreme unit the
    restricted program is infeasible or only reaches theta > 1.
    """
    i = _check_index(ds, dmu)
    lp = build_envelopment_lp(ds, i)
    ub = np.full(ds.n_units + 1, np.inf)
    ub[i] = 0.0
    lp = LinearProgram(c=lp.c, A=lp.A, senses=lp.senses, b=lp.b, ub=ub)
    sol = solve_lp(lp)
    if sol.status == "infeasible":
        return True
    if not sol.optimal:
        raise SolverFault(f"extreme-point solve ended {sol.status} for unit {i}")
    return sol.objective > 1.0 + SCORE_TOL


def scale_dataset(ds: DeaDataset, factors) -> DeaDataset:
    """Multiply each variable row by its positive factor.

    Efficiency scores are invariant to this (units invariance of the
    variable-returns model); it is how raw data are brought to the common
    percent scale that makes one uncertainty half-width meaningful.
    """
    factors = np.asarray(factors, dtype=float)
    n, m = ds.n_inputs, ds.n_outputs
    if factors.shape != (n + m,):
        raise ValueError(f"expected {n + m} factors, got {factors.shape}")
    if np.any(factors <= 0) or not np.all(np.isfinite(factors)):
        raise ValueError("scale factors must be positive and finite")
    return DeaDataset(
        names=list(ds.names),
        X=ds.X * factors[:n, None],
        Y=ds.Y * factors[n:, None],
        env_outputs=ds.env_outputs.copy(),
        input_names=list(ds.input_names),
        output_names=list(ds.output_names),
        scale_factors=ds.scale_factors * factors,
    )


def _check_index(ds: DeaDataset, dmu: int) -> int:
    i = int(dmu)
    if not 0 <= i < ds.n_units:
        raise IndexError(f"unit index {dmu} out of range for {ds.n_units} units")
    return i
