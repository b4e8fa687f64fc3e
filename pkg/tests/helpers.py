"""Shared generators and independent oracles for the test suite.

The oracles here deliberately avoid the library's own solution paths:
vertex enumeration for small LPs and exhaustive perturbation-corner search
for the robust transform.
"""

import itertools

import numpy as np

from udea.dataset import DeaDataset, solve_nominal


def table1_dataset():
    return DeaDataset(
        names=list("ABCDEF"),
        X=np.array([[1, 3, 7, 10, 8, 6]], dtype=float),
        Y=np.array([[1, 4, 7, 8, 5, 2]], dtype=float),
    )


def random_dataset(rng, max_units=12, max_dim=3, lo=0.5, hi=5.0):
    """Random dataset with N + M <= max_dim and 2..max_units units."""
    n = int(rng.integers(1, max_dim))
    m = int(rng.integers(1, max_dim + 1 - n))
    i = int(rng.integers(2, max_units + 1))
    return DeaDataset(
        names=[f"u{k}" for k in range(i)],
        X=rng.uniform(lo, hi, size=(n, i)).round(3),
        Y=rng.uniform(lo, hi, size=(m, i)).round(3),
    )


def random_dataset_2d(rng, min_units=3, max_units=8):
    i = int(rng.integers(min_units, max_units + 1))
    return DeaDataset(
        names=[f"u{k}" for k in range(i)],
        X=rng.uniform(0.5, 10.0, size=(1, i)).round(2),
        Y=rng.uniform(0.5, 10.0, size=(1, i)).round(2),
    )


def lp_vertex_oracle(lp, feas_tol=1e-7):
    """Minimum objective over enumerated feasible vertices, or None when no
    vertex is feasible (infeasible for bounded regions)."""
    n = lp.c.size
    cons = [(np.asarray(a, float), s, float(b))
            for a, s, b in zip(lp.A, lp.senses, lp.b)]
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        cons.append((e, ">=", float(lp.lb[j])))
        if np.isfinite(lp.ub[j]):
            cons.append((e, "<=", float(lp.ub[j])))
    best = None
    for combo in itertools.combinations(range(len(cons)), n):
        A = np.array([cons[k][0] for k in combo])
        b = np.array([cons[k][2] for k in combo])
        if abs(np.linalg.det(A)) < 1e-9:
            continue
        x = np.linalg.solve(A, b)
        feasible = True
        for a, s, bb in cons:
            v = a @ x
            if (s == "<=" and v > bb + feas_tol) \
                    or (s == ">=" and v < bb - feas_tol) \
                    or (s == "=" and abs(v - bb) > feas_tol):
                feasible = False
                break
        if feasible:
            obj = float(lp.c @ x)
            if best is None or obj < best:
                best = obj
    return best


def best_corner_score(ds, dmu, sigma, eps=1e-9):
    """Best score for ``dmu`` over every {-sigma, 0, +sigma} perturbation
    pattern of every data cell, with the same nonnegativity clamps the
    transform applies.  Exponential: keep total cells <= 8."""
    cells = ([("x", n, k) for n in range(ds.n_inputs)
              for k in range(ds.n_units)]
             + [("y", m, k) for m in range(ds.n_outputs)
                for k in range(ds.n_units)])
    best = -np.inf
    for pattern in itertools.product((-sigma, 0.0, sigma), repeat=len(cells)):
        X = ds.X.copy()
        Y = ds.Y.copy()
        for (kind, r, k), delta in zip(cells, pattern):
            if kind == "x":
                X[r, k] += delta
            else:
                Y[r, k] += delta
        np.maximum(X, eps, out=X)
        np.maximum(Y, 0.0, out=Y)
        perturbed = DeaDataset(names=list(ds.names), X=X, Y=Y)
        best = max(best, solve_nominal(perturbed, dmu).theta)
    return best


def sorted_extremes_2d(ds):
    """Extreme efficient units of a 1-input/1-output dataset sorted by
    input, or None when the sorted order is not strictly monotone in both
    coordinates (degenerate ties)."""
    from udea.dataset import is_extreme

    ext = sorted((i for i in range(ds.n_units) if is_extreme(ds, i)),
                 key=lambda i: ds.X[0, i])
    xs = np.array([ds.X[0, i] for i in ext])
    ys = np.array([ds.Y[0, i] for i in ext])
    if xs.size == 0 or np.any(np.diff(xs) <= 0) or np.any(np.diff(ys) <= 0):
        return None
    return ext, xs, ys


def segment_min_uncertainty(ds, dmu, seg, xs, ys):
    """Minimum uncertainty for the facet named by a Segment2D identifier."""
    from udea.geometry import min_uncertainty_to_facet, segment_hyperplane_2d

    if seg.kind == "vertical":
        return (ds.X[0, dmu] - xs[0]) / 2.0
    if seg.kind == "horizontal":
        return (ys[-1] - ds.Y[0, dmu]) / 2.0
    h = segment_hyperplane_2d(xs[seg.lo], ys[seg.lo], xs[seg.hi], ys[seg.hi])
    return min_uncertainty_to_facet(ds, dmu, h).value
