import numpy as np
import pytest

from helpers import random_dataset
from udea.dataset import (DeaDataset, build_envelopment_lp, is_extreme,
                          scale_dataset, solve_all, solve_nominal)
from udea.lp import solve_lp

TABLE1_SCORES = (1.0, 1.0, 1.0, 1.0, 0.542, 0.278)


def test_envelopment_program_shape(table1):
    lp = build_envelopment_lp(table1, 4)
    assert lp.c.size == 7              # six weights plus theta
    assert lp.A.shape == (3, 7)        # one output, one input, convexity
    assert lp.senses == [">=", "<=", "="]
    assert not lp.maximize


def test_self_solution_feasible(table1):
    lp = build_envelopment_lp(table1, 0)
    x = np.zeros(7)
    x[0] = 1.0
    x[-1] = 1.0
    assert table1.Y[0] @ x[:6] >= table1.Y[0, 0]
    assert table1.X[0] @ x[:6] <= x[-1] * table1.X[0, 0]
    assert solve_lp(lp).objective == pytest.approx(1.0, abs=1e-9)


def test_single_unit_dataset():
    ds = DeaDataset(names=["only"], X=[[2.0]], Y=[[3.0]])
    res = solve_all(ds)
    assert len(res) == 1
    assert res[0].theta == pytest.approx(1.0, abs=1e-9)
    assert res[0].lam[0] == pytest.approx(1.0, abs=1e-9)


def test_table1_scores(table1):
    for res, expected in zip(solve_all(table1), TABLE1_SCORES):
        assert res.theta == pytest.approx(expected, abs=1e-3)


def test_two_unit_geometry():
    ds = DeaDataset(names=["a", "b"], X=[[2.0, 4.0]], Y=[[5.0, 5.0]])
    scores = [r.theta for r in solve_all(ds)]
    assert scores == pytest.approx([1.0, 0.5], abs=1e-9)


def test_identical_units_all_efficient():
    ds = DeaDataset(names=["a", "b", "c"], X=[[2.0] * 3], Y=[[3.0] * 3])
    assert all(r.efficient for r in solve_all(ds))


def test_scores_in_unit_interval(rng):
    for _ in range(10):
        ds = random_dataset(rng)
        for res in solve_all(ds):
            assert 0.0 < res.theta <= 1.0 + 1e-9


def test_inefficient_units_have_binding_input(rng):
    for _ in range(10):
        ds = random_dataset(rng)
        for res in solve_all(ds):
            if not res.efficient:
                assert res.binding_inputs


def test_peers_are_efficient(rng, table1):
    assert solve_nominal(table1, 4).peers == [1, 2]  # B and C
    for _ in range(8):
        ds = random_dataset(rng)
        for res in solve_all(ds):
            for p in res.peers:
                assert solve_nominal(ds, p).theta == pytest.approx(
                    1.0, abs=1e-6)


def test_intensity_weights_convex(rng):
    for _ in range(8):
        ds = random_dataset(rng)
        for res in solve_all(ds):
            assert res.lam.sum() == pytest.approx(1.0, abs=1e-9)
            assert np.all(res.lam >= -1e-9)


def test_is_extreme_table1(table1):
    assert [is_extreme(table1, i) for i in range(6)] == [
        True, True, True, True, False, False]


def test_midpoint_unit_not_extreme(table1):
    # a seventh unit at the midpoint of segment AB is efficient but not
    # an extreme point
    ds = DeaDataset(names=list("ABCDEFG"),
                    X=[[1, 3, 7, 10, 8, 6, 2]],
                    Y=[[1, 4, 7, 8, 5, 2, 2.5]])
    assert solve_nominal(ds, 6).efficient
    assert not is_extreme(ds, 6)


def test_index_out_of_range(table1):
    with pytest.raises(IndexError):
        solve_nominal(table1, 6)
    with pytest.raises(IndexError):
        build_envelopment_lp(table1, -7)
    with pytest.raises(IndexError):
        is_extreme(table1, 99)


def test_scale_examples():
    ds = DeaDataset(names=["p"], X=[[63.0]], Y=[[70.3]])
    scaled = scale_dataset(ds, [100.0 / 70.0, 100.0 / (74.0 * 0.95)])
    assert scaled.X[0, 0] == pytest.approx(90.0, abs=1e-9)
    assert scaled.Y[0, 0] == pytest.approx(100.0, abs=1e-9)
    assert scaled.scale_factors == pytest.approx(
        [100.0 / 70.0, 100.0 / 70.3])


def test_scale_identity(table1):
    scaled = scale_dataset(table1, [1.0, 1.0])
    assert np.array_equal(scaled.X, table1.X)
    assert np.array_equal(scaled.Y, table1.Y)


def test_scale_rejects_nonpositive(table1):
    with pytest.raises(ValueError):
        scale_dataset(table1, [1.0, 0.0])
    with pytest.raises(ValueError):
        scale_dataset(table1, [-2.0, 1.0])


def test_units_invariance(rng):
    for _ in range(8):
        ds = random_dataset(rng)
        factors = rng.uniform(0.1, 10.0, size=ds.n_inputs + ds.n_outputs)
        scaled = scale_dataset(ds, factors)
        for a, b in zip(solve_all(ds), solve_all(scaled)):
            assert a.theta == pytest.approx(b.theta, abs=1e-7)


def test_dataset_validation():
    with pytest.raises(ValueError):
        DeaDataset(names=["a", "a"], X=[[1, 2]], Y=[[1, 2]])
    with pytest.raises(ValueError):
        DeaDataset(names=["a"], X=[[-1.0]], Y=[[1.0]])
    with pytest.raises(ValueError):
        DeaDataset(names=["a", "b"], X=[[1.0, 0.0]], Y=[[1.0, 1.0]])
    with pytest.raises(ValueError):
        DeaDataset(names=["a"], X=[[np.nan]], Y=[[1.0]])
    with pytest.raises(ValueError):
        DeaDataset(names=[], X=np.empty((1, 0)), Y=np.empty((1, 0)))
