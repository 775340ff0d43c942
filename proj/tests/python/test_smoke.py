import math

import pytest

import hdc


def test_unit_vector_normalizes():
    v = hdc.UnitVector([3.0, 4.0])
    assert v.dim == 2
    assert v.coords() == pytest.approx([0.6, 0.8], abs=1e-15)
    assert v[1] == pytest.approx(0.8)
    with pytest.raises(IndexError):
        v[2]
    with pytest.raises(hdc.DegenerateInput):
        hdc.UnitVector([0.0, 0.0])


def test_schedule_values():
    assert hdc.compute_rounds(1e-3, 0.5, 0.0) == 12
    assert hdc.compute_repetitions(10, 0.05, 0.1) == 17
    parts = hdc.split_budget(800, 24)
    assert sum(parts) == 800
    assert max(parts) - min(parts) <= 1
    sched = hdc.noisy_schedule(0.05, 0.05, 0.1)
    assert sched.total == sched.burn_in + math.ceil(
        max(sched.t0, sched.t1, sched.t2, sched.t3)
    )


def test_posterior_update_and_halving():
    p = hdc.CirclePosterior.uniform()
    assert p.total_mass() == pytest.approx(1.0, abs=1e-12)
    assert p.halving_query() == pytest.approx(math.pi / 2)
    q = p.updated(math.pi / 2, +1, 0.1)
    assert q.total_mass() == pytest.approx(1.0, abs=1e-12)
    assert q.density_at(math.pi / 2) > q.density_at(3 * math.pi / 2)


def test_plane_bisection_noiseless():
    theta = 1.234
    target = hdc.UnitVector([math.cos(theta), math.sin(theta)])
    oracle = hdc.truth_oracle(target)
    result = hdc.dc2(hdc.UnitVector.axis(2, 0), hdc.UnitVector.axis(2, 1), 20, 0.0, oracle)
    assert result.rounds_used == 20
    assert oracle.queries_used == 20
    assert hdc.estimation_error(result.estimate, target) <= math.pi / 2**20 + 1e-12
    assert result.posterior.sector_count <= 41


def test_dc_noiseless_exact_query_count():
    d = 4
    target, basis = hdc.random_problem(d, seed=7)
    oracle = hdc.truth_oracle(target)
    tree = hdc.AggregationTree.balanced(d)
    estimate = hdc.dc(basis, oracle, tree, rho=0.0, eps=1e-2, delta=0.5)
    per_call = math.ceil(math.log2(5 * math.pi * (d - 1) / 1e-2))
    assert oracle.queries_used == (d - 1) * per_call
    assert hdc.estimation_error(estimate, target) <= 1e-2


def test_repetitive_matches_dc_when_noiseless():
    d = 5
    target, basis = hdc.random_problem(d, seed=11)
    tree = hdc.AggregationTree.chain(d)
    o1 = hdc.truth_oracle(target)
    o2 = hdc.truth_oracle(target)
    direct = hdc.dc(basis, o1, tree, rho=0.0, budget=60)
    est, reps, logical = hdc.repetitive_dc(basis, o2, tree, rho=0.0, budget=60)
    assert reps == 1
    assert logical == 60
    assert est.coords() == direct.coords()


def test_run_experiment_deterministic():
    records = hdc.run_experiment(d=6, rho=0.1, method="dc", trials=3, seed=99, budget=120)
    again = hdc.run_experiment(d=6, rho=0.1, method="dc", trials=3, seed=99, budget=120)
    assert [r.trial for r in records] == [0, 1, 2]
    assert all(r.queries_used == 120 for r in records)
    assert [r.error for r in records] == [r.error for r in again]
    assert [r.seed for r in records] == [r.seed for r in again]
    with pytest.raises(hdc.ParameterError):
        hdc.run_experiment(d=6, rho=0.1, method="dc", trials=3, seed=99)
