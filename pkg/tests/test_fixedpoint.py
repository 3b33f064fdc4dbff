import pytest
from hypothesis import given, settings, strategies as st

from truthpoint import JumpConfig, JumpKind, NonIncreasing, PoolTooLarge, TruthSet, config, load
from truthpoint.fixedpoint import (MAX_POOL_BITS, classify, closures_for, compatible, enumerate_fixpoints,
                                   enumerate_fixpoints_bits, iterate, maximal_intrinsic, minimal_fixpoint,
                                   omega_search)
from truthpoint.jumps import engine
from truthpoint.schemes import evaluator_for

import oracles

CORE = load("core")
FAIL = load("theta-failures")


def S(pool, *names):
    return TruthSet.from_names(pool, names)


def test_minimal_core():
    assert minimal_fixpoint(config("theta"), CORE).names() == ["zero", "lnl"]
    assert "lam" not in minimal_fixpoint(config("theta"), CORE)
    assert "lnl" in minimal_fixpoint(config("ssk"), CORE)


def test_minimal_agree_theta_star_vb():
    sets = {k: minimal_fixpoint(config(k), CORE) for k in ("theta", "theta*", "vb")}
    assert sets["theta"] == sets["theta*"] == sets["vb"]
    assert minimal_fixpoint(config("ssk"), CORE) <= sets["vb"]


def test_iterate_tr_not_down():
    G = iterate(config("theta"), S(FAIL, "trnt"))
    assert "trnt" in G and "ntau" not in G
    c = classify(config("theta"), G)
    assert c.is_fixpoint and c.consistent and not c.tr_down_closed


def test_iterate_negtr_not_down():
    G = iterate(config("theta"), S(FAIL, "ntrnt"))
    assert not classify(config("theta"), G).neg_tr_down_closed


def test_non_increasing_reported():
    r = iterate(config("ssk"), S(CORE, "d"))
    assert isinstance(r, NonIncreasing) and not r
    assert r.stage == 0 and "not increasing" in r.reason


def test_superval_outside_domain_reported():
    r = iterate(config("vb"), S(CORE, "d", "~d"))
    assert isinstance(r, NonIncreasing) and "domain" in r.reason


def test_pool_too_large():
    with pytest.raises(PoolTooLarge):
        enumerate_fixpoints(config("theta"), FAIL)
    assert len(FAIL) > MAX_POOL_BITS


def test_enumerate_matches_brute_force():
    pool = load("vb-sep")
    O = oracles.oracle_for(pool)
    expect = [b for b in range(1 << len(pool)) if O.theta(b, star=True) == b]
    assert enumerate_fixpoints_bits(config("theta*"), pool) == expect


def test_enumerate_parallel_same():
    cfg = config("theta")
    assert enumerate_fixpoints_bits(cfg, CORE, jobs=4) == enumerate_fixpoints_bits(cfg, CORE, jobs=1)


def test_vb_fixpoints_are_theta_star_fixpoints():
    E = engine(CORE)
    C = closures_for(CORE)
    vbs = enumerate_fixpoints_bits(config("vb"), CORE)
    assert vbs
    for b in vbs:
        assert E.apply_bits(config("theta*"), b) == b
        assert E.apply_bits(config("theta"), b) == b
        assert C.sound(b)


def test_theta_star_fixpoints_are_theta_fixpoints_and_kripke():
    E = engine(CORE)
    C = closures_for(CORE)
    for b in enumerate_fixpoints_bits(config("theta*"), CORE):
        assert E.apply_bits(config("theta"), b) == b
        assert C.kripke(b)


def test_some_theta_fixpoint_not_kripke():
    C = closures_for(CORE)
    fps = enumerate_fixpoints_bits(config("theta"), CORE)
    assert any(evaluator_for(CORE).consistent(b) and not C.kripke(b) for b in fps)


def test_compatible():
    assert not compatible(S(FAIL, "tau"), S(FAIL, "ntau"))
    assert compatible(S(FAIL, "tau"), S(FAIL, "tau"))


def test_intrinsic():
    cfg = config("vb")
    m = minimal_fixpoint(cfg, CORE)
    top = maximal_intrinsic(cfg, CORE)
    assert m <= top
    ev = evaluator_for(CORE)
    E = engine(CORE)
    # the minimal fixed point is itself intrinsic: compatible with every consistent sound set
    for y in range(1 << len(CORE)):
        if ev.consistent(y) and y & ~E.apply_bits(cfg, y) == 0:
            assert compatible(m, TruthSet(CORE, y))


def test_omega_search_report(omega):
    rep = omega_search(omega)
    assert rep["jump"] == "ssk" and rep["fixpoints"] >= 1
    assert isinstance(rep["not_omega_closed"], list)


@pytest.mark.parametrize("kind", ["theta", "theta*", "vb"])
def test_minimal_omega_closed(omega, kind):
    m = minimal_fixpoint(config(kind), omega)
    assert classify(config(kind), m).omega_closed


@settings(max_examples=100, deadline=None)
@given(st.integers(0, (1 << len(CORE)) - 1))
def test_theta_iteration_reaches_fixpoint_above_seed(bits):
    for k in ("theta", "theta*"):
        G = iterate(config(k), TruthSet(CORE, bits))
        assert TruthSet(CORE, bits) <= G
        assert engine(CORE).apply_bits(config(k), G.bits) == G.bits


@settings(max_examples=100, deadline=None)
@given(st.integers(0, (1 << len(CORE)) - 1))
def test_classification_flags_match_definitions(bits):
    X = TruthSet(CORE, bits)
    c = classify(config("theta"), X)
    assert c.consistent == oracles.consistent(CORE, bits)
    assert c.classically_sound == all(oracles.cl(CORE, bits, f) for f in X.formulas())
    assert c.as_dict()["kripke_set"] == c.kripke_set
