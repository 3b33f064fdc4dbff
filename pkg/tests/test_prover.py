import pytest

from truthpoint import config, load, minimal_fixpoint
from truthpoint.prover import (ProofTree, Prover, ReplayError, check_elim_admissibility, derivable,
                               derivation_status, nnf, proof_tree, prover_for, replay, width_stability)
from truthpoint.syntax import And, Not, Numeral, Or, TrAtom, load_pool

CORE = load("core")


def st_(pool, name):
    return pool.statements[pool.lookup(name)]


def test_nnf():
    t = TrAtom(Numeral(1))
    assert nnf(Not(Not(t))) == t
    assert nnf(Not(And(t, Not(t)))) == Or(Not(t), t)


def test_basic_derivability():
    assert derivable(CORE, st_(CORE, "lnl"))
    assert not derivable(CORE, st_(CORE, "tau"))
    assert derivable(CORE, st_(CORE, "zero"))
    assert derivation_status(CORE, st_(CORE, "tau")) == "underivable within width 3"


def test_zero_tree_is_axiom():
    t = proof_tree(CORE, st_(CORE, "zero"))
    assert t.rule == "Ax1" and t.premises == []


def test_penumbral_tree():
    t = proof_tree(CORE, st_(CORE, "lnl"))
    assert t.rule == "or"
    assert replay(CORE, t, 3)
    rules = set()

    def walk(n):
        rules.add(n.rule)
        for p in n.premises:
            walk(p)
    walk(t)
    assert "Ax2" in rules


def test_omega_node():
    pool = load_pool("domain 10; range 3; sentence a := forall x . x = x; close instances;")
    t = proof_tree(pool, st_(pool, "a"))
    assert t.rule == "omega" and len(t.premises) == 3
    assert replay(pool, t)


def test_underivable_tree_raises():
    with pytest.raises(ValueError):
        proof_tree(CORE, st_(CORE, "tau"))


def test_replay_rejects_tampering():
    t = proof_tree(CORE, st_(CORE, "lnl"))
    bad = ProofTree("and", t.conclusion, t.premises)
    with pytest.raises(ReplayError):
        replay(CORE, bad)


@pytest.mark.parametrize("name", ["core", "vb-sep", "it-a", "omega", "theta12"])
def test_derivable_set_is_minimal_theta(name):
    pool = load(name)
    assert prover_for(pool).derivable_bits() == minimal_fixpoint(config("theta"), pool).bits


@pytest.mark.parametrize("name", ["core", "vb-sep", "it-a"])
def test_all_trees_replay(name):
    pool = load(name)
    P = prover_for(pool)
    for f in pool.statements:
        if P.derivable(f):
            assert replay(pool, P.proof_tree(f), 3)


@pytest.mark.parametrize("name", ["core", "vb-sep", "it-a", "it-b"])
def test_elim_admissible(name):
    rep = check_elim_admissibility(load(name))
    assert rep["TrElim"]["holds"] and rep["NegTrElim"]["holds"]


def test_width_stable():
    assert width_stability(load("vb-sep"))["stable"]


def test_mutation_breaks_triangle():
    pool = load("vb-sep")
    crippled = Prover(pool, tr_intro=False)
    assert crippled.derivable_bits() != minimal_fixpoint(config("theta"), pool).bits


def test_non_sentence_negtr_intro():
    pool = load_pool("domain 10; sentence n := not Tr(9);")
    t = proof_tree(pool, st_(pool, "n"))
    assert t.rule == "NegTrIntro" and t.premises == []


def test_universal_over_tr_free():
    pool = load_pool("domain 10; range 2; sentence u := forall x . not Tr(x + 5); close instances;")
    assert derivable(pool, st_(pool, "u"))
