import pytest
from hypothesis import given, settings, strategies as st

from truthpoint import JumpConfig, JumpKind, SchemeError, TruthSet, WitnessPolicy, apply, config, load
from truthpoint.fixedpoint import iterate
from truthpoint.jumps import engine
from truthpoint.schemes import evaluator_for

import oracles

CORE = load("core")
VBSEP = load("vb-sep")
MCSEP = load("mc-sep")
ALL_KINDS = list(JumpKind)
SUPERVAL = {JumpKind.SV, JumpKind.VB, JumpKind.VC, JumpKind.MC}
THETAS = [JumpKind.THETA, JumpKind.THETA_STAR, JumpKind.THETA_STAR_C, JumpKind.THETA_STAR_MC,
          JumpKind.THETA_C, JumpKind.THETA_MC]


def S(pool, *names):
    return TruthSet.from_names(pool, names)


def test_parse_kinds():
    assert JumpKind.parse("Theta*") is JumpKind.THETA_STAR
    assert JumpKind.parse("theta_star_mc") is JumpKind.THETA_STAR_MC
    assert JumpKind.parse("SKJump") is JumpKind.SK
    with pytest.raises(ValueError):
        JumpKind.parse("nope")


def test_default_policies():
    assert JumpConfig(JumpKind.THETA).policy is WitnessPolicy.SINGLE
    assert JumpConfig(JumpKind.SSK).policy is WitnessPolicy.PREMISE_SET


def test_theta_keeps_disjunction():
    X = S(CORE, "d")
    assert X <= apply(config("theta"), X)


def test_ssk_drops_disjunction():
    assert "d" not in apply(config("ssk"), S(CORE, "d"))


def test_theta_penumbral_from_empty():
    assert "lnl" in apply(config("theta"), S(CORE))


def test_vb_rejects_separating_disjunction():
    G = iterate(config("theta*"), S(VBSEP, "nn"))
    assert "~t1" not in G and "~t2" not in G
    assert "nn" not in apply(config("vb"), G)


def test_mc_rejects_liar_biconditional():
    G = iterate(config("theta*mc"), S(MCSEP, "eq"))
    assert "eq" not in apply(config("mc"), G)


@pytest.mark.parametrize("kind", sorted(SUPERVAL, key=lambda k: k.value))
def test_superval_needs_consistency(kind):
    with pytest.raises(SchemeError):
        apply(JumpConfig(kind), S(CORE, "d", "~d"))


@pytest.mark.parametrize("pool", [VBSEP, MCSEP], ids=["vb-sep", "mc-sep"])
def test_exhaustive_oracle_agreement(pool):
    O = oracles.oracle_for(pool)
    E = engine(pool)
    for b in range(1 << len(pool)):
        expect = {JumpKind.THETA: O.theta(b), JumpKind.THETA_STAR: O.theta(b, star=True),
                  JumpKind.THETA_STAR_C: O.theta(b, star=True, con=True),
                  JumpKind.THETA_STAR_MC: O.theta(b, star=True, con=True, com=True),
                  JumpKind.THETA_C: O.theta(b, con=True), JumpKind.THETA_MC: O.theta(b, con=True, com=True),
                  JumpKind.SK: O.sk_jump(b), JumpKind.SSK: O.ssk(b)}
        if oracles.consistent(pool, b):
            for k in SUPERVAL:
                expect[k] = O.superval(k.value, b)
        for k, v in expect.items():
            assert E.apply_bits(JumpConfig(k), b) == v, (k, TruthSet(pool, b))


def _nested(pool):
    n = len(pool)
    return st.tuples(st.integers(0, (1 << n) - 1), st.integers(0, (1 << n) - 1)).map(lambda t: (t[0] & t[1], t[1]))


@settings(max_examples=120, deadline=None)
@given(_nested(CORE))
def test_monotone_every_kind(pair):
    lo, hi = pair
    E = engine(CORE)
    ev = evaluator_for(CORE)
    for k in ALL_KINDS:
        if k in SUPERVAL and not ev.consistent(hi):
            continue
        a, b = E.apply_bits(JumpConfig(k), lo), E.apply_bits(JumpConfig(k), hi)
        assert a & ~b == 0, k


@settings(max_examples=120, deadline=None)
@given(st.integers(0, (1 << len(MCSEP)) - 1))
def test_theta_family_sound_and_ordered(bits):
    E = engine(MCSEP)
    chain = [JumpKind.SK, JumpKind.THETA, JumpKind.THETA_STAR, JumpKind.THETA_STAR_C, JumpKind.THETA_STAR_MC]
    outs = [E.apply_bits(JumpConfig(k), bits) for k in chain]
    for a, b in zip(outs, outs[1:]):
        assert a & ~b == 0
    for k in THETAS:
        assert bits & ~E.apply_bits(JumpConfig(k), bits) == 0


@settings(max_examples=150, deadline=None)
@given(st.integers(0, (1 << len(CORE)) - 1))
def test_ssk_classically_sound(bits):
    ev = evaluator_for(CORE)
    if not ev.consistent(bits):
        return
    out = engine(CORE).apply_bits(JumpConfig(JumpKind.SSK), bits)
    for i, f in enumerate(CORE.statements):
        if out >> i & 1:
            assert ev.classical(f)(bits)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, (1 << len(CORE)) - 1))
def test_single_witness_ssk_below_premise_set(bits):
    if not evaluator_for(CORE).consistent(bits):
        return
    E = engine(CORE)
    single = E.apply_bits(JumpConfig(JumpKind.SSK, witness=WitnessPolicy.SINGLE), bits)
    assert single & ~E.apply_bits(JumpConfig(JumpKind.SSK), bits) == 0


def test_premise_set_theta_is_stronger():
    E = engine(CORE)
    for b in range(0, 1 << len(CORE), 7):
        single = E.apply_bits(JumpConfig(JumpKind.THETA), b)
        assert single & ~E.apply_bits(JumpConfig(JumpKind.THETA, witness=WitnessPolicy.PREMISE_SET), b) == 0
