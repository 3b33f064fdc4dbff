import pytest

from truthpoint import JumpKind, TruthSet, config, load
from truthpoint.axioms import (AXIOMS, BOT, PK_LEMMA, TOP, MissingClosure, TheoryKind, build_pi_family,
                               categoricity_sweep, check_axiom, check_theory, implication_check, pi_capture,
                               prepare_pool, tbpi_models)
from truthpoint.fixedpoint import enumerate_fixpoints_bits, iterate, minimal_fixpoint
from truthpoint.jumps import engine
from truthpoint.syntax import TrAtom


def S(pool, *names):
    return TruthSet.from_names(pool, names)


@pytest.fixture(scope="module")
def it_pool():
    return prepare_pool(load("it-a"), TheoryKind.IT)


@pytest.fixture(scope="module")
def failures_it():
    return prepare_pool(load("theta-failures"), TheoryKind.IT)


@pytest.fixture(scope="module")
def fam():
    return build_pi_family(load("pk"))


def test_parse_theories():
    assert TheoryKind.parse("IT-") is TheoryKind.IT_MINUS
    assert TheoryKind.parse("IT*c") is TheoryKind.IT_STAR_C
    assert TheoryKind.parse("itstarmc") is TheoryKind.IT_STAR_MC
    with pytest.raises(ValueError):
        TheoryKind.parse("ZF")


def test_minimal_theta_models_it(it_pool):
    rep = check_theory(minimal_fixpoint(config("theta"), it_pool), TheoryKind.IT)
    assert rep.holds, rep.as_dict()


def test_tr_out_fails_on_tr_not_down(failures_it):
    G = iterate(config("theta"), S(failures_it, "trnt"))
    assert not check_axiom(G, TheoryKind.IT, "TrOut").holds


def test_disjunction_fixpoint_fails_tr_out_but_models_it_minus(failures_it):
    G = iterate(config("theta"), S(failures_it, "d"))
    v = check_axiom(G, TheoryKind.IT, "TrOut")
    assert not v.holds and v.witness
    assert check_theory(G, TheoryKind.IT_MINUS).holds


def test_unknown_axiom(it_pool):
    with pytest.raises(KeyError):
        check_axiom(S(it_pool), TheoryKind.IT_MINUS, "TrOut")


def test_missing_closure():
    pool = load("core")
    with pytest.raises(MissingClosure):
        check_axiom(S(pool), TheoryKind.IT, "IT10")


def test_report_shape(it_pool):
    rep = check_theory(S(it_pool, "zero"), TheoryKind.IT_STAR)
    d = rep.as_dict()
    assert [v["axiom"] for v in d["verdicts"]] == list(AXIOMS[TheoryKind.IT_STAR])
    assert d["holds"] is False and rep.failing()


@pytest.mark.parametrize("pool_name, theory, jump", [
    ("it-b", TheoryKind.IT_MINUS, JumpKind.THETA),
    ("it-b", TheoryKind.IT_STAR, JumpKind.THETA_STAR),
    ("it-c", TheoryKind.IT_STAR_C, JumpKind.THETA_STAR_C),
])
def test_sweeps_clean(pool_name, theory, jump):
    rep = categoricity_sweep(theory, jump, load(pool_name))
    assert rep["discrepancies"] == []
    assert rep["checked"] > 0 and rep["mode"] == "exhaustive"


def test_sweep_detects_wrong_pairing():
    # IT* does not axiomatize plain Theta: the sweep must find discrepancies
    rep = categoricity_sweep(TheoryKind.IT_STAR, JumpKind.THETA, load("it-b"))
    assert rep["discrepancies"]
    d = rep["discrepancies"][0]
    assert set(d) == {"set", "fixpointSide", "modelSide", "failingAxiom", "witnessCodes"}


def test_sampled_sweep_deterministic():
    a = categoricity_sweep(TheoryKind.IT_MINUS, JumpKind.THETA, load("it-a"), exhaustive=False, sample=200, seed=5)
    b = categoricity_sweep(TheoryKind.IT_MINUS, JumpKind.THETA, load("it-a"), exhaustive=False, sample=200,
                           seed=5, jobs=2)
    assert a == b and a["mode"] == "sample:200:5"


def test_it9_implication():
    # on this pool every contradictory pair provably yields a coded falsehood
    pool = load("it9")
    assert implication_check(pool, ["IT1", "IT2", "IT8"], "IT9", range(1 << len(pool))) == []
    # without IT8 the implication fails
    assert implication_check(pool, ["IT1", "IT2"], "IT9", range(1 << len(pool)))


def test_pi_clauses(fam):
    pool = fam.pool
    st = pool.statements
    zero = pool.lookup("zero")
    assert st[fam.pi_of[zero]] == TOP
    assert st[fam.pi_of[pool.lookup("~zero")]] == BOT
    tau = pool.lookup("tau")
    assert isinstance(st[fam.pi_of[tau]], TrAtom)
    for p in fam.pis:
        assert fam.pi_of[p] == p


def test_pi_capture(fam):
    models = list(tbpi_models(fam))
    assert models
    for b in models:
        assert pi_capture(fam, b) == []


def test_pk_lemma_on_ssk_fixpoints(fam):
    pool = fam.pool
    cfg = fam.jump_config()
    fps = enumerate_fixpoints_bits(cfg, pool)
    ev = engine(pool).ev
    cons = [b for b in fps if ev.consistent(b)]
    assert cons
    for b in cons:
        for ax in PK_LEMMA:
            assert check_axiom(TruthSet(pool, b), TheoryKind.PK, ax).holds, (ax, b)
        assert check_theory(TruthSet(pool, b), TheoryKind.PK_PLUS).holds
