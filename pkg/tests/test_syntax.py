import pytest
from hypothesis import given, settings, strategies as st

from truthpoint.syntax import (And, ArithAtom, Exists, ForAll, Not, Numeral, Or, PoolError, SelfCode, TrAtom, Var,
                               is_tr_positive, load_pool, parse_formula, parse_pool, to_text)


def test_parse_truth_teller():
    p = parse_pool("domain 8; sentence tau := Tr(#tau);")
    (s,) = p.sentences
    assert s.name == "tau"
    assert s.body == TrAtom(SelfCode("tau"))


def test_parse_liar():
    (s,) = parse_pool("domain 8; sentence lam := not Tr(#lam);").sentences
    assert s.body == Not(TrAtom(SelfCode("lam")))


def test_undeclared_name():
    with pytest.raises(PoolError, match="ghost"):
        load_pool("domain 8; sentence bad := Tr(#ghost);")


def test_syntax_error_has_position():
    with pytest.raises(PoolError) as e:
        load_pool("domain 8;\nsentence x := Tr(;")
    assert e.value.line == 2


@pytest.mark.parametrize("src, msg", [
    ("sentence a := 0 = 0;", "domain"),
    ("domain 2; sentence a := Tr(#a); sentence b := Tr(#b); close negation;", "too small"),
    ("domain 8; sentence a := 0 = 0; sentence a := 1 = 1;", "duplicate"),
    ("domain 8; sentence a := x = 0;", "free variable"),
    ("domain 8; close everything;", "closure"),
    ("domain 8; range 0;", "range"),
])
def test_pool_errors(src, msg):
    with pytest.raises(PoolError, match=msg):
        load_pool(src)


def test_codes_and_negation_closure():
    pool = load_pool("domain 8; sentence tau := Tr(#tau); close negation;")
    assert pool.code(pool.statements[0]) == 1
    assert pool.statements[0] == TrAtom(Numeral(1))
    assert Not(TrAtom(Numeral(1))) in pool.statements
    assert pool.code(Not(TrAtom(Numeral(1)))) == 2


def test_negation_closure_skips_negations():
    pool = load_pool("domain 8; sentence lam := not Tr(#lam); close negation;")
    assert len(pool) == 1


def test_disjunction_witness(core):
    d = core.statements[core.lookup("d")]
    assert d == Or(TrAtom(Numeral(4)), TrAtom(Numeral(5)))
    assert And(d, d) in core.witnesses


def test_biconditional_desugars(mcsep):
    eq = mcsep.statements[mcsep.lookup("eq")]
    l1, l2 = mcsep.statements[0], mcsep.statements[1]
    assert eq == And(Or(Not(l1), l2), Or(Not(l2), l1))


def test_instances_closure():
    pool = load_pool("domain 10; range 3; sentence a := forall x . x = x; close instances;")
    assert [pool.names[i] for i in range(len(pool))] == ["a", "a[0]", "a[1]", "a[2]"]
    assert pool.statements[2] == ArithAtom("=", Numeral(1), Numeral(1))


def test_theory_closures():
    pool = load_pool("domain 20; sentence z := 0 = 0; close negation; close con; close com; close it10;")
    assert {o for o in pool.origins} == {"declared", "negation", "con", "com", "it10"}
    assert pool.lookup("con(z)") >= 0


def test_lookup_by_code(core):
    assert core.lookup("2") == core.lookup("tau")
    with pytest.raises(KeyError):
        core.lookup("nobody")


def test_fingerprint_stable(core):
    from truthpoint import load
    assert load("core").fingerprint() == core.fingerprint()
    assert load("vb-sep").fingerprint() != core.fingerprint()


def test_tr_positive():
    tau = TrAtom(Numeral(1))
    assert is_tr_positive(tau)
    assert not is_tr_positive(Not(TrAtom(Numeral(2))))
    assert is_tr_positive(Not(Or(Not(tau), ArithAtom("=", Numeral(0), Numeral(1)))))


def _neg_depth_oracle(f, negs=0):
    """Tr occurs only under an even number of negations."""
    if isinstance(f, TrAtom):
        return negs % 2 == 0
    if isinstance(f, Not):
        return _neg_depth_oracle(f.f, negs + 1)
    if isinstance(f, (And, Or)):
        return _neg_depth_oracle(f.a, negs) and _neg_depth_oracle(f.b, negs)
    if isinstance(f, (ForAll, Exists)):
        return _neg_depth_oracle(f.body, negs)
    return True


terms = st.one_of(st.integers(0, 9).map(Numeral))
atoms = st.one_of(terms.map(TrAtom), st.tuples(st.sampled_from(["=", "<", "<=", "!="]), terms, terms)
                  .map(lambda t: ArithAtom(*t)))
formulas = st.recursive(atoms, lambda sub: st.one_of(
    sub.map(Not), st.tuples(sub, sub).map(lambda p: And(*p)), st.tuples(sub, sub).map(lambda p: Or(*p))),
    max_leaves=8)


@settings(max_examples=200, deadline=None)
@given(formulas)
def test_tr_positive_matches_parity(f):
    assert is_tr_positive(f) == _neg_depth_oracle(f)


@settings(max_examples=200, deadline=None)
@given(formulas)
def test_text_round_trip(f):
    assert parse_formula(to_text(f)) == f


def test_quantifier_round_trip():
    f = ForAll("x", Or(Not(TrAtom(Var("x"))), Exists("y", ArithAtom("<", Var("x"), Var("y")))))
    assert parse_formula(to_text(f)) == f
