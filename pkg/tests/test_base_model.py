import pytest
from hypothesis import given, settings, strategies as st

from truthpoint import TruthSet
from truthpoint.base_model import BaseModel
from truthpoint.syntax import ArithAtom, Not, Numeral, Succ, load_pool

from oracles import neg_ext


@pytest.fixture(scope="module")
def small():
    return load_pool("domain 8; sentence tau := Tr(#tau); close negation;")


def test_terms(small):
    B = BaseModel(small)
    assert B.eval_term(Numeral(3)) == 3
    assert B.eval_term(Succ(Numeral(7))) == 7  # saturates at N-1
    assert B.eval_term(Numeral(99)) == 7
    assert B.tr_index(Numeral(1)) == 0
    assert B.tr_index(Numeral(0)) is None


def test_true0(small):
    B = BaseModel(small)
    zero = ArithAtom("=", Numeral(0), Numeral(0))
    assert B.true0(zero)
    assert not B.true0(Not(zero))
    assert not B.true0(ArithAtom("<", Numeral(2), Numeral(1)))
    with pytest.raises(ValueError):
        B.true0(Not(Not(zero)))


def test_negative_extension(small):
    B = BaseModel(small)
    non_sentences = {0} | set(range(3, 8))
    assert B.negative_extension(TruthSet(small, 0)) == non_sentences
    assert B.negative_extension(TruthSet.from_names(small, ["~tau"])) == non_sentences | {1}
    assert 1 not in B.negative_extension(TruthSet.from_names(small, ["tau"]))


def test_truthset_ops(core):
    a = TruthSet.from_names(core, ["tau", "d"])
    b = TruthSet.from_names(core, ["d"])
    assert b <= a and not a <= b
    assert (a - b).names() == ["tau"]
    assert (a & b) == b and (a | b) == a
    assert "tau" in a and 2 in a and core.statements[1] in a
    assert len(a) == 2 and list(a) == a.codes() == [2, 6]
    with pytest.raises(ValueError):
        TruthSet(core, 1 << len(core))
    with pytest.raises(ValueError):
        TruthSet.from_codes(core, [0])


@settings(max_examples=300, deadline=None)
@given(st.integers(0, (1 << 13) - 1))
def test_neg_bits_matches_oracle(bits):
    from truthpoint import load
    core = load("core")
    assert BaseModel(core).neg_bits(bits) == neg_ext(core, bits)
