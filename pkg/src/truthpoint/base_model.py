"""Finite stand-in for the standard model: terms, Tr-free truth, True0 and X-."""

from __future__ import annotations

from typing import Iterable, Iterator

from .syntax import (And, ArithAtom, Exists, ForAll, Formula, Not, Numeral, Or, Plus, SentAtom,
                     SentencePool, SelfCode, Succ, Term, TrAtom, Var, has_tr, is_arith_literal, subst)


class TruthSet:
    """A set of statement codes of one pool, stored as a bitmask over statement indices."""

    __slots__ = ("bits", "pool")

    def __init__(self, pool: SentencePool, bits: int = 0):
        if bits >> len(pool):
            raise ValueError("truth set mentions codes outside the pool")
        self.pool = pool
        self.bits = bits

    @classmethod
    def from_codes(cls, pool: SentencePool, codes: Iterable[int]) -> "TruthSet":
        bits = 0
        for c in codes:
            if not pool.is_sentence_code(c):
                raise ValueError(f"{c} is not a statement code")
            bits |= 1 << (c - 1)
        return cls(pool, bits)

    @classmethod
    def from_formulas(cls, pool: SentencePool, formulas: Iterable[Formula]) -> "TruthSet":
        return cls.from_codes(pool, (pool.code(f) for f in formulas))

    @classmethod
    def from_names(cls, pool: SentencePool, names: Iterable[str]) -> "TruthSet":
        bits = 0
        for n in names:
            bits |= 1 << pool.lookup(n)
        return cls(pool, bits)

    def indices(self) -> Iterator[int]:
        b, i = self.bits, 0
        while b:
            if b & 1:
                yield i
            b >>= 1
            i += 1

    def codes(self) -> list[int]:
        return [i + 1 for i in self.indices()]

    def names(self) -> list[str]:
        return [self.pool.names[i] for i in self.indices()]

    def formulas(self) -> list[Formula]:
        return [self.pool.statements[i] for i in self.indices()]

    def __contains__(self, item) -> bool:
        if isinstance(item, Formula):
            i = self.pool.idx(item)
            return i is not None and bool(self.bits >> i & 1)
        if isinstance(item, int):
            return self.pool.is_sentence_code(item) and bool(self.bits >> (item - 1) & 1)
        if isinstance(item, str):
            return bool(self.bits >> self.pool.lookup(item) & 1)
        return False

    def __len__(self):
        return bin(self.bits).count("1")

    def __iter__(self):
        return iter(self.codes())

    def __eq__(self, other):
        return isinstance(other, TruthSet) and other.bits == self.bits and other.pool is self.pool

    def __hash__(self):
        return hash(self.bits)

    def __le__(self, other: "TruthSet") -> bool:
        return self.bits & ~other.bits == 0

    def __or__(self, other: "TruthSet") -> "TruthSet":
        return TruthSet(self.pool, self.bits | other.bits)

    def __and__(self, other: "TruthSet") -> "TruthSet":
        return TruthSet(self.pool, self.bits & other.bits)

    def __sub__(self, other: "TruthSet") -> "TruthSet":
        return TruthSet(self.pool, self.bits & ~other.bits)

    def __repr__(self):
        return "{" + ", ".join(self.names()) + "}"


class BaseModel:
    """Saturating arithmetic on {0..N-1}; Sent holds exactly of statement codes."""

    def __init__(self, pool: SentencePool):
        self.pool = pool
        self.N = pool.domain_size
        self.R = pool.qrange
        self.n = len(pool)
        if self.N <= self.n:
            raise ValueError("domain needs a spare non-sentence code")
        # negation partner maps over statement indices (syntactic Not only)
        self.neg_index: list[int | None] = []
        self.unneg_index: list[int | None] = []
        for f in pool.statements:
            self.neg_index.append(pool.idx(Not(f)))
            self.unneg_index.append(pool.idx(f.f) if isinstance(f, Not) else None)
        self._term_cache: dict[Term, int] = {}

    # terms
    def eval_term(self, t: Term) -> int:
        v = self._term_cache.get(t)
        if v is None:
            v = self._eval_term(t)
            self._term_cache[t] = v
        return v

    def _eval_term(self, t: Term) -> int:
        top = self.N - 1
        if isinstance(t, Numeral):
            return min(t.n, top)
        if isinstance(t, Succ):
            return min(self.eval_term(t.t) + 1, top)
        if isinstance(t, Plus):
            return min(self.eval_term(t.a) + self.eval_term(t.b), top)
        if isinstance(t, Var):
            raise ValueError(f"free variable {t.v}")
        if isinstance(t, SelfCode):
            raise ValueError(f"unresolved self reference #{t.name}")
        raise TypeError(t)

    def is_sentence(self, value: int) -> bool:
        return 1 <= value <= self.n

    def tr_index(self, t: Term) -> int | None:
        """Statement index coded by the value of t, or None for a non-sentence."""
        c = self.eval_term(t)
        return c - 1 if self.is_sentence(c) else None

    # Tr-free truth
    def atom_true(self, f: Formula) -> bool:
        if isinstance(f, SentAtom):
            return self.is_sentence(self.eval_term(f.t))
        a, b = self.eval_term(f.lhs), self.eval_term(f.rhs)
        if f.rel == "=":
            return a == b
        if f.rel == "!=":
            return a != b
        if f.rel == "<":
            return a < b
        return a <= b

    def true0(self, f: Formula) -> bool:
        """Truth of an arithmetic literal (atom or negated atom, no Tr)."""
        if not is_arith_literal(f):
            raise ValueError("true0 expects an arithmetic literal")
        if isinstance(f, Not):
            return not self.atom_true(f.f)
        return self.atom_true(f)

    def eval_closed(self, f: Formula) -> bool:
        """Truth of a Tr-free sentence; quantifiers range over [0, R)."""
        if isinstance(f, (ArithAtom, SentAtom)):
            return self.atom_true(f)
        if isinstance(f, TrAtom):
            raise ValueError("eval_closed expects a Tr-free sentence")
        if isinstance(f, Not):
            return not self.eval_closed(f.f)
        if isinstance(f, And):
            return self.eval_closed(f.a) and self.eval_closed(f.b)
        if isinstance(f, Or):
            return self.eval_closed(f.a) or self.eval_closed(f.b)
        vals = (self.eval_closed(subst(f.body, f.v, d)) for d in range(self.R))
        return all(vals) if isinstance(f, ForAll) else any(vals)

    # negative extension
    def neg_bits(self, bits: int) -> int:
        """Sentence part of X- as a statement bitmask: {phi : not phi in X}."""
        out = 0
        for i, j in enumerate(self.unneg_index):
            if j is not None and bits >> i & 1:
                out |= 1 << j
        return out

    def negative_extension(self, S: TruthSet) -> set[int]:
        codes = {i + 1 for i in range(self.n) if self.neg_bits(S.bits) >> i & 1}
        codes.update(c for c in range(self.N) if not self.is_sentence(c))
        return codes

    def consistent(self, bits: int) -> bool:
        return bits & self.neg_bits(bits) == 0


def tr_free(f: Formula) -> bool:
    return not has_tr(f)
