"""Satisfaction relations and one-step clauses over a pool.

Formula-level functions (classical_sat, sk_sat, xi_onestep, ...) take a
TruthSet.  The jump engines use the compiled forms: an Evaluator turns each
formula into a closure over bitmasks, and compile_xi reduces a witness's xi
clause to a requirement "all of mask" or "any of mask" on X.
"""

from __future__ import annotations

import enum
from typing import Callable

from .base_model import BaseModel, TruthSet
from .syntax import (And, ArithAtom, Exists, ForAll, Formula, Not, Or, SentAtom, SentencePool, TrAtom,
                     has_tr, instances, is_arith_literal)


class Admissibility(enum.Enum):
    SV = "sv"
    VB = "vb"
    VC = "vc"
    MC = "mc"


class SchemeError(ValueError):
    pass


class Evaluator:
    """Compiled classical and Strong Kleene evaluation for one pool."""

    def __init__(self, pool: SentencePool, base: BaseModel | None = None):
        self.pool = pool
        self.base = base or BaseModel(pool)
        self._cl: dict[Formula, Callable[[int], bool]] = {}
        self._skt: dict[Formula, Callable[[int, int], bool]] = {}
        self._skf: dict[Formula, Callable[[int, int], bool]] = {}
        self._rel: dict[Formula, int] = {}
        # negation edges (phi, not phi), both coded
        self.edges = [(i, j) for i, j in enumerate(self.base.neg_index) if j is not None]
        self._unneg = [(1 << i, 1 << j) for i, j in enumerate(self.base.unneg_index) if j is not None]

    def neg_bits(self, bits: int) -> int:
        out = 0
        for bi, bj in self._unneg:
            if bits & bi:
                out |= bj
        return out

    def consistent(self, bits: int) -> bool:
        return bits & self.neg_bits(bits) == 0

    # classical
    def classical(self, f: Formula) -> Callable[[int], bool]:
        fn = self._cl.get(f)
        if fn is None:
            fn = self._compile_cl(f)
            self._cl[f] = fn
        return fn

    def _compile_cl(self, f: Formula):
        if not has_tr(f):
            v = self.base.eval_closed(f)
            return (lambda b: True) if v else (lambda b: False)
        if isinstance(f, TrAtom):
            i = self.base.tr_index(f.t)
            if i is None:
                return lambda b: False
            m = 1 << i
            return lambda b: bool(b & m)
        if isinstance(f, Not):
            g = self.classical(f.f)
            return lambda b: not g(b)
        if isinstance(f, And):
            x, y = self.classical(f.a), self.classical(f.b)
            return lambda b: x(b) and y(b)
        if isinstance(f, Or):
            x, y = self.classical(f.a), self.classical(f.b)
            return lambda b: x(b) or y(b)
        parts = [self.classical(g) for g in instances(f, self.base.R)]
        if isinstance(f, ForAll):
            return lambda b: all(p(b) for p in parts)
        return lambda b: any(p(b) for p in parts)

    # Strong Kleene: positive extension b, negative extension nb (sentence part)
    def sk_true(self, f: Formula) -> Callable[[int, int], bool]:
        fn = self._skt.get(f)
        if fn is None:
            fn = self._compile_sk(f, True)
            self._skt[f] = fn
        return fn

    def sk_false(self, f: Formula) -> Callable[[int, int], bool]:
        fn = self._skf.get(f)
        if fn is None:
            fn = self._compile_sk(f, False)
            self._skf[f] = fn
        return fn

    def _compile_sk(self, f: Formula, want: bool):
        if not has_tr(f):
            v = self.base.eval_closed(f) == want
            return (lambda b, nb: True) if v else (lambda b, nb: False)
        if isinstance(f, TrAtom):
            i = self.base.tr_index(f.t)
            if i is None:
                # non-sentences are in X- for every X
                return (lambda b, nb: False) if want else (lambda b, nb: True)
            m = 1 << i
            if want:
                return lambda b, nb: bool(b & m)
            return lambda b, nb: bool(nb & m)
        if isinstance(f, Not):
            return self.sk_false(f.f) if want else self.sk_true(f.f)
        pick = self.sk_true if want else self.sk_false
        if isinstance(f, (And, Or)):
            x, y = pick(f.a), pick(f.b)
            if isinstance(f, And) == want:
                return lambda b, nb: x(b, nb) and y(b, nb)
            return lambda b, nb: x(b, nb) or y(b, nb)
        parts = [pick(g) for g in instances(f, self.base.R)]
        if isinstance(f, ForAll) == want:
            return lambda b, nb: all(p(b, nb) for p in parts)
        return lambda b, nb: any(p(b, nb) for p in parts)

    def sk_sat_bits(self, bits: int, f: Formula) -> bool:
        return self.sk_true(f)(bits, self.neg_bits(bits))

    # statements whose Tr atom the classical value of f can depend on
    def relevant(self, f: Formula) -> int:
        r = self._rel.get(f)
        if r is None:
            r = self._relevant(f)
            self._rel[f] = r
        return r

    def _relevant(self, f: Formula) -> int:
        if not has_tr(f):
            return 0
        if isinstance(f, TrAtom):
            i = self.base.tr_index(f.t)
            return 0 if i is None else 1 << i
        if isinstance(f, Not):
            return self.relevant(f.f)
        if isinstance(f, (And, Or)):
            return self.relevant(f.a) | self.relevant(f.b)
        out = 0
        for g in instances(f, self.base.R):
            out |= self.relevant(g)
        return out


def evaluator_for(pool: SentencePool) -> Evaluator:
    ev = pool.cache.get("evaluator")
    if ev is None:
        ev = Evaluator(pool)
        pool.cache["evaluator"] = ev
    return ev


def _stmt_check(S: TruthSet, phi: Formula):
    if phi not in S.pool.index and phi not in S.pool.witnesses:
        raise SchemeError("formula is not a statement or witness of the pool")


def classical_sat(S: TruthSet, phi: Formula) -> bool:
    """(N, S) |= phi, quantifiers over the pool's range."""
    _stmt_check(S, phi)
    return evaluator_for(S.pool).classical(phi)(S.bits)


def sk_sat(S: TruthSet, phi: Formula) -> bool:
    """Strong Kleene truth with extension S and anti-extension S-."""
    _stmt_check(S, phi)
    return evaluator_for(S.pool).sk_sat_bits(S.bits, phi)


# ----------------------------------------------------------------- xi clauses


def xi_requirement(pool: SentencePool, base: BaseModel, w: Formula) -> tuple[str, int]:
    """The xi clause for witness w as ("all", mask) or ("any", mask) over statement indices.

    ("all", 0) is always satisfied and ("any", 0) never.  A clause naming a
    constituent with no code cannot be met, since an uncoded sentence is in no X.
    """
    idx = pool.idx
    NEVER = ("any", 0)

    def all_of(fs):
        m = 0
        for g in fs:
            i = idx(g)
            if i is None:
                return NEVER
            m |= 1 << i
        return ("all", m)

    def any_of(fs):
        m = 0
        for g in fs:
            i = idx(g)
            if i is not None:
                m |= 1 << i
        return ("any", m)

    if is_arith_literal(w):
        return ("all", 0) if base.true0(w) else NEVER
    R = base.R
    if isinstance(w, Or):
        return any_of([w.a, w.b])
    if isinstance(w, And):
        return all_of([w.a, w.b])
    if isinstance(w, ForAll):
        return all_of(instances(w, R))
    if isinstance(w, Exists):
        return any_of(instances(w, R))
    if isinstance(w, TrAtom):
        i = base.tr_index(w.t)
        return NEVER if i is None else ("all", 1 << i)
    if isinstance(w, Not):
        g = w.f
        if isinstance(g, Not):
            return all_of([g.f])
        if isinstance(g, Or):
            return all_of([Not(g.a), Not(g.b)])
        if isinstance(g, And):
            return any_of([Not(g.a), Not(g.b)])
        if isinstance(g, ForAll):
            return any_of([Not(h) for h in instances(g, R)])
        if isinstance(g, Exists):
            return all_of([Not(h) for h in instances(g, R)])
        if isinstance(g, TrAtom):
            i = base.tr_index(g.t)
            if i is None:
                return ("all", 0)  # not Sent(t°)
            return all_of([Not(pool.statements[i])])
    return NEVER


def downward_mask(pool: SentencePool, base: BaseModel, x: Formula) -> int:
    """Statements whose membership in X puts x in by the two xi* downward clauses."""
    i = pool.idx(x)
    if i is None:
        return 0
    m = 0
    for j, f in enumerate(pool.statements):
        if isinstance(f, TrAtom) and base.tr_index(f.t) == i:
            m |= 1 << j
        elif isinstance(f, Not) and isinstance(f.f, TrAtom):
            k = base.tr_index(f.f.t)
            if k is not None and Not(pool.statements[k]) == x:
                m |= 1 << j
    return m


def requirement_holds(req: tuple[str, int], bits: int) -> bool:
    kind, m = req
    if kind == "all":
        return m & ~bits == 0
    return bits & m != 0


def xi_onestep(phi: Formula, S: TruthSet) -> bool:
    """xi(phi, S), evaluated clause by clause on the formula."""
    pool = S.pool
    base = evaluator_for(pool).base
    R = base.R

    def member(g: Formula) -> bool:
        return g in S

    if is_arith_literal(phi):
        return base.true0(phi)
    if isinstance(phi, Or):
        return member(phi.a) or member(phi.b)
    if isinstance(phi, And):
        return member(phi.a) and member(phi.b)
    if isinstance(phi, ForAll):
        return all(member(g) for g in instances(phi, R))
    if isinstance(phi, Exists):
        return any(member(g) for g in instances(phi, R))
    if isinstance(phi, TrAtom):
        c = base.eval_term(phi.t)
        return c in S
    if isinstance(phi, Not):
        g = phi.f
        if isinstance(g, Not):
            return member(g.f)
        if isinstance(g, Or):
            return member(Not(g.a)) and member(Not(g.b))
        if isinstance(g, And):
            return member(Not(g.a)) or member(Not(g.b))
        if isinstance(g, ForAll):
            return any(member(Not(h)) for h in instances(g, R))
        if isinstance(g, Exists):
            return all(member(Not(h)) for h in instances(g, R))
        if isinstance(g, TrAtom):
            c = base.eval_term(g.t)
            if not base.is_sentence(c):
                return True
            return member(Not(pool.decode(c)))
    return False


def xi_star_onestep(phi: Formula, S: TruthSet) -> bool:
    """xi*(phi, S): xi plus the two Tr-downward clauses."""
    if xi_onestep(phi, S):
        return True
    pool = S.pool
    base = evaluator_for(pool).base
    if pool.idx(phi) is None:
        return False
    for f in S.formulas():
        if isinstance(f, TrAtom):
            c = base.eval_term(f.t)
            if base.is_sentence(c) and pool.decode(c) == phi:
                return True
        if isinstance(f, Not) and isinstance(f.f, TrAtom):
            c = base.eval_term(f.f.t)
            if base.is_sentence(c) and Not(pool.decode(c)) == phi:
                return True
    return False


# ------------------------------------------------------------- admissibility


def admissible_bits(ev: Evaluator, kind: Admissibility, x: int, xp: int) -> bool:
    if x & ~xp:
        return False
    if kind is Admissibility.SV:
        return True
    if kind is Admissibility.VB:
        return xp & ev.neg_bits(x) == 0
    if not ev.consistent(xp):
        return False
    if kind is Admissibility.VC:
        return True
    return all(xp >> i & 1 or xp >> j & 1 for i, j in ev.edges)


def admissible(kind: Admissibility, X: TruthSet, Xp: TruthSet) -> bool:
    """X' is an admissible precisification of X for the given scheme."""
    return admissible_bits(evaluator_for(X.pool), kind, X.bits, Xp.bits)


def consistent(S: TruthSet) -> bool:
    return evaluator_for(S.pool).consistent(S.bits)


def negative_extension(S: TruthSet) -> set[int]:
    return evaluator_for(S.pool).base.negative_extension(S)
