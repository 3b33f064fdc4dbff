"""Finite analog of the one-sided infinitary supervaluation calculus.

Formulas live in negation normal form (Tait style).  Derivability is computed
by saturating the set of derivable sequents of bounded width; ordinal and rank
annotations are dropped, since a finite pool saturates in finitely many rounds.
The omega rule takes one premise per numeral below the quantifier range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .base_model import BaseModel
from .schemes import evaluator_for
from .syntax import And, Exists, ForAll, Formula, Not, Or, SentencePool, TrAtom, instances, is_arith_literal, to_text

Sequent = frozenset

RULES = ("Ax1", "Ax2", "or", "and", "exists", "omega", "TrIntro", "NegTrIntro")


def nnf(f: Formula) -> Formula:
    """Push negations down to literals; double negations vanish."""
    if isinstance(f, Not):
        g = f.f
        if isinstance(g, Not):
            return nnf(g.f)
        if isinstance(g, And):
            return Or(nnf(Not(g.a)), nnf(Not(g.b)))
        if isinstance(g, Or):
            return And(nnf(Not(g.a)), nnf(Not(g.b)))
        if isinstance(g, ForAll):
            return Exists(g.v, nnf(Not(g.body)))
        if isinstance(g, Exists):
            return ForAll(g.v, nnf(Not(g.body)))
        return f
    if isinstance(f, And):
        return And(nnf(f.a), nnf(f.b))
    if isinstance(f, Or):
        return Or(nnf(f.a), nnf(f.b))
    if isinstance(f, (ForAll, Exists)):
        return type(f)(f.v, nnf(f.body))
    return f



@dataclass
class ProofTree:
    rule: str
    conclusion: Sequent
    premises: list["ProofTree"] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"rule": self.rule, "conclusion": sorted(to_text(f) for f in self.conclusion),
                "premises": [p.as_dict() for p in self.premises]}

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)


class Prover:
    """Saturation over sequents of width <= width drawn from the pool's NNF universe."""

    def __init__(self, pool: SentencePool, width: int = 3, tr_intro: bool = True):
        self.pool = pool
        self.width = width
        self.tr_intro = tr_intro
        self.base: BaseModel = evaluator_for(pool).base
        self.R = pool.qrange
        universe: dict[Formula, None] = {}
        for f in pool.statements:
            self._collect(nnf(f), universe)
            self._collect(nnf(Not(f)), universe)
        self.universe = list(universe)
        self.uid = {f: i for i, f in enumerate(self.universe)}
        # how each derivable sequent was first obtained: rule, principal, premises
        self.why: dict[Sequent, tuple] = {}
        self.rounds = 0
        self._saturate()

    def _collect(self, f: Formula, acc: dict):
        if f in acc:
            return
        acc[f] = None
        if isinstance(f, (And, Or)):
            self._collect(f.a, acc)
            self._collect(f.b, acc)
        elif isinstance(f, (ForAll, Exists)):
            for g in instances(f, self.R):
                self._collect(g, acc)

    # axioms
    def _axiom(self, seq: Sequent) -> tuple | None:
        for f in seq:
            if is_arith_literal(f) and self.base.true0(f):
                return ("Ax1", f, ())
        pos = {}
        for f in seq:
            if isinstance(f, TrAtom):
                pos[self.base.eval_term(f.t)] = f
        for f in seq:
            if isinstance(f, Not) and isinstance(f.f, TrAtom):
                c = self.base.eval_term(f.f.t)
                if c in pos:
                    return ("Ax2", (pos[c], f), ())
        return None

    def _premise(self, gamma: Sequent, extra: Iterable[Formula], principal: Formula) -> Sequent | None:
        """A derivable premise Gamma, extra (optionally keeping the principal formula)."""
        s = gamma | frozenset(extra)
        if s in self.why:
            return s
        s2 = s | {principal}
        if len(s2) <= self.width and s2 in self.why:
            return s2
        return None

    def _rule(self, seq: Sequent) -> tuple | None:
        for f in sorted(seq, key=lambda g: self.uid.get(g, -1)):
            gamma = seq - {f}
            if isinstance(f, Or):
                for g in (f.a, f.b):
                    p = self._premise(gamma, [g], f)
                    if p is not None:
                        return ("or", f, (p,))
            elif isinstance(f, And):
                pa = self._premise(gamma, [f.a], f)
                pb = self._premise(gamma, [f.b], f) if pa is not None else None
                if pa is not None and pb is not None:
                    return ("and", f, (pa, pb))
            elif isinstance(f, Exists):
                for g in instances(f, self.R):
                    p = self._premise(gamma, [g], f)
                    if p is not None:
                        return ("exists", f, (p,))
            elif isinstance(f, ForAll):
                ps = []
                for g in instances(f, self.R):
                    p = self._premise(gamma, [g], f)
                    if p is None:
                        break
                    ps.append(p)
                else:
                    return ("omega", f, tuple(ps))
            elif isinstance(f, TrAtom):
                if not self.tr_intro:
                    continue
                i = self.base.tr_index(f.t)
                if i is not None:
                    p = frozenset([nnf(self.pool.statements[i])])
                    if p in self.why:
                        return ("TrIntro", f, (p,))
            elif isinstance(f, Not) and isinstance(f.f, TrAtom):
                i = self.base.tr_index(f.f.t)
                if i is None:
                    # non-sentence: no premise needed
                    return ("NegTrIntro", f, ())
                p = frozenset([nnf(Not(self.pool.statements[i]))])
                if p in self.why:
                    return ("NegTrIntro", f, (p,))
        return None

    def _candidates(self):
        U = self.universe
        for k in range(1, self.width + 1):
            for combo in combinations(U, k):
                yield frozenset(combo)

    def _saturate(self):
        cands = list(self._candidates())
        for s in cands:
            a = self._axiom(s)
            if a is not None:
                self.why[s] = a
        pending = [s for s in cands if s not in self.why]
        while True:
            self.rounds += 1
            fresh = {}
            for s in pending:
                r = self._rule(s)
                if r is not None:
                    fresh[s] = r
            if not fresh:
                break
            # round-based: a round only sees sequents derived in earlier rounds
            self.why.update(fresh)
            pending = [s for s in pending if s not in fresh]

    # queries
    def derivable(self, f: Formula) -> bool:
        return frozenset([nnf(f)]) in self.why

    def derivable_bits(self) -> int:
        out = 0
        for i, f in enumerate(self.pool.statements):
            if self.derivable(f):
                out |= 1 << i
        return out

    def proof_tree(self, f: Formula) -> ProofTree:
        s = frozenset([nnf(f)])
        if s not in self.why:
            raise ValueError(f"{to_text(f)} is not derivable at width {self.width}")
        return self._tree(s)

    def _tree(self, s: Sequent) -> ProofTree:
        rule, _, prem = self.why[s]
        return ProofTree(rule, s, [self._tree(p) for p in prem])


def prover_for(pool: SentencePool, width: int = 3, tr_intro: bool = True) -> Prover:
    key = ("prover", width, tr_intro)
    p = pool.cache.get(key)
    if p is None:
        p = Prover(pool, width, tr_intro)
        pool.cache[key] = p
    return p


def derivable(pool: SentencePool, f: Formula, width: int = 3) -> bool:
    if pool.idx(f) is None:
        raise ValueError("derivable expects a pool statement")
    return prover_for(pool, width).derivable(f)


def derivation_status(pool: SentencePool, f: Formula, width: int = 3) -> str:
    """'derivable', or 'underivable within width' (saturation bound, not a refutation)."""
    if prover_for(pool, width).derivable(f):
        return "derivable"
    return f"underivable within width {width}"


def proof_tree(pool: SentencePool, f: Formula, width: int = 3) -> ProofTree:
    return prover_for(pool, width).proof_tree(f)


# ------------------------------------------------------------------ replay


class ReplayError(ValueError):
    pass


def replay(pool: SentencePool, tree: ProofTree, width: int | None = None) -> bool:
    """Independent check that every node is a correct rule instance."""
    base = BaseModel(pool)
    R = pool.qrange

    def check(t: ProofTree):
        seq = t.conclusion
        if width is not None and len(seq) > width:
            raise ReplayError("sequent wider than the bound")
        prem = [p.conclusion for p in t.premises]
        if t.rule == "Ax1":
            ok = any(is_arith_literal(f) and base.true0(f) for f in seq) and not prem
        elif t.rule == "Ax2":
            vals = {base.eval_term(f.t) for f in seq if isinstance(f, TrAtom)}
            ok = not prem and any(isinstance(f, Not) and isinstance(f.f, TrAtom)
                                  and base.eval_term(f.f.t) in vals for f in seq)
        else:
            ok = any(_matches(t.rule, f, seq, prem, base, pool, R) for f in seq)
        if not ok:
            raise ReplayError(f"bad {t.rule} step concluding {sorted(map(to_text, seq))}")
        for p in t.premises:
            check(p)

    check(tree)
    return True


def _matches(rule, f, seq, prem, base, pool, R) -> bool:
    gamma = seq - {f}

    def fits(p, g):
        return p - {f} == gamma | {g} - {f} or p == gamma | {g}

    if rule == "or" and isinstance(f, Or):
        return len(prem) == 1 and any(fits(prem[0], g) for g in (f.a, f.b))
    if rule == "and" and isinstance(f, And):
        return len(prem) == 2 and fits(prem[0], f.a) and fits(prem[1], f.b)
    if rule == "exists" and isinstance(f, Exists):
        return len(prem) == 1 and any(fits(prem[0], g) for g in instances(f, R))
    if rule == "omega" and isinstance(f, ForAll):
        inst = instances(f, R)
        return len(prem) == len(inst) and all(fits(p, g) for p, g in zip(prem, inst))
    if rule == "TrIntro" and isinstance(f, TrAtom):
        i = base.tr_index(f.t)
        return i is not None and prem == [frozenset([nnf(pool.statements[i])])]
    if rule == "NegTrIntro" and isinstance(f, Not) and isinstance(f.f, TrAtom):
        i = base.tr_index(f.f.t)
        if i is None:
            return prem == []
        return prem == [frozenset([nnf(Not(pool.statements[i]))])]
    return False


# ------------------------------------------------------------- admissibility


def check_elim_admissibility(pool: SentencePool, width: int = 3) -> dict:
    """Tr-Elim and not-Tr-Elim on the derivable set."""
    P = prover_for(pool, width)
    base = P.base
    tr_fail, negtr_fail = [], []
    for i, f in enumerate(pool.statements):
        if isinstance(f, TrAtom) and P.derivable(f):
            k = base.tr_index(f.t)
            if k is not None and not P.derivable(pool.statements[k]):
                tr_fail.append(i + 1)
        if isinstance(f, Not) and isinstance(f.f, TrAtom) and P.derivable(f):
            k = base.tr_index(f.f.t)
            if k is not None and not frozenset([nnf(Not(pool.statements[k]))]) in P.why:
                negtr_fail.append(i + 1)
    return {"TrElim": {"holds": not tr_fail, "failures": tr_fail},
            "NegTrElim": {"holds": not negtr_fail, "failures": negtr_fail}}


def width_stability(pool: SentencePool, widths: Iterable[int] = (3, 4)) -> dict:
    """Single-sentence derivable sets at each width; stable when they agree."""
    sets = {w: prover_for(pool, w).derivable_bits() for w in widths}
    return {"widths": list(sets), "stable": len(set(sets.values())) == 1,
            "sets": {w: [pool.names[i] for i in range(len(pool)) if b >> i & 1] for w, b in sets.items()}}


__all__ = ["Prover", "ProofTree", "RULES", "check_elim_admissibility", "derivable", "derivation_status",
           "nnf", "proof_tree", "prover_for", "replay", "width_stability", "ReplayError", "Sequent"]
