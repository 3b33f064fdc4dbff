"""Decidable stand-in for provability in PAT over a finite pool.

Formulas are reduced to propositional skeletons in negation normal form.
Tr-free parts fold to constants, Tr(t) becomes an atom for the value of t, and
in Finitary mode a quantified formula with Tr inside becomes an opaque atom.
The opaque atom for a universal is keyed by the skeletons of its instances, so
forall x A and not exists x not A share one atom.  Finitary consequence adds
the downward bridges Q -> A(d) and nothing else, so it never has the omega rule.
Validity mode expands quantifiers over the range and reads Tr of a non-sentence
as false: it is classical consequence over all expansions of the base model.
"""

from __future__ import annotations

import enum
import threading
from typing import Iterable, Sequence

import pycosat

from .base_model import BaseModel
from .syntax import (And, ArithAtom, Exists, ForAll, Formula, Not, Or, SentAtom, SentencePool,
                     TrAtom, free_vars, has_tr, instances)

# truth tables over at most this many atoms are built as Python int columns
TABLE_ATOMS = 20


class ConsequenceMode(enum.Enum):
    FINITARY = "finitary"
    VALIDITY = "validity"


class ConsequenceError(ValueError):
    pass


# propositional skeletons (NNF): ("T",), ("F",), ("L", atom, positive), ("A", x, y), ("O", x, y)
TOP = ("T",)
BOT = ("F",)


def lit(k: int, positive: bool = True):
    return ("L", k, positive)


def conj(x, y):
    if x is BOT or y is BOT:
        return BOT
    if x is TOP:
        return y
    if y is TOP:
        return x
    return ("A", x, y)


def disj(x, y):
    if x is TOP or y is TOP:
        return TOP
    if x is BOT:
        return y
    if y is BOT:
        return x
    return ("O", x, y)


def neg(p):
    tag = p[0]
    if tag == "T":
        return BOT
    if tag == "F":
        return TOP
    if tag == "L":
        return ("L", p[1], not p[2])
    if tag == "A":
        return disj(neg(p[1]), neg(p[2]))
    return conj(neg(p[1]), neg(p[2]))


def big_conj(items):
    out = TOP
    for p in items:
        out = conj(out, p)
    return out


def big_disj(items):
    out = BOT
    for p in items:
        out = disj(out, p)
    return out


def prop_atoms(p, acc: set):
    stack = [p]
    while stack:
        q = stack.pop()
        if q[0] == "L":
            acc.add(q[1])
        elif q[0] in ("A", "O"):
            stack.append(q[1])
            stack.append(q[2])
    return acc


class _Skeletons:
    """Skeleton builder for one mode over one pool."""

    def __init__(self, base: BaseModel, mode: ConsequenceMode):
        self.base = base
        self.mode = mode
        self.atom_ids: dict = {}
        self.atom_keys: list = []
        self.bridges: dict[int, list] = {}  # opaque atom -> its instance skeletons
        self._memo: dict = {}
        self.lock = threading.RLock()

    def atom(self, key) -> int:
        k = self.atom_ids.get(key)
        if k is None:
            k = len(self.atom_keys)
            self.atom_ids[key] = k
            self.atom_keys.append(key)
        return k

    def skel(self, f: Formula):
        p = self._memo.get(f)
        if p is None:
            with self.lock:
                p = self._skel(f)
                self._memo[f] = p
        return p

    def _skel(self, f: Formula):
        if not has_tr(f):
            if free_vars(f):
                raise ConsequenceError("formula has free variables")
            return TOP if self.base.eval_closed(f) else BOT
        if isinstance(f, TrAtom):
            c = self.base.eval_term(f.t)
            if self.mode is ConsequenceMode.VALIDITY and not self.base.is_sentence(c):
                return BOT
            return lit(self.atom(("tr", c)))
        if isinstance(f, Not):
            return neg(self.skel(f.f))
        if isinstance(f, And):
            return conj(self.skel(f.a), self.skel(f.b))
        if isinstance(f, Or):
            return disj(self.skel(f.a), self.skel(f.b))
        parts = [self.skel(g) for g in instances(f, self.base.R)]
        if self.mode is ConsequenceMode.VALIDITY:
            return big_conj(parts) if isinstance(f, ForAll) else big_disj(parts)
        if isinstance(f, ForAll):
            return self._opaque(tuple(parts))
        # exists x A  ==  not forall x not A
        return neg(self._opaque(tuple(neg(p) for p in parts)))

    def _opaque(self, parts: tuple):
        # a universal whose instances are all constant is decided outright
        if all(p is TOP for p in parts):
            return TOP
        if any(p is BOT for p in parts):
            return BOT
        key = ("q", parts)
        fresh = key not in self.atom_ids
        k = self.atom(key)
        if fresh:
            self.bridges[k] = list(parts)
        return lit(k)

    def closure_atoms(self, props: Sequence) -> set:
        """Atoms of props plus everything reachable through opaque bridges."""
        seen: set = set()
        for p in props:
            prop_atoms(p, seen)
        todo = [k for k in seen if k in self.bridges]
        while todo:
            k = todo.pop()
            for p in self.bridges[k]:
                new = prop_atoms(p, set()) - seen
                seen |= new
                todo.extend(j for j in new if j in self.bridges)
        return seen

    def bridge_props(self, atoms: Iterable[int]) -> list:
        out = []
        for k in sorted(atoms):
            for p in self.bridges.get(k, ()):
                out.append(disj(lit(k, False), p))
        return out


class _Table:
    """Truth-table columns over a fixed atom list; bit m of a column is row m."""

    def __init__(self, atoms: Sequence[int]):
        self.pos = {k: i for i, k in enumerate(atoms)}
        width = len(atoms)
        self.rows = 1 << width
        self.full = (1 << self.rows) - 1
        self.cols = []
        for i in range(width):
            period = 1 << (i + 1)
            block = ((1 << (1 << i)) - 1) << (1 << i)
            reps = self.full // ((1 << period) - 1)
            self.cols.append(block * reps)
        self._memo: dict = {}

    def col(self, p) -> int:
        c = self._memo.get(p)
        if c is not None:
            return c
        tag = p[0]
        if tag == "T":
            c = self.full
        elif tag == "F":
            c = 0
        elif tag == "L":
            c = self.cols[self.pos[p[1]]]
            if not p[2]:
                c = self.full ^ c
        elif tag == "A":
            c = self.col(p[1]) & self.col(p[2])
        else:
            c = self.col(p[1]) | self.col(p[2])
        self._memo[p] = c
        return c


def _cnf_unsat(props: Sequence, n_atoms: int) -> bool:
    """True iff the conjunction of NNF props is unsatisfiable (Tseitin + pycosat)."""
    clauses: list[list[int]] = []
    next_var = [n_atoms]
    memo: dict = {}

    def enc(p) -> int:
        v = memo.get(p)
        if v is not None:
            return v
        tag = p[0]
        if tag == "L":
            v = p[1] + 1 if p[2] else -(p[1] + 1)
        else:
            next_var[0] += 1
            v = next_var[0]
            if tag == "T":
                clauses.append([v])
            elif tag == "F":
                clauses.append([-v])
            else:
                a, b = enc(p[1]), enc(p[2])
                # NNF is monotone, so one implication direction suffices
                if tag == "A":
                    clauses.append([-v, a])
                    clauses.append([-v, b])
                else:
                    clauses.append([-v, a, b])
        memo[p] = v
        return v

    for p in props:
        if p is BOT:
            return True
        if p is TOP:
            continue
        clauses.append([enc(p)])
    if not clauses:
        return False
    return pycosat.solve(clauses) == "UNSAT"


class ConsequenceEngine:
    """Entailment over one pool, both modes; results are memoized per query."""

    def __init__(self, pool: SentencePool, base: BaseModel | None = None):
        self.pool = pool
        self.base = base or BaseModel(pool)
        self.sk = {m: _Skeletons(self.base, m) for m in ConsequenceMode}
        self._tables: dict = {}
        self._cache: dict = {}
        self._wcons: dict = {}
        self._lock = threading.RLock()
        self.known = set(pool.statements) | set(pool.witnesses)

    def skeleton(self, f: Formula, mode: ConsequenceMode = ConsequenceMode.FINITARY):
        return self.sk[mode].skel(f)

    # pool-level table: all statements and witnesses, if small enough
    def _pool_table(self, mode):
        if mode not in self._tables:
            with self._lock:
                if mode not in self._tables:
                    S = self.sk[mode]
                    props = [S.skel(f) for f in self.pool.statements + self.pool.witnesses]
                    atoms = S.closure_atoms(props)
                    if len(atoms) <= TABLE_ATOMS:
                        t = _Table(sorted(atoms))
                        br = t.full
                        for p in S.bridge_props(atoms):
                            br &= t.col(p)
                        self._tables[mode] = (t, br)
                    else:
                        self._tables[mode] = None
        return self._tables[mode]

    def _decide(self, premises: list, conclusion, mode) -> bool:
        S = self.sk[mode]
        gs = [S.skel(g) for g in premises]
        c = S.skel(conclusion)
        if c is TOP or any(g is BOT for g in gs):
            return True
        pt = self._pool_table(mode)
        if pt is not None and all(f in self.known for f in premises) and conclusion in self.known:
            t, acc = pt
            for g in gs:
                acc &= t.col(g)
            return acc & ~t.col(c) & t.full == 0
        atoms = S.closure_atoms(gs + [c])
        bridges = S.bridge_props(atoms)
        if len(atoms) <= TABLE_ATOMS:
            t = _Table(sorted(atoms))
            acc = t.full
            for p in gs + bridges:
                acc &= t.col(p)
            return acc & ~t.col(c) & t.full == 0
        return _cnf_unsat(gs + bridges + [neg(c)], len(S.atom_keys))

    def entails(self, premises: Iterable[Formula], conclusion: Formula,
                mode: ConsequenceMode = ConsequenceMode.FINITARY) -> bool:
        prem = sorted(set(premises), key=repr)
        for f in prem + [conclusion]:
            if free_vars(f):
                raise ConsequenceError("entailment needs sentences")
        key = (mode, tuple(prem), conclusion)
        r = self._cache.get(key)
        if r is None:
            r = self._decide(prem, conclusion, mode)
            self._cache[key] = r
        return r

    def provable_implication(self, psi: Formula, phi: Formula,
                             mode: ConsequenceMode = ConsequenceMode.FINITARY) -> bool:
        return self.entails([psi], phi, mode)

    def consequences(self, premises: Iterable[Formula], mode: ConsequenceMode = ConsequenceMode.FINITARY) -> int:
        """Bitmask of statements entailed by the premise set."""
        prem = list(premises)
        pt = self._pool_table(mode)
        S = self.sk[mode]
        if pt is not None and all(f in self.known for f in prem):
            t, acc = pt
            for g in prem:
                acc &= t.col(S.skel(g))
            out = 0
            for i, f in enumerate(self.pool.statements):
                if acc & ~t.col(S.skel(f)) & t.full == 0:
                    out |= 1 << i
            return out
        out = 0
        for i, f in enumerate(self.pool.statements):
            if self.entails(prem, f, mode):
                out |= 1 << i
        return out

    def witness_consequences(self, mode: ConsequenceMode = ConsequenceMode.FINITARY) -> list[int]:
        """cons[w]: statements provably implied by witness w alone."""
        r = self._wcons.get(mode)
        if r is None:
            r = [self.consequences([w], mode) for w in self.pool.witnesses]
            self._wcons[mode] = r
        return r


def engine_for(pool: SentencePool) -> ConsequenceEngine:
    e = pool.cache.get("consequence")
    if e is None:
        e = ConsequenceEngine(pool)
        pool.cache["consequence"] = e
    return e


def _check_in_pool(pool: SentencePool, formulas: Iterable[Formula]):
    e = engine_for(pool)
    for f in formulas:
        if f not in e.known:
            raise ConsequenceError("formula is neither a statement nor a witness of the pool")


def entails(pool: SentencePool, premises: Iterable[Formula], conclusion: Formula,
            mode: ConsequenceMode = ConsequenceMode.FINITARY) -> bool:
    premises = list(premises)
    _check_in_pool(pool, premises + [conclusion])
    return engine_for(pool).entails(premises, conclusion, mode)


def provable_implication(pool: SentencePool, psi: Formula, phi: Formula,
                         mode: ConsequenceMode = ConsequenceMode.FINITARY) -> bool:
    return entails(pool, [psi], phi, mode)
