"""Jump operators as total functions on truth sets.

Everything runs on statement bitmasks.  The Theta family and SSK reduce to
unions of precomputed witness consequence sets; the supervaluational jumps
enumerate precisifications only over the negation chains that a statement's
classical value can see, packing all assignments into int columns.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from typing import Sequence

from .base_model import TruthSet
from .consequence import ConsequenceMode, _Table, engine_for
from .schemes import (Admissibility, SchemeError, downward_mask, evaluator_for, requirement_holds,
                      xi_requirement)
from .syntax import And, Exists, ForAll, Formula, Not, Or, SentencePool, TrAtom, has_tr, instances


class JumpKind(enum.Enum):
    SK = "sk"
    SV = "sv"
    VB = "vb"
    VC = "vc"
    MC = "mc"
    SSK = "ssk"
    THETA = "theta"
    THETA_STAR = "theta*"
    THETA_STAR_C = "theta*c"
    THETA_STAR_MC = "theta*mc"
    THETA_C = "thetac"
    THETA_MC = "thetamc"

    @classmethod
    def parse(cls, text: str) -> "JumpKind":
        t = text.strip().lower().replace("_", "").replace("-", "").replace("star", "*")
        aliases = {"skjump": "sk", "θ": "theta", "θ*": "theta*"}
        t = aliases.get(t, t)
        for k in cls:
            if k.value == t:
                return k
        raise ValueError(f"unknown jump kind {text!r}")


class WitnessPolicy(enum.Enum):
    SINGLE = "single"
    PREMISE_SET = "set"


SUPERVALUATIONAL = {JumpKind.SV: Admissibility.SV, JumpKind.VB: Admissibility.VB,
                    JumpKind.VC: Admissibility.VC, JumpKind.MC: Admissibility.MC}
THETA_FAMILY = (JumpKind.THETA, JumpKind.THETA_STAR, JumpKind.THETA_STAR_C, JumpKind.THETA_STAR_MC,
                JumpKind.THETA_C, JumpKind.THETA_MC)
# jumps whose every argument is sound (X <= J(X))
ALWAYS_SOUND = THETA_FAMILY


@dataclass(frozen=True)
class JumpConfig:
    kind: JumpKind
    mode: ConsequenceMode = ConsequenceMode.FINITARY
    witness: WitnessPolicy | None = None
    # restrict the witness pool (None: all pool witnesses)
    witnesses: tuple[Formula, ...] | None = None

    @property
    def policy(self) -> WitnessPolicy:
        if self.witness is not None:
            return self.witness
        return WitnessPolicy.PREMISE_SET if self.kind is JumpKind.SSK else WitnessPolicy.SINGLE


def is_con_instance(pool: SentencePool, base, f: Formula) -> bool:
    """not (Tr(s) and Tr(t)) with t° the code of not s°."""
    if not (isinstance(f, Not) and isinstance(f.f, And)):
        return False
    a, b = f.f.a, f.f.b
    return isinstance(a, TrAtom) and isinstance(b, TrAtom) and _neg_pair(pool, base, a, b)


def is_com_instance(pool: SentencePool, base, f: Formula) -> bool:
    """not Tr(s) <-> Tr(t), desugared, with t° the code of not s°."""
    if not (isinstance(f, And) and isinstance(f.a, Or) and isinstance(f.b, Or)):
        return False
    l1, r1 = f.a.a, f.a.b
    l2, r2 = f.b.a, f.b.b
    if not (isinstance(l1, Not) and isinstance(l1.f, Not) and isinstance(l1.f.f, TrAtom)):
        return False
    s = l1.f.f
    if not (isinstance(r1, TrAtom) and l2 == Not(r1) and r2 == Not(s)):
        return False
    return _neg_pair(pool, base, s, r1)


def _neg_pair(pool, base, s: TrAtom, t: TrAtom) -> bool:
    i, j = base.tr_index(s.t), base.tr_index(t.t)
    return i is not None and j is not None and pool.statements[j] == Not(pool.statements[i])


class JumpEngine:
    """All jumps over one pool, with per-argument memoization."""

    def __init__(self, pool: SentencePool):
        self.pool = pool
        self.ev = evaluator_for(pool)
        self.base = self.ev.base
        self.cons = engine_for(pool)
        self.n = len(pool)
        self.all_bits = (1 << self.n) - 1
        self.W = list(pool.witnesses)
        self.w_index = {w: k for k, w in enumerate(self.W)}
        self.xi = [xi_requirement(pool, self.base, w) for w in self.W]
        self.down = [downward_mask(pool, self.base, w) for w in self.W]
        self.con_w = [is_con_instance(pool, self.base, w) for w in self.W]
        self.com_w = [is_com_instance(pool, self.base, w) for w in self.W]
        self.stmt_xi = self.xi[:self.n]  # statements come first among witnesses
        self._memo: dict = {}
        self._gmemo: dict = {}
        self._lock = threading.Lock()
        # negation chains (components of the negation-edge graph)
        parent = list(range(self.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j in self.ev.edges:
            parent[find(i)] = find(j)
        comp: dict[int, int] = {}
        for i in range(self.n):
            comp[find(i)] = comp.get(find(i), 0) | (1 << i)
        self.comp_of = [comp[find(i)] for i in range(self.n)]

    # witnesses
    def _witness_ids(self, cfg: JumpConfig) -> list[int]:
        if cfg.witnesses is None:
            return list(range(len(self.W)))
        missing = [w for w in cfg.witnesses if w not in self.w_index]
        if missing:
            raise ValueError("restricted witness range mentions formulas outside the witness pool")
        return sorted({self.w_index[w] for w in cfg.witnesses})

    def _selected(self, kind: JumpKind, bits: int, ids: Sequence[int]) -> list[int]:
        star = kind in (JumpKind.THETA_STAR, JumpKind.THETA_STAR_C, JumpKind.THETA_STAR_MC)
        use_con = kind in (JumpKind.THETA_STAR_C, JumpKind.THETA_C, JumpKind.THETA_STAR_MC, JumpKind.THETA_MC)
        use_com = kind in (JumpKind.THETA_STAR_MC, JumpKind.THETA_MC)
        out = []
        for k in ids:
            if requirement_holds(self.xi[k], bits):
                out.append(k)
            elif star and bits & self.down[k]:
                out.append(k)
            elif use_con and self.con_w[k]:
                out.append(k)
            elif use_com and self.com_w[k]:
                out.append(k)
        return out

    def _close(self, chosen: list[int], cfg: JumpConfig) -> int:
        if cfg.policy is WitnessPolicy.SINGLE:
            cons = self.cons.witness_consequences(cfg.mode)
            out = 0
            for k in chosen:
                out |= cons[k]
            return out
        key = (cfg.mode, tuple(chosen))
        r = self._gmemo.get(key)
        if r is None:
            r = self.cons.consequences([self.W[k] for k in chosen], cfg.mode)
            self._gmemo[key] = r
        return r

    # main entry
    def apply_bits(self, cfg: JumpConfig, bits: int) -> int:
        key = (cfg, bits)
        r = self._memo.get(key)
        if r is None:
            r = self._apply(cfg, bits)
            self._memo[key] = r
        return r

    def _apply(self, cfg: JumpConfig, bits: int) -> int:
        kind = cfg.kind
        if kind is JumpKind.SK:
            out = 0
            for i, req in enumerate(self.stmt_xi):
                if requirement_holds(req, bits):
                    out |= 1 << i
            return out
        if kind in SUPERVALUATIONAL:
            return self._superval(SUPERVALUATIONAL[kind], bits)
        ids = self._witness_ids(cfg)
        if kind is JumpKind.SSK:
            nb = self.ev.neg_bits(bits)
            chosen = [k for k in ids if self.ev.sk_true(self.W[k])(bits, nb)]
            return self._close(chosen, cfg)
        return self._close(self._selected(kind, bits, ids), cfg)

    # supervaluation
    def _superval(self, adm: Admissibility, bits: int) -> int:
        if not self.ev.consistent(bits):
            raise SchemeError("supervaluational jumps need a consistent argument")
        forced_off = self.ev.neg_bits(bits) if adm is Admissibility.VB else 0
        if not self._extendable(adm, bits, forced_off):
            return self.all_bits
        out = 0
        for i, f in enumerate(self.pool.statements):
            if self._supertrue(adm, bits, forced_off, f):
                out |= 1 << i
        return out

    def _component_masks(self, mask: int) -> list[int]:
        seen, comps = 0, []
        for i in range(self.n):
            if mask >> i & 1 and not seen >> i & 1:
                comps.append(self.comp_of[i])
                seen |= self.comp_of[i]
        return comps

    def _extendable(self, adm, bits, forced_off) -> bool:
        if adm in (Admissibility.SV, Admissibility.VB):
            return bits & forced_off == 0
        for c in self._component_masks(self.all_bits):
            t, cols = self._columns(c, bits, forced_off)
            if self._adm_col(adm, c, t, cols) == 0:
                return False
        return True

    def _columns(self, ext: int, bits: int, forced_off: int):
        free = [i for i in range(self.n) if ext >> i & 1 and not (bits | forced_off) >> i & 1]
        t = _Table(free)
        cols = {}
        for i in range(self.n):
            if ext >> i & 1:
                if bits >> i & 1:
                    cols[i] = t.full
                elif forced_off >> i & 1:
                    cols[i] = 0
                else:
                    cols[i] = t.cols[t.pos[i]]
        return t, cols

    def _adm_col(self, adm, ext, t, cols) -> int:
        acc = t.full
        if adm in (Admissibility.VC, Admissibility.MC):
            for i, j in self.ev.edges:
                if ext >> i & 1:
                    if adm is Admissibility.VC:
                        acc &= ~(cols[i] & cols[j])
                    else:
                        acc &= cols[i] ^ cols[j]
        return acc & t.full

    def _supertrue(self, adm, bits, forced_off, f: Formula) -> bool:
        rel = self.ev.relevant(f)
        ext = 0
        for c in self._component_masks(rel):
            ext |= c
        t, cols = self._columns(ext, bits, forced_off)
        adm_col = self._adm_col(adm, ext, t, cols)
        return adm_col & ~self._formula_col(f, t, cols) & t.full == 0

    def _formula_col(self, f: Formula, t: _Table, cols: dict) -> int:
        if not has_tr(f):
            return t.full if self.base.eval_closed(f) else 0
        if isinstance(f, TrAtom):
            i = self.base.tr_index(f.t)
            return 0 if i is None else cols[i]
        if isinstance(f, Not):
            return t.full & ~self._formula_col(f.f, t, cols)
        if isinstance(f, And):
            return self._formula_col(f.a, t, cols) & self._formula_col(f.b, t, cols)
        if isinstance(f, Or):
            return self._formula_col(f.a, t, cols) | self._formula_col(f.b, t, cols)
        parts = [self._formula_col(g, t, cols) for g in instances(f, self.base.R)]
        acc = t.full if isinstance(f, ForAll) else 0
        for p in parts:
            acc = acc & p if isinstance(f, ForAll) else acc | p
        return acc


def engine(pool: SentencePool) -> JumpEngine:
    e = pool.cache.get("jumps")
    if e is None:
        e = JumpEngine(pool)
        pool.cache["jumps"] = e
    return e


def apply(cfg: JumpConfig, X: TruthSet) -> TruthSet:
    """J(X) for the configured jump."""
    return TruthSet(X.pool, engine(X.pool).apply_bits(cfg, X.bits))


def config(kind: JumpKind | str, **kw) -> JumpConfig:
    if isinstance(kind, str):
        kind = JumpKind.parse(kind)
    return JumpConfig(kind, **kw)
