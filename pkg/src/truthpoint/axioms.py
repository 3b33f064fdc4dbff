"""Model checking of the truth theories over (N, S), and categoricity sweeps.

Every axiom is finitized the same way: quantifiers over codes become loops over
pool statements (a Tr atom whose code is not a statement is false), xi / xi*
witness existentials become membership in the matching jump, and Pr_PAT is the
finitary consequence relation.  An axiom instance whose truth-atom refers to an
uncoded sentence is skipped rather than counted as a failure.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .base_model import TruthSet
from .consequence import ConsequenceMode, engine_for
from .fixedpoint import MAX_POOL_BITS, PoolTooLarge, _WORK, closures_for
from .jumps import SUPERVALUATIONAL, JumpConfig, JumpKind, WitnessPolicy, engine, is_com_instance, is_con_instance
from .schemes import evaluator_for
from .syntax import (And, ArithAtom, Exists, ForAll, Formula, Not, Numeral, Or, SentencePool, TrAtom,
                     instances, is_arith_literal, is_tr_positive, it10_sentence)


class TheoryKind(enum.Enum):
    IT = "IT"
    IT_MINUS = "ITminus"
    IT_STAR = "ITstar"
    IT_STAR_C = "ITstarC"
    IT_STAR_MC = "ITstarMC"
    PK = "PK"
    PK_PLUS = "PKplus"

    @classmethod
    def parse(cls, text: str) -> "TheoryKind":
        t = text.strip().lower()
        if t.endswith("-"):
            t = t[:-1] + "minus"
        t = t.replace("-", "").replace("_", "").replace("*", "star").replace("⁻", "minus")
        for k in cls:
            if k.value.lower() == t:
                return k
        raise ValueError(f"unknown theory {text!r}")


class MissingClosure(ValueError):
    """The pool lacks sentences an axiom quotes."""


AXIOMS: dict[TheoryKind, tuple[str, ...]] = {
    TheoryKind.IT: ("IT1", "IT2", "IT3", "IT4", "IT5", "IT6", "IT7", "IT8", "IT9", "IT10", "TrOut"),
    TheoryKind.IT_MINUS: ("IT1", "IT2", "IT3", "IT4", "IT5", "IT6-", "IT7-", "IT8", "IT9", "IT10"),
    TheoryKind.IT_STAR: ("IT1", "IT2", "IT3*", "IT4", "IT5*", "IT6", "IT7", "IT8", "IT9", "IT10"),
    TheoryKind.IT_STAR_C: ("IT1", "IT2", "IT3*", "IT4", "IT5*", "IT6", "IT7", "IT8", "IT9", "IT10", "CON"),
    TheoryKind.IT_STAR_MC: ("IT1", "IT2", "IT3*", "IT4", "IT5*", "IT6", "IT7", "IT8", "IT9", "IT10", "COM"),
    TheoryKind.PK: ("TBpi", "PK-Tr"),
    TheoryKind.PK_PLUS: ("PUTB", "PK-Tr", "TrOut"),
}

# the jump each theory is meant to axiomatize
TARGET_JUMP = {
    TheoryKind.IT_MINUS: JumpKind.THETA,
    TheoryKind.IT_STAR: JumpKind.THETA_STAR,
    TheoryKind.IT_STAR_C: JumpKind.THETA_STAR_C,
    TheoryKind.IT_STAR_MC: JumpKind.THETA_STAR_MC,
    TheoryKind.PK: JumpKind.SSK,
    TheoryKind.PK_PLUS: JumpKind.SSK,
}

PK_LEMMA = ("PK1", "PK2", "PK3", "PK4", "PK5", "PK6", "PK7")


@dataclass(frozen=True)
class Verdict:
    axiom: str
    holds: bool
    witness: tuple[int, ...] = ()  # codes instantiating a failure
    note: str = ""

    def as_dict(self) -> dict:
        d = {"axiom": self.axiom, "holds": self.holds, "witnessCodes": list(self.witness)}
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class Report:
    theory: str
    set_codes: list[int]
    verdicts: list[Verdict]

    @property
    def holds(self) -> bool:
        return all(v.holds for v in self.verdicts)

    def failing(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.holds]

    def as_dict(self) -> dict:
        return {"theory": self.theory, "set": self.set_codes, "holds": self.holds,
                "verdicts": [v.as_dict() for v in self.verdicts]}


# ----------------------------------------------------------------- pi family

TOP = ArithAtom("=", Numeral(0), Numeral(0))
BOT = Not(TOP)


@dataclass
class PiFamily:
    """pi_n for every base statement n, plus the pi sentences as their own pi."""

    pool: SentencePool
    pi_of: dict[int, int]  # statement index -> index of its pi sentence
    base: list[int]
    pis: list[int]
    level: dict[int, int] = field(default_factory=dict)

    @property
    def witness_range(self) -> tuple[int, ...]:
        """Base plus pi sentences: the shared range of TBpi, PK-Tr and the SSK witnesses."""
        return tuple(sorted(set(self.base) | set(self.pis)))

    def jump_config(self) -> JumpConfig:
        st = self.pool.statements
        return JumpConfig(JumpKind.SSK, witness=WitnessPolicy.SINGLE,
                          witnesses=tuple(st[i] for i in self.witness_range))


def _constituents(pool: SentencePool, f: Formula, R: int) -> list[Formula]:
    """Sentences whose pi the pi clause for f quotes."""
    if is_arith_literal(f) or isinstance(f, TrAtom):
        return []
    if isinstance(f, Not):
        g = f.f
        if isinstance(g, TrAtom):
            return []
        if isinstance(g, Not):
            return [g.f]
        if isinstance(g, (And, Or)):
            return [Not(g.a), Not(g.b)]
        return [Not(h) for h in instances(g, R)]
    if isinstance(f, (And, Or)):
        return [f.a, f.b]
    return instances(f, R)


def _trneg_target(pool: SentencePool, base, f: Formula) -> Formula | None:
    if isinstance(f, Not) and isinstance(f.f, TrAtom):
        i = base.tr_index(f.f.t)
        if i is not None:
            return Not(pool.statements[i])
    return None


def build_pi_family(pool: SentencePool, cap: int = 4096) -> PiFamily:
    """Extend the pool with one pi sentence per base statement.

    Base statements are everything not generated as a pi sentence (or its
    negation); pi is never generated for pi sentences, which serve as their own
    pi.  Constituents the clauses quote are added to the base first.
    """
    fam = pool.cache.get("pi-family")
    if fam is not None:
        return fam
    start = pool

    def is_pi_side(p: SentencePool, i: int) -> bool:
        f = p.statements[i]
        if p.origins[i] == "pi":
            return True
        return isinstance(f, Not) and p.idx(f.f) is not None and p.origins[p.idx(f.f)] == "pi"

    R = pool.qrange
    # constituent closure of the base
    while True:
        base_model = evaluator_for(pool).base
        missing: dict[Formula, None] = {}
        for i, f in enumerate(pool.statements):
            if is_pi_side(pool, i):
                continue
            need = _constituents(pool, f, R)
            t = _trneg_target(pool, base_model, f)
            if t is not None:
                need.append(t)
            for g in need:
                if pool.idx(g) is None:
                    missing[g] = None
        if not missing:
            break
        pool = pool.extend([(g, f"part{k}", "pi-part") for k, g in enumerate(missing, len(pool))],
                           cap=cap)

    # pi sentences, added round by round as their constituents' pi get codes
    while True:
        base_model = evaluator_for(pool).base
        pi_of: dict[int, int] = {i: i for i in range(len(pool)) if pool.origins[i] == "pi"}
        bodies: dict[int, Formula] = {}
        changed = True
        while changed:
            changed = False
            for i, f in enumerate(pool.statements):
                if is_pi_side(pool, i) or i in pi_of or i in bodies:
                    continue
                body = _pi_body(pool, base_model, f, pi_of)
                if body is None:
                    continue
                j = pool.idx(body)
                if j is None:
                    bodies[i] = body
                else:
                    pi_of[i] = j
                changed = True
        waiting = [i for i in range(len(pool)) if not is_pi_side(pool, i) and i not in pi_of]
        if not waiting:
            break
        fresh = list({b: (b, f"pi({pool.names[i]})", "pi") for i, b in bodies.items()}.values())
        if not fresh:
            raise AssertionError("pi construction made no progress")
        pool = pool.extend(fresh, cap=cap)

    base = [i for i in range(len(pool)) if not is_pi_side(pool, i)]
    pis = [i for i in range(len(pool)) if pool.origins[i] == "pi"]
    level = {i: 0 for i in base}
    level.update({i: 1 for i in pis})
    fam = PiFamily(pool, pi_of, base, pis, level)
    pool.cache["pi-family"] = fam
    start.cache["pi-family"] = fam
    return fam


def _pi_body(pool: SentencePool, base, f: Formula, pi_of: dict[int, int]) -> Formula | None:
    R = pool.qrange

    def T(g: Formula):
        i = pool.idx(g)
        if i is None or i not in pi_of:
            return None
        return TrAtom(Numeral(pi_of[i] + 1))

    def all_of(gs):
        parts = [T(g) for g in gs]
        if any(p is None for p in parts):
            return None
        out = parts[0]
        for p in parts[1:]:
            out = And(out, p)
        return out

    def any_of(gs):
        parts = [T(g) for g in gs]
        if any(p is None for p in parts):
            return None
        out = parts[0]
        for p in parts[1:]:
            out = Or(out, p)
        return out

    if is_arith_literal(f):
        return TOP if base.true0(f) else BOT
    if isinstance(f, TrAtom):
        return f
    if isinstance(f, Not):
        g = f.f
        if isinstance(g, TrAtom):
            i = base.tr_index(g.t)
            if i is None:
                return TOP
            j = pool.idx(Not(pool.statements[i]))
            return BOT if j is None else TrAtom(Numeral(j + 1))
        if isinstance(g, Not):
            return T(g.f)
        if isinstance(g, And):
            return any_of([Not(g.a), Not(g.b)])
        if isinstance(g, Or):
            return all_of([Not(g.a), Not(g.b)])
        if isinstance(g, ForAll):
            return any_of([Not(h) for h in instances(g, R)])
        return all_of([Not(h) for h in instances(g, R)])
    if isinstance(f, And):
        return all_of([f.a, f.b])
    if isinstance(f, Or):
        return any_of([f.a, f.b])
    if isinstance(f, ForAll):
        return all_of(instances(f, R))
    return any_of(instances(f, R))


# -------------------------------------------------------------- pool prep

THEORY_CLOSURES = {
    TheoryKind.IT: ("it10", "duals", "trneg"),
    TheoryKind.IT_MINUS: ("it10", "duals", "trneg"),
    TheoryKind.IT_STAR: ("it10", "duals", "trneg"),
    TheoryKind.IT_STAR_C: ("it10", "duals", "trneg", "con"),
    TheoryKind.IT_STAR_MC: ("it10", "duals", "trneg", "com"),
}


def prepare_pool(pool: SentencePool, theory: TheoryKind) -> SentencePool:
    """The pool extended with whatever the theory's axioms quote."""
    if theory in (TheoryKind.PK, TheoryKind.PK_PLUS):
        return build_pi_family(pool).pool
    need = [c for c in THEORY_CLOSURES[theory] if c not in pool.closures]
    if not need:
        return pool
    return pool.extend([], closures=need)


# ------------------------------------------------------------------ checker


class Checker:
    """Axiom evaluation over bitmasks for one pool."""

    def __init__(self, pool: SentencePool):
        self.pool = pool
        self.ev = evaluator_for(pool)
        self.base = self.ev.base
        self.J = engine(pool)
        self.C = closures_for(pool)
        st = pool.statements
        idx = pool.idx
        R = pool.qrange
        self.literals = [(i, self.base.true0(f)) for i, f in enumerate(st) if is_arith_literal(f)]
        self.ands = [(i, idx(f.a), idx(f.b)) for i, f in enumerate(st) if isinstance(f, And)]
        self.ors = [(i, idx(f.a), idx(f.b)) for i, f in enumerate(st) if isinstance(f, Or)]
        self.foralls = [(i, [idx(g) for g in instances(f, R)]) for i, f in enumerate(st) if isinstance(f, ForAll)]
        self.exists = [(i, [idx(g) for g in instances(f, R)]) for i, f in enumerate(st) if isinstance(f, Exists)]
        self.dnegs = [(i, idx(f.f.f)) for i, f in enumerate(st) if isinstance(f, Not) and isinstance(f.f, Not)]
        # Tr(t) statements: (index, index of t° or None)
        self.trs = [(i, self.base.tr_index(f.t)) for i, f in enumerate(st) if isinstance(f, TrAtom)]
        # not Tr(t) statements: (index, index of not t° or None, t° is a sentence)
        self.negtrs = []
        for i, f in enumerate(st):
            if isinstance(f, Not) and isinstance(f.f, TrAtom):
                k = self.base.tr_index(f.f.t)
                self.negtrs.append((i, None if k is None else idx(Not(st[k])), k is not None))
        self.negpairs = list(self.ev.edges)
        self.cons = engine_for(pool).witness_consequences(ConsequenceMode.FINITARY)[:len(st)]
        q = it10_sentence()
        self.it10 = idx(q)
        self.con_stmts = [i for i, f in enumerate(st) if is_con_instance(pool, self.base, f)]
        self.com_stmts = [i for i, f in enumerate(st) if is_com_instance(pool, self.base, f)]
        self.tr_positive = [i for i, f in enumerate(st) if is_tr_positive(f)]
        self._cfg = {k: JumpConfig(k) for k in JumpKind}

    def _jump(self, kind: JumpKind, bits: int) -> int:
        return self.J.apply_bits(self._cfg[kind], bits)

    # each check returns None when it holds, else the failing codes
    def check(self, axiom: str, bits: int) -> tuple[int, ...] | None:
        fn = getattr(self, "_ax_" + axiom.replace("-", "m").replace("*", "s"), None)
        if fn is None:
            raise KeyError(f"unknown axiom {axiom!r}")
        return fn(bits)

    @staticmethod
    def _in(bits: int, i: int | None) -> bool:
        return i is not None and bool(bits >> i & 1)

    def _ax_IT1(self, bits):
        for i, v in self.literals:
            if bool(bits >> i & 1) != v:
                return (i + 1,)
        return None

    def _ax_IT2(self, bits):
        for i, a, b in self.ands:
            if self._in(bits, a) and self._in(bits, b) and not bits >> i & 1:
                return (i + 1, a + 1, b + 1)
        return None

    def _or_axiom(self, bits, kind):
        jb = None
        for i, a, b in self.ors:
            inside = bool(bits >> i & 1)
            if self._in(bits, a) or self._in(bits, b):
                lhs = True
            else:
                if jb is None:
                    jb = self._jump(kind, bits)
                lhs = bool(jb >> i & 1)
            if lhs != inside:
                return (i + 1,)
        return None

    def _ax_IT3(self, bits):
        return self._or_axiom(bits, JumpKind.THETA)

    def _ax_IT3s(self, bits):
        return self._or_axiom(bits, JumpKind.THETA_STAR)

    def _ax_IT4(self, bits):
        for i, inst in self.foralls:
            if all(self._in(bits, k) for k in inst) and not bits >> i & 1:
                return (i + 1,)
        return None

    def _exists_axiom(self, bits, kind):
        jb = None
        for i, inst in self.exists:
            inside = bool(bits >> i & 1)
            if any(self._in(bits, k) for k in inst):
                lhs = True
            else:
                if jb is None:
                    jb = self._jump(kind, bits)
                lhs = bool(jb >> i & 1)
            if lhs != inside:
                return (i + 1,)
        return None

    def _ax_IT5(self, bits):
        return self._exists_axiom(bits, JumpKind.THETA)

    def _ax_IT5s(self, bits):
        return self._exists_axiom(bits, JumpKind.THETA_STAR)

    def _tr_up(self, bits):
        # Tr x -> Tr(Tr x), for the coded Tr(t) statements
        for i, k in self.trs:
            if k is not None and bits >> k & 1 and not bits >> i & 1:
                return (k + 1, i + 1)
        return None

    def _tr_down(self, bits):
        for i, k in self.trs:
            if bits >> i & 1 and not self._in(bits, k):
                return (i + 1,)
        return None

    def _negtr_up(self, bits):
        for i, k, is_sent in self.negtrs:
            if (not is_sent or self._in(bits, k)) and not bits >> i & 1:
                return (i + 1,)
        return None

    def _negtr_down(self, bits):
        for i, k, is_sent in self.negtrs:
            if bits >> i & 1 and is_sent and not self._in(bits, k):
                return (i + 1,)
        return None

    def _ax_IT6m(self, bits):
        return self._tr_up(bits)

    def _ax_IT6(self, bits):
        return self._tr_up(bits) or self._tr_down(bits)

    def _ax_IT7m(self, bits):
        return self._negtr_up(bits)

    def _ax_IT7(self, bits):
        return self._negtr_up(bits) or self._negtr_down(bits)

    def _ax_IT8(self, bits):
        b, i = bits, 0
        while b:
            if b & 1:
                miss = self.cons[i] & ~bits
                if miss:
                    return (i + 1, (miss & -miss).bit_length())
            b >>= 1
            i += 1
        return None

    def _ax_IT9(self, bits):
        for i, j in self.negpairs:
            if bits >> i & 1 and bits >> j & 1:
                return (i + 1, j + 1)
        return None

    def _ax_IT10(self, bits):
        if self.it10 is None:
            raise MissingClosure("IT10 quotes a sentence the pool does not contain (use the it10 closure)")
        return None if bits >> self.it10 & 1 else (self.it10 + 1,)

    def _ax_TrOut(self, bits):
        b, i = bits, 0
        while b:
            if b & 1 and not self.C.classical[i](bits):
                return (i + 1,)
            b >>= 1
            i += 1
        return None

    def _ax_CON(self, bits):
        if not self.con_stmts:
            raise MissingClosure("the con axiom needs con instances in the pool (use the con closure)")
        for i in self.con_stmts:
            if not bits >> i & 1:
                return (i + 1,)
        return None

    def _ax_COM(self, bits):
        if not self.com_stmts:
            raise MissingClosure("the com axiom needs com instances in the pool (use the com closure)")
        for i in self.com_stmts:
            if not bits >> i & 1:
                return (i + 1,)
        return None

    # PK family
    def _family(self) -> PiFamily:
        fam = self.pool.cache.get("pi-family")
        if fam is None or fam.pool is not self.pool:
            raise MissingClosure("PK axioms need the pi family (build_pi_family)")
        return fam

    def _ax_TBpi(self, bits):
        fam = self._family()
        for n in fam.witness_range:
            p = fam.pi_of[n]
            if bool(bits >> p & 1) != self.C.classical[p](bits):
                return (n + 1, p + 1)
        return None

    def pi_true(self, bits: int) -> list[int]:
        fam = self._family()
        return [n for n in fam.witness_range if self.C.classical[fam.pi_of[n]](bits)]

    def pk_closure(self, bits: int) -> int:
        """Statements y-provable from some y in the range with pi_y true."""
        out = 0
        for n in self.pi_true(bits):
            out |= self.cons[n]
        return out

    def _ax_PKmTr(self, bits):
        diff = bits ^ self.pk_closure(bits)
        if diff:
            return ((diff & -diff).bit_length(),)
        return None

    def _ax_PUTB(self, bits):
        for i in self.tr_positive:
            if bool(bits >> i & 1) != self.C.classical[i](bits):
                return (i + 1,)
        return None

    # the compositional facts PK proves
    def _pk_or(self, bits, items, any_inside):
        pc = None
        for i, parts in items:
            inside = bool(bits >> i & 1)
            if any_inside(parts):
                lhs = True
            else:
                if pc is None:
                    pc = self.pk_closure(bits)
                lhs = bool(pc >> i & 1)
            if lhs != inside:
                return (i + 1,)
        return None

    def _ax_PK1(self, bits):
        return self._tr_up(bits) or self._tr_down(bits)

    def _ax_PK2(self, bits):
        return self._negtr_up(bits) or self._negtr_down(bits)

    def _ax_PK3(self, bits):
        for i, k in self.dnegs:
            if k is not None and bool(bits >> i & 1) != bool(bits >> k & 1):
                return (i + 1, k + 1)
        return None

    def _ax_PK4(self, bits):
        for i, a, b in self.ands:
            if a is None or b is None:
                continue
            if bool(bits >> i & 1) != (self._in(bits, a) and self._in(bits, b)):
                return (i + 1,)
        return None

    def _ax_PK5(self, bits):
        items = [(i, (a, b)) for i, a, b in self.ors]
        return self._pk_or(bits, items, lambda p: any(self._in(bits, k) for k in p))

    def _ax_PK6(self, bits):
        for i, inst in self.foralls:
            if bits >> i & 1:
                for k in inst:
                    if k is not None and not bits >> k & 1:
                        return (i + 1, k + 1)
        return None

    def _ax_PK7(self, bits):
        return self._pk_or(bits, self.exists, lambda p: any(self._in(bits, k) for k in p))


def checker_for(pool: SentencePool) -> Checker:
    c = pool.cache.get("checker")
    if c is None:
        c = Checker(pool)
        pool.cache["checker"] = c
    return c


def _bits_of(S: TruthSet | int) -> int:
    return S if isinstance(S, int) else S.bits


def check_axiom(S: TruthSet, theory: TheoryKind, axiom_id: str) -> Verdict:
    """Verdict for one axiom of the theory on (N, S); failures carry the instantiating codes."""
    if axiom_id not in AXIOMS[theory] and axiom_id not in PK_LEMMA:
        raise KeyError(f"{axiom_id} is not an axiom of {theory.value}")
    w = checker_for(S.pool).check(axiom_id, S.bits)
    return Verdict(axiom_id, w is None, w or ())


def check_theory(S: TruthSet, theory: TheoryKind) -> Report:
    C = checker_for(S.pool)
    verdicts = []
    for ax in AXIOMS[theory]:
        w = C.check(ax, S.bits)
        verdicts.append(Verdict(ax, w is None, w or ()))
    return Report(theory.value, S.codes(), verdicts)


def models(pool: SentencePool, theory: TheoryKind, bits: int) -> tuple[bool, str | None, tuple[int, ...]]:
    """(holds, first failing axiom, its witness codes)."""
    C = checker_for(pool)
    for ax in AXIOMS[theory]:
        w = C.check(ax, bits)
        if w is not None:
            return False, ax, w
    return True, None, ()


# -------------------------------------------------------------- sweeps


def _subsets(pool: SentencePool, exhaustive: bool, sample: int, seed: int, max_bits: int) -> list[int]:
    n = len(pool)
    if exhaustive:
        if n > max_bits:
            raise PoolTooLarge(f"pool has {n} statements; exhaustive sweeps allow {max_bits}")
        return list(range(1 << n))
    rng = random.Random(seed)
    return sorted({rng.getrandbits(n) for _ in range(sample)})


def _sweep_chunk(args):
    theory, cfg, subsets = args
    pool = _WORK["pool"]
    J = engine(pool)
    ev = J.ev
    out = []
    checked = 0
    inconsistent_fp = 0
    for b in subsets:
        if not ev.consistent(b):
            if cfg.kind not in SUPERVALUATIONAL and J.apply_bits(cfg, b) == b:
                inconsistent_fp += 1
            continue
        checked += 1
        fp = J.apply_bits(cfg, b) == b
        ok, ax, w = models(pool, theory, b)
        if fp != ok:
            out.append({"set": TruthSet(pool, b).codes(), "fixpointSide": fp, "modelSide": ok,
                        "failingAxiom": ax, "witnessCodes": list(w)})
    return out, checked, inconsistent_fp


def _run_chunks(fn, pool, payloads, jobs):
    import multiprocessing
    from concurrent.futures import ProcessPoolExecutor
    _WORK["pool"] = pool
    if jobs <= 1 or len(payloads) <= 1:
        return [fn(p) for p in payloads]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as ex:
        return list(ex.map(fn, payloads))


def _chunks(items: list, k: int) -> list[list]:
    k = max(1, k)
    step = -(-len(items) // k) or 1
    return [items[i:i + step] for i in range(0, len(items), step)]


def sweep_config(theory: TheoryKind, jump: JumpKind, pool: SentencePool) -> tuple[SentencePool, JumpConfig]:
    pool = prepare_pool(pool, theory)
    if theory in (TheoryKind.PK, TheoryKind.PK_PLUS) and jump is JumpKind.SSK:
        return pool, build_pi_family(pool).jump_config()
    return pool, JumpConfig(jump)


def categoricity_sweep(theory: TheoryKind, jump: JumpKind, pool: SentencePool, exhaustive: bool = True,
                       sample: int = 2000, seed: int = 0, jobs: int = 1,
                       max_bits: int = MAX_POOL_BITS) -> dict:
    """Compare S = J(S) with (N, S) |= theory for every consistent S in scope."""
    pool, cfg = sweep_config(theory, jump, pool)
    subsets = _subsets(pool, exhaustive, sample, seed, max_bits)
    checker_for(pool)  # build before forking
    engine(pool)
    parts = _run_chunks(_sweep_chunk, pool, [(theory, cfg, c) for c in _chunks(subsets, jobs * 4)], jobs)
    disc, checked, incons = [], 0, 0
    for d, c, i in parts:
        disc.extend(d)
        checked += c
        incons += i
    disc.sort(key=lambda r: (len(r["set"]), r["set"]))
    return {"theory": theory.value, "jump": jump.value, "poolHash": pool.fingerprint(),
            "statements": len(pool), "mode": "exhaustive" if exhaustive else f"sample:{sample}:{seed}",
            "checked": checked, "inconsistentFixpointsSkipped": incons, "discrepancies": disc}


def _four_way_chunk(args):
    (subsets,) = args
    pool = _WORK["pool"]
    J = engine(pool)
    C = closures_for(pool)
    th = JumpConfig(JumpKind.THETA)
    ths = JumpConfig(JumpKind.THETA_STAR)
    out, checked = [], 0
    for b in subsets:
        if not C.ev.consistent(b):
            continue
        checked += 1
        sound = C.sound(b)
        c1 = J.apply_bits(ths, b) == b and sound
        c2 = J.apply_bits(th, b) == b and sound and C.tr_down(b) and C.negtr_down(b)
        c3 = models(pool, TheoryKind.IT, b)[0]
        c4 = models(pool, TheoryKind.IT_STAR, b)[0] and C.sound(b)
        if not (c1 == c2 == c3 == c4):
            out.append({"set": TruthSet(pool, b).codes(), "claims": [c1, c2, c3, c4]})
    return out, checked


def four_way_sweep(pool: SentencePool, exhaustive: bool = True, sample: int = 2000, seed: int = 0,
                   jobs: int = 1, max_bits: int = MAX_POOL_BITS) -> dict:
    """The four equivalent characterizations of the classically sound Theta* fixed points."""
    pool = prepare_pool(pool, TheoryKind.IT)
    subsets = _subsets(pool, exhaustive, sample, seed, max_bits)
    checker_for(pool)
    engine(pool)
    parts = _run_chunks(_four_way_chunk, pool, [(c,) for c in _chunks(subsets, jobs * 4)], jobs)
    disc, checked = [], 0
    for d, c in parts:
        disc.extend(d)
        checked += c
    disc.sort(key=lambda r: (len(r["set"]), r["set"]))
    return {"check": "four-way", "poolHash": pool.fingerprint(), "statements": len(pool),
            "checked": checked, "discrepancies": disc}


def pi_capture(fam: PiFamily, bits: int) -> list[int]:
    """Base statements n where classical truth of pi_n and SK truth of n disagree."""
    pool = fam.pool
    C = checker_for(pool)
    ev = C.ev
    nb = ev.neg_bits(bits)
    bad = []
    for n in fam.base:
        p = fam.pi_of[n]
        if C.C.classical[p](bits) != ev.sk_true(pool.statements[n])(bits, nb):
            bad.append(n + 1)
    return bad


def tbpi_models(fam: PiFamily, max_bits: int = MAX_POOL_BITS) -> Iterable[int]:
    pool = fam.pool
    if len(pool) > max_bits:
        raise PoolTooLarge(f"pool has {len(pool)} statements; exhaustive search allows {max_bits}")
    C = checker_for(pool)
    for b in range(1 << len(pool)):
        if C.check("TBpi", b) is None:
            yield b


def implication_check(pool: SentencePool, premises: Iterable[str], conclusion: str,
                      candidates: Iterable[int], theory: TheoryKind = TheoryKind.IT_MINUS) -> list[int]:
    """Sets passing every premise axiom but failing the conclusion axiom."""
    C = checker_for(pool)
    prem = list(premises)
    out = []
    for b in candidates:
        if all(C.check(a, b) is None for a in prem) and C.check(conclusion, b) is not None:
            out.append(b)
    return out


def theory_for(text: str | TheoryKind) -> TheoryKind:
    return text if isinstance(text, TheoryKind) else TheoryKind.parse(text)


Predicate = Callable[[int], bool]
