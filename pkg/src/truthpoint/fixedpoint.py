"""Fixed-point iteration, exhaustive enumeration and classification."""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .base_model import TruthSet
from .jumps import SUPERVALUATIONAL, JumpConfig, JumpKind, engine
from .schemes import SchemeError, evaluator_for
from .syntax import ForAll, Not, SentencePool, TrAtom, instances

MAX_POOL_BITS = 14


class PoolTooLarge(ValueError):
    pass


@dataclass
class NonIncreasing:
    """Iteration report when the chain from the seed does not go up."""

    seed: TruthSet
    stage: int
    reason: str
    stages: list = field(default_factory=list)

    def __bool__(self):
        return False


@dataclass(frozen=True)
class FixpointClassification:
    is_fixpoint: bool
    consistent: bool
    classically_sound: bool
    tr_down_closed: bool
    neg_tr_down_closed: bool
    kripke_set: bool
    omega_closed: bool

    def as_dict(self) -> dict:
        return asdict(self)


def iterate_bits(cfg: JumpConfig, pool: SentencePool, seed: int, trace: list | None = None) -> int | str:
    """Least fixed point above seed, or a reason string if the chain is not increasing."""
    E = engine(pool)
    cur = seed
    for _ in range(len(pool) + 2):
        if trace is not None:
            trace.append(cur)
        try:
            nxt = E.apply_bits(cfg, cur)
        except SchemeError as e:
            return f"stage is outside the jump's domain: {e}"
        if nxt == cur:
            return cur
        if cur & ~nxt:
            return "chain is not increasing (stage not contained in its jump)"
        cur = nxt
    raise AssertionError("increasing chain longer than the lattice height")


def iterate(cfg: JumpConfig, seed: TruthSet) -> TruthSet | NonIncreasing:
    """Gamma_0 = seed, Gamma_{k+1} = J(Gamma_k), up to the fixed point."""
    trace: list[int] = []
    r = iterate_bits(cfg, seed.pool, seed.bits, trace)
    if isinstance(r, str):
        return NonIncreasing(seed, len(trace) - 1, r, [TruthSet(seed.pool, b) for b in trace])
    return TruthSet(seed.pool, r)


def minimal_fixpoint(cfg: JumpConfig, pool: SentencePool) -> TruthSet:
    r = iterate(cfg, TruthSet(pool, 0))
    if isinstance(r, NonIncreasing):
        raise AssertionError(f"iteration from the empty set failed: {r.reason}")
    return r


# ---------------------------------------------------------------- enumeration

_WORK: dict = {}


def _needs_consistency(cfg: JumpConfig) -> bool:
    return cfg.kind in SUPERVALUATIONAL


def _scan(args) -> list[int]:
    cfg, lo, hi = args
    pool = _WORK["pool"]
    E = engine(pool)
    ev = E.ev
    cons = _needs_consistency(cfg)
    out = []
    for b in range(lo, hi):
        if cons and not ev.consistent(b):
            continue
        if E.apply_bits(cfg, b) == b:
            out.append(b)
    return out


def _parallel(fn, cfg, pool, total: int, jobs: int) -> list:
    if jobs <= 1 or total < 1024:
        _WORK["pool"] = pool
        return fn((cfg, 0, total))
    _WORK["pool"] = pool
    step = -(-total // (jobs * 4))
    chunks = [(cfg, lo, min(total, lo + step)) for lo in range(0, total, step)]
    ctx = multiprocessing.get_context("fork")
    out: list = []
    with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as ex:
        for part in ex.map(fn, chunks):
            out.extend(part)
    return out


def _check_size(pool: SentencePool, max_bits: int):
    if len(pool) > max_bits:
        raise PoolTooLarge(f"pool has {len(pool)} statements; exhaustive search allows {max_bits}")


def enumerate_fixpoints_bits(cfg: JumpConfig, pool: SentencePool, max_bits: int = MAX_POOL_BITS,
                             jobs: int = 1) -> list[int]:
    _check_size(pool, max_bits)
    return sorted(_parallel(_scan, cfg, pool, 1 << len(pool), jobs))


def enumerate_fixpoints(cfg: JumpConfig, pool: SentencePool, max_bits: int = MAX_POOL_BITS,
                        jobs: int = 1) -> list[TruthSet]:
    """All S with J(S) = S, ordered by bitmask.

    Supervaluational jumps are only defined on consistent sets, so only those are scanned.
    """
    return [TruthSet(pool, b) for b in enumerate_fixpoints_bits(cfg, pool, max_bits, jobs)]


# ------------------------------------------------------------ classification


class Closures:
    """Tr-downward / upward closure and soundness tests over bitmasks."""

    def __init__(self, pool: SentencePool):
        self.pool = pool
        ev = evaluator_for(pool)
        self.ev = ev
        base = ev.base
        self.tr_links: list[tuple[int, int]] = []  # (index of Tr(t), index of t°)
        self.negtr_links: list[tuple[int, int | None]] = []  # (index of not Tr(t), index of not t°)
        for j, f in enumerate(pool.statements):
            if isinstance(f, TrAtom):
                i = base.tr_index(f.t)
                if i is not None:
                    self.tr_links.append((j, i))
            elif isinstance(f, Not) and isinstance(f.f, TrAtom):
                i = base.tr_index(f.f.t)
                if i is not None:
                    self.negtr_links.append((j, pool.idx(Not(pool.statements[i]))))
        self.universals = [(i, [pool.idx(g) for g in instances(f, base.R)])
                           for i, f in enumerate(pool.statements) if isinstance(f, ForAll)]
        self.classical = [ev.classical(f) for f in pool.statements]

    def sound(self, bits: int) -> bool:
        b, i = bits, 0
        while b:
            if b & 1 and not self.classical[i](bits):
                return False
            b >>= 1
            i += 1
        return True

    def tr_down(self, bits: int) -> bool:
        return all(not bits >> j & 1 or bits >> i & 1 for j, i in self.tr_links)

    def negtr_down(self, bits: int) -> bool:
        return all(not bits >> j & 1 or (i is not None and bits >> i & 1) for j, i in self.negtr_links)

    def tr_up(self, bits: int) -> bool:
        return all(not bits >> i & 1 or bits >> j & 1 for j, i in self.tr_links)

    def negtr_up(self, bits: int) -> bool:
        return all(i is None or not bits >> i & 1 or bits >> j & 1 for j, i in self.negtr_links)

    def kripke(self, bits: int) -> bool:
        return self.tr_down(bits) and self.negtr_down(bits) and self.tr_up(bits) and self.negtr_up(bits)

    def omega_closed(self, bits: int) -> bool:
        for i, inst in self.universals:
            if all(k is not None and bits >> k & 1 for k in inst) and not bits >> i & 1:
                return False
        return True


def closures_for(pool: SentencePool) -> Closures:
    c = pool.cache.get("closures")
    if c is None:
        c = Closures(pool)
        pool.cache["closures"] = c
    return c


def classify_bits(cfg: JumpConfig, pool: SentencePool, bits: int) -> FixpointClassification:
    C = closures_for(pool)
    consistent = C.ev.consistent(bits)
    try:
        fixed = engine(pool).apply_bits(cfg, bits) == bits
    except SchemeError:
        fixed = False
    return FixpointClassification(
        is_fixpoint=fixed,
        consistent=consistent,
        classically_sound=C.sound(bits),
        tr_down_closed=C.tr_down(bits),
        neg_tr_down_closed=C.negtr_down(bits),
        kripke_set=C.kripke(bits),
        omega_closed=C.omega_closed(bits),
    )


def classify(cfg: JumpConfig, S: TruthSet) -> FixpointClassification:
    return classify_bits(cfg, S.pool, S.bits)


# ------------------------------------------------------- intrinsic fixed points


def compatible(X: TruthSet, Y: TruthSet) -> bool:
    """X and Y are compatible iff X does not meet Y-."""
    return X.bits & evaluator_for(Y.pool).neg_bits(Y.bits) == 0


def _sound_sets(args) -> list[int]:
    cfg, lo, hi = args
    pool = _WORK["pool"]
    E = engine(pool)
    out = []
    for b in range(lo, hi):
        if not E.ev.consistent(b):
            continue
        if b & ~E.apply_bits(cfg, b) == 0:
            out.append(b)
    return out


def maximal_intrinsic(cfg: JumpConfig, pool: SentencePool, max_bits: int = MAX_POOL_BITS,
                      jobs: int = 1, among: Callable[[int], bool] | None = None) -> TruthSet:
    """Union of the intrinsic sets: consistent sound X compatible with every consistent sound Y.

    `among` optionally narrows the sets considered (both X and Y), e.g. to classically
    sound Theta* fixed points.
    """
    _check_size(pool, max_bits)
    sound = sorted(_parallel(_sound_sets, cfg, pool, 1 << len(pool), jobs))
    if among is not None:
        sound = [b for b in sound if among(b)]
    ev = evaluator_for(pool)
    forbidden = 0
    for y in sound:
        forbidden |= ev.neg_bits(y)
    out = 0
    for x in sound:
        if x & forbidden == 0:
            out |= x
    return TruthSet(pool, out)


def omega_search(pool: SentencePool, cfg: JumpConfig | None = None, max_bits: int = MAX_POOL_BITS,
                 jobs: int = 1) -> dict:
    """Look for fixed points (default: SSK) that are not closed under the finite omega rule."""
    cfg = cfg or JumpConfig(JumpKind.SSK)
    fps = enumerate_fixpoints_bits(cfg, pool, max_bits, jobs)
    C = closures_for(pool)
    open_ = [b for b in fps if C.ev.consistent(b) and not C.omega_closed(b)]
    return {
        "jump": cfg.kind.value,
        "fixpoints": len(fps),
        "consistent": sum(1 for b in fps if C.ev.consistent(b)),
        "not_omega_closed": [TruthSet(pool, b).names() for b in open_],
    }


def sets_in(pool: SentencePool, items: Iterable[str]) -> TruthSet:
    return TruthSet.from_names(pool, items)
