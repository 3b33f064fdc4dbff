"""Bundled counterexample scenarios with their expected verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .base_model import TruthSet
from .bundled import load
from .consequence import engine_for
from .fixedpoint import NonIncreasing, closures_for, iterate
from .jumps import JumpConfig, JumpKind, engine
from .schemes import evaluator_for
from .syntax import SentencePool, instances


@dataclass
class Scenario:
    name: str
    pool: str
    description: str
    expected: dict
    run: Callable[[SentencePool], dict]
    closures: tuple[str, ...] = ()


@dataclass
class SuiteSpec:
    name: str
    scenarios: list[Scenario] = field(default_factory=list)


def sk_witness(pool: SentencePool, bits: int, target: int) -> bool:
    """Is there a witness SK-true in the set that provably implies statement `target`?"""
    ev = evaluator_for(pool)
    nb = ev.neg_bits(bits)
    cons = engine_for(pool).witness_consequences()
    return any(cons[k] >> target & 1 and ev.sk_true(w)(bits, nb) for k, w in enumerate(pool.witnesses))


def _fixpoint(pool: SentencePool, kind: JumpKind, seed: list[str]) -> TruthSet:
    r = iterate(JumpConfig(kind), TruthSet.from_names(pool, seed))
    if isinstance(r, NonIncreasing):
        raise RuntimeError(f"iteration from {seed} is not increasing: {r.reason}")
    return r


def _basic(pool: SentencePool, kind: JumpKind, S: TruthSet) -> dict:
    C = closures_for(pool)
    return {"fixpoint": engine(pool).apply_bits(JumpConfig(kind), S.bits) == S.bits,
            "consistent": C.ev.consistent(S.bits)}


# ---------------------------------------------------------------- theta-failures


def _tr_not_down(pool):
    S = _fixpoint(pool, JumpKind.THETA, ["trnt"])
    return {**_basic(pool, JumpKind.THETA, S), "has Tr(#ntau)": "trnt" in S, "has ntau": "ntau" in S}


def _negtr_not_down(pool):
    S = _fixpoint(pool, JumpKind.THETA, ["ntrnt"])
    return {**_basic(pool, JumpKind.THETA, S), "has not Tr(#ntau)": "ntrnt" in S, "has not ntau": "nntau" in S}


def _disjunction(pool):
    S = _fixpoint(pool, JumpKind.THETA, ["d"])
    d = pool.lookup("d")
    return {**_basic(pool, JumpKind.THETA, S), "has d": "d" in S, "has t0": "t0" in S, "has t1": "t1" in S,
            "sk witness for d": sk_witness(pool, S.bits, d),
            "classically sound": closures_for(pool).sound(S.bits)}


def _existential(pool):
    S = _fixpoint(pool, JumpKind.THETA, ["ex"])
    ex = pool.lookup("ex")
    inst = [pool.idx(g) for g in instances(pool.statements[ex], pool.qrange)]
    return {**_basic(pool, JumpKind.THETA, S), "has ex": "ex" in S,
            "has an instance": any(i is not None and S.bits >> i & 1 for i in inst),
            "sk witness for ex": sk_witness(pool, S.bits, ex),
            "classically sound": closures_for(pool).sound(S.bits)}


def _ssk_drop(pool):
    S = TruthSet.from_names(pool, ["d"])
    out = TruthSet(pool, engine(pool).apply_bits(JumpConfig(JumpKind.SSK), S.bits))
    return {"d in SSK({d})": "d" in out, "{d} subset of Theta({d})":
            S <= TruthSet(pool, engine(pool).apply_bits(JumpConfig(JumpKind.THETA), S.bits))}


THETA_FAILURES = SuiteSpec("theta-failures", [
    Scenario("tr-not-downward", "theta-failures",
             "Theta iterated over {Tr(#not tau)}: a consistent fixed point holding Tr of a sentence it lacks",
             {"fixpoint": True, "consistent": True, "has Tr(#ntau)": True, "has ntau": False}, _tr_not_down),
    Scenario("negtr-not-downward", "theta-failures",
             "Theta iterated over {not Tr(#not tau)}: holds not Tr of a sentence whose negation it lacks",
             {"fixpoint": True, "consistent": True, "has not Tr(#ntau)": True, "has not ntau": False},
             _negtr_not_down),
    Scenario("disjunction-without-disjunct", "theta-failures",
             "Theta iterated over {t0 or t1}: the disjunction stays in, neither disjunct enters, "
             "and no SK-true witness implies it",
             {"fixpoint": True, "consistent": True, "has d": True, "has t0": False, "has t1": False,
              "sk witness for d": False, "classically sound": False}, _disjunction),
    Scenario("existential-without-instance", "theta-failures",
             "Theta iterated over {exists x (tau and x >= 0)}: no instance enters and no SK-true witness implies it",
             {"fixpoint": True, "consistent": True, "has ex": True, "has an instance": False,
              "sk witness for ex": False, "classically sound": False}, _existential),
    Scenario("ssk-not-sound", "theta-failures",
             "SSK drops a bare disjunction of truth-tellers that Theta keeps",
             {"d in SSK({d})": False, "{d} subset of Theta({d})": True}, _ssk_drop),
])


# ---------------------------------------------------------------- separations


def _not_sv_fixpoint(theta: JumpKind, sv: JumpKind, seed: str, target: str):
    def run(pool):
        S = _fixpoint(pool, theta, [seed])
        C = closures_for(pool)
        svS = TruthSet(pool, engine(pool).apply_bits(JumpConfig(sv), S.bits))
        return {**_basic(pool, theta, S), "classically sound": C.sound(S.bits), f"has {target}": target in S,
                f"{sv.value} fixpoint": svS == S, f"{target} in {sv.value}(S)": target in svS}
    return run


def _vb_run(pool):
    r = _not_sv_fixpoint(JumpKind.THETA_STAR, JumpKind.VB, "nn", "nn")(pool)
    S = _fixpoint(pool, JumpKind.THETA_STAR, ["nn"])
    r["has not t1"] = "~t1" in S
    r["has not t2"] = "~t2" in S
    return r


VB_SEPARATION = SuiteSpec("vb-separation", [
    Scenario("theta-star-vs-vb", "vb-sep",
             "Theta* iterated over {not t1 or not t2}: classically sound Theta* fixed point, "
             "but no consistent VB fixed point holds the disjunction without a disjunct",
             {"fixpoint": True, "consistent": True, "classically sound": True, "has nn": True,
              "has not t1": False, "has not t2": False, "vb fixpoint": False, "nn in vb(S)": False}, _vb_run),
    Scenario("theta-star-c-vs-vc", "vb-sep",
             "the same construction with Theta*c is not a VC fixed point",
             {"fixpoint": True, "consistent": True, "classically sound": True, "has nn": True,
              "vc fixpoint": False, "nn in vc(S)": False},
             _not_sv_fixpoint(JumpKind.THETA_STAR_C, JumpKind.VC, "nn", "nn"), ("con",)),
])


def _mc_run(pool):
    # MC is not classically sound, so soundness is not part of the verdict
    r = _not_sv_fixpoint(JumpKind.THETA_STAR_MC, JumpKind.MC, "eq", "eq")(pool)
    r.pop("classically sound")
    return r


MC_SEPARATION = SuiteSpec("mc-separation", [
    Scenario("theta-star-mc-vs-mc", "mc-sep",
             "Theta*mc iterated over {l1 <-> l2}: consistent Theta*mc fixed point, "
             "but no MC fixed point holds the biconditional of two liars",
             {"fixpoint": True, "consistent": True, "has eq": True, "mc fixpoint": False, "eq in mc(S)": False},
             _mc_run),
    Scenario("theta-star-vs-vb", "mc-sep",
             "the Theta* analog is rejected by VB",
             {"fixpoint": True, "consistent": True, "classically sound": True, "has eq": True,
              "vb fixpoint": False, "eq in vb(S)": False},
             _not_sv_fixpoint(JumpKind.THETA_STAR, JumpKind.VB, "eq", "eq")),
    Scenario("theta-star-c-vs-vc", "mc-sep",
             "the Theta*c analog is rejected by VC",
             {"fixpoint": True, "consistent": True, "classically sound": True, "has eq": True,
              "vc fixpoint": False, "eq in vc(S)": False},
             _not_sv_fixpoint(JumpKind.THETA_STAR_C, JumpKind.VC, "eq", "eq")),
])

SUITES = {s.name: s for s in (THETA_FAILURES, VB_SEPARATION, MC_SEPARATION)}


def run_suite(name: str) -> dict:
    """Run every scenario; `passed` is true iff all observed verdicts match."""
    spec = SUITES[name]
    results = []
    pools: dict[tuple, SentencePool] = {}
    for sc in spec.scenarios:
        key = (sc.pool, sc.closures)
        if key not in pools:
            pools[key] = load(sc.pool, sc.closures)
        pool = pools[key]
        observed = sc.run(pool)
        results.append({"name": sc.name, "description": sc.description, "pool": sc.pool,
                        "poolHash": pool.fingerprint(), "expected": sc.expected, "observed": observed,
                        "matched": observed == sc.expected})
    return {"suite": name, "passed": all(r["matched"] for r in results), "scenarios": results}
