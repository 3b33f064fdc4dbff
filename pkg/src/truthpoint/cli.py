"""Command-line interface: `truthpoint <command> ...`.

Exit codes: 0 when everything checked out, 1 on a property violation or a
negative verdict, 2 on usage, I/O or pool errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .axioms import (AXIOMS, PK_LEMMA, TARGET_JUMP, MissingClosure, TheoryKind, categoricity_sweep,
                     check_axiom, check_theory, four_way_sweep, prepare_pool)
from .base_model import TruthSet
from .bundled import BUNDLED, load
from .consequence import ConsequenceError, ConsequenceMode, entails
from .fixedpoint import NonIncreasing, PoolTooLarge, classify, enumerate_fixpoints, iterate
from .jumps import JumpConfig, JumpKind, WitnessPolicy, apply
from .prover import check_elim_admissibility, prover_for, replay
from .schemes import SchemeError
from .suite import SUITES, run_suite
from .syntax import PoolError, SentencePool, to_text


class UsageError(Exception):
    pass


class ReportError(Exception):
    pass


def dump(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _emit(args, payload, summary: str):
    print(summary)
    if args.json:
        Path(args.json).write_text(dump(payload))


# ----------------------------------------------------------------- arguments


def _pool(args, theory: TheoryKind | None = None) -> SentencePool:
    if not args.pool:
        raise UsageError(f"--pool is required (a file or one of: {', '.join(BUNDLED)})")
    pool = load(args.pool, tuple(args.close or ()))
    if theory is not None:
        pool = prepare_pool(pool, theory)
    return pool


def parse_set(pool: SentencePool, text: str | None) -> TruthSet:
    """Names or codes separated by commas/whitespace; '@path' reads them from a file."""
    if not text:
        return TruthSet(pool, 0)
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    items = [t for t in text.replace(",", " ").split() if t]
    try:
        return TruthSet.from_names(pool, items)
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None


def _kind(args, default: JumpKind | None = None) -> JumpKind:
    if not args.kind:
        if default is None:
            raise UsageError("--kind is required")
        return default
    try:
        return JumpKind.parse(args.kind)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _theory(args) -> TheoryKind:
    if not args.theory:
        raise UsageError("--theory is required")
    try:
        return TheoryKind.parse(args.theory)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _cfg(args, kind: JumpKind) -> JumpConfig:
    witness = WitnessPolicy(args.witness) if args.witness else None
    return JumpConfig(kind, ConsequenceMode(args.mode), witness)


def _set_json(S: TruthSet) -> dict:
    return {"codes": S.codes(), "names": S.names()}


def _show(S: TruthSet) -> str:
    return "{" + ", ".join(S.names()) + "}"


# ------------------------------------------------------------------ commands


def cmd_pool(args) -> int:
    pool = _pool(args)
    if args.action == "check":
        payload = {"poolHash": pool.fingerprint(), "statements": len(pool), "declared": sorted(pool.declared),
                   "closures": list(pool.closures), "domain": pool.domain_size, "range": pool.qrange,
                   "witnesses": len(pool.witnesses)}
        _emit(args, payload, f"ok: {len(pool)} statements, {len(pool.witnesses)} witnesses, hash {pool.fingerprint()[:16]}")
        return 0
    rows = [{"index": i, "code": i + 1, "name": n, "origin": o, "text": to_text(f)}
            for i, (f, n, o) in enumerate(zip(pool.statements, pool.names, pool.origins))]
    _emit(args, {"poolHash": pool.fingerprint(), "statements": rows},
          "\n".join(f"{r['code']:>4}  {r['name']:<16} {r['origin']:<10} {r['text']}" for r in rows))
    return 0


def cmd_entail(args) -> int:
    pool = _pool(args)
    prem = [pool.statements[i] for i in parse_set(pool, args.premises).indices()]
    if not args.conclusion:
        raise UsageError("--conclusion is required")
    try:
        concl = pool.statements[pool.lookup(args.conclusion)]
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None
    mode = ConsequenceMode(args.mode)
    ok = entails(pool, prem, concl, mode)
    _emit(args, {"mode": mode.value, "premises": [to_text(f) for f in prem], "conclusion": to_text(concl),
                 "entailed": ok}, f"{'entailed' if ok else 'not entailed'} ({mode.value})")
    return 0


def cmd_jump(args) -> int:
    pool = _pool(args)
    kind = _kind(args)
    S = parse_set(pool, args.set)
    out = apply(_cfg(args, kind), S)
    _emit(args, {"kind": kind.value, "input": _set_json(S), "output": _set_json(out)},
          f"{kind.value}({_show(S)}) = {_show(out)}")
    return 0


def cmd_fixpoint(args) -> int:
    pool = _pool(args)
    kind = _kind(args)
    S = parse_set(pool, args.set)
    r = iterate(_cfg(args, kind), S)
    if isinstance(r, NonIncreasing):
        _emit(args, {"kind": kind.value, "seed": _set_json(S), "nonIncreasing": {
            "stage": r.stage, "reason": r.reason, "stages": [_set_json(x) for x in r.stages]}},
            f"no fixed point above the seed: {r.reason} (stage {r.stage})")
        return 1
    cls = classify(_cfg(args, kind), r)
    _emit(args, {"kind": kind.value, "seed": _set_json(S), "fixpoint": _set_json(r), "classification": cls.as_dict()},
          f"{_show(r)}")
    return 0


def cmd_enumerate(args) -> int:
    pool = _pool(args)
    kind = _kind(args)
    fps = enumerate_fixpoints(_cfg(args, kind), pool, jobs=args.jobs)
    _emit(args, {"kind": kind.value, "poolHash": pool.fingerprint(), "count": len(fps),
                 "fixpoints": [_set_json(S) for S in fps]},
          "\n".join([f"{len(fps)} fixed points of {kind.value}"] + [_show(S) for S in fps]))
    return 0


def cmd_classify(args) -> int:
    pool = _pool(args)
    kind = _kind(args)
    S = parse_set(pool, args.set)
    cls = classify(_cfg(args, kind), S).as_dict()
    _emit(args, {"kind": kind.value, "set": _set_json(S), "classification": cls},
          "\n".join(f"{k}: {v}" for k, v in cls.items()))
    return 0


def cmd_axioms(args) -> int:
    theory = _theory(args)
    pool = _pool(args, theory)
    S = parse_set(pool, args.set)
    if args.axiom:
        if args.axiom not in AXIOMS[theory] and args.axiom not in PK_LEMMA:
            raise UsageError(f"{args.axiom} is not an axiom of {theory.value}")
        v = check_axiom(S, theory, args.axiom)
        _emit(args, {"theory": theory.value, "set": S.codes(), **v.as_dict()},
              f"{v.axiom}: {'holds' if v.holds else 'fails'} {list(v.witness) if v.witness else ''}".rstrip())
        return 0 if v.holds else 1
    rep = check_theory(S, theory)
    lines = [f"{v.axiom}: {'holds' if v.holds else 'fails ' + str(list(v.witness))}" for v in rep.verdicts]
    _emit(args, {**rep.as_dict(), "poolHash": pool.fingerprint()}, "\n".join(lines))
    return 0 if rep.holds else 1


def cmd_categoricity(args) -> int:
    pool = _pool(args)
    if args.theory and args.theory.lower() in ("four-way", "fourway"):
        rep = four_way_sweep(pool, exhaustive=args.exhaustive, sample=args.sample, seed=args.seed, jobs=args.jobs)
        label = "four-way"
    else:
        theory = _theory(args)
        if theory not in TARGET_JUMP:
            raise UsageError(f"{theory.value} has no target jump; use a starred, minus or PK theory")
        kind = _kind(args, TARGET_JUMP[theory])
        rep = categoricity_sweep(theory, kind, pool, exhaustive=args.exhaustive, sample=args.sample,
                                 seed=args.seed, jobs=args.jobs)
        label = f"{theory.value} vs {kind.value}"
    n = len(rep["discrepancies"])
    _emit(args, rep, f"{label}: {rep['checked']} consistent sets checked, {n} discrepancies")
    return 0 if n == 0 else 1


def cmd_prove(args) -> int:
    pool = _pool(args)
    P = prover_for(pool, args.width)
    if args.admissibility:
        rep = check_elim_admissibility(pool, args.width)
        ok = all(v["holds"] for v in rep.values())
        _emit(args, rep, "\n".join(f"{k}: {'admissible' if v['holds'] else 'fails ' + str(v['failures'])}"
                                    for k, v in rep.items()))
        return 0 if ok else 1
    if not args.sentence:
        derived = TruthSet(pool, P.derivable_bits())
        _emit(args, {"width": args.width, "derivable": _set_json(derived)}, _show(derived))
        return 0
    try:
        f = pool.statements[pool.lookup(args.sentence)]
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None
    ok = P.derivable(f)
    payload = {"sentence": to_text(f), "width": args.width,
               "status": "derivable" if ok else f"underivable within width {args.width}"}
    summary = payload["status"]
    if ok and args.tree:
        tree = P.proof_tree(f)
        replay(pool, tree, args.width)
        payload["tree"] = tree.as_dict()
        summary += f" (proof of size {tree.size()}, replayed)"
    _emit(args, payload, summary)
    return 0 if ok else 1


def cmd_suite(args) -> int:
    if args.name not in SUITES:
        raise UsageError(f"unknown suite {args.name!r}; available: {', '.join(SUITES)}")
    rep = run_suite(args.name)
    lines = [f"{'PASS' if s['matched'] else 'FAIL'} {s['name']}: {s['description']}" for s in rep["scenarios"]]
    _emit(args, rep, "\n".join(lines))
    return 0 if rep["passed"] else 1


def merge_reports(reports: list[dict]) -> dict:
    """Canonical merge; every report that names a pool hash must name the same one."""
    hashes = sorted({r["poolHash"] for r in reports if "poolHash" in r})
    if len(hashes) > 1:
        raise ReportError(f"pool hashes differ: {', '.join(hashes)}")
    merged: dict = {"poolHash": hashes[0] if hashes else None,
                    "reports": sorted(reports, key=lambda r: json.dumps(r, sort_keys=True))}
    if reports and all("discrepancies" in r and "checked" in r for r in reports):
        seen = {json.dumps(d, sort_keys=True): d for r in reports for d in r["discrepancies"]}
        merged["checked"] = sum(r["checked"] for r in reports)
        merged["discrepancies"] = [seen[k] for k in sorted(seen)]
    return merged


def cmd_report(args) -> int:
    reports = []
    for p in args.paths:
        try:
            reports.append(json.loads(Path(p).read_text()))
        except json.JSONDecodeError as e:
            raise UsageError(f"{p}: not a JSON report ({e})") from None
    try:
        merged = merge_reports(reports)
    except ReportError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    _emit(args, merged, f"merged {len(reports)} reports")
    return 0


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pool", help="pool file or bundled pool name")
    common.add_argument("--close", action="append", help="extra closure directive (repeatable)")
    common.add_argument("--set", help="statement names or codes, comma separated, or @file")
    common.add_argument("--kind", help="jump kind: sk sv vb vc mc ssk theta theta* theta*c theta*mc thetac thetamc")
    common.add_argument("--theory", help="IT, ITminus, ITstar, ITstarC, ITstarMC, PK, PKplus (or four-way)")
    common.add_argument("--mode", choices=[m.value for m in ConsequenceMode], default="finitary")
    common.add_argument("--witness", choices=[w.value for w in WitnessPolicy])
    common.add_argument("--exhaustive", action="store_true")
    common.add_argument("--sample", type=int, default=2000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--json", metavar="PATH", help="write the machine-readable report here")

    ap = argparse.ArgumentParser(prog="truthpoint", description=__doc__.splitlines()[0])
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pool", parents=[common], help="check or print a pool")
    p.add_argument("action", choices=["check", "print"])
    p.set_defaults(fn=cmd_pool)

    p = sub.add_parser("entail", parents=[common], help="decide premises |- conclusion")
    p.add_argument("--premises")
    p.add_argument("--conclusion")
    p.set_defaults(fn=cmd_entail)

    for name, fn, text in (("jump", cmd_jump, "apply a jump once"),
                           ("fixpoint", cmd_fixpoint, "iterate a jump from a seed"),
                           ("enumerate", cmd_enumerate, "all fixed points of a jump"),
                           ("classify", cmd_classify, "closure properties of a set"),
                           ("categoricity", cmd_categoricity, "compare fixed points with models of a theory")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.set_defaults(fn=fn)

    p = sub.add_parser("axioms", parents=[common], help="check a theory's axioms on a set")
    p.add_argument("--axiom")
    p.set_defaults(fn=cmd_axioms)

    p = sub.add_parser("prove", parents=[common], help="bounded sequent prover")
    p.add_argument("--sentence")
    p.add_argument("--width", type=int, default=3)
    p.add_argument("--tree", action="store_true", help="emit and replay the proof tree")
    p.add_argument("--admissibility", action="store_true", help="check Tr-Elim and not-Tr-Elim")
    p.set_defaults(fn=cmd_prove)

    p = sub.add_parser("suite", parents=[common], help="run a bundled counterexample suite")
    p.add_argument("name", help=", ".join(SUITES))
    p.set_defaults(fn=cmd_suite)

    p = sub.add_parser("report", parents=[common], help="report utilities")
    p.add_argument("action", choices=["merge"])
    p.add_argument("paths", nargs="*")
    p.set_defaults(fn=cmd_report)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except (UsageError, PoolError, PoolTooLarge, SchemeError, MissingClosure, ConsequenceError,
            FileNotFoundError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
