import json

import pytest

from truthpoint.cli import main, merge_reports
from truthpoint.suite import SUITES, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pool_check(capsys):
    code, out, _ = run(capsys, "pool", "check", "--pool", "core")
    assert code == 0 and "14 statements" in out


def test_pool_print_json(capsys, tmp_path):
    path = tmp_path / "p.json"
    code, out, _ = run(capsys, "pool", "print", "--pool", "vb-sep", "--json", str(path))
    data = json.loads(path.read_text())
    assert code == 0 and [r["name"] for r in data["statements"]][:4] == ["zero", "t1", "t2", "nn"]


def test_pool_file(capsys, tmp_path):
    f = tmp_path / "x.pool"
    f.write_text("domain 8; sentence tau := Tr(#tau); close negation;")
    assert run(capsys, "pool", "check", "--pool", str(f))[0] == 0


def test_bad_pool_exit_2(capsys, tmp_path):
    f = tmp_path / "bad.pool"
    f.write_text("domain 8; sentence bad := Tr(#ghost);")
    code, _, err = run(capsys, "pool", "check", "--pool", str(f))
    assert code == 2 and "ghost" in err


def test_missing_file_exit_2(capsys):
    assert run(capsys, "pool", "check", "--pool", "/nonexistent.pool")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "jump", "--pool", "core")[0] == 2
    assert run(capsys, "jump", "--pool", "core", "--kind", "nope")[0] == 2
    assert run(capsys, "jump", "--pool", "core", "--kind", "vb", "--set", "ghost")[0] == 2
    assert run(capsys)[0] == 2


def test_jump_and_inconsistent_superval(capsys):
    code, out, _ = run(capsys, "jump", "--pool", "core", "--kind", "ssk", "--set", "d")
    assert code == 0 and out.strip() == "ssk({d}) = {zero, lnl}"
    assert run(capsys, "jump", "--pool", "core", "--kind", "vb", "--set", "d,~d")[0] == 2


def test_entail(capsys, tmp_path):
    path = tmp_path / "e.json"
    run(capsys, "entail", "--pool", "omega", "--premises", "tall[0],tall[1]", "--conclusion", "tall",
        "--mode", "validity", "--json", str(path))
    assert json.loads(path.read_text())["entailed"] is True
    code, out, _ = run(capsys, "entail", "--pool", "omega", "--premises", "tall[0],tall[1]", "--conclusion", "tall")
    assert code == 0 and out.startswith("not entailed")


def test_fixpoint(capsys):
    code, out, _ = run(capsys, "fixpoint", "--pool", "theta-failures", "--kind", "theta", "--set", "trnt")
    assert code == 0 and out.strip() == "{trnt}"
    assert run(capsys, "fixpoint", "--pool", "core", "--kind", "ssk", "--set", "d")[0] == 1


def test_set_from_file(capsys, tmp_path):
    f = tmp_path / "s.set"
    f.write_text("t0\nt1\n")
    code, out, _ = run(capsys, "jump", "--pool", "core", "--kind", "theta", "--set", f"@{f}")
    assert code == 0 and "t0" in out


def test_enumerate_and_classify(capsys, tmp_path):
    path = tmp_path / "e.json"
    code, _, _ = run(capsys, "enumerate", "--pool", "vb-sep", "--kind", "vb", "--json", str(path))
    data = json.loads(path.read_text())
    assert code == 0 and data["count"] == len(data["fixpoints"]) > 0
    code, out, _ = run(capsys, "classify", "--pool", "core", "--kind", "theta", "--set", "zero,lnl")
    assert code == 0 and "is_fixpoint: True" in out
    assert run(capsys, "enumerate", "--pool", "theta-failures", "--kind", "theta")[0] == 2


def test_axioms(capsys):
    assert run(capsys, "axioms", "--pool", "it-a", "--theory", "IT", "--set", "zero,lnl,it10,it10[0],it10.lit[0]")[0] in (0, 1)
    code, out, _ = run(capsys, "axioms", "--pool", "it-a", "--theory", "ITstar", "--set", "zero")
    assert code == 1 and "fails" in out
    code, out, _ = run(capsys, "axioms", "--pool", "it-a", "--theory", "ITstar", "--axiom", "IT1", "--set", "zero")
    assert code == 0 and out.startswith("IT1: holds")


def test_categoricity(capsys, tmp_path):
    path = tmp_path / "c.json"
    code, out, _ = run(capsys, "--jobs", "2", "categoricity", "--pool", "it-c", "--theory", "ITstarC",
                       "--exhaustive", "--json", str(path))
    assert code == 0 and "0 discrepancies" in out
    rep = json.loads(path.read_text())
    assert rep["theory"] == "ITstarC" and rep["jump"] == "theta*c"
    code, _, _ = run(capsys, "categoricity", "--pool", "it-b", "--theory", "ITstar", "--kind", "theta", "--exhaustive")
    assert code == 1
    code, out, _ = run(capsys, "categoricity", "--pool", "it-a", "--theory", "four-way", "--exhaustive")
    assert code == 0 and out.startswith("four-way")


def test_prove(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, out, _ = run(capsys, "prove", "--pool", "core", "--sentence", "lnl", "--tree", "--json", str(path))
    assert code == 0 and "replayed" in out
    assert json.loads(path.read_text())["tree"]["rule"] == "or"
    assert run(capsys, "prove", "--pool", "core", "--sentence", "tau")[0] == 1
    assert run(capsys, "prove", "--pool", "core", "--admissibility")[0] == 0
    code, out, _ = run(capsys, "prove", "--pool", "core")
    assert out.strip() == "{zero, lnl}"


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass(capsys, name):
    code, out, _ = run(capsys, "suite", name)
    assert code == 0 and "FAIL" not in out


def test_unknown_suite(capsys):
    assert run(capsys, "suite", "nope")[0] == 2


def test_suite_scenarios_have_descriptions():
    for spec in SUITES.values():
        for sc in spec.scenarios:
            assert sc.description and sc.expected


def test_reports_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "suite", "mc-separation", "--json", str(a))
    run(capsys, "suite", "mc-separation", "--json", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert run_suite("mc-separation")["passed"]


def test_report_merge(capsys, tmp_path):
    paths = []
    for seed in (1, 2):
        p = tmp_path / f"s{seed}.json"
        run(capsys, "categoricity", "--pool", "it-a", "--theory", "ITminus", "--sample", "100", "--seed", str(seed),
            "--json", str(p))
        paths.append(str(p))
    out = tmp_path / "m.json"
    assert run(capsys, "report", "merge", *paths, "--json", str(out))[0] == 0
    merged = json.loads(out.read_text())
    parts = [json.loads(open(p).read()) for p in paths]
    assert merged["checked"] == sum(p["checked"] for p in parts)
    assert merged["poolHash"] == parts[0]["poolHash"] and len(merged["reports"]) == 2

    other = tmp_path / "o.json"
    run(capsys, "categoricity", "--pool", "it-b", "--theory", "ITminus", "--sample", "50", "--json", str(other))
    assert run(capsys, "report", "merge", paths[0], str(other))[0] == 1

    empty = tmp_path / "empty.json"
    assert run(capsys, "report", "merge", "--json", str(empty))[0] == 0
    assert json.loads(empty.read_text()) == {"poolHash": None, "reports": []}


def test_merge_function_orders_canonically():
    a = {"poolHash": "h", "checked": 1, "discrepancies": [{"set": [2]}]}
    b = {"poolHash": "h", "checked": 2, "discrepancies": [{"set": [1]}, {"set": [2]}]}
    assert merge_reports([a, b]) == merge_reports([b, a])
    assert merge_reports([a, b])["discrepancies"] == [{"set": [1]}, {"set": [2]}]
