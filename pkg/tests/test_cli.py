import json
import random

import pytest

from steinerdet.cache import cached_resultant, load, store
from steinerdet.cli import run
from steinerdet.trees import enumerate_trees, path_tree


def run_capture(capsys, argv):
    code = run(argv)
    out = capsys.readouterr().out
    lines = [json.loads(l) for l in out.splitlines() if l.strip()]
    return code, lines


def test_trees_command(capsys):
    code, lines = run_capture(capsys, ["trees", "--n", "5"])
    assert code == 0
    assert lines[-1]["count"] == 3
    assert len(lines) == 4


def test_steiner_command(capsys):
    code, lines = run_capture(capsys, ["steiner", "--k", "3", "--n", "3"])
    assert code == 0
    assert any("hypermatrix" in l for l in lines)


def test_resultant_exact_and_exit_codes(capsys, tmp_path):
    code, lines = run_capture(
        capsys,
        ["resultant", "--k", "4", "--n", "2", "--cache-dir", str(tmp_path)],
    )
    assert code == 0
    assert lines[0]["value"] == "-28"


def test_verify_graham_pollak(capsys):
    code, lines = run_capture(capsys, ["verify", "graham-pollak", "--max-n", "6"])
    assert code == 0
    assert lines[-1]["status"] == "verified"
    assert any(l.get("result") == -80 for l in lines[:-1])


def test_verify_parity_zero_certificates(capsys, tmp_path):
    code, lines = run_capture(
        capsys,
        ["verify", "parity", "--k", "3", "--n", "4", "--cache-dir", str(tmp_path)],
    )
    assert code == 0
    assert sum(1 for l in lines[:-1] if l.get("result") == "zero") == 2


def test_conjecture_exact(capsys, tmp_path):
    code, lines = run_capture(
        capsys,
        ["conjecture", "--k", "4", "--n", "4", "--cache-dir", str(tmp_path)],
    )
    assert code == 0
    assert lines[-1]["status"] == "verified"


def test_nullvector_exit_codes(capsys):
    code, _ = run_capture(capsys, ["nullvector", "--k", "3", "--n", "3", "--seed", "1"])
    assert code == 0
    code, _ = run_capture(
        capsys, ["nullvector", "--k", "4", "--n", "4", "--restarts", "20"])
    assert code == 3  # not-found is inconclusive, never a refutation


def test_factor_command(capsys):
    code, lines = run_capture(capsys, ["factor", "--", "-114688"])
    assert code == 0
    assert lines[0]["factored"] == "-2^14 * 7"


def test_compare_table(capsys, tmp_path):
    code, lines = run_capture(
        capsys,
        ["compare-table", "--k", "4", "--n", "2", "--cache-dir", str(tmp_path)],
    )
    assert code == 0
    assert lines[0]["evidence"]["obstruction_prime"] == 7


def test_usage_errors():
    assert run(["definitely-not-a-command"]) == 2
    assert run(["resultant"]) == 2  # missing --k


def test_size_limit_exit(capsys):
    code, _ = run_capture(capsys, ["trees", "--n", "12"])
    assert code == 3


def test_csv_mode(capsys, tmp_path):
    code = run(["verify", "graham-pollak", "--max-n", "4", "--csv"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines()[0].startswith("result,")


def test_rerun_byte_identical(capsys, tmp_path):
    argv = ["verify", "parity", "--k", "4", "--n", "3",
            "--cache-dir", str(tmp_path)]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    second = capsys.readouterr().out

    def strip_timings(text):
        lines = []
        for l in text.splitlines():
            obj = json.loads(l)
            for o in (obj, *obj.get("evidence", {}).values()):
                if isinstance(o, dict):
                    o.pop("wall_ms", None)
                    o.pop("started", None)
            man = obj.get("manifest", {})
            for key in ("wall_ms", "cache_hits", "cache_misses"):
                man.pop(key, None)
            lines.append(json.dumps(obj, sort_keys=True))
        return lines

    assert strip_timings(first) == strip_timings(second)


def test_cache_roundtrip_and_spot_checks(tmp_path):
    rng = random.Random(7)
    cases = []
    for n in (2, 3):
        for t in enumerate_trees(n, "unlabeled"):
            for k in (2, 3, 4):
                cases.append((t, k))
    picks = [rng.choice(cases) for _ in range(20)]
    for t, k in picks:
        fresh = cached_resultant(t, k, "exact", directory=tmp_path, refresh=True)
        cached = cached_resultant(t, k, "exact", directory=tmp_path)
        assert cached.value == fresh.value
        assert cached.mode == fresh.mode


def test_cache_isomorphism_sharing(tmp_path):
    from steinerdet.trees import Tree

    a = path_tree(3)
    b = Tree(3, ((0, 1), (0, 2)))  # same unlabeled tree, different labeling
    out = cached_resultant(a, 4, "exact", directory=tmp_path)
    hit = load(b, 4, "exact", "paper-g", directory=tmp_path)
    assert hit is not None and hit.value == out.value


def test_cache_env_var(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("STEINER_CACHE", str(tmp_path))
    code, lines = run_capture(capsys, ["resultant", "--k", "4", "--n", "2"])
    assert code == 0
    assert list(tmp_path.glob("*.json"))
