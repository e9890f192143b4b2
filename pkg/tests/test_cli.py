import io
import json
import os
import subprocess
import sys

import pytest

from omega.cache import ResultCache, default_cache_dir, make_key
from omega.cli import COMMANDS, dispatch, parse_family
from omega.posets import PosetError, PosetSpec

COMMAND_LINES = {
    "enumerate": ["--d", "4"],
    "poset": ["--d", "6", "--generators", "(3,3);(1,2,1)"],
    "complex": ["--d", "6", "--family", "reduced-norm-ge:4", "--dual"],
    "homology": ["--d", "6", "--family", "max-entry-ge:3", "--kind", "quotient"],
    "complement": ["--d", "6", "--family", "free-group-complement"],
    "euler": ["--d", "6", "--family", "reduced-norm-ge:3"],
    "stab": ["--d", "4", "--dprime", "8", "--generators", "(4)"],
    "bouquet": ["--d", "6", "--k", "3", "--q", "0"],
    "theta": ["--d", "6", "--omega", "(1,2,1)"],
    "vassiliev": ["--d", "8", "--k", "4"],
    "verify": ["--d", "6", "--seed", "3"],
    "report": ["--d", "6", "--family", "at-or-below:(1,2,2,1)"],
}


def run(*argv):
    out = io.StringIO()
    code = dispatch(list(argv), stdout=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json", "--no-cache")
    assert code == 0, text
    doc = json.loads(text)
    assert doc["schema"] == "omega/1"
    return doc["result"]


def test_every_command_has_a_case():
    assert set(COMMAND_LINES) == set(COMMANDS)


class TestExamples:
    def test_euler(self):
        r = run_json("euler", "--d", "6", "--family", "reduced-norm-ge:4")
        assert r["chi"] == 4 and r["A"] == 4
        code, text = run("euler", "--d", "6", "--family", "reduced-norm-ge:4", "--no-cache")
        assert code == 0
        lines = dict(line.split(None, 1) for line in text.splitlines()[1:] if line.startswith("  "))
        assert lines["chi"].strip() == "4" and lines["A"].strip() == "4"

    def test_euler_flags_the_k3_mismatch(self):
        r = run_json("euler", "--d", "6", "--family", "reduced-norm-ge:3,0")
        det = r["discrepancy"]["details"]
        assert r["A"] == 7 and det["snf_rank"] == 7 and det["claimed"] == 10
        assert det["mismatch_with_claimed"] and r["flag"]

    def test_theta(self):
        r = run_json("theta", "--d", "6", "--omega", "(1,2,2,1)")
        assert r["theta_chain"]["boundary"] == [["(1,2,3)", 1], ["(1,4,1)", -1], ["(3,2,1)", 1]]

    def test_verify_d12(self):
        r = run_json("verify", "--d", "12")
        assert r["pass"] and all(v["pass"] for v in r["identities"].values())
        assert len(r["identities"]) == 4

    def test_complement_free_group(self):
        r = run_json("complement", "--d", "8", "--family", "free-group-complement")
        assert [g["rank"] for g in r["reduced_homology"]] == [0, 12, 0, 0, 0, 0, 0, 0, 0]

    def test_all_parities_flag(self):
        r = run_json("poset", "--d", "6", "--family", "reduced-norm-ge:3", "--parity-policy", "all")
        assert r["parity_policy"] == "all" and "(1,1,4)" in r["members"] and "(1,4)" in r["members"]

    def test_k_and_q_flags(self):
        a = run_json("poset", "--d", "6", "--family", "reduced-norm-ge", "--k", "3", "--q", "4")
        b = run_json("poset", "--d", "6", "--family", "reduced-norm-ge:3,4")
        assert a == b

    def test_complex_dump(self):
        r = run_json("complex", "--d", "6", "--family", "reduced-norm-ge:4")
        assert r["degrees"]["1"] == ["(6)"] and r["boundaries"]["2"] == [[0, j, 1] for j in range(5)]

    def test_text_tables(self):
        code, text = run("complement", "--d", "6", "--family", "max-entry-ge:3", "--no-cache")
        assert code == 0
        assert "reduced_cohomology:" in text and "j  group  rank  torsion" in text


class TestErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["bogus", "--d", "6"],
            ["euler", "--d", "6", "--family", "reduced-norm-ge:4", "--bogus"],
            ["euler", "--family", "reduced-norm-ge:4"],
            ["euler", "--d", "5", "--family", "full"],
            ["euler", "--d", "6", "--family", "nope"],
            ["euler", "--d", "6", "--family", "reduced-norm-ge:x"],
            ["euler", "--d", "6"],
            ["poset", "--d", "6", "--generators", "(1,2)"],
            ["poset", "--d", "6", "--generators", "(1,2"],
            ["theta", "--d", "6"],
            ["theta", "--d", "6", "--omega", "()"],
            ["stab", "--d", "6", "--generators", "(6)"],
            ["euler", "--d", "6", "--family", "full", "--generators", "(6)"],
            ["bouquet", "--d", "6", "--k", "7"],
            ["euler", "--d", "6", "--family", "full", "--parity-policy", "odd"],
            [],
        ],
    )
    def test_validation_exit_1(self, argv, capsys):
        code, text = run(*argv, "--no-cache") if argv else run()
        assert code == 1 and text == ""
        assert capsys.readouterr().err

    def test_internal_failure_exit_2(self, capsys):
        code, _ = run("homology", "--d", "6", "--kind", "full", "--max-bits", "0", "--no-cache")
        assert code == 2
        assert "bits" in capsys.readouterr().err

    def test_help_exit_0(self, capsys):
        assert run("--help")[0] == 0


class TestFamilies:
    @pytest.mark.parametrize(
        "text,spec",
        [
            ("reduced-norm-ge:4", PosetSpec.reduced_norm_at_least(4, 0)),
            ("reduced-norm-ge:3,2", PosetSpec.reduced_norm_at_least(3, 2)),
            ("max-entry-ge:5", PosetSpec.max_entry_at_least(5)),
            ("free-group-complement", PosetSpec.free_group_complement()),
            ("below:(1,2,1)", PosetSpec.strictly_below("(1,2,1)")),
            ("at-or-below:(1,2,1)", PosetSpec.at_or_below("(1,2,1)")),
            ("full", PosetSpec.full()),
        ],
    )
    def test_parse(self, text, spec):
        assert parse_family(text) == spec

    @pytest.mark.parametrize("text", ["full:3", "max-entry-ge", "reduced-norm-ge:1,2,3", "sideways:2"])
    def test_reject(self, text):
        with pytest.raises(PosetError):
            parse_family(text)


class TestCache:
    @pytest.mark.parametrize("command", COMMANDS)
    def test_transparency(self, command, tmp_path):
        argv = [command, *COMMAND_LINES[command]]
        for mode in (["--json"], []):
            cold = run(*argv, *mode, "--no-cache")
            first = run(*argv, *mode, "--cache-dir", str(tmp_path))
            warm = run(*argv, *mode, "--cache-dir", str(tmp_path))
            assert cold[0] == first[0] == warm[0] == 0
            assert cold[1] == first[1] == warm[1]
        entries = list(tmp_path.rglob("*.json"))
        assert len(entries) == 1
        assert not [p for p in tmp_path.rglob(".tmp-*")]

    def test_warm_hit_is_served_from_cache(self, tmp_path):
        argv = ["euler", "--d", "6", "--family", "reduced-norm-ge:4", "--json", "--cache-dir", str(tmp_path)]
        run(*argv)
        (entry,) = tmp_path.rglob("*.json")
        data = json.loads(entry.read_text())
        data["value"]["chi"] = 999
        entry.write_text(json.dumps(data))
        assert json.loads(run(*argv)[1])["result"]["chi"] == 999

    def test_key_separates_inputs(self, tmp_path):
        run("euler", "--d", "6", "--family", "reduced-norm-ge:4", "--cache-dir", str(tmp_path))
        run("euler", "--d", "6", "--family", "reduced-norm-ge:4", "--parity-policy", "all", "--cache-dir", str(tmp_path))
        run("euler", "--d", "8", "--family", "reduced-norm-ge:4", "--cache-dir", str(tmp_path))
        assert len(list(tmp_path.rglob("*.json"))) == 3

    def test_env_var(self, tmp_path, monkeypatch):
        monkeypatch.setenv("OMEGA_CACHE_DIR", str(tmp_path / "env"))
        assert default_cache_dir() == tmp_path / "env"
        run("enumerate", "--d", "2")
        assert list((tmp_path / "env").rglob("*.json"))

    def test_platform_default(self, monkeypatch, tmp_path):
        monkeypatch.delenv("OMEGA_CACHE_DIR", raising=False)
        monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path))
        assert default_cache_dir() == tmp_path / "omega"

    def test_store_roundtrip_and_corruption(self, tmp_path):
        cache = ResultCache(tmp_path)
        key = make_key({"a": 1})
        assert cache.get(key) is None
        path = cache.put(key, {"x": [1, 2]})
        assert cache.get(key) == {"x": [1, 2]}
        path.write_text("{not json")
        assert cache.get(key) is None

    def test_key_is_order_independent(self):
        assert make_key({"a": 1, "b": 2}) == make_key({"b": 2, "a": 1})

    def test_seed_is_part_of_the_key(self, tmp_path):
        run("verify", "--d", "4", "--seed", "1", "--cache-dir", str(tmp_path))
        run("verify", "--d", "4", "--seed", "2", "--cache-dir", str(tmp_path))
        assert len(list(tmp_path.rglob("*.json"))) == 2


def test_module_entry_point(tmp_path):
    env = dict(os.environ, OMEGA_CACHE_DIR=str(tmp_path))
    proc = subprocess.run(
        [sys.executable, "-m", "omega", "euler", "--d", "6", "--family", "reduced-norm-ge:4", "--json"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["result"]["A"] == 4
    bad = subprocess.run([sys.executable, "-m", "omega", "euler", "--nope"], capture_output=True, text=True, env=env)
    assert bad.returncode == 1 and "usage" in bad.stderr
