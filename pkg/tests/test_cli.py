import json

import jsonschema
import pytest

from nilpow import AlgebraSpec, derived_tower
from nilpow.cache import cache_get, cache_key, cache_put, subspace_from_payload, subspace_to_payload
from nilpow.cli import certificate_schema, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


SPEC22 = ["--generators", "2", "--nil", "2,2"]


def test_dims_csv(capsys):
    code, out, _ = run_cli(
        capsys, "dims", *SPEC22, "--max-degree", "5", "--levels", "2"
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "degree,dim_A,dim_A1,dim_A2"
    table = [tuple(int(x) for x in line.split(",")) for line in lines[1:]]
    assert table == [
        (1, 2, 0, 0),
        (2, 2, 1, 0),
        (3, 2, 2, 0),
        (4, 2, 1, 0),
        (5, 2, 2, 2),
    ]


def test_dims_single_generator(capsys):
    code, out, _ = run_cli(
        capsys, "dims", "--generators", "1", "--nil", "3", "--max-degree", "5", "--levels", "1"
    )
    assert code == 0
    dims = [int(line.split(",")[1]) for line in out.strip().splitlines()[1:]]
    assert dims == [1, 1, 0, 0, 0]


def test_characteristic_two_exits_one(capsys):
    code, _, err = run_cli(
        capsys, "dims", *SPEC22, "--field", "fp:2", "--max-degree", "5"
    )
    assert code == 1
    assert "error" in err


def test_nil_one_warns(capsys):
    code, _, err = run_cli(
        capsys, "dims", "--generators", "2", "--nil", "2,1", "--max-degree", "4"
    )
    assert code == 0
    assert "nil exponent 1" in err


def test_bad_nil_length_exits_one(capsys):
    code, _, err = run_cli(capsys, "dims", "--generators", "2", "--nil", "2", "--max-degree", "4")
    assert code == 1


def test_certify_verified_exit_zero(capsys, tmp_path):
    out_file = tmp_path / "cert.json"
    code, _, _ = run_cli(
        capsys, "certify", "--i", "1", *SPEC22, "--max-degree", "24", "--out", str(out_file)
    )
    assert code == 0
    cert = json.loads(out_file.read_text())
    assert cert["verdict"] == "VERIFIED"
    assert cert["n"] == 11 and cert["bound"] == 20
    jsonschema.validate(cert, certificate_schema())


def test_certify_small_degree_exit_two(capsys):
    code, out, err = run_cli(capsys, "certify", "--i", "1", *SPEC22, "--max-degree", "10")
    assert code == 2
    cert = json.loads(out)
    assert cert["verdict"] == "INCONCLUSIVE"
    assert "INCONCLUSIVE" in err
    jsonschema.validate(cert, certificate_schema())


def test_certify_trivial_single_generator(capsys):
    code, out, _ = run_cli(
        capsys, "certify", "--i", "1", "--generators", "1", "--nil", "4", "--max-degree", "8"
    )
    assert code == 0
    cert = json.loads(out)
    assert cert["verdict"] == "VERIFIED" and cert["generators"] == []


def test_certify_reproducible_bytes(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run_cli(
            capsys,
            "certify", "--i", "1", *SPEC22, "--max-degree", "24",
            "--seed", "17", "--out", str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_certify_words_serialized_dotted(capsys, tmp_path):
    out_file = tmp_path / "cert.json"
    run_cli(capsys, "certify", "--i", "1", *SPEC22, "--max-degree", "24", "--out", str(out_file))
    cert = json.loads(out_file.read_text())
    words = [t["word"] for g in cert["generators"] for t in g["terms"]]
    assert words and all(w.startswith("x1.") or w.startswith("x2.") for w in words)


def test_check_identities(capsys):
    code, out, _ = run_cli(
        capsys,
        "check", "identities", *SPEC22, "--max-degree", "8",
        "--trials", "50", "--seed", "7",
    )
    assert code == 0
    assert "identities: pass" in out


def test_check_lemma1(capsys):
    code, out, _ = run_cli(
        capsys,
        "check", "lemma1", "--generators", "2", "--nil", "3,3", "--max-degree", "6",
        "--trials", "20",
    )
    assert code == 0
    assert "lemma1[derived power 1]: pass" in out


def test_check_fk(capsys):
    code, out, _ = run_cli(
        capsys, "check", "fk", *SPEC22, "--max-degree", "10", "--k", "2", "--trials", "30"
    )
    assert code == 0
    assert "f_2: pass" in out


# -- cache -------------------------------------------------------------------


def test_cache_round_trip(tmp_path):
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=6)
    s = derived_tower(spec, 1).level(1)
    key = cache_key(spec, "derived[1]")
    cache_put(tmp_path, key, subspace_to_payload(s))
    payload = cache_get(tmp_path, key)
    assert payload is not None
    restored = subspace_from_payload(spec, payload)
    for d in range(1, 7):
        assert restored.equal_at(s, d)


def test_cache_miss_on_empty(tmp_path):
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=6)
    assert cache_get(tmp_path, cache_key(spec, "derived[1]")) is None


def test_cache_version_mismatch_is_miss(tmp_path):
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=6)
    key = cache_key(spec, "derived[1]")
    cache_put(tmp_path, key, {"version": "something-else", "rows": {}})
    assert cache_get(tmp_path, key) is None


def test_cache_corrupt_entry_ignored(tmp_path, capsys):
    spec = AlgebraSpec(m=2, nil=(2, 2), max_degree=6)
    key = cache_key(spec, "derived[1]")
    (tmp_path / f"{key}.json").write_text("{not json")
    assert cache_get(tmp_path, key) is None
    assert "corrupt" in capsys.readouterr().err


def test_cached_certify_matches_uncached(capsys, tmp_path):
    cache_dir = tmp_path / "cache"
    plain, cached, cached2 = (tmp_path / n for n in ("plain.json", "c1.json", "c2.json"))
    run_cli(capsys, "certify", "--i", "1", *SPEC22, "--max-degree", "14", "--out", str(plain))
    run_cli(
        capsys, "certify", "--i", "1", *SPEC22, "--max-degree", "14",
        "--cache", str(cache_dir), "--out", str(cached),
    )
    assert any(cache_dir.iterdir())
    run_cli(
        capsys, "certify", "--i", "1", *SPEC22, "--max-degree", "14",
        "--cache", str(cache_dir), "--out", str(cached2),
    )
    assert plain.read_bytes() == cached.read_bytes() == cached2.read_bytes()


def test_timings_flag_controls_json(capsys, tmp_path):
    out_file = tmp_path / "cert.json"
    run_cli(capsys, "certify", "--i", "1", *SPEC22, "--max-degree", "14", "--out", str(out_file))
    assert json.loads(out_file.read_text())["timings_ms"] == {}
    run_cli(
        capsys, "certify", "--i", "1", *SPEC22, "--max-degree", "14",
        "--timings", "--out", str(out_file),
    )
    assert json.loads(out_file.read_text())["timings_ms"]
