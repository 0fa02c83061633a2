"""Instance files, CLI verbs, determinism, and the mutation-kill harness."""

import json
import random
from pathlib import Path

import pytest

from ruthvb.harness import fixtures, generators as gen, serialize
from ruthvb.harness.cli import main, run_fuzz
from ruthvb.groupoid import z2_groupoid
from ruthvb.semidirect import semidirect
from ruthvb.equivalences import wrep_from_ruth

REPO_FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def test_serialization_round_trips():
    rng = random.Random(40)
    r = gen.random_ruth(rng, z2_groupoid(), max_dim=2)
    cases = [
        ("groupoid", r.groupoid),
        ("complex", r.complex),
        ("ruth", r),
        ("morphism", gen.random_ruth_morphism(rng, r)),
        ("vb", semidirect(r, validate=False)),
        ("wrep", wrep_from_ruth(r, validate=False)),
        ("equivariant", gen.random_equivariant(rng, z2_groupoid(), max_dim=2)),
    ]
    for kind, obj in cases:
        text = serialize.dumps_instance(kind, obj, {"seed": 40})
        kind2, obj2, meta = serialize.load_instance(text)
        assert kind2 == kind and obj2 == obj and meta == {"seed": 40}


def test_dump_is_byte_deterministic():
    r = fixtures.z2_ruth(1)
    assert serialize.dumps_instance("ruth", r) == serialize.dumps_instance("ruth", r)


def test_load_rejects_malformed():
    with pytest.raises(Exception):
        serialize.load_instance("{}")
    with pytest.raises(Exception):
        serialize.load_instance(json.dumps({"kind": "nope", "payload": {}}))


def test_repo_fixture_files_exist_and_load():
    for name, (kind, build) in fixtures.FIXTURES.items():
        path = REPO_FIXTURES / f"{name}.json"
        assert path.exists(), f"missing fixture file {path}"
        kind2, obj, _ = serialize.load_instance(path.read_text())
        assert kind2 == kind
        assert obj == build()


def test_cli_validate_exit_codes(tmp_path, capsys):
    good = REPO_FIXTURES / "z2-ruth-1.json"
    bad = REPO_FIXTURES / "z2-ruth-broken4.json"
    assert main(["validate", str(good)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS")
    assert main(["validate", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "identity-4" in out and "(g,g,g)" in out
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert main(["validate", str(junk)]) == 2


def test_cli_validate_json_format(capsys):
    assert main(["validate", str(REPO_FIXTURES / "z2.json"), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] == "pass"


def test_cli_validate_kind_mismatch(capsys):
    assert main(["validate", str(REPO_FIXTURES / "z2.json"), "--kind", "ruth"]) == 2


def test_cli_convert_chain_and_usage_error(tmp_path, capsys):
    sd = tmp_path / "sd.json"
    w = tmp_path / "w.json"
    r2 = tmp_path / "r2.json"
    src = str(REPO_FIXTURES / "z2-ruth-1.json")
    assert main(["convert", src, "--from", "ruth", "--to", "vb", "--out", str(sd)]) == 0
    assert main(["convert", str(sd), "--from", "vb", "--to", "wrep", "--out", str(w)]) == 0
    assert main(["convert", str(w), "--from", "wrep", "--to", "ruth", "--out", str(r2)]) == 0
    _, back, meta = serialize.load_instance(r2.read_text())
    assert back == fixtures.z2_ruth(1)
    assert meta["conversion"] == "wrep->ruth"
    _, _, meta_w = serialize.load_instance(w.read_text())
    assert "connection" in meta_w
    capsys.readouterr()
    assert main(["convert", src, "--from", "ruth", "--to", "ruth"]) == 2


def test_cli_convert_rejects_invalid_input(capsys):
    bad = str(REPO_FIXTURES / "z2-ruth-broken4.json")
    assert main(["convert", bad, "--from", "ruth", "--to", "vb"]) == 1


def test_cli_convert_deterministic(tmp_path):
    src = str(REPO_FIXTURES / "z2-ruth-1.json")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["convert", src, "--from", "ruth", "--to", "vb", "--out", str(a)])
    main(["convert", src, "--from", "ruth", "--to", "vb", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("pipeline", ["triangle", "phi-hom", "act-ff",
                                      "ruth-vb", "vb-wrep", "wrep-ruth"])
def test_cli_roundtrip_pipelines(pipeline, capsys):
    assert main(["roundtrip", "--pipeline", pipeline, "--trials", "2",
                 "--seed", "1", "--max-dim", "2"]) == 0


def test_cli_roundtrip_with_file(capsys):
    assert main(["roundtrip", str(REPO_FIXTURES / "z2-ruth-1.json"),
                 "--pipeline", "triangle", "--trials", "1", "--seed", "1"]) == 0


def test_cli_roundtrip_zero_trials(capsys):
    assert main(["roundtrip", "--pipeline", "triangle", "--trials", "0",
                 "--seed", "1"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_run_fuzz_kills_everything():
    rng = random.Random(50)
    report, killed, controls = run_fuzz(rng, trials=60)
    assert report.passed
    assert killed > 0


def test_cli_report_verb(tmp_path, capsys):
    assert main(["roundtrip", "--pipeline", "phi-hom", "--trials", "1",
                 "--seed", "2", "--format", "json"]) == 0
    doc = capsys.readouterr().out
    path = tmp_path / "rep.json"
    path.write_text(doc)
    assert main(["report", str(path)]) == 0
    assert "PASS" in capsys.readouterr().out
