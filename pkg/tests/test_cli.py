import json
import subprocess
import sys

import pytest

from arperfect import fixtures
from arperfect import io
from arperfect import modrep as mr
from arperfect.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def record(capsys, *argv):
    code, out, _ = run(capsys, "--format", "record", *argv)
    return code, json.loads(out)


def test_validate_fixtures(capsys):
    code, out, _ = run(capsys, "validate", "a3")
    assert code == 0 and out.splitlines()[0] == "a3: valid, symmetric, Loewy length 3"
    assert "Nakayama permutation: [0]" in out
    code, rec = record(capsys, "validate", "n2l2")
    assert code == 0 and rec["self_injective"] and rec["nakayama_permutation"] == [1, 0]
    code, rec = record(capsys, "validate", "a2q")
    assert code == 0 and not rec["self_injective"]


def test_validate_file(capsys, tmp_path):
    path = tmp_path / "mine.alg"
    path.write_text(json.dumps(fixtures.builder_specs()["a5"].to_dict()))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 0 and "valid" in out


def test_validate_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "gone.alg"))
    assert code == 1 and "FormatError" in err


def test_ar_sequence(capsys, tmp_path):
    code, rec = record(capsys, "ar-seq", "a5", "uniserial:0:2")
    assert code == 0 and rec["exact"] and not rec["split"]
    assert sorted(d for d, _ in rec["middle_summand_dims"]) == [1, 3]
    code, _, _ = run(capsys, "ar-seq", "--emit", str(tmp_path), "a3", "simple:0")
    assert code == 0
    emitted = sorted(p.name for p in tmp_path.iterdir())
    assert emitted
    alg = fixtures.algebra("a3")
    dims = sorted(io.read_module(tmp_path / name, alg).dim for name in emitted)
    assert 2 in dims


def test_projective_input_exit_code(capsys):
    code, _, err = run(capsys, "ar-seq", "a3", "proj:0")
    assert code == 1 and "ProjectiveInput" in err


def test_pairings(capsys):
    code, rec = record(capsys, "pairing", "a3", "stalk:0", "stalk:0")
    assert code == 0 and rec["pairing"] == 3
    code, rec = record(capsys, "pairing-t", "a3", "stalk:0", "chain:0:1")
    assert rec["pairing_t"] == "2*t^-1 + 2"
    code, out, _ = run(capsys, "pairing-t", "a3", "stalk:0", "chain:0:1", "--predict", "0", "1")
    assert code == 0 and "MATCH" in out


def test_shift_suffix(capsys):
    _, rec = record(capsys, "pairing-t", "a3", "stalk:0", "chain:0:1@2")
    assert rec["pairing_t"] == "2*t^-3 + 2*t^-2"


def test_distance_and_rigid(capsys):
    _, rec = record(capsys, "distance", "a3", "heart:0")
    assert rec["distance"] == 2
    _, rec = record(capsys, "rigid", "a3", "stalk:0")
    assert rec["ok"]
    assert rec["rigid"]
    _, rec = record(capsys, "rigid", "a3", "chain:0:1")
    assert not rec["rigid"]


def test_strict_mode_fails_on_mismatch(capsys):
    argv = ("pairing-t", "a3", "stalk:0", "chain:0:2", "--predict", "0", "1")
    code, out, _ = run(capsys, *argv)
    assert code == 0 and "MISMATCH" in out
    code, _, _ = run(capsys, "--strict", *argv)
    assert code == 1


def test_component_diagram(capsys):
    code, out, _ = run(capsys, "component", "a3", "stalk:0", "--depth", "2")
    assert code == 0 and "row 0" in out and "meshes" in out


def test_minimize_round_trip(capsys, tmp_path):
    out_path = tmp_path / "c.cx"
    code, _, _ = run(capsys, "minimize", "a3", "chain:0:1", "--out", str(out_path))
    assert code == 0 and out_path.exists()
    _, rec = record(capsys, "pairing", "a3", str(out_path), "chain:0:1")
    _, direct = record(capsys, "pairing", "a3", "chain:0:1", "chain:0:1")
    assert rec["pairing"] == direct["pairing"]


def test_module_file_input(capsys, tmp_path):
    alg = fixtures.algebra("a5")
    path = io.write_module(mr.uniserial(alg, 0, 3), tmp_path / "v3.json")
    _, rec = record(capsys, "decompose", "--module", "a5", str(path))
    assert rec["ok"]


def test_homology_and_decompose(capsys):
    _, rec = record(capsys, "homology", "a3", "chain:0:2")
    assert {k: v["dim"] for k, v in rec["homology"].items()} == {"2": 2, "1": 1, "0": 2}
    code, rec = record(capsys, "decompose", "a3", "chain:0:1")
    assert code == 0 and rec["ok"]


def test_usage_errors(capsys):
    code, _, err = run(capsys, "pairing", "a3", "nonsense:1", "stalk:0")
    assert code == 2 and "error" in err
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_algebra_mismatch_between_files(capsys, tmp_path):
    alg = fixtures.algebra("a5")
    path = io.write_module(mr.uniserial(alg, 0, 2), tmp_path / "m.json")
    code, _, err = run(capsys, "ar-seq", "a3", str(path))
    assert code == 1 and "AlgebraMismatch" in err


def test_module_entry_point():
    done = subprocess.run(
        [sys.executable, "-m", "arperfect", "validate", "a2"], capture_output=True, text=True, check=False
    )
    assert done.returncode == 0 and "a2: valid" in done.stdout
