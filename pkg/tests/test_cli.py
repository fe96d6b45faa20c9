import json

import numpy as np
import pytest

from phasechain import load_motion, save_motion
from phasechain.cli import main


def _run(*argv):
    return main(list(argv))


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    """One full synth -> segment -> chpca -> crp -> report run."""
    root = tmp_path_factory.mktemp("cli")
    motion = root / "motion.json"
    truth = root / "truth.json"
    out = root / "run"
    assert _run(
        "synth", "--n-strikes", "5", "--rest-after", "3", "--rest-len", "120",
        "--seed", "7", "--out", str(motion), "--truth", str(truth),
    ) == 0
    common = ["--input", str(motion), "--out-dir", str(out)]
    assert _run("segment", *common) == 0
    assert _run("chpca", *common, "--rrs-shuffles", "60", "--rrs-seed", "1") == 0
    assert _run("crp", *common) == 0
    assert _run("report", *common, "--n-perm", "200", "--three-axis", "--csv") == 0
    return root, motion, truth, out


def test_artifacts_exist(pipeline):
    _, _, _, out = pipeline
    for name in [
        "segmentation.json",
        "segment_diagnostics.json",
        "chpca_skeleton_backswing_A.json",
        "chpca_skeleton_backswing_B.json",
        "chpca_skeleton_downswing_A.json",
        "chpca_skeleton_downswing_B.json",
        "scree_skeleton_backswing.json",
        "scree_skeleton_downswing.json",
        "crp_skeleton.json",
        "crp_pairs_skeleton.csv",
        "summary.json",
        "summary.txt",
        "network_backswing.json",
        "network_downswing.json",
        "network_backswing_nodes.csv",
    ]:
        assert (out / name).exists(), name


def test_every_artifact_embeds_version_and_config_hash(pipeline):
    _, _, _, out = pipeline
    for path in out.glob("*.json"):
        doc = json.loads(path.read_text())
        meta = doc.get("meta")
        assert meta is not None, path.name
        assert meta["tool"] == "phasechain"
        assert meta["version"]
        assert len(meta["config_hash"]) == 16


def test_segmentation_matches_truth(pipeline):
    _, _, truth, out = pipeline
    truth_doc = json.loads(truth.read_text())
    seg_doc = json.loads((out / "segmentation.json").read_text())
    assert seg_doc["trials"] == truth_doc["trials"]
    assert len(seg_doc["rests"]) == 1
    a, b = seg_doc["rests"][0]
    ta, tb = truth_doc["rest"]
    assert abs(a - ta) <= 1 and abs(b - tb) <= 1


def test_summary_structure(pipeline):
    _, _, _, out = pipeline
    doc = json.loads((out / "summary.json").read_text())
    for key in (
        "mode1_contribution",
        "phase_order_reversal",
        "amplitude_energy",
        "energy_phase",
        "pairwise_agreement",
        "three_axis",
    ):
        assert key in doc, key
    for phase in ("backswing", "downswing"):
        block = doc["mode1_contribution"][phase]
        assert 0 < block["A"] <= 1
        assert 0 < block["B_mean"] <= 1
        assert block["significant_modes"]
    assert doc["pairwise_agreement"]["n"] == 190
    text = (out / "summary.txt").read_text()
    assert "mode-1 contribution" in text


def test_crp_csv_pair_count(pipeline):
    _, _, _, out = pipeline
    lines = (out / "crp_pairs_skeleton.csv").read_text().strip().splitlines()
    assert lines[0] == "i_label,j_label,crp_diff,mode1_diff"
    assert len(lines) - 1 == 20 * 19 // 2


def test_reruns_are_byte_identical(pipeline, tmp_path):
    root, motion, _, out = pipeline
    out2 = tmp_path / "again"
    common = ["--input", str(motion), "--out-dir", str(out2)]
    assert _run("segment", *common) == 0
    assert _run(
        "chpca", *common, "--rrs-shuffles", "60", "--rrs-seed", "1",
        "--threads", "2",
    ) == 0
    assert _run("crp", *common) == 0
    assert _run("report", *common, "--n-perm", "200", "--three-axis", "--csv") == 0
    names = sorted(p.name for p in out.iterdir())
    assert names == sorted(p.name for p in out2.iterdir())
    for name in names:
        assert (out / name).read_bytes() == (out2 / name).read_bytes(), name


def test_csv_motion_input_round_trip(pipeline, tmp_path):
    _, motion, _, _ = pipeline
    seq = load_motion(motion, "json")
    csv_path = tmp_path / "motion.csv"
    save_motion(seq, csv_path, "csv")
    out = tmp_path / "run_csv"
    assert _run("segment", "--input", str(csv_path), "--out-dir", str(out)) == 0
    seg_csv = json.loads((out / "segmentation.json").read_text())
    assert len(seg_csv["trials"]) == 5


def test_data_dir_env_resolution(pipeline, tmp_path, monkeypatch):
    _, motion, _, _ = pipeline
    monkeypatch.setenv("PHASECHAIN_DATA_DIR", str(motion.parent))
    out = tmp_path / "env_run"
    assert _run("segment", "--input", motion.name, "--out-dir", str(out)) == 0


# -------------------------------------------------------------- exit codes


def test_usage_error_is_exit_1():
    assert _run("segment", "--nope") == 1
    assert _run() == 1


def test_missing_input_is_exit_2(tmp_path):
    assert _run("segment", "--input", str(tmp_path / "nope.json"),
                "--out-dir", str(tmp_path)) == 2


def test_missing_stage_is_exit_2(pipeline, tmp_path, capsys):
    _, motion, _, _ = pipeline
    empty = tmp_path / "empty"
    code = _run("chpca", "--input", str(motion), "--out-dir", str(empty))
    assert code == 2
    err = capsys.readouterr().err
    assert "segment" in err


def test_degenerate_input_is_exit_3(tmp_path):
    frames = [
        [[0.1 * k, 0.0, float(np.sin(2 * np.pi * k / 20))], [1.0, 1.0, 1.0]]
        for k in range(60)
    ]
    doc = {"frame_rate": 30.0, "labels": ["mover", "frozen"], "frames": frames}
    motion = tmp_path / "degen.json"
    motion.write_text(json.dumps(doc))
    out = tmp_path / "run"
    assert _run(
        "segment", "--input", str(motion), "--scope", "mesh",
        "--signal-point", "mover", "--out-dir", str(out),
    ) == 0
    assert _run(
        "chpca", "--input", str(motion), "--scope", "mesh",
        "--out-dir", str(out), "--rrs-shuffles", "0", "--approach", "A",
    ) == 3


def test_version_flag(capsys):
    code = _run("--version")
    assert code == 0
    from phasechain import __version__

    assert __version__ in capsys.readouterr().out
