"""End-to-end smoke tests for the python module (and, where available, the
CLI binary). The module is imported from the CMake build tree; ctest sets
PYTHONPATH accordingly."""

import json
import os
import subprocess
import sys

import pytest

import cife

DATA = os.environ.get("CIFE_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))
CLI = os.environ.get("CIFE_CLI", "")


def test_load_and_fold_wine():
    ds = cife.load_csv(os.path.join(DATA, "wine.csv"))
    assert ds.n_instances == 178
    assert ds.n_attributes == 13
    assert ds.class_count == 3

    folds = cife.make_folds(ds, k=6, seed=1)
    assert len(folds) == 6
    for split in folds:
        covered = sorted(split["train"] + split["val1"] + split["val2"] + split["test"])
        assert covered == list(range(178))


def test_diversity_and_kappa_fixtures():
    # both rows correct on 5 of 10, overlapping on 3
    truth = [0] * 10
    row_i = [0, 0, 0, 0, 0, 1, 1, 1, 1, 1]
    row_j = [1, 1, 0, 0, 0, 0, 0, 1, 1, 1]
    scores = cife.diversity_scores(row_i, row_j, truth)
    assert scores["a"] == pytest.approx(0.3)
    assert scores["DM"] == pytest.approx(0.4)
    assert 0.0 <= scores["d_c"] <= 1.0

    assert cife.kappa([0, 1, 0, 1], [0, 1, 0, 1], 2) == 1.0
    assert cife.majority_vote([0, 1, 0]) == 0


def test_wilcoxon_all_positive_case():
    assert cife.wilcoxon_signed_rank([1, 2, 3, 4, 5], [0, 0, 0, 0, 0]) == pytest.approx(0.0625)
    assert cife.wilcoxon_signed_rank([1.0, 2.0], [1.0, 2.0]) == 1.0


def test_protocol_parse_and_listing():
    assert len(cife.list_protocols()) == 24
    spec = cife.parse_protocol("mtd-umda")
    assert spec["name"] == "MTD-UMDA"
    assert spec["algorithm"] == "UMDA"
    with pytest.raises(ValueError):
        cife.parse_protocol("XTD-UMDA")


def test_run_protocol_on_toy_blobs():
    ds = cife.load_csv(os.path.join(DATA, "two-blobs.csv"))
    report = json.loads(
        cife.run_protocol(
            "MAE-UMDA", ds, pool_size=8, folds=6, seed=3,
            candidates=16, population=30, generations=5,
        )
    )
    assert report["format"] == "cife-report"
    assert len(report["fold_results"]) == 6
    assert report["aggregate"]["accuracy_mean"] >= 0.95

    again = cife.run_protocol(
        "MAE-UMDA", ds, pool_size=8, folds=6, seed=3,
        candidates=16, population=30, generations=5,
    )
    assert json.loads(again) == report


@pytest.mark.skipif(not CLI, reason="CIFE_CLI not set")
def test_cli_round_trip(tmp_path):
    out = tmp_path / "report.json"
    subprocess.run(
        [
            CLI, "run",
            "--dataset", os.path.join(DATA, "two-blobs.csv"),
            "--protocol", "PAE-GA",
            "--pool-size", "6", "--candidates", "12", "--population", "20",
            "--generations", "4", "--folds", "6", "--seed", "5",
            "--out", str(out),
        ],
        check=True,
    )
    report = json.loads(out.read_text())
    assert report["protocol"] == "PAE-GA"
    assert len(report["fold_results"]) == 6

    csv = subprocess.run(
        [CLI, "report", "--csv", str(out)], check=True, capture_output=True, text=True
    ).stdout
    assert csv.startswith("protocol,dataset,pool_size,seed,fold")
    assert len(csv.strip().splitlines()) == 7  # header + 6 folds
