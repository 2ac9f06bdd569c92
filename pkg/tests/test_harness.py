import csv
import io

import numpy as np
import pytest

from imgql import harness, metrics
from imgql.corpus import corpus_file
from imgql.dsl import EvalOptions
from imgql.synthetic import make_case, write_case


@pytest.fixture(scope="module")
def dataset(tmp_path_factory):
    d = tmp_path_factory.mktemp("data")
    write_case(d, "fx1", make_case(256, 192, seed=1))
    write_case(d, "fx2", make_case(256, 192, seed=2))
    (d / "orphan.png").write_bytes((d / "fx1.png").read_bytes())
    return d


def _record(d):
    # a record with the requested Dice and the other indexes unused
    return metrics.MetricsRecord(1, 1, 1, 1, d, 0.0, 0.0, 0.0, 0.0)


def test_discover_pairs_only(dataset):
    assert harness.discover(dataset) == ["fx1", "fx2"]


def test_batch_rows_and_recomputed_metrics(dataset, tmp_path):
    res = harness.run_batch(dataset, corpus_file("nevus_v0.imgql"), tmp_path / "out")
    rows = list(csv.DictReader(io.StringIO(res.csv_path.read_text())))
    assert [r["name"] for r in rows] == ["fx1", "fx2"]
    assert all(r["status"] == "ok" for r in rows)
    for r in rows:
        seg = np.asarray(harness.imaging.load_png(tmp_path / "out" / f"{r['name']}_nevSegV0.png"))[..., 0] > 0
        truth = harness.binarize_truth(dataset / f"{r['name']}_seg_RGB.png")
        assert int(r["tp"]) == int((seg & truth).sum())
        assert float(r["dice"]) == pytest.approx(2 * (seg & truth).sum() / (seg.sum() + truth.sum()), rel=1e-5)
        assert float(r["dice"]) > 0.9
    mean = np.mean([float(r["dice"]) for r in rows])
    assert res.report.means["dice"] == pytest.approx(mean, rel=1e-5)
    assert "Dice > 0.9" in res.report_path.read_text()


def test_batch_rerun_is_byte_identical(dataset, tmp_path):
    a = harness.run_batch(dataset, corpus_file("nevus_v0.imgql"), tmp_path / "a", timings=False)
    b = harness.run_batch(dataset, corpus_file("nevus_v0.imgql"), tmp_path / "b", timings=False,
                          options=EvalOptions(threads=4), jobs=2)
    assert a.csv_path.read_bytes() == b.csv_path.read_bytes()
    for n in ("fx1", "fx2"):
        assert (tmp_path / "a" / f"{n}_nevSegV0.png").read_bytes() == (tmp_path / "b" / f"{n}_nevSegV0.png").read_bytes()


def test_skip_list(dataset, tmp_path):
    skip = tmp_path / "skip.txt"
    skip.write_text("# excluded\nfx2\n")
    res = harness.run_batch(dataset, corpus_file("nevus_v0.imgql"), tmp_path / "o",
                            skip=harness.read_skip_list(skip))
    assert [(r.name, r.status) for r in res.results] == [("fx1", "ok"), ("fx2", "skipped")]
    assert res.report.count == 1 and res.report.skipped == 1


def test_missing_truth_reported(tmp_path):
    d = tmp_path / "d"
    write_case(d, "fx1", make_case(64, 48, seed=3))
    (d / "fx1_seg_RGB.png").unlink()
    r = harness.run_single(corpus_file("nevus_v0.imgql"), {"INPUTDIR": str(d), "NAME": "fx1"}, tmp_path / "o")
    assert r.status == "error"
    assert "fx1_seg_RGB.png" in r.message


def test_empty_dataset(tmp_path):
    with pytest.raises(FileNotFoundError):
        harness.run_batch(tmp_path, corpus_file("nevus_v0.imgql"), tmp_path / "o")


def test_bins_are_cumulative():
    results = [harness.CaseResult(f"c{i}", "ok", _record(d)) for i, d in enumerate([0.95, 0.85, 0.75, 0.4, 0.0])]
    rep = harness.aggregate(results)
    counts = {label: n for label, n, _ in rep.bins}
    assert counts == {"Dice > 0.9": 1, "Dice > 0.8": 2, "Dice > 0.7": 3, "Dice < 0.5": 2, "Dice = 0": 1}
    assert rep.means["dice"] == pytest.approx(0.59)


def test_aggregate_ignores_errors():
    results = [harness.CaseResult("a", "ok", _record(0.5)), harness.CaseResult("b", "error", message="x")]
    rep = harness.aggregate(results)
    assert rep.count == 1 and rep.failed == 1
    assert rep.means["dice"] == 0.5
    assert "error: x" in harness.results_csv(results)
