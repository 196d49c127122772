import csv
import io
import json
from fractions import Fraction

import pytest

import avgdist.harness as harness
from avgdist.bounds import BoundValue
from avgdist.constructions import complete, cycle, path
from avgdist.enumeration import enumerate_connected_graphs
from avgdist.graph import build_graph
from avgdist.harness import (
    CSV_COLUMNS,
    BatchItem,
    BoundViolation,
    SweepConfig,
    random_graph_stream,
    rows_to_csv,
    sweep,
    verify_batch,
    verify_small,
)
from avgdist.io import from_graph6


def test_verify_batch_rows_and_gaps():
    rows = verify_batch([path(5), cycle(6), complete(4)], ["plesnik", "kouider_winkler"])
    assert [r.source for r in rows] == ["#0", "#1", "#2"]
    assert rows[0].gaps["plesnik"] == 0
    assert rows[1].mu == Fraction(9, 5)
    assert all(x >= 0 for r in rows for x in r.gaps.values())
    # C_6 has delta = 2 < 3, so only the unconditional bounds apply
    assert set(rows[1].bounds) == {"plesnik", "kouider_winkler"}
    assert json.loads(json.dumps(rows[1].to_dict()))["mu"] == "9/5"


def test_verify_batch_plesnik_equality_only_on_paths():
    rows = verify_batch(enumerate_connected_graphs(5), ["plesnik"])
    eq = [r for r in rows if r.gaps["plesnik"] == 0]
    assert len(eq) == 60  # 5!/2 labelled paths


def test_verify_batch_certificates():
    items = list(random_graph_stream(5, seed=3))
    rows = verify_batch(items, ["thm4_upper"], certify_variants=["thm4", "thm5"])
    assert all(r.certificates["thm4"] == "ok" for r in rows)
    assert all(r.certificates["thm5"] in ("ok",) or r.certificates["thm5"].startswith("n/a") for r in rows)


def test_verify_batch_rejects_lower_and_disconnected():
    with pytest.raises(ValueError, match="upper"):
        verify_batch([path(4)], ["thm4_lower"])
    with pytest.raises(ValueError, match="connected"):
        verify_batch([build_graph(3, [(0, 1)])], ["plesnik"])


def test_violation_carries_reproducer(monkeypatch):
    real = harness.evaluate_bound

    def too_small(variant, p):
        b = real(variant, p)
        return BoundValue(b.variant, Fraction(1, 2), b.hypotheses)

    monkeypatch.setattr(harness, "evaluate_bound", too_small)
    item = BatchItem(cycle(5), source="c5", seed=99)
    with pytest.raises(BoundViolation) as info:
        verify_batch([item], ["plesnik"])
    assert info.value.seed == 99
    assert from_graph6(info.value.graph6) == cycle(5)
    assert "reproducer" in str(info.value)


def test_verify_small_counts():
    rep = verify_small(5, ["plesnik", "kouider_winkler", "thm4_upper"])
    assert rep.graphs == {2: 1, 3: 4, 4: 38, 5: 728}
    assert rep.plesnik_equalities == rep.paths == 1 + 3 + 12 + 60
    assert rep.checked["plesnik"] == 771
    assert rep.to_dict()["violations"] == 0


def test_verify_small_violation(monkeypatch):
    real = harness.evaluate_bound
    monkeypatch.setattr(harness, "evaluate_bound",
                        lambda v, p: BoundValue(v, Fraction(1), real(v, p).hypotheses))
    with pytest.raises(BoundViolation) as info:
        verify_small(3, ["plesnik"])
    assert from_graph6(info.value.graph6).n == 3


def test_verify_small_guard():
    with pytest.raises(Exception, match="allow_n8"):
        verify_small(8)


def test_random_stream_is_reproducible():
    a = [(i.source, i.seed, i.graph) for i in random_graph_stream(6, seed=11)]
    b = [(i.source, i.seed, i.graph) for i in random_graph_stream(6, seed=11)]
    assert a == b and len(a) == 6
    assert all(i.graph.n >= 8 for i in random_graph_stream(3, seed=1, bipartite=True))


def _csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_sweep_clique_constant_gap():
    rows = sweep(SweepConfig.from_dict({"family": "clique_chain",
                                        "grid": {"n_max": 60, "Delta": [8, 12], "delta": [3]}}))
    assert rows and all(r.cert_status == "thm4 ok" for r in rows)
    by_point = {}
    for r in rows:
        by_point.setdefault((r.n, r.Delta), {})[r.bound_variant] = r
    for pair in by_point.values():
        up, lo = pair["thm4_upper"], pair["thm4_lower"]
        assert up.bound - lo.bound == 18
        assert up.gap <= 18 and lo.gap < 0


def test_sweep_bipartite_constant_gap():
    rows = sweep(SweepConfig.from_dict({"family": "bipartite_chain",
                                        "grid": {"n": [20, 21, 26, 32], "Delta": [5], "delta": [3]}}))
    skipped = [r for r in rows if r.cert_status.startswith("skipped")]
    assert [r.n for r in skipped] == [21]
    live = [r for r in rows if not r.cert_status.startswith("skipped")]
    for lo, up in zip(live[::2], live[1::2]):
        assert (lo.bound_variant, up.bound_variant) == ("thm5_lower", "thm5_upper")
        assert up.bound - lo.bound == 15


def test_sweep_c4_chain_bracketed():
    rows = sweep(SweepConfig.from_dict({"family": "c4_chain", "grid": {"k": [1], "ell": [2, 3], "q": [3, 4]}}))
    assert sum(r.cert_status.startswith("skipped") for r in rows) == 2
    live = [r for r in rows if r.mu is not None]
    for lo, up in zip(live[::2], live[1::2]):
        assert lo.bound < lo.mu <= up.bound


def test_sweep_outputs(tmp_path):
    cfg = {"family": "clique_chain", "seed": 5, "grid": {"n": [28, 27], "Delta": [8], "delta": [3]},
           "output": str(tmp_path / "r.csv"), "json_output": str(tmp_path / "r.json")}
    rows = sweep(SweepConfig.from_dict(cfg))
    text = (tmp_path / "r.csv").read_text()
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert "\r" not in text
    parsed = _csv_rows(text)
    assert parsed[-1]["cert_status"].startswith("skipped: ")
    assert parsed[1]["bound_exact"] == "4295/378"
    doc = json.loads((tmp_path / "r.json").read_text())
    assert [{k: str(v) for k, v in r.items()} for r in doc["rows"]] == parsed
    assert rows_to_csv(rows) == text
    sweep(SweepConfig.from_dict(cfg))
    assert (tmp_path / "r.csv").read_text() == text


def test_sweep_random_family():
    cfg = {"family": "random", "seed": 2, "grid": {"n": [9, 12], "Delta": [3, 5], "delta": [3], "count": 2}}
    rows = sweep(SweepConfig.from_dict(cfg))
    assert rows_to_csv(rows) == rows_to_csv(sweep(SweepConfig.from_dict(cfg)))
    assert any(r.cert_status.startswith("skipped") for r in rows)
    assert all(r.gap >= 0 for r in rows if r.gap is not None)


def test_sweep_unwritable_output(tmp_path):
    cfg = SweepConfig.from_dict({"family": "clique_chain", "grid": {"n": [28], "Delta": [8], "delta": [3]},
                                 "output": str(tmp_path / "missing" / "r.csv")})
    with pytest.raises(OSError):
        sweep(cfg)


@pytest.mark.parametrize("bad", [
    [],
    {"family": "tree", "grid": {}},
    {"family": "clique_chain", "grid": {"Delta": [8], "delta": [3]}},
    {"family": "clique_chain", "grid": {"n": [28], "n_max": 30, "Delta": [8], "delta": [3]}},
    {"family": "c4_chain", "grid": {"k": [1], "ell": "2", "q": [4]}},
    {"family": "clique_chain", "grid": {"n": [28], "Delta": [8], "delta": [3]}, "seed": -1},
    {"family": "clique_chain", "grid": {"n": [28], "Delta": [8], "delta": [3]}, "colour": 1},
])
def test_sweep_config_validation(bad):
    with pytest.raises(ValueError):
        SweepConfig.from_dict(bad)
