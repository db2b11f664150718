import csv
import json

import numpy as np
import pytest

from asymrabi import ConfigInvalid, SweepConfig, UnknownPreset, figure_preset, run_sweep
from asymrabi.errors import RootAmbiguous
from asymrabi.sweep import (
    CSV_HEADER, DEGENERATE, NO_CONVERGENCE, OK, ROOT_FAILED, evaluate_point, load_config,
    parse_config, read_surface,
)


def _cfg(**kw):
    base = dict(model="single", w_b_over_w_a=1.0, coupling1_min=0.0, coupling1_max=0.2,
                coupling1_steps=2, coupling2_min=0.0, coupling2_max=0.2, coupling2_steps=2,
                outputs=("energy_exact",))
    base.update(kw)
    return SweepConfig(**base)


@pytest.mark.parametrize("bad", [
    dict(coupling1_steps=1),
    dict(coupling2_max=2.5),
    dict(coupling1_min=-0.1),
    dict(coupling1_min=0.3, coupling1_max=0.2),
    dict(tol=0.0),
    dict(model="three"),
    dict(w_b_over_w_a=0.0),
    dict(outputs=("energy",)),
    dict(outputs=()),
    dict(outputs=("negativity_exact",)),
    dict(n_cap=10),
])
def test_config_validation(bad):
    with pytest.raises(ConfigInvalid):
        _cfg(**bad)


def test_parse_config_rejects_unknown_and_missing_keys():
    good = dict(model="two", w_b_over_w_a=1, coupling1_min=0, coupling1_max=1, coupling1_steps=3,
                coupling2_min=0, coupling2_max=1, coupling2_steps=3, outputs="energy_exact, fidelity")
    cfg = parse_config(good)
    assert cfg.outputs == ("energy_exact", "fidelity")
    assert cfg.w_b_over_w_a == 1.0
    with pytest.raises(ConfigInvalid, match="unknown"):
        parse_config({**good, "colormap": "viridis"})
    missing = dict(good)
    del missing["outputs"]
    with pytest.raises(ConfigInvalid, match="missing"):
        parse_config(missing)
    with pytest.raises(ConfigInvalid):
        parse_config({**good, "coupling1_max": "big"})
    with pytest.raises(ConfigInvalid):
        parse_config(["model", "two"])


def test_load_yaml_config(tmp_path):
    p = tmp_path / "run.yaml"
    p.write_text("model: single\nw_b_over_w_a: 0.8\ncoupling1_min: 0\ncoupling1_max: 0.5\n"
                 "coupling1_steps: 3\ncoupling2_min: 0\ncoupling2_max: 0.5\ncoupling2_steps: 4\n"
                 "outputs: [fidelity, entropy]\ntol: 1.0e-9\n")
    cfg = load_config(p)
    assert cfg.outputs == ("fidelity", "entropy")
    assert cfg.tol == 1e-9
    assert len(cfg.grid2) == 4
    with pytest.raises(ConfigInvalid):
        load_config(tmp_path / "missing.yaml")
    bad = tmp_path / "bad.yaml"
    bad.write_text("model: [unclosed\n")
    with pytest.raises(ConfigInvalid):
        load_config(bad)


def test_small_sweep_origin_energy(tmp_path):
    res = run_sweep(_cfg(outputs=("energy_exact", "energy_transformed", "energy_deviation")), tmp_path)
    recs = read_surface(tmp_path / "energy_exact.csv")
    assert (recs[0].coupling1, recs[0].coupling2) == (0.0, 0.0)
    assert recs[0].value == pytest.approx(-0.5, abs=1e-14)
    assert res.all_ok
    assert sorted(p.name for p in res.paths) == [
        "energy_deviation.csv", "energy_exact.csv", "energy_transformed.csv", "summary.json"]


def test_csv_layout_row_major_and_complete(tmp_path):
    cfg = _cfg(coupling1_steps=3, coupling2_steps=4, outputs=("fidelity",))
    run_sweep(cfg, tmp_path)
    with open(tmp_path / "fidelity.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) - 1 == 12
    pairs = [(float(r[0]), float(r[1])) for r in rows[1:]]
    assert pairs == [(float(a), float(b)) for a in cfg.grid1 for b in cfg.grid2]
    # 17 significant digits round-trip exactly
    for r in rows[1:]:
        assert format(float(r[2]), ".17g") == r[2]


def test_deviation_recomputable_from_sibling_files(tmp_path):
    cfg = _cfg(model="two", coupling1_max=0.6, coupling1_steps=4, coupling2_max=0.6, coupling2_steps=4,
               outputs=("energy_exact", "energy_transformed", "energy_deviation",
                        "negativity_exact", "negativity_transformed", "negativity_deviation"))
    run_sweep(cfg, tmp_path)
    surf = {k: read_surface(tmp_path / f"{k}.csv") for k in cfg.outputs}
    for e, t, d in zip(surf["energy_exact"], surf["energy_transformed"], surf["energy_deviation"]):
        assert d.value == t.value - e.value
    for e, t, d in zip(surf["negativity_exact"], surf["negativity_transformed"], surf["negativity_deviation"]):
        assert d.value == e.value - t.value


def test_sweep_output_is_deterministic(tmp_path):
    cfg = _cfg(model="two", coupling1_steps=3, coupling2_steps=3, outputs=("fidelity", "entropy"))
    run_sweep(cfg, tmp_path / "a")
    evaluate_point.cache_clear()
    run_sweep(cfg, tmp_path / "b")
    for name in ("fidelity.csv", "entropy.csv", "summary.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_parallel_matches_serial(tmp_path):
    cfg = _cfg(coupling1_steps=3, coupling2_steps=3, outputs=("fidelity",))
    run_sweep(cfg, tmp_path / "serial")
    run_sweep(cfg, tmp_path / "pool", workers=2)
    assert (tmp_path / "serial" / "fidelity.csv").read_bytes() == (tmp_path / "pool" / "fidelity.csv").read_bytes()


def test_degenerate_point_gets_empty_state_values(tmp_path):
    # g1^2 - g2^2 = 1/2 at resonance is an exact ground-level crossing.
    cfg = _cfg(model="two", coupling1_min=0.75, coupling1_max=0.8, coupling2_min=0.25, coupling2_max=0.3,
               outputs=("energy_exact", "fidelity", "negativity_exact"))
    res = run_sweep(cfg, tmp_path)
    assert not res.all_ok
    rows = {k: list(csv.reader(open(tmp_path / f"{k}.csv")))[1] for k in cfg.outputs}
    assert rows["energy_exact"][3] == OK and rows["energy_exact"][2] != ""
    for k in ("fidelity", "negativity_exact"):
        assert rows[k][2:] == ["", DEGENERATE]
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["surfaces"]["fidelity"]["status_counts"][DEGENERATE] == 1


def test_no_convergence_status():
    pt = evaluate_point("two", 1.0, 1.5, 1.5, 1e-8, 20)
    assert pt["status"]["energy_exact"] == NO_CONVERGENCE
    assert pt["values"]["energy_exact"] is None
    assert pt["status"]["energy_transformed"] == OK


def test_root_failed_status_at_fold():
    pt = evaluate_point("two", 1.0, 1.0, 0.1)
    assert pt["status"]["energy_transformed"] == ROOT_FAILED
    assert pt["status"]["fidelity"] == ROOT_FAILED
    assert pt["status"]["energy_exact"] == OK
    assert pt["status"]["negativity_exact"] == OK


def test_root_failure_from_patched_solver(monkeypatch):
    import asymrabi.sweep as sweep

    def fail(params):
        raise RootAmbiguous("forced")

    monkeypatch.setattr(sweep, "solve_xi1", fail)
    evaluate_point.cache_clear()
    try:
        pt = evaluate_point("single", 1.0, 0.3, 0.2)
    finally:
        evaluate_point.cache_clear()
    assert pt["status"]["energy_transformed"] == ROOT_FAILED
    assert pt["values"]["energy_deviation"] is None
    assert pt["status"]["entropy"] == OK


def test_summary_contents(tmp_path):
    res = run_sweep(_cfg(coupling1_steps=3, coupling2_steps=3, outputs=("fidelity",)), tmp_path)
    s = res.summary
    assert s["surfaces"]["fidelity"]["n_points"] == 9
    assert s["surfaces"]["fidelity"]["max"] <= 1.0
    assert s["convergence"]["max_energy_convergence"] < 1e-8
    assert s["config"]["outputs"] == ["fidelity"]


def test_figure_presets():
    fig2 = figure_preset("fig2")
    assert [c.w_b_over_w_a for c in fig2] == [0.8, 1.0, 1.2]
    assert all(c.model == "single" and c.outputs == ("fidelity",) for c in fig2)
    fig6 = figure_preset("fig6")
    assert all(c.model == "two" for c in fig6)
    assert fig6[0].outputs == ("negativity_exact", "negativity_transformed", "negativity_deviation")
    fig7 = figure_preset("fig7")
    assert len(fig7) == 1 and fig7[0].w_b_over_w_a == 1.0 and fig7[0].outputs == ("negativity_exact",)
    for c in fig2 + fig6 + fig7:
        np.testing.assert_allclose(c.grid1, np.linspace(0, 1.5, 61))
        np.testing.assert_allclose(c.grid2, np.linspace(0, 1.5, 61))
    with pytest.raises(UnknownPreset):
        figure_preset("fig9")


@pytest.mark.parametrize("model", ["single", "two"])
def test_entropy_grows_along_diagonal_from_zero(model):
    values = [evaluate_point(model, 1.0, g, g)["values"]["entropy"] for g in np.linspace(0.0, 0.5, 11)]
    assert values[0] == 0.0
    assert all(b > a for a, b in zip(values, values[1:]))
