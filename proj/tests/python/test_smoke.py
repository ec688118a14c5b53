import math
import os
import subprocess

import pytest

import mmplan


def test_radio_chain():
    assert mmplan.path_loss_db(1000.0) == pytest.approx(106.60855418640687, abs=1e-9)
    snr = mmplan.snr_db(1000.0)
    assert snr == pytest.approx(34.84, abs=0.01)
    rate = mmplan.per_rb_rate_bps(snr)
    assert rate == 792000.0
    assert mmplan.rbs_required(10e6, rate) == 13
    assert mmplan.rbs_required(1.0, 0.0) is None


def test_scenario_round_trip():
    s = mmplan.generate_scenario(6, 10.0, seed=42)
    assert s.n_aps == 6
    assert s.nodes[0].demand_mbps == 0
    text = mmplan.save_scenario(s)
    assert mmplan.load_scenario(text) == s
    assert mmplan.scenario_hash(s) == mmplan.scenario_hash(mmplan.load_scenario(text))
    with pytest.raises(ValueError):
        mmplan.load_scenario("{")


def test_every_topology_evaluates():
    s = mmplan.generate_scenario(8, 10.0, seed=7)
    for topo in ("pmp", "mh2", "mh4", "lp"):
        r = mmplan.evaluate(s, topo)
        assert r["topology"] == topo
        assert r["served_mbps"] <= r["total_demand_mbps"] + 1e-9
        assert len(r["served_per_ap_mbps"]) == 8
    with pytest.raises(ValueError):
        mmplan.evaluate(s, "mesh")


def test_tree_and_lp():
    s = mmplan.Scenario()
    s.area_km = 2.0
    s.nodes = [mmplan.Node(0, 0, 0, 0), mmplan.Node(1, 1, 0, 10), mmplan.Node(2, 2, 0, 10)]
    assert mmplan.multihop_tree(s, 2) == [(0, 1), (1, 2)]
    assert mmplan.multihop_tree(s, 1) == [(0, 1), (0, 2)]
    beta = mmplan.lp_utilities(s)
    assert len(beta) == 3
    assert all(-1e-9 <= b <= 1 + 1e-9 for row in beta for b in row)


def test_batch_is_deterministic():
    cfg = '{"experiment": {"n_aps_list": [3], "n_scenarios": 5, "topologies": ["pmp", "lp"]}}'
    a = mmplan.run_batch(cfg, threads=1)
    b = mmplan.run_batch(cfg, threads=2)
    assert a == b
    rows = a["results_csv"].strip().splitlines()
    assert len(rows) == 1 + 2 * 5
    assert set(a["cdf_csv"]) == {"pmp", "lp"}


@pytest.mark.skipif("MMP_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_gen_matches_module(tmp_path):
    out = tmp_path / "s.json"
    subprocess.run([os.environ["MMP_CLI"], "gen", "--n-aps", "4", "--seed", "9", "--out", str(out)],
                   check=True)
    assert out.read_text() == mmplan.save_scenario(mmplan.generate_scenario(4, 10.0, seed=9))
