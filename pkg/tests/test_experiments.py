import numpy as np
import pytest

from saginsim.amud import SchemeId
from saginsim.cli import cli
from saginsim.config import SimConfig
from saginsim.experiments import (ALL_SCHEMES, AXIS_PRESETS, CSV_HEADER, Axis,
                                  ResultRow, SweepSpec, build_scenario,
                                  cluster_centers, read_csv_rows, run_sweep,
                                  write_csv)

CFG = SimConfig()


class TestSweepSpec:
    def test_valid(self):
        SweepSpec(Axis.EXCESS_USERS, [40, 80], [SchemeId.GBS_ONLY], 1, 42)

    def test_empty_values_rejected(self):
        with pytest.raises(ValueError):
            SweepSpec(Axis.EXCESS_USERS, [], [SchemeId.GBS_ONLY], 1, 42)

    def test_non_increasing_rejected(self):
        with pytest.raises(ValueError):
            SweepSpec(Axis.EXCESS_USERS, [80, 40], [SchemeId.GBS_ONLY], 1, 42)
        with pytest.raises(ValueError):
            SweepSpec(Axis.EXCESS_USERS, [40, 40], [SchemeId.GBS_ONLY], 1, 42)

    def test_zero_trials_rejected(self):
        with pytest.raises(ValueError):
            SweepSpec(Axis.EXCESS_USERS, [40], [SchemeId.GBS_ONLY], 0, 42)

    def test_presets(self):
        assert AXIS_PRESETS[Axis.EXCESS_USERS] == list(range(40, 401, 40))
        assert AXIS_PRESETS[Axis.LEO_TX_POWER] == [30, 40, 50, 60]
        assert AXIS_PRESETS[Axis.LEO_ALTITUDE] == [600, 800, 1000, 1200, 1400]
        assert AXIS_PRESETS[Axis.FAIRNESS_USERS] == list(range(10, 101, 10))


class TestBuildScenario:
    def test_excess_users_composition(self):
        state, cfg = build_scenario(Axis.EXCESS_USERS, 40, CFG, 42)
        assert len(state.users) == 140
        assert [u.id for u in state.users] == list(range(140))
        assert cfg.total_users == CFG.total_users

    def test_excess_users_clustered(self):
        state, _ = build_scenario(Axis.EXCESS_USERS, 40, CFG, 42)
        centers, radius = cluster_centers(CFG)
        clustered = state.users[100:]
        assert len(clustered) == 40
        for half, center in zip((clustered[:20], clustered[20:]), centers):
            d = [np.linalg.norm(u.position - center) for u in half]
            assert max(d) <= radius + 1e-9

    def test_fairness_holds_total_fixed(self):
        for v in (10, 50, 100):
            state, _ = build_scenario(Axis.FAIRNESS_USERS, v, CFG, 1)
            assert len(state.users) == CFG.total_users

    def test_power_axis_overrides_satellite(self):
        state, cfg = build_scenario(Axis.LEO_TX_POWER, 30, CFG, 1)
        assert cfg.tx_power_dbm == 30.0
        assert state.satellite.tx_power == pytest.approx(1.0)
        assert len(state.users) == 500

    def test_altitude_axis_overrides_satellite(self):
        state, cfg = build_scenario(Axis.LEO_ALTITUDE, 600, CFG, 1)
        assert cfg.altitude_m == pytest.approx(600e3)
        assert state.satellite.altitude == pytest.approx(600e3)
        assert len(state.users) == 500

    def test_seed_determinism(self):
        s1, _ = build_scenario(Axis.EXCESS_USERS, 80, CFG, 9)
        s2, _ = build_scenario(Axis.EXCESS_USERS, 80, CFG, 9)
        assert all(np.array_equal(a.position, b.position) for a, b in zip(s1.users, s2.users))


class TestRunSweep:
    def _small_spec(self):
        return SweepSpec(Axis.EXCESS_USERS, [40, 80],
                         [SchemeId.AMUD_SAGIN, SchemeId.GBS_ONLY], 2, 42)

    def test_cardinality(self):
        rows = run_sweep(self._small_spec(), CFG)
        # 2 points x 2 schemes x 2 trials plus 4 summary rows
        assert len(rows) == 8 + 4
        assert sum(1 for r in rows if r.seed == "mean") == 4

    def test_row_ordering(self):
        rows = run_sweep(self._small_spec(), CFG)
        trial_rows = [r for r in rows if r.seed != "mean"]
        keys = [(r.axis_value, r.scheme, r.seed) for r in trial_rows]
        expected = [(v, s.value, 42 + t)
                    for v in (40, 80) for s in (SchemeId.AMUD_SAGIN, SchemeId.GBS_ONLY)
                    for t in (0, 1)]
        assert keys == expected
        assert all(r.seed == "mean" for r in rows[8:])

    def test_summary_is_trial_mean(self):
        rows = run_sweep(self._small_spec(), CFG)
        for mean_row in rows[8:]:
            group = [r for r in rows[:8]
                     if r.axis_value == mean_row.axis_value and r.scheme == mean_row.scheme]
            assert len(group) == 2
            assert mean_row.capacity_bps == pytest.approx(
                np.mean([r.capacity_bps for r in group]), rel=1e-12)
            assert mean_row.ee_bps_per_w == pytest.approx(
                np.mean([r.ee_bps_per_w for r in group]), rel=1e-12)

    def test_thread_count_does_not_change_bytes(self, tmp_path, monkeypatch):
        spec = SweepSpec(Axis.EXCESS_USERS, [40], ALL_SCHEMES, 2, 42)
        monkeypatch.setenv("SAGIN_SIM_THREADS", "1")
        write_csv(run_sweep(spec, CFG), tmp_path / "one.csv")
        monkeypatch.setenv("SAGIN_SIM_THREADS", "3")
        write_csv(run_sweep(spec, CFG), tmp_path / "three.csv")
        assert (tmp_path / "one.csv").read_bytes() == (tmp_path / "three.csv").read_bytes()


class TestCsv:
    ROW = ResultRow("ExcessUsers", 40, "amud", 42, 1.25e9, 1219.5, 1.025e6,
                    0.9258, 500, 0)

    def test_header_only(self, tmp_path):
        path = tmp_path / "empty.csv"
        write_csv([], path)
        assert path.read_text() == ",".join(CSV_HEADER) + "\n"

    def test_one_row_two_lines(self, tmp_path):
        path = tmp_path / "one.csv"
        write_csv([self.ROW], path)
        lines = path.read_text().splitlines()
        assert len(lines) == 2
        assert lines[0] == ",".join(CSV_HEADER)

    def test_round_trip_exact(self, tmp_path):
        rows = [ResultRow("ExcessUsers", 40, "amud", 42, 1.2500000000003e9,
                          1219.5000000007, 1.0250000000001e6, 0.92580000000001, 500, 0),
                ResultRow("ExcessUsers", 40, "amud", "mean", 1.1e9, 1200.0,
                          9.1e5, 0.91, 499.5, 0.5)]
        path = tmp_path / "rt.csv"
        write_csv(rows, path)
        back = read_csv_rows(path)
        assert len(back) == 2
        for orig, parsed in zip(rows, back):
            assert parsed.seed == orig.seed
            assert parsed.capacity_bps == orig.capacity_bps  # bit-exact via repr
            assert parsed.power_w == orig.power_w
            assert parsed.ee_bps_per_w == orig.ee_bps_per_w
            assert parsed.fairness == orig.fairness

    def test_header_mismatch_detected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError):
            read_csv_rows(path)


class TestCli:
    def test_angle(self, capsys):
        assert cli(["angle", "--env", "urban"]) == 0
        out = capsys.readouterr().out
        assert "42.44" in out

    def test_validate_default_config(self, tmp_path):
        path = tmp_path / "ok.ini"
        path.write_text("[scenario]\ntotal_users = 400\n")
        assert cli(["validate", "--config", str(path)]) == 0

    def test_validate_bad_config(self, tmp_path):
        path = tmp_path / "bad.ini"
        path.write_text("[scenario]\nmystery = 1\n")
        assert cli(["validate", "--config", str(path)]) == 2

    def test_unknown_scheme_exits_2(self, tmp_path):
        out = tmp_path / "x.csv"
        assert cli(["run", "--sweep", "leo-power", "--schemes", "bogus",
                    "--out", str(out)]) == 2

    def test_unknown_flag_exits_2(self):
        assert cli(["run", "--sweep", "leo-power", "--frobnicate", "1",
                    "--out", "/tmp/x.csv"]) == 2

    def test_unknown_sweep_exits_2(self):
        assert cli(["run", "--sweep", "nonexistent", "--out", "/tmp/x.csv"]) == 2

    def test_run_writes_csv(self, tmp_path):
        out = tmp_path / "run.csv"
        rc = cli(["run", "--sweep", "leo-power", "--schemes", "gbs-only",
                  "--trials", "1", "--seed", "5", "--out", str(out)])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        # 4 axis points x 1 scheme x 1 trial + 4 summary rows
        assert len(lines) == 1 + 4 + 4

    def test_missing_out_flag_exits_2(self):
        assert cli(["run", "--sweep", "leo-power"]) == 2
