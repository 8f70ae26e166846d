import numpy as np
import pytest

from saginsim.association import (AssociationMap, cd_rate, energy_efficiency,
                                  gbs_indicator, gbs_rate, jain_fairness,
                                  score_network, shannon_rate, total_capacity,
                                  total_power, uav_association_indicator)
from saginsim.scenario import GroundStation, Satellite, UavRelay, User

GBS = GroundStation(position=np.array([500.0, 500.0]), area=(1000.0, 1000.0),
                    max_users=100, tx_power_per_user=10.0)
SAT = Satellite.build(altitude=1000e3, tx_power=100.0)


def make_uavr(uid=0, x=300.0, y=300.0):
    return UavRelay(uid, np.array([x, y, 100.0]), 109.4, 58.0)


class TestIndicators:
    def test_gbs_at_cap(self):
        assoc = AssociationMap(gbs_users=set(range(100)))
        assert gbs_indicator(assoc, GBS) == 1

    def test_gbs_empty(self):
        assert gbs_indicator(AssociationMap(), GBS) == 1

    def test_gbs_over_cap(self):
        assoc = AssociationMap(gbs_users=set(range(101)))
        assert gbs_indicator(assoc, GBS) == 0

    def test_uav_under_relay(self):
        u = User(0, np.array([300.0, 300.0]))
        assert uav_association_indicator(u, make_uavr(), 100.0, 2.0) == 1

    def test_uav_out_of_coverage(self):
        u = User(0, np.array([300.0 + 109.4 + 1.0, 300.0]))
        assert uav_association_indicator(u, make_uavr(), 100.0, 2.0) == 0

    def test_uav_closed_boundaries(self):
        u = User(0, np.array([300.0 + 109.4, 300.0]))
        assert uav_association_indicator(u, make_uavr(), 2.0, 2.0) == 1

    def test_uav_below_threshold(self):
        u = User(0, np.array([300.0, 300.0]))
        assert uav_association_indicator(u, make_uavr(), 1.9, 2.0) == 0


class TestRates:
    def test_cd_rate_gated(self):
        assert cd_rate(3.0, 20e6, 0) == 0.0

    def test_cd_rate_log4(self):
        assert cd_rate(3.0, 20e6, 1) == pytest.approx(20e6)

    def test_cd_rate_log2(self):
        assert cd_rate(1.0, 20e6, 1) == pytest.approx(10e6)

    def test_gbs_rate_log2(self):
        assert gbs_rate(1.0, 20e6, 1) == pytest.approx(20e6)

    def test_gbs_rate_log4(self):
        assert gbs_rate(3.0, 20e6, 1) == pytest.approx(40e6)

    def test_gbs_rate_gated(self):
        assert gbs_rate(3.0, 20e6, 0) == 0.0

    def test_shannon_validation(self):
        with pytest.raises(ValueError):
            shannon_rate(1.0, 0.0)
        with pytest.raises(ValueError):
            shannon_rate(-0.5, 20e6)


class TestAggregates:
    def test_capacity_empty(self):
        assert total_capacity(AssociationMap(), []) == 0.0

    def test_capacity_sum(self):
        assoc = AssociationMap(gbs_users={2, 3, 4}, uav_users={0: {0, 1}})
        rates = [20e6] * 5
        assert total_capacity(assoc, rates) == pytest.approx(100e6)

    def test_capacity_skips_dropped(self):
        assoc = AssociationMap(gbs_users={0}, dropped={1, 2})
        rates = [20e6, 20e6, 20e6]
        assert total_capacity(assoc, rates) == pytest.approx(20e6)

    def test_power_gbs_only(self):
        assoc = AssociationMap(gbs_users=set(range(100)))
        assert total_power(assoc, [], SAT, GBS) == pytest.approx(1000.0)

    def test_power_idle_relay(self):
        assoc = AssociationMap(gbs_users=set(range(10)))
        uav = make_uavr()
        assert total_power(assoc, [uav], SAT, GBS) == pytest.approx(58.0 + 100.0)

    def test_power_zero_everything(self):
        assert total_power(AssociationMap(), [], SAT, GBS) == 0.0

    def test_power_charges_satellite_once_for_cd_users(self):
        uav = make_uavr()
        assoc = AssociationMap(gbs_users={0}, uav_users={0: {1, 2}},
                               powers={1: 0.1, 2: 0.05})
        got = total_power(assoc, [uav], SAT, GBS)
        assert got == pytest.approx(10.0 + 58.0 + 0.15 + 100.0)

    def test_power_charges_satellite_for_direct_sat_users(self):
        assoc = AssociationMap(gbs_users={0}, sat_users={1})
        assert total_power(assoc, [], SAT, GBS) == pytest.approx(10.0 + 100.0)

    def test_ee_basic(self):
        assert energy_efficiency(100e6, 2.0) == pytest.approx(50e6)

    def test_ee_zero_capacity(self):
        assert energy_efficiency(0.0, 2.0) == 0.0

    def test_ee_scale_invariant(self):
        assert energy_efficiency(200e6, 4.0) == energy_efficiency(100e6, 2.0)

    def test_ee_zero_power_raises(self):
        with pytest.raises(ValueError):
            energy_efficiency(1.0, 0.0)


class TestJain:
    def test_equal_rates(self):
        assert jain_fairness([2, 2, 2, 2]) == pytest.approx(1.0)

    def test_single_beneficiary(self):
        assert jain_fairness([1, 0, 0, 0]) == pytest.approx(0.25)

    def test_1_2_3(self):
        assert jain_fairness([1, 2, 3]) == pytest.approx(0.8571, abs=1e-4)

    def test_all_zero_defined_as_zero(self):
        assert jain_fairness([0.0, 0.0]) == 0.0

    def test_scale_invariance(self):
        r = np.array([1.0, 5.0, 2.0, 8.0])
        assert jain_fairness(3.7 * r) == pytest.approx(jain_fairness(r), rel=1e-12)

    def test_bounds(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            r = rng.uniform(0, 1, rng.integers(1, 20))
            xi = jain_fairness(r)
            assert 0.0 <= xi <= 1.0 + 1e-12

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            jain_fairness([])


class TestValidate:
    def test_partition_ok(self):
        assoc = AssociationMap(gbs_users={0, 1}, uav_users={0: {2}}, sat_users={3},
                               dropped={4})
        assoc.validate(5, 100, 200)

    def test_double_association_rejected(self):
        assoc = AssociationMap(gbs_users={0, 1}, uav_users={0: {1}}, dropped=set())
        with pytest.raises(ValueError):
            assoc.validate(2, 100, 200)

    def test_missing_user_rejected(self):
        assoc = AssociationMap(gbs_users={0})
        with pytest.raises(ValueError):
            assoc.validate(2, 100, 200)

    def test_gbs_cap_enforced(self):
        assoc = AssociationMap(gbs_users=set(range(101)))
        with pytest.raises(ValueError):
            assoc.validate(101, 100, 200)

    def test_uav_cap_enforced(self):
        assoc = AssociationMap(uav_users={0: set(range(201))})
        with pytest.raises(ValueError):
            assoc.validate(201, 300, 200)


class TestScore:
    def test_buckets_and_totals(self):
        uav = make_uavr()
        assoc = AssociationMap(gbs_users={0, 1}, uav_users={0: {2}}, sat_users={3},
                               powers={2: 0.1}, dropped={4})
        rates = np.array([10e6, 10e6, 26e6, 18e6, 0.0])
        score = score_network(assoc, rates, [uav], SAT, GBS)
        assert score.capacity_gbs == pytest.approx(20e6)
        assert score.capacity_uav == pytest.approx(26e6)
        assert score.capacity_sat == pytest.approx(18e6)
        assert score.capacity_total == pytest.approx(64e6)
        assert score.power_total == pytest.approx(20.0 + 58.0 + 0.1 + 100.0)
        assert score.energy_eff == pytest.approx(64e6 / score.power_total)
        assert score.served == 4 and score.dropped == 1
        assert score.fairness == pytest.approx(jain_fairness(rates))

    def test_fairness_flag(self):
        assoc = AssociationMap(gbs_users={0, 1})
        score = score_network(assoc, [10e6, 10e6], [], SAT, GBS, fairness_threshold=0.9)
        assert score.fairness_ok
        assoc2 = AssociationMap(gbs_users={0}, dropped={1})
        score2 = score_network(assoc2, [10e6, 0.0], [], SAT, GBS, fairness_threshold=0.9)
        assert not score2.fairness_ok
