# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)

import unittest
import warnings

from MACRegion.core.awgn_gap import GapParams, PamSpec, pam_dmin, power_for_integer_rate, recover_target_pe
from MACRegion.core.errors import (DomainError, NoSuperpositionError, InfeasibleTargetError, RelabelWarning)
from MACRegion.core.scheduler import (Scenario, Phase, Schedule, RatePoint, lambda2, point_b, point_c, point_c1,
                                      power_ladder, lambda1_and_point_b1, synth_schedule, validate_schedule,
                                      integer_level_notes)
from MACRegion.testing import scenario_grid, ignore_level_warnings


def equal_powers():
    return Scenario.from_pe(139., 139., 1., recover_target_pe(139., 2))


def unequal_powers():
    return Scenario.from_pe(2400., 590., 1., recover_target_pe(590., 3))


def one_bit_equal(pe=1e-7):
    p = power_for_integer_rate(1, 1., GapParams(pe))
    return Scenario.from_pe(p, p, 1., pe)


class ScenarioTests(unittest.TestCase):
    def test_rates(self):
        s = unequal_powers()
        self.assertEqual((s.r1, s.r2, s.r_sum), (4, 3, 4))
        s = equal_powers()
        self.assertEqual((s.r1, s.r2, s.r_sum), (2, 2, 2))

    def test_relabel(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            s = Scenario.from_pe(590., 2400., 1., 1e-7)
        self.assertTrue(any(issubclass(w.category, RelabelWarning) for w in caught))
        self.assertTrue(s.relabeled)
        self.assertEqual((s.p1, s.p2), (2400., 590.))

    def test_invalid(self):
        self.assertRaises(DomainError, Scenario.from_pe, 1., 1., 0., 1e-3)
        self.assertRaises(DomainError, Scenario.from_pe, -1., 1., 1., 1e-3)
        self.assertRaises(DomainError, Scenario.from_pe, 0., 0., 1., 1e-3)
        self.assertRaises(DomainError, Scenario.from_pe, float('nan'), 1., 1., 1e-3)
        self.assertRaises(DomainError, Scenario, 1., 1., 1., 1e-3)


class CornerTests(unittest.TestCase):
    def test_lambda2(self):
        self.assertAlmostEqual(lambda2(one_bit_equal()), .75, places=14)
        p = power_for_integer_rate(12, 1., GapParams(1e-7))
        self.assertAlmostEqual(1. - lambda2(Scenario.from_pe(p, p, 1., 1e-7)), 1. / 3., places=6)
        self.assertAlmostEqual(lambda2(unequal_powers()), 1. - 255. / 256. * 590. / 7200., places=12)
        self.assertAlmostEqual(lambda2(unequal_powers()), .9184, places=4)

    def test_lambda2_approaches_one_third(self):
        previous = 0.
        for r in range(1, 11):
            p = power_for_integer_rate(r, 1., GapParams(1e-7))
            active = 1. - lambda2(Scenario.from_pe(p, p, 1., 1e-7))
            m = 4. ** r
            self.assertAlmostEqual(active, (m - 1.) / (3. * m), places=12)
            self.assertLessEqual(abs(active - 1. / 3.), 4. ** -r)
            self.assertGreater(active, previous)
            previous = active

    def test_lambda2_without_user1_bit(self):
        weak = .5 * power_for_integer_rate(1, 1., GapParams(1e-7))
        self.assertRaises(NoSuperpositionError, lambda2, Scenario.from_pe(weak, weak, 1., 1e-7))

    def test_lambda2_silent_user2(self):
        p = power_for_integer_rate(3, 1., GapParams(1e-7))
        s = Scenario.from_pe(p, 0., 1., 1e-7)
        self.assertEqual(lambda2(s), 1.)
        self.assertEqual(point_c1(s), RatePoint(3., 0.))
        self.assertEqual(len(synth_schedule('c1', s)), 1)

    def test_c1(self):
        c1 = point_c1(one_bit_equal())
        self.assertEqual(c1.r1, 1.)
        self.assertAlmostEqual(c1.r2, .25, places=14)
        c1 = point_c1(equal_powers())
        self.assertEqual(c1.r1, 2.)
        self.assertAlmostEqual(c1.r2, .3125, places=14)
        c1 = point_c1(unequal_powers())
        self.assertEqual(c1.r1, 4.)
        self.assertAlmostEqual(c1.r2, .0816243, places=6)

    def test_c1_matches_integer_level_form(self):
        # with p1 on its level, 1 - lambda2 = p2 / (3 (p1 + gap N0))
        for s, pe, ratio, r1 in scenario_grid():
            g = s.level(r1) / (4. ** r1 - 1.)
            self.assertAlmostEqual(point_c1(s).r2, s.p2 / (3. * (s.p1 + g * s.n0)), places=12)

    def test_ladder(self):
        s = equal_powers()
        ladder = power_ladder(2, s)
        self.assertEqual(ladder.level(0), 0.)
        self.assertAlmostEqual(ladder.level(1), 444.8, places=9)
        self.assertGreater(ladder.level(1), s.p1)
        self.assertEqual(ladder.index(s.p1), 0)

        s = unequal_powers()
        ladder = power_ladder(3, s)
        self.assertAlmostEqual(ladder.level(1), 64. * 590. * 3. / 63., places=9)
        self.assertAlmostEqual(ladder.level(2), 64. * 590. * 15. / 63., places=9)
        self.assertAlmostEqual(ladder.level(1), 1.80e3, delta=5.)
        self.assertAlmostEqual(ladder.level(2), 8.98e3, delta=15.)
        self.assertEqual(ladder.index(2400.), 1)
        self.assertTrue(all(a < b for a, b in zip(ladder.levels[:-1], ladder.levels[1:])))

    def test_ladder_at_integer_level_matches_closed_form(self):
        params = GapParams(1e-7)
        p2 = power_for_integer_rate(3, 1., params)
        s = Scenario.from_pe(50 * p2, p2, 1., 1e-7)
        ladder = power_ladder(3, s)
        g3 = p2 / 63.
        for k in range(0, 4):
            self.assertAlmostEqual(ladder.level(k) / (64. * g3 * (4. ** k - 1.) or 1.),
                                   1. if k else 0., places=12)

    def test_ladder_degenerate(self):
        params = GapParams(1e-7)
        s = Scenario.from_pe(power_for_integer_rate(3, 1., params), 1., 1., 1e-7)
        ladder = power_ladder(0, s)
        for k in range(0, 4):
            self.assertEqual(ladder.level(k), power_for_integer_rate(k, 1., params))
        self.assertRaises(DomainError, power_ladder, -1, s)

    def test_b1(self):
        lam1, b1 = lambda1_and_point_b1(one_bit_equal())
        self.assertAlmostEqual(lam1, .75, places=14)
        self.assertAlmostEqual(b1.r1, .25, places=14)
        self.assertEqual(b1.r2, 1.)
        lam1, b1 = lambda1_and_point_b1(equal_powers())
        self.assertAlmostEqual(b1.r1, .3125, places=12)
        self.assertEqual(b1.r2, 2.)
        lam1, b1 = lambda1_and_point_b1(unequal_powers())
        self.assertAlmostEqual(b1.r1, 1. + (2400. - 1798.0952381) / (8990.4761905 - 1798.0952381), places=6)
        self.assertAlmostEqual(b1.r1, 1.084, places=3)
        self.assertEqual(b1.r2, 3.)

    def test_b1_at_exact_level(self):
        params = GapParams(1e-7)
        p2 = power_for_integer_rate(1, 1., params)
        p1 = power_ladder(1, Scenario.from_pe(1e6, p2, 1., 1e-7)).level(3)
        s = Scenario.from_pe(p1, p2, 1., 1e-7)
        lam1, b1 = lambda1_and_point_b1(s)
        self.assertEqual(lam1, 1.)
        self.assertEqual(b1, RatePoint(3., 1.))
        self.assertEqual(len(synth_schedule('b1', s)), 1)

    def test_b_and_c(self):
        s = unequal_powers()
        self.assertEqual(point_b(s), RatePoint(1., 3.))
        self.assertEqual(point_c(s), RatePoint(4., 0.))
        s = equal_powers()
        self.assertEqual(point_b(s), RatePoint(0., 2.))

    def test_b_without_a_weak_user_bit(self):
        # R2 = 0 with a sum floor above R1: b is user 1's own integer rate
        s = Scenario.from_pe(130., 20., 1., recover_target_pe(139., 2))
        self.assertEqual((s.r1, s.r2, s.r_sum), (1, 0, 2))
        self.assertEqual(point_b(s), RatePoint(1., 0.))
        self.assertEqual(point_b(s), point_c(s))
        self.assertIn("sum-rate floor 2 differs from R1=1", integer_level_notes(s)[0])
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            schedule = synth_schedule('b', s)
        self.assertTrue(validate_schedule(schedule).passed)
        self.assertEqual(schedule.average_power(2), 0.)


class GridTests(unittest.TestCase):
    def setUp(self):
        ignore_level_warnings(self)
        self.grid = scenario_grid()

    def test_synthesized_schedules_validate(self):
        for s, pe, ratio, r1 in self.grid:
            for target in ('b', 'c', 'b1', 'c1', 0., .3, 1.):
                schedule = synth_schedule(target, s)
                report = validate_schedule(schedule)
                self.assertTrue(report.passed, (s, target, report.failures))

    def test_energy_exhaustion(self):
        for s, pe, ratio, r1 in self.grid:
            for target in ('b1', 'c1'):
                schedule = synth_schedule(target, s)
                for u in (1, 2):
                    if target == 'b1' and u == 2 and s.r2 == 0:
                        # user 2 cannot afford a bit on its own and stays silent at b1
                        continue
                    self.assertAlmostEqual(schedule.average_power(u) / s.budget(u), 1., delta=1e-9)

    def test_dominance(self):
        for s, pe, ratio, r1 in self.grid:
            if s.r2 < 1:
                continue
            b, b1 = point_b(s), lambda1_and_point_b1(s)[1]
            c, c1 = point_c(s), point_c1(s)
            self.assertTrue(b1.r1 >= b.r1 and b1.r2 >= b.r2)
            self.assertTrue(c1.r1 >= c.r1 and c1.r2 >= c.r2)

    def test_two_pam_is_best_at_c1(self):
        for s, pe, ratio, r1 in self.grid:
            c1 = point_c1(s)
            d1 = pam_dmin(s.p1, s.r1)
            m1 = 2 ** s.r1
            user1 = PamSpec.from_power(s.r1, s.p1)
            for k in (2, 3, 4):
                # largest fraction keeping k-bit user 2 M1 d1 apart
                f = 12. * s.p2 / ((4. ** k - 1.) * m1 ** 2 * d1 ** 2)
                self.assertLessEqual(k * f, c1.r2 + 1e-12)
                schedule = Schedule([Phase(1. - f, user1, PamSpec.silent()),
                                     Phase(f, user1, PamSpec.from_power(k, s.p2 / f))], s)
                self.assertTrue(validate_schedule(schedule).passed)

    def test_no_superposition_at_c(self):
        for s, pe, ratio, r1 in self.grid:
            user1 = PamSpec.from_power(s.r1, s.p1)
            for bits in range(1, s.r1 + 2):
                schedule = Schedule([Phase(1., user1, PamSpec.from_power(bits, s.p2))], s)
                self.assertFalse(validate_schedule(schedule).passed, (s, bits))

    def test_sum_rate_consistency(self):
        for s, pe, ratio, r1 in self.grid:
            ladder = power_ladder(s.r2, s)
            k = ladder.index(s.p1)
            lam1, b1 = lambda1_and_point_b1(s)
            self.assertAlmostEqual(b1.r1 + b1.r2, k + (1. - lam1) + s.r2, places=12)
            if not integer_level_notes(s):
                b = point_b(s)
                self.assertEqual(b.r1 + b.r2, s.r_sum)


class SynthesisTests(unittest.TestCase):
    def test_c(self):
        s = unequal_powers()
        schedule = synth_schedule('c', s)
        self.assertEqual(len(schedule), 1)
        phase = schedule.phases[0]
        self.assertEqual((phase.fraction, phase.user1.bits, phase.user1.power, phase.user2.bits), (1., 4, 2400., 0))

    def test_c1_one_bit(self):
        s = one_bit_equal()
        schedule = synth_schedule('c1', s)
        self.assertEqual([round(p.fraction, 12) for p in schedule], [.75, .25])
        self.assertEqual(schedule.phases[0].user2.bits, 0)
        self.assertEqual(schedule.phases[1].user2.bits, 1)
        self.assertAlmostEqual(schedule.phases[1].user2.power / s.p2, 4., places=12)

    def test_c1_equal_powers(self):
        schedule = synth_schedule('c1', equal_powers())
        self.assertAlmostEqual(schedule.phases[0].fraction, .6875, places=12)
        self.assertAlmostEqual(schedule.phases[1].fraction, .3125, places=12)
        self.assertEqual(schedule.phases[1].outer, 2)

    def test_b1_unequal_powers(self):
        s = unequal_powers()
        schedule = synth_schedule('b1', s)
        lam1, b1 = lambda1_and_point_b1(s)
        self.assertEqual(len(schedule), 2)
        low, high = schedule.phases
        self.assertAlmostEqual(low.fraction, lam1, places=14)
        self.assertAlmostEqual(high.fraction, 1. - lam1, places=14)
        self.assertAlmostEqual(low.user1.power, 1798.095238, places=5)
        self.assertAlmostEqual(high.user1.power, 8990.476190, places=5)
        self.assertEqual((low.user1.bits, high.user1.bits), (1, 2))
        self.assertEqual((low.user2.power, high.user2.power), (590., 590.))
        self.assertAlmostEqual(schedule.average_power(1) / 2400., 1., delta=1e-12)
        self.assertEqual(low.outer, 1)
        self.assertAlmostEqual(schedule.rates.r1, b1.r1, places=12)

    def test_theta(self):
        s = equal_powers()
        b1, c1 = lambda1_and_point_b1(s)[1], point_c1(s)
        schedule = synth_schedule(.5, s)
        self.assertEqual(len(schedule), 4)
        self.assertAlmostEqual(schedule.rates.r1, .5 * (b1.r1 + c1.r1), places=12)
        self.assertAlmostEqual(schedule.rates.r2, .5 * (b1.r2 + c1.r2), places=12)
        self.assertEqual(synth_schedule(0., s).rates, synth_schedule('b1', s).rates)
        self.assertEqual(synth_schedule(1., s).rates, synth_schedule('c1', s).rates)

    def test_rate_point_target(self):
        s = equal_powers()
        b1, c1 = lambda1_and_point_b1(s)[1], point_c1(s)
        target = RatePoint(.25 * b1.r1 + .75 * c1.r1, .25 * b1.r2 + .75 * c1.r2)
        schedule = synth_schedule(target, s)
        self.assertAlmostEqual(schedule.rates.r1, target.r1, places=12)
        self.assertAlmostEqual(schedule.rates.r2, target.r2, places=12)
        self.assertTrue(validate_schedule(schedule).passed)

    def test_infeasible(self):
        s = equal_powers()
        with self.assertRaises(InfeasibleTargetError) as cm:
            synth_schedule(RatePoint(2.5, 0.), s)
        self.assertIn('r1 <= R1', str(cm.exception))
        with self.assertRaises(InfeasibleTargetError) as cm:
            synth_schedule(RatePoint(0., 2.5), s)
        self.assertIn('r2 <= R2', str(cm.exception))
        with self.assertRaises(InfeasibleTargetError) as cm:
            synth_schedule(RatePoint(1.5, 1.5), s)
        self.assertIn('segment b1-c1', str(cm.exception))
        with self.assertRaises(InfeasibleTargetError) as cm:
            synth_schedule(1.5, s)
        self.assertIn('theta in [0, 1]', str(cm.exception))
        self.assertRaises(InfeasibleTargetError, synth_schedule, 'a', s)

    def test_canonical_order(self):
        s = equal_powers()
        schedule = synth_schedule(.5, s)
        powers = [p.total_power for p in schedule]
        self.assertEqual(powers, sorted(powers))


class ValidationTests(unittest.TestCase):
    def test_doubled_power_fails_budget(self):
        s = equal_powers()
        a, b = synth_schedule('c1', s).phases
        boosted = Phase(b.fraction, b.user1, PamSpec.from_power(1, 2 * b.user2.power))
        report = validate_schedule(Schedule([a, boosted], s))
        self.assertFalse(report.passed)
        self.assertIn('user 2 average power', report.failures[0])

    def test_stretched_phase_fails_dmin(self):
        s = equal_powers()
        lam2 = lambda2(s)
        f = 2. * (1. - lam2)
        user1 = PamSpec.from_power(s.r1, s.p1)
        schedule = Schedule([Phase(1. - f, user1, PamSpec.silent()),
                             Phase(f, user1, PamSpec.from_power(1, s.p2 / f))], s)
        report = validate_schedule(schedule)
        self.assertFalse(report.passed)
        self.assertIn('d_min', report.failures[0])
        self.assertAlmostEqual(schedule.average_power(2), s.p2, places=9)

    def test_fractions_must_sum_to_one(self):
        s = equal_powers()
        user1 = PamSpec.from_power(s.r1, s.p1)
        report = validate_schedule(Schedule([Phase(.5, user1, PamSpec.silent())], s))
        self.assertFalse(report.passed)
        self.assertIn('fractions sum', report.failures[0])

    def test_underpowered_user_fails(self):
        s = equal_powers()
        schedule = Schedule([Phase(1., PamSpec.from_power(3, s.p1), PamSpec.silent())], s)
        report = validate_schedule(schedule)
        self.assertFalse(report.passed)
        self.assertIn('needed for 3 bit(s)', report.failures[0])

    def test_phase_fraction_range(self):
        self.assertRaises(DomainError, Phase, 0., PamSpec.silent(), PamSpec.silent())
        self.assertRaises(DomainError, Phase, 1.5, PamSpec.silent(), PamSpec.silent())


if __name__ == "__main__":
    unittest.main()
