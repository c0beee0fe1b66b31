# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)

"""
Two reference scenarios: equal powers P1 = P2 = 139 and unequal powers
P1 = 2400, P2 = 590, both with N0 = 1.

Neither states its target error rate. Each is recovered from the weak
user's power sitting exactly on an integer-bit level: 139 on 2 bits and 590
on 3 bits. The two come out close to 1e-7 but not equal, and the unequal
scenario needs its own value: at the equal-power Pe the 3-bit level is just
above 590.
"""
from ..core.awgn_gap import recover_target_pe
from ..core.region import compare
from ..core.scheduler import Scenario, synth_schedule, lambda2, lambda1_and_point_b1

EQUAL_POWERS = dict(p1=139., p2=139., n0=1., level_power=139., level_bits=2)
UNEQUAL_POWERS = dict(p1=2400., p2=590., n0=1., level_power=590., level_bits=3)


def figure_scenario(p1, p2, n0, level_power, level_bits):
    """scenario whose Pe puts ``level_power`` exactly on ``level_bits`` bits"""
    pe = recover_target_pe(level_power, level_bits, n0)
    return Scenario.from_pe(p1, p2, n0, pe)


def _figure(setup, samples):
    scenario = figure_scenario(**setup)
    comparison = compare(scenario, samples)
    lam1, b1 = lambda1_and_point_b1(scenario)
    return {
        'scenario': scenario,
        'comparison': comparison,
        'regions': comparison.regions,
        'schedules': dict((t, synth_schedule(t, scenario)) for t in ('c', 'c1', 'b1')),
        'lambda1': lam1,
        'lambda2': lambda2(scenario),
    }


def equal_powers(samples=64):
    """
    P1 = P2 = 139: superposition with power control is a pentagon like the
    capacity region, and without power control it collapses to naive TDMA.
    """
    return _figure(EQUAL_POWERS, samples)


def unequal_powers(samples=64):
    """
    P1 = 2400, P2 = 590: superposition without power control is the
    quadrilateral (0,3), (1,3), (4,0), and with power control nearly touches
    the outer bound.
    """
    return _figure(UNEQUAL_POWERS, samples)
