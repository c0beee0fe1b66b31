"""
Shared fixtures of the test suite.
"""
import itertools
import warnings

from ..core.awgn_gap import GapParams, power_for_integer_rate
from ..core.errors import IntegerLevelWarning
from ..core.scheduler import Scenario

GRID_PE = (1e-5, 1e-7)
GRID_RATIOS = (1, 2, 4, 10)
GRID_RATES = range(1, 7)


def scenario_grid():
    """
    Scenarios with user 1 exactly on an integer level R1 and p2 = p1 / ratio.

    :returns: list of (scenario, pe, ratio, R1)
    """
    grid = []
    for pe, ratio, r1 in itertools.product(GRID_PE, GRID_RATIOS, GRID_RATES):
        p1 = power_for_integer_rate(r1, 1., GapParams(pe))
        grid.append((Scenario.from_pe(p1, p1 / ratio, 1., pe), pe, ratio, r1))
    return grid


def ignore_level_warnings(testcase):
    """silence off-level warnings for the rest of ``testcase``"""
    w = warnings.catch_warnings()
    w.__enter__()
    testcase.addCleanup(w.__exit__, None, None, None)
    warnings.simplefilter('ignore', IntegerLevelWarning)
