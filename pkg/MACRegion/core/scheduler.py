# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)
"""
Schedules of superimposed PAM for the two-user Gaussian MAC.

A schedule is a list of time phases. In each phase every user sends
integer-bit PAM at some instantaneous power (or is silent). Two active users
superimpose: the user with the larger minimum distance defines the cosets
and must keep at least M_inner times the inner user's distance, so every
sum point stays decodable at the inner user's distance.

The corner points handled here are

* ``c``: user 1 alone at its integer rate R1,
* ``b``: user 2 at R2 with user 1 on top at the largest integer k the
  power ladder allows,
* ``c1``: ``c`` with user 2 sending 2-PAM at boosted power during a
  fraction 1 - lambda2 of the time,
* ``b1``: ``b`` with user 1 switching between k and k + 1 bits during the
  fractions lambda1 and 1 - lambda1,

and every point on the segment b1-c1 by time sharing.
"""
import logging
import math
import numbers
import warnings
from collections import namedtuple

import numpy as np

from .awgn_gap import GapParams, PamSpec, power_for_integer_rate, max_integer_rate, MAX_BITS
from .errors import (DomainError, NoSuperpositionError, InfeasibleTargetError, ConvergenceError,
                     RelabelWarning, IntegerLevelWarning)
from ..util.config import config

logger = logging.getLogger(__name__)

TARGETS = ('b', 'c', 'b1', 'c1')

RatePoint = namedtuple('RatePoint', ['r1', 'r2'])
RatePoint.__doc__ = "Rates of user 1 and user 2 in bits per real dimension."


class Scenario(object):
    """
    Power budgets and operating point of the two-user channel.

    User 1 is the stronger user. When ``p2 > p1`` the users are swapped and
    :attr:`relabeled` is set.

    :param p1: average power of user 1
    :param p2: average power of user 2, may be 0
    :param n0: noise variance per real dimension
    :param gap_params: target error rate and coding gain
    :type gap_params: :class:`~MACRegion.core.awgn_gap.GapParams`
    :param relabeled: the powers are already in internal labels, swapped
        with respect to the caller's (as stored in schedule files)
    """
    def __init__(self, p1, p2, n0, gap_params, relabeled=False):
        p1, p2, n0 = float(p1), float(p2), float(n0)
        for name, value in (('p1', p1), ('p2', p2)):
            if not (value >= 0. and np.isfinite(value)):
                raise DomainError("%s must be finite and >= 0, got %r" % (name, value))
        if not (n0 > 0. and np.isfinite(n0)):
            raise DomainError("n0 must be finite and > 0, got %r" % n0)
        if not isinstance(gap_params, GapParams):
            raise DomainError("gap_params must be GapParams, got %r" % (gap_params,))
        if relabeled and p2 > p1:
            raise DomainError("a relabeled scenario needs p1 >= p2, got p1=%g, p2=%g" % (p1, p2))
        self.relabeled = bool(relabeled) or p2 > p1
        if p2 > p1:
            warnings.warn("p2=%g exceeds p1=%g: users swapped so that user 1 is the stronger one" % (p2, p1),
                          RelabelWarning)
            p1, p2 = p2, p1
        if p1 <= 0.:
            raise DomainError("at least one user needs positive power")
        self.p1, self.p2, self.n0 = p1, p2, n0
        self.gap_params = gap_params
        self.r1 = max_integer_rate(p1, n0, gap_params)
        self.r2 = max_integer_rate(p2, n0, gap_params)
        self.r_sum = max_integer_rate(p1 + p2, n0, gap_params)

    @classmethod
    def from_pe(cls, p1, p2, n0, target_pe, coding_gain_db=0.):
        return cls(p1, p2, n0, GapParams(target_pe, coding_gain_db))

    def budget(self, user):
        return self.p1 if user == 1 else self.p2

    def level(self, bits):
        """single user power for ``bits``-bit PAM"""
        return power_for_integer_rate(bits, self.n0, self.gap_params)

    def __repr__(self):
        return "Scenario(p1=%g, p2=%g, n0=%g, pe=%g, coding_gain_db=%g%s)" % (
            self.p1, self.p2, self.n0, self.gap_params.target_pe, self.gap_params.coding_gain_db,
            ', relabeled' if self.relabeled else '')


class Phase(namedtuple('Phase', ['fraction', 'user1', 'user2'])):
    """
    A time phase: a fraction of the time in (0, 1] and both users' PAM.

    The minimum distance condition is checked by :func:`validate_schedule`,
    not here, so that broken schedules can still be built and reported on.
    """
    __slots__ = ()

    def __new__(cls, fraction, user1, user2):
        fraction = float(fraction)
        if not (0. < fraction <= 1.):
            raise DomainError("phase fraction must lie in (0, 1], got %r" % fraction)
        if not (isinstance(user1, PamSpec) and isinstance(user2, PamSpec)):
            raise DomainError("phase users must be PamSpec instances")
        return super(Phase, cls).__new__(cls, fraction, user1, user2)

    def user(self, u):
        return self.user1 if u == 1 else self.user2

    @property
    def total_power(self):
        return self.user1.power + self.user2.power

    @property
    def superposed(self):
        return self.user1.active and self.user2.active

    @property
    def outer(self):
        """index of the coset-defining user: the one with the larger minimum distance"""
        return 1 if self.user1.dmin >= self.user2.dmin else 2

    @property
    def inner(self):
        return 3 - self.outer

    def scaled(self, factor):
        return Phase(self.fraction * factor, self.user1, self.user2)


class Schedule(object):
    """
    Immutable list of phases, kept in canonical order of increasing total
    instantaneous power (ties keep their construction order).
    """
    def __init__(self, phases, scenario, target=None, notes=()):
        phases = list(phases)
        if not phases:
            raise DomainError("a schedule needs at least one phase")
        order = sorted(range(len(phases)), key=lambda i: (phases[i].total_power, i))
        self.phases = tuple(phases[i] for i in order)
        self.scenario = scenario
        self.target = target
        self.notes = tuple(notes)

    def __iter__(self):
        return iter(self.phases)

    def __len__(self):
        return len(self.phases)

    @property
    def rates(self):
        """time averaged rates as a :class:`RatePoint`"""
        return RatePoint(sum(p.fraction * p.user1.bits for p in self.phases),
                         sum(p.fraction * p.user2.bits for p in self.phases))

    @property
    def throughput(self):
        return sum(self.rates)

    def average_power(self, user):
        return sum(p.fraction * p.user(user).power for p in self.phases)

    def __repr__(self):
        return "Schedule(target=%r, phases=%d, rates=(%.6g, %.6g))" % ((self.target, len(self)) + tuple(self.rates))


class PowerLadder(object):
    """
    Powers at which the stronger user can carry k bits on top of the
    always-on weak user: level(0) = 0 < level(1) < level(2) < ...

    ``levels`` holds every level up to the first one above ``ceiling``.
    """
    def __init__(self, base_bits, level_func, ceiling):
        self.base_bits = base_bits
        self._level_func = level_func
        rtol = config.getfloat('numerics', 'level_rtol')
        levels = [0.]
        while levels[-1] <= ceiling * (1. + rtol):
            if len(levels) > MAX_BITS:
                raise ConvergenceError("power ladder exceeds %d bits below %g" % (MAX_BITS, ceiling))
            levels.append(level_func(len(levels)))
        self.levels = tuple(levels)
        self._rtol = rtol

    def level(self, k):
        if k < len(self.levels):
            return self.levels[k]
        return self._level_func(k)

    def index(self, power):
        """largest k with level(k) <= power; a power on a level up to rounding reaches it"""
        k = 0
        while k < MAX_BITS and self.level(k + 1) <= power * (1. + self._rtol):
            k += 1
        return k

    def on_level(self, power):
        """True when ``power`` sits on level(index(power)) up to rounding"""
        k = self.index(power)
        return k > 0 and power <= self.level(k) * (1. + self._rtol)

    def __repr__(self):
        return "PowerLadder(base_bits=%d, levels=%s)" % (self.base_bits, ', '.join('%.6g' % l for l in self.levels))


def power_ladder(base_bits, scenario):
    """
    Power ladder of user 1 over the always-on user 2 at ``base_bits`` bits.

    With user 2 spending its whole power p2 on M2 = 2**base_bits points,
    user 1 at k bits must keep d_min,1 = M2 d_min,2, so

        level(k) = M2**2 p2 (4**k - 1) / (M2**2 - 1).

    At an integer-level p2 this is 4**base_bits gap(base_bits) (4**k - 1) N0.
    With base_bits = 0 user 2 is silent and the ladder holds the single-user
    levels.
    """
    base_bits = int(base_bits)
    if base_bits < 0:
        raise DomainError("base_bits must be >= 0, got %d" % base_bits)
    if base_bits == 0:
        return PowerLadder(0, scenario.level, scenario.p1)
    m2 = 4. ** base_bits
    unit = m2 * scenario.p2 / (m2 - 1.)
    return PowerLadder(base_bits, lambda k: unit * (4. ** k - 1.), scenario.p1)


def lambda2(scenario):
    """
    Fraction of time user 2 stays silent at corner c1.

    In the remaining 1 - lambda2 user 2 sends 2-PAM at power
    p2 / (1 - lambda2), just enough to put its two points M1 d_min,1 apart:

        lambda2 = 1 - (4**R1 - 1) / 4**R1 * p2 / (3 p1)

    :raises NoSuperpositionError: if user 1 cannot send a single bit
    """
    if scenario.r1 == 0:
        raise NoSuperpositionError("R1 >= 1 violated: user 1 cannot afford 1 bit at p1=%g, nothing to superimpose on"
                                  % scenario.p1)
    if scenario.p2 == 0.:
        return 1.
    m1 = 4. ** scenario.r1
    return 1. - (m1 - 1.) / m1 * scenario.p2 / (3. * scenario.p1)


def point_c(scenario):
    return RatePoint(float(scenario.r1), 0.)


def point_c1(scenario):
    """user 1 at R1, user 2 at (1 - lambda2) bits"""
    return RatePoint(float(scenario.r1), 1. - lambda2(scenario))


def _ladder_position(scenario):
    ladder = power_ladder(scenario.r2, scenario)
    k = ladder.index(scenario.p1)
    if ladder.on_level(scenario.p1):
        return ladder, k, 1.
    lo, hi = ladder.level(k), ladder.level(k + 1)
    return ladder, k, 1. - (scenario.p1 - lo) / (hi - lo)


def point_b(scenario):
    """user 2 at R2 with user 1 at the largest integer k of the ladder"""
    _, k, _ = _ladder_position(scenario)
    return RatePoint(float(k), float(scenario.r2))


def lambda1_and_point_b1(scenario):
    """
    Power control at corner b: user 1 spends level(k) during lambda1 and
    level(k + 1) during 1 - lambda1, averaging exactly p1.

    :returns: (lambda1, b1) with b1 = (k + 1 - lambda1, R2)
    """
    _, k, lam1 = _ladder_position(scenario)
    return lam1, RatePoint(k + 1. - lam1, float(scenario.r2))


def integer_level_notes(scenario):
    """
    Messages for scenarios where the integer-level sum rate floor disagrees
    with the ladder, in which case the ladder point is kept.
    """
    notes = []
    if scenario.r1 == 0:
        return notes
    _, k, lam1 = _ladder_position(scenario)
    if scenario.r_sum != scenario.r1:
        notes.append("sum-rate floor %d differs from R1=%d: powers are off the integer levels"
                     % (scenario.r_sum, scenario.r1))
    if scenario.r_sum != k + scenario.r2:
        notes.append("sum-rate floor %d differs from ladder k + R2 = %d + %d: b1 uses the ladder value %.12g"
                     % (scenario.r_sum, k, scenario.r2, k + 1. - lam1))
    return notes


def _warn_notes(notes):
    for note in notes:
        warnings.warn(note, IntegerLevelWarning)


def _schedule_c(scenario):
    if scenario.r1 == 0:
        raise NoSuperpositionError("R1 >= 1 violated: user 1 cannot afford 1 bit at p1=%g" % scenario.p1)
    return [Phase(1., PamSpec.from_power(scenario.r1, scenario.p1), PamSpec.silent())]


def _schedule_c1(scenario):
    lam2 = lambda2(scenario)
    user1 = PamSpec.from_power(scenario.r1, scenario.p1)
    if lam2 >= 1.:
        return [Phase(1., user1, PamSpec.silent())]
    boosted = scenario.p2 / (1. - lam2)
    return [Phase(lam2, user1, PamSpec.silent()),
            Phase(1. - lam2, user1, PamSpec.from_power(1, boosted))]


def _schedule_b(scenario):
    ladder, k, lam1 = _ladder_position(scenario)
    power = scenario.p1 if lam1 == 1. else ladder.level(k)
    user2 = PamSpec.from_power(scenario.r2, scenario.p2)
    return [Phase(1., PamSpec.from_power(k, power), user2)]


def _schedule_b1(scenario):
    ladder, k, lam1 = _ladder_position(scenario)
    user2 = PamSpec.from_power(scenario.r2, scenario.p2)
    if lam1 == 1.:
        return [Phase(1., PamSpec.from_power(k, scenario.p1), user2)]
    return [Phase(lam1, PamSpec.from_power(k, ladder.level(k)), user2),
            Phase(1. - lam1, PamSpec.from_power(k + 1, ladder.level(k + 1)), user2)]


def _mixture(scenario, theta):
    if scenario.r1 == 0:
        raise NoSuperpositionError("R1 >= 1 violated: user 1 cannot afford 1 bit at p1=%g" % scenario.p1)
    phases = [p.scaled(1. - theta) for p in _schedule_b1(scenario) if theta < 1.]
    phases += [p.scaled(theta) for p in _schedule_c1(scenario) if theta > 0.]
    return phases


def _theta_on_segment(scenario, point):
    b1 = lambda1_and_point_b1(scenario)[1]
    c1 = point_c1(scenario)
    tol = 1e-9
    if point.r1 > max(b1.r1, c1.r1) + tol:
        raise InfeasibleTargetError("target %r violates r1 <= R1 = %g" % (tuple(point), max(b1.r1, c1.r1)))
    if point.r2 > max(b1.r2, c1.r2) + tol:
        raise InfeasibleTargetError("target %r violates r2 <= R2 = %g" % (tuple(point), max(b1.r2, c1.r2)))
    d = np.subtract(c1, b1)
    length2 = float(np.dot(d, d))
    theta = 0. if length2 == 0. else float(np.dot(np.subtract(point, b1), d)) / length2
    nearest = np.add(b1, np.clip(theta, 0., 1.) * d)
    if np.hypot(*np.subtract(point, nearest)) > tol:
        raise InfeasibleTargetError("target %r is not on segment b1-c1 between %r and %r"
                                    % (tuple(point), tuple(b1), tuple(c1)))
    return float(np.clip(theta, 0., 1.))


def synth_schedule(target, scenario):
    """
    Build the schedule reaching ``target``.

    :param target: ``'b'``, ``'c'``, ``'b1'``, ``'c1'``, a weight theta in
        [0, 1] along b1-c1 (0 is b1, 1 is c1) or a :class:`RatePoint` on that
        segment
    :param scenario: the channel
    :type scenario: :class:`Scenario`
    :rtype: :class:`Schedule`
    :raises InfeasibleTargetError: naming the bound the target violates
    """
    notes = integer_level_notes(scenario)
    if isinstance(target, RatePoint):
        theta = _theta_on_segment(scenario, target)
        phases = _mixture(scenario, theta)
        label = 'theta=%.12g' % theta
    elif isinstance(target, numbers.Real) and not isinstance(target, bool):
        theta = float(target)
        if not (0. <= theta <= 1.):
            raise InfeasibleTargetError("theta=%r violates theta in [0, 1]" % target)
        phases = _mixture(scenario, theta)
        label = 'theta=%.12g' % theta
    elif target in TARGETS:
        if scenario.r1 == 0:
            raise NoSuperpositionError("R1 >= 1 violated: user 1 cannot afford 1 bit at p1=%g" % scenario.p1)
        phases = {'b': _schedule_b, 'c': _schedule_c, 'b1': _schedule_b1, 'c1': _schedule_c1}[target](scenario)
        label = target
    else:
        raise InfeasibleTargetError("unknown target %r, use one of %s, a theta in [0, 1] or a RatePoint"
                                    % (target, ', '.join(TARGETS)))
    if label not in ('c', 'c1'):
        _warn_notes(notes)
    schedule = Schedule(phases, scenario, target=label, notes=notes)
    logger.debug("synthesized %r", schedule)
    return schedule


ValidationReport = namedtuple('ValidationReport', ['passed', 'failures'])
ValidationReport.__doc__ = "Outcome of :func:`validate_schedule`; ``failures`` in check order."


def validate_schedule(schedule):
    """
    Check a schedule, in this order:

    1. fractions lie in (0, 1] and sum to 1 within ``[schedule] fraction_tol``
    2. no user exceeds its average power budget (``[schedule] power_rtol``)
    3. every active user has at least the single-user power of its own
       constellation, so its own minimum distance meets the target Pe
    4. in phases with both users active, the outer minimum distance is at
       least M_inner times the inner one

    Never raises; the report lists every violated condition.

    :rtype: :class:`ValidationReport`
    """
    scenario = schedule.scenario
    fraction_tol = config.getfloat('schedule', 'fraction_tol')
    rtol = config.getfloat('schedule', 'power_rtol')
    failures = []

    total = math.fsum(p.fraction for p in schedule.phases)
    if abs(total - 1.) > fraction_tol:
        failures.append("fractions sum to %.15g, not 1" % total)
    for i, p in enumerate(schedule.phases):
        if not (0. < p.fraction <= 1.):
            failures.append("phase %d fraction %r outside (0, 1]" % (i, p.fraction))

    for u in (1, 2):
        average, budget = schedule.average_power(u), scenario.budget(u)
        if average > budget * (1. + rtol):
            failures.append("user %d average power %.12g exceeds budget %.12g" % (u, average, budget))

    for i, p in enumerate(schedule.phases):
        for u in (1, 2):
            spec = p.user(u)
            if not spec.active:
                continue
            need = scenario.level(spec.bits)
            if spec.power < need * (1. - rtol):
                failures.append("phase %d user %d: power %.12g below %.12g needed for %d bit(s) at Pe=%g"
                                % (i, u, spec.power, need, spec.bits, scenario.gap_params.target_pe))

    for i, p in enumerate(schedule.phases):
        if not p.superposed:
            continue
        outer, inner = p.user(p.outer), p.user(p.inner)
        if outer.dmin < inner.size * inner.dmin * (1. - rtol):
            failures.append("phase %d d_min: outer user %d distance %.12g below %d x inner user %d distance %.12g"
                            % (i, p.outer, outer.dmin, inner.size, p.inner, inner.dmin))

    if failures:
        logger.info("schedule %r failed: %s", schedule, failures[0])
    return ValidationReport(not failures, tuple(failures))
