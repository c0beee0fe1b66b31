# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)
"""
Rate regions of the two-user Gaussian MAC under uncoded PAM.

A region is stored by its boundary: vertices running from (0, r2max) to
(r1max, 0) with r1 nondecreasing and r2 nonincreasing. Every region is
down-closed, so the boundary and the two axes enclose it.
"""
import logging
import math
import warnings
from collections import namedtuple

import numpy as np
from scipy.spatial import ConvexHull

from . import schemes
from .awgn_gap import rate_bound, power_for_integer_rate, max_integer_rate
from .errors import DomainError, IntegerLevelWarning
from .scheduler import (RatePoint, lambda1_and_point_b1, point_b, point_c, point_c1,
                        integer_level_notes)
from ..util.config import config

logger = logging.getLogger(__name__)


class RateRegion(object):
    """
    Boundary of a rate region.

    :param scheme: one of :data:`~MACRegion.core.schemes.ALL_SCHEMES`
    :param vertices: boundary from (0, r2max) to (r1max, 0)
    :param notes: messages about the construction, e.g. off-level powers
    """
    def __init__(self, scheme, vertices, notes=()):
        if scheme not in schemes.ALL_SCHEMES:
            raise DomainError("unknown scheme %r" % scheme)
        points = [RatePoint(float(r1), float(r2)) for r1, r2 in vertices]
        if not points:
            raise DomainError("a region needs at least one vertex")
        for p in points:
            if not (np.isfinite(p.r1) and np.isfinite(p.r2) and p.r1 >= 0. and p.r2 >= 0.):
                raise DomainError("vertex %r of %s is not finite and nonnegative" % (tuple(p), scheme))
        deduped = [points[0]]
        for p in points[1:]:
            if p != deduped[-1]:
                deduped.append(p)
        self.scheme = scheme
        self.vertices = tuple(deduped)
        self.notes = tuple(notes)

    @property
    def r1(self):
        return np.array([v.r1 for v in self.vertices])

    @property
    def r2(self):
        return np.array([v.r2 for v in self.vertices])

    def polygon(self):
        """closed polygon of the region: the origin followed by the boundary"""
        origin = RatePoint(0., 0.)
        if self.vertices[0] == origin:
            return self.vertices
        return (origin,) + self.vertices

    def is_monotone(self):
        return bool(np.all(np.diff(self.r1) >= 0.) and np.all(np.diff(self.r2) <= 0.))

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return "RateRegion(%s, %s)" % (self.scheme, ', '.join('(%.6g, %.6g)' % v for v in self.vertices))


def _samples(samples):
    if samples is None:
        samples = config.getint('region', 'samples')
    samples = int(samples)
    if samples < 2:
        raise DomainError("samples must be >= 2, got %d" % samples)
    return samples


def _upper_hull(points):
    """
    Boundary of the down-closed convex hull of ``points``: the hull
    vertices other than the origin, from (0, max r2) to (max r1, 0).
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    top, right = pts[:, 1].max(), pts[:, 0].max()
    if top <= 0. or right <= 0.:
        # the region is a segment on one axis
        return [(0., top), (right, 0.)]
    closure = np.vstack((pts, [(0., 0.), (0., top), (right, 0.)]))
    hull = ConvexHull(closure)
    corners = [tuple(p) for p in closure[hull.vertices] if p[0] > 0. or p[1] > 0.]
    return sorted(corners, key=lambda p: (p[0], -p[1]))


def gaussian_capacity_region(scenario):
    """
    Capacity region without any gap: C_i = 1/2 log2(1 + P_i/N0) per user
    and C_12 = 1/2 log2(1 + (P1 + P2)/N0) on the sum.
    """
    n0 = scenario.n0
    c1 = .5 * math.log2(1. + scenario.p1 / n0)
    c2 = .5 * math.log2(1. + scenario.p2 / n0)
    c12 = .5 * math.log2(1. + (scenario.p1 + scenario.p2) / n0)
    return RateRegion(schemes.GAUSSIAN_CAPACITY,
                      [(0., c2), (c12 - c2, c2), (c1, c12 - c1), (c1, 0.)])


def gap_outer_bounds(scenario):
    """
    The three rate-dependent-gap bounds (A1, A2, S): user 1, user 2 and the
    sum, each the fixed point of r = 1/2 log2(1 + P / (gap(r) N0)).
    """
    n0, params = scenario.n0, scenario.gap_params
    a1 = rate_bound(scenario.p1, n0, params)
    a2 = rate_bound(scenario.p2, n0, params)
    s = rate_bound(scenario.p1 + scenario.p2, n0, params)
    logger.debug("gap outer bounds A1=%.12g A2=%.12g S=%.12g", a1, a2, s)
    return a1, a2, s


def gap_outer_region(scenario, samples=None):
    """
    Outer bound with the rate-dependent PAM gap.

    A rectangle when the sum bound is inactive, otherwise a pentagon whose
    sum-rate facet is sampled at ``samples`` points including both corners.
    """
    samples = _samples(samples)
    a1, a2, s = gap_outer_bounds(scenario)
    if s >= a1 + a2:
        return RateRegion(schemes.GAP_OUTER, [(0., a2), (a1, a2), (a1, 0.)])
    x = np.linspace(s - a2, a1, samples)
    facet = [(xi, s - xi) for xi in x]
    # exact corners, free of linspace rounding
    facet[0], facet[-1] = (s - a2, a2), (a1, s - a1)
    return RateRegion(schemes.GAP_OUTER, [(0., a2)] + facet + [(a1, 0.)])


def superpos_no_pc_region(scenario):
    """
    Superposition without power control: corners (0, R2), b = (k, R2) and
    c = (R1, 0), with time sharing between them.
    """
    notes = integer_level_notes(scenario)
    for note in notes:
        warnings.warn(note, IntegerLevelWarning)
    if scenario.r1 == 0:
        return RateRegion(schemes.SUPERPOS_NO_PC, [(0., 0.)], notes)
    corners = [(0., scenario.r2), point_b(scenario), point_c(scenario)]
    return RateRegion(schemes.SUPERPOS_NO_PC, _upper_hull(corners), notes)


def superpos_pc_region(scenario):
    """
    Superposition with power control: the hull of (0, R2), b1, c1 and
    (R1, 0). The segment b1-c1 is reached by time sharing.
    """
    if scenario.r1 == 0:
        return RateRegion(schemes.SUPERPOS_PC, [(0., 0.)])
    b1 = lambda1_and_point_b1(scenario)[1]
    c1 = point_c1(scenario)
    corners = [(0., scenario.r2), b1, c1, (scenario.r1, 0.)]
    return RateRegion(schemes.SUPERPOS_PC, _upper_hull(corners), integer_level_notes(scenario))


def tdma_naive_region(scenario):
    """time sharing of (R1, 0) and (0, R2) at constant power"""
    return RateRegion(schemes.TDMA_NAIVE, [(0., scenario.r2), (scenario.r1, 0.)])


def power_controlled_rate(power, n0, params):
    """
    Single-user rate when time sharing between the two integer-bit
    constellations around ``power`` at average power ``power``.
    """
    k = max_integer_rate(power, n0, params)
    lo = power_for_integer_rate(k, n0, params)
    hi = power_for_integer_rate(k + 1, n0, params)
    return k + max(0., power - lo) / (hi - lo)


def tdma_slot_rate(power, tau, n0, params):
    """
    Average rate of a user owning a slot of length ``tau`` and spending its
    whole budget inside it, at instantaneous power power / tau.

    Written as tau k + (power - tau level(k)) / (level(k + 1) - level(k)) so
    that below the 1-bit level (level(0) = 0) the rate is power / level(1)
    exactly, whatever tau.
    """
    if tau <= 0.:
        return 0.
    k = max_integer_rate(power / tau, n0, params)
    lo = power_for_integer_rate(k, n0, params)
    hi = power_for_integer_rate(k + 1, n0, params)
    return tau * k + max(0., power - tau * lo) / (hi - lo)


def tdma_pc_region(scenario, samples=None):
    """
    TDMA with power control: user 1 owns a fraction tau of the time, user 2
    the rest, each boosted to its budget over its own slot.
    """
    samples = _samples(samples)
    n0, params = scenario.n0, scenario.gap_params
    taus = np.linspace(0., 1., samples)
    r1 = np.array([tdma_slot_rate(scenario.p1, tau, n0, params) for tau in taus])
    r2 = np.array([tdma_slot_rate(scenario.p2, 1. - tau, n0, params) for tau in taus])
    # rounding across level changes must not bend the boundary back
    r1 = np.maximum.accumulate(r1)
    r2 = np.minimum.accumulate(r2)
    return RateRegion(schemes.TDMA_PC, zip(r1, r2))


_BUILDERS = {
    schemes.GAUSSIAN_CAPACITY: lambda scenario, samples: gaussian_capacity_region(scenario),
    schemes.GAP_OUTER: gap_outer_region,
    schemes.SUPERPOS_NO_PC: lambda scenario, samples: superpos_no_pc_region(scenario),
    schemes.SUPERPOS_PC: lambda scenario, samples: superpos_pc_region(scenario),
    schemes.TDMA_NAIVE: lambda scenario, samples: tdma_naive_region(scenario),
    schemes.TDMA_PC: tdma_pc_region,
}


def region(scheme, scenario, samples=None):
    """build the region of ``scheme`` for ``scenario``"""
    try:
        builder = _BUILDERS[scheme]
    except KeyError:
        raise DomainError("unknown scheme %r, choose from %s" % (scheme, ', '.join(schemes.ALL_SCHEMES)))
    return builder(scenario, samples)


def _boundary_value(r1, r2, x):
    j = int(np.searchsorted(r1, x, side='left'))
    if j == 0:
        return r2[0]
    if j >= len(r1):
        return r2[-1]
    t = (x - r1[j - 1]) / (r1[j] - r1[j - 1])
    return r2[j - 1] + t * (r2[j] - r2[j - 1])


def region_contains(outer, inner, tol):
    """
    True when every vertex of ``inner`` lies in ``outer`` within ``tol``.

    Checking the vertices is enough for a convex ``outer``; for a non-convex
    one (tdma_pc) it is the vertex-wise test only.
    """
    r1, r2 = outer.r1, outer.r2
    r1max = r1[-1]
    for v in inner.vertices:
        if v.r1 > r1max + tol:
            return False
        if v.r2 > _boundary_value(r1, r2, min(v.r1, r1max)) + tol:
            return False
    return True


def max_sum_rate(rate_region):
    return max(v.r1 + v.r2 for v in rate_region.vertices)


def sum_rate_gap(scenario):
    """
    Sum-rate loss of superposition with power control against the gap
    outer bound, in bits. At most 1/2 bit for integer-level powers. At large
    target error rates (1e-3) it can turn slightly negative: b1 then lies
    outside the outer bound.
    """
    a1, a2, s = gap_outer_bounds(scenario)
    return min(s, a1 + a2) - max_sum_rate(superpos_pc_region(scenario))


Comparison = namedtuple('Comparison', ['scenario', 'regions', 'max_sum_rate', 'sum_rate_gap', 'containment', 'tol'])
Comparison.__doc__ = """
All regions of a scenario side by side.

``containment[outer][inner]`` is :func:`region_contains` at ``tol``.
"""


def compare(scenario, samples=None, tol=None, scheme_names=schemes.ALL_SCHEMES):
    """build every region and tabulate sum rates and containments"""
    if tol is None:
        tol = config.getfloat('compare', 'containment_tol')
    regions = dict((name, region(name, scenario, samples)) for name in scheme_names)
    sums = dict((name, max_sum_rate(r)) for name, r in regions.items())
    containment = dict((o, dict((i, region_contains(regions[o], regions[i], tol)) for i in scheme_names))
                       for o in scheme_names)
    gap_value = sum_rate_gap(scenario)
    if schemes.SUPERPOS_PC in containment and schemes.TDMA_PC in containment:
        if not containment[schemes.SUPERPOS_PC][schemes.TDMA_PC]:
            logger.warning("tdma_pc is not contained in superpos_pc for %r", scenario)
    if schemes.GAP_OUTER in containment and schemes.SUPERPOS_PC in containment:
        if not containment[schemes.GAP_OUTER][schemes.SUPERPOS_PC]:
            logger.warning("superpos_pc is not contained in gap_outer for %r, sum-rate gap %.6g bits",
                           scenario, gap_value)
    return Comparison(scenario, regions, sums, gap_value, containment, tol)
