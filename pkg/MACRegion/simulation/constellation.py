# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)
"""
Sum constellations of two superimposed PAM users and their detectors.
"""
import numpy as np

from ..core.errors import ConstellationError
from ..util.config import config
from ..util.univariate_Gaussian import std_norm_cdf


def pam_amplitudes(spec):
    """zero-mean amplitudes of a :class:`~MACRegion.core.awgn_gap.PamSpec`; a silent user sends 0"""
    if not spec.active:
        return np.zeros(1)
    m = spec.size
    return spec.dmin * (np.arange(m) - (m - 1) / 2.)


def _nearest(y, amplitudes):
    """index of the nearest of the sorted ``amplitudes``, ties to the smaller one"""
    if len(amplitudes) == 1:
        return np.zeros(np.shape(y), dtype=int)
    mid = .5 * (amplitudes[1:] + amplitudes[:-1])
    return np.searchsorted(mid, y, side='left')


class SumConstellation(object):
    """
    The noise-free received points of one phase.

    ``amplitudes`` are sorted; ``labels1`` and ``labels2`` give the symbol
    index of each user at every point (0 for a silent user).
    """
    def __init__(self, phase, amplitudes, labels1, labels2):
        self.phase = phase
        self.amplitudes = amplitudes
        self.labels1 = labels1
        self.labels2 = labels2
        self.user_amplitudes = (pam_amplitudes(phase.user1), pam_amplitudes(phase.user2))
        self.dmin_sum = float(np.min(np.diff(amplitudes))) if len(amplitudes) > 1 else 0.

    @property
    def points(self):
        return list(zip(self.amplitudes.tolist(), self.labels1.tolist(), self.labels2.tolist()))

    def labels(self, user):
        return self.labels1 if user == 1 else self.labels2

    @property
    def outer(self):
        return self.phase.outer

    @property
    def power(self):
        return float(np.mean(self.amplitudes ** 2))

    def __len__(self):
        return len(self.amplitudes)

    def user_dmin(self, user):
        """smallest distance between points whose ``user`` labels differ"""
        labels = self.labels(user)
        a = self.amplitudes
        differ = labels[:, None] != labels[None, :]
        if not differ.any():
            return 0.
        return float(np.min(np.abs(a[:, None] - a[None, :])[differ]))

    def symbol_error_probability(self, n0):
        """
        Exact per-user symbol error probability of nearest point detection
        with noise variance ``n0``, all points equally likely.

        A single active user gives 2 (1 - 1/M) Q(d_min / (2 sqrt(n0))).

        :returns: (ser1, ser2), 0 for a silent user
        """
        a = self.amplitudes
        sigma = np.sqrt(n0)
        mid = .5 * (a[1:] + a[:-1])
        lo = np.concatenate(([-np.inf], mid))
        hi = np.concatenate((mid, [np.inf]))
        z_lo = (lo[None, :] - a[:, None]) / sigma
        z_hi = (hi[None, :] - a[:, None]) / sigma
        idx = np.arange(len(a))
        above = idx[None, :] > idx[:, None]
        # tail differences on the far side of the sent point keep small probabilities accurate
        with np.errstate(invalid='ignore'):
            upper = std_norm_cdf(-z_lo) - std_norm_cdf(-z_hi)
            lower = std_norm_cdf(z_hi) - std_norm_cdf(z_lo)
        transition = np.clip(np.where(above, upper, lower), 0., 1.)
        transition[idx, idx] = 0.
        result = []
        for user, spec in ((1, self.phase.user1), (2, self.phase.user2)):
            if not spec.active:
                result.append(0.)
                continue
            labels = self.labels(user)
            wrong = labels[None, :] != labels[:, None]
            result.append(float(np.mean(np.sum(transition * wrong, axis=1))))
        return tuple(result)

    def __repr__(self):
        return "SumConstellation(%d points, dmin_sum=%.6g)" % (len(self), self.dmin_sum)


def build_sum_constellation(phase):
    """
    Superimpose the two users of ``phase``.

    :raises ConstellationError: if both users are active and the outer
        minimum distance is below M_inner times the inner one
    """
    rtol = config.getfloat('schedule', 'power_rtol')
    if phase.superposed:
        outer, inner = phase.user(phase.outer), phase.user(phase.inner)
        if outer.dmin < inner.size * inner.dmin * (1. - rtol):
            raise ConstellationError("outer distance %.12g below %d x inner distance %.12g"
                                     % (outer.dmin, inner.size, inner.dmin))
    a1, a2 = pam_amplitudes(phase.user1), pam_amplitudes(phase.user2)
    grid = a1[:, None] + a2[None, :]
    l1, l2 = np.meshgrid(np.arange(len(a1)), np.arange(len(a2)), indexing='ij')
    amplitudes = grid.ravel()
    order = np.argsort(amplitudes, kind='mergesort')
    amplitudes = amplitudes[order]
    if len(amplitudes) > 1 and np.min(np.diff(amplitudes)) <= 0.:
        raise ConstellationError("sum constellation has coinciding points")
    return SumConstellation(phase, amplitudes, l1.ravel()[order], l2.ravel()[order])


def detect(y, constellation):
    """
    Nearest point detection, ties to the smaller amplitude.

    :param y: received sample(s)
    :returns: (labels1, labels2), arrays shaped like ``y``
    """
    i = _nearest(np.asarray(y, dtype=float), constellation.amplitudes)
    return constellation.labels1[i], constellation.labels2[i]


def detect_sic(y, constellation):
    """
    Successive detection: nearest outer symbol, subtract it, nearest inner
    symbol. Under the minimum distance condition it decides like :func:`detect`.
    """
    y = np.asarray(y, dtype=float)
    outer = constellation.outer
    a_out = constellation.user_amplitudes[outer - 1]
    a_in = constellation.user_amplitudes[2 - outer]
    i_out = _nearest(y, a_out)
    i_in = _nearest(y - a_out[i_out], a_in)
    if outer == 1:
        return i_out, i_in
    return i_in, i_out
