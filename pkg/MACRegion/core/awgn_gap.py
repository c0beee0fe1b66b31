# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)
"""
Gap approximation for uncoded PAM on the real AWGN channel.

An M-PAM constellation with M = 2**bits and average power P has minimum
distance d_min = sqrt(12 P / (M**2 - 1)) and, on a channel with noise
variance N0 per real dimension, symbol error probability

    Pe = 2 (1 - 1/M) Q(sqrt(3 SNR / (M**2 - 1))),    SNR = P / N0.

Inverting this at a target Pe gives bits = 1/2 log2(1 + SNR / gap) with

    gap(bits, Pe) = Q^{-1}(M Pe / (2 (M - 1)))**2 / 3

which is nondecreasing in the rate and tends to Q^{-1}(Pe/2)**2 / 3.
"""
import logging
import math
from collections import namedtuple
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, ConvergenceError
from ..util.univariate_Gaussian import q_func, q_inv
from ..util.config import config

logger = logging.getLogger(__name__)

#: no ladder or integer search goes beyond this many bits per real dimension
MAX_BITS = 64


class GapParams(namedtuple('GapParams', ['target_pe', 'coding_gain_db'])):
    """
    Operating point of the gap approximation.

    :param target_pe: target symbol error probability, 0 < target_pe < 1
    :param coding_gain_db: coding gain in dB, nonnegative
    """
    __slots__ = ()

    def __new__(cls, target_pe, coding_gain_db=0.):
        target_pe = float(target_pe)
        coding_gain_db = float(coding_gain_db)
        if not (0. < target_pe < 1.):
            raise DomainError("target_pe must lie in (0, 1), got %r" % target_pe)
        if not (coding_gain_db >= 0. and np.isfinite(coding_gain_db)):
            raise DomainError("coding_gain_db must be finite and >= 0, got %r" % coding_gain_db)
        return super(GapParams, cls).__new__(cls, target_pe, coding_gain_db)

    @property
    def coding_gain(self):
        """linear coding gain"""
        return 10. ** (self.coding_gain_db / 10.)


class PamSpec(namedtuple('PamSpec', ['bits', 'power', 'dmin'])):
    """
    One user's PAM constellation inside a schedule phase.

    bits = 0 stands for a silent user, with zero power and zero distance.
    Use :meth:`from_power` to get a consistent ``dmin``.
    """
    __slots__ = ()

    def __new__(cls, bits, power, dmin):
        bits = int(bits)
        power, dmin = float(power), float(dmin)
        if bits < 0:
            raise DomainError("bits must be >= 0, got %d" % bits)
        if not (power >= 0. and np.isfinite(power)):
            raise DomainError("power must be finite and >= 0, got %r" % power)
        if bits == 0 and power != 0.:
            raise DomainError("a silent user (bits = 0) cannot use power %r" % power)
        return super(PamSpec, cls).__new__(cls, bits, power, dmin)

    @classmethod
    def from_power(cls, bits, power):
        bits = int(bits)
        if bits == 0:
            return cls(0, 0., 0.)
        return cls(bits, power, pam_dmin(power, bits))

    @classmethod
    def silent(cls):
        return cls(0, 0., 0.)

    @property
    def size(self):
        """number of constellation points M"""
        return 2 ** self.bits

    @property
    def active(self):
        return self.bits > 0


def _check_bits(bits, minimum=1):
    if int(bits) != bits or bits < minimum:
        raise DomainError("bits must be an integer >= %d, got %r" % (minimum, bits))
    return int(bits)


def _check_nonnegative(name, value):
    value = float(value)
    if not (value >= 0. and np.isfinite(value)):
        raise DomainError("%s must be finite and >= 0, got %r" % (name, value))
    return value


def _check_positive(name, value):
    value = float(value)
    if not (value > 0. and np.isfinite(value)):
        raise DomainError("%s must be finite and > 0, got %r" % (name, value))
    return value


def pam_dmin(power, bits):
    """
    Minimum distance of 2**bits-PAM with average power ``power``.

    :param power: average symbol power
    :type power: float
    :param bits: bits per symbol, >= 1
    :type bits: int
    """
    bits = _check_bits(bits)
    power = _check_nonnegative('power', power)
    m2 = 4. ** bits
    return math.sqrt(12. * power / (m2 - 1.))


def pam_ser(snr, bits):
    """
    Symbol error probability of 2**bits-PAM at signal to noise ratio ``snr``
    with nearest point detection.
    """
    bits = _check_bits(bits)
    snr = _check_nonnegative('snr', snr)
    m = 2. ** bits
    return 2. * (1. - 1. / m) * q_func(math.sqrt(3. * snr / (m * m - 1.)))


def _apply_coding_gain(gamma, params):
    if params.coding_gain_db == 0.:
        return gamma
    # a gap already below 1 is not reduced further, nor pushed below 1
    return gamma / min(params.coding_gain, max(gamma, 1.))


@lru_cache(maxsize=4096)
def gap(bits, params):
    """
    PAM gap at an integer rate.

    :param bits: bits per symbol, >= 1
    :type bits: int
    :param params: target error rate and coding gain
    :type params: :class:`GapParams`
    :rtype: float
    """
    bits = _check_bits(bits)
    m = 2. ** bits
    arg = m * params.target_pe / (2. * (m - 1.))
    if arg >= 1.:
        raise DomainError("gap undefined: Q^-1 argument %g for %d bit(s) at Pe=%g" % (arg, bits, params.target_pe))
    return _apply_coding_gain(q_inv(arg) ** 2 / 3., params)


def gap_inf(params):
    """Limit of :func:`gap` for an infinite number of bits."""
    return _apply_coding_gain(q_inv(params.target_pe / 2.) ** 2 / 3., params)


def gap_at_rate(rate, params):
    """
    Gap for a real, possibly fractional, rate: M = 2**rate in the gap formula.

    Below the rate where the Q^-1 argument reaches 1/2 the gap is 0.
    At integer rates this coincides with :func:`gap`.
    """
    rate = _check_nonnegative('rate', rate)
    if rate == 0.:
        return 0.
    if rate == int(rate) and rate <= MAX_BITS:
        m = 2. ** rate
        if m * params.target_pe / (2. * (m - 1.)) < 1.:
            return gap(int(rate), params)
    m = 2. ** rate
    arg = m * params.target_pe / (2. * (m - 1.))
    if arg >= .5:
        return 0.
    return _apply_coding_gain(q_inv(arg) ** 2 / 3., params)


def rate_with_gap(snr, gamma):
    """
    Rate in bits per real dimension, 1/2 log2(1 + snr / gamma).
    """
    snr = _check_nonnegative('snr', snr)
    gamma = _check_positive('gamma', gamma)
    return .5 * math.log2(1. + snr / gamma)


@lru_cache(maxsize=4096)
def power_for_integer_rate(bits, n0, params):
    """
    Smallest power at which 2**bits-PAM meets the target error rate,
    gap(bits) (4**bits - 1) N0. Silence (bits = 0) needs no power.
    """
    bits = _check_bits(bits, minimum=0)
    n0 = _check_positive('n0', n0)
    if bits == 0:
        return 0.
    return gap(bits, params) * (4. ** bits - 1.) * n0


def power_at_rate(rate, n0, params):
    """
    Power the gap formula needs for a real rate, gap_at_rate(rate) (4**rate - 1) N0.

    Continuous and nondecreasing in ``rate``; equal to
    :func:`power_for_integer_rate` at integer rates.
    """
    n0 = _check_positive('n0', n0)
    return gap_at_rate(rate, params) * (4. ** rate - 1.) * n0


def max_integer_rate(power, n0, params):
    """
    Largest integer k with power_for_integer_rate(k) <= power; 0 means the
    power does not buy a single bit.

    A power that equals a level up to ``[numerics] level_rtol`` counts as
    reaching it.
    """
    power = _check_nonnegative('power', power)
    n0 = _check_positive('n0', n0)
    rtol = config.getfloat('numerics', 'level_rtol')
    k = 0
    while k < MAX_BITS and power_for_integer_rate(k + 1, n0, params) <= power * (1. + rtol):
        k += 1
    return k


def rate_bound(power, n0, params):
    """
    Fixed point r = 1/2 log2(1 + P / (gap_at_rate(r) N0)).

    Solved as the root of power_at_rate(r) = P, which is the same equation
    with the rate-dependent gap moved to the left.

    :raises ConvergenceError: if no bracket or root is found
    """
    power = _check_nonnegative('power', power)
    n0 = _check_positive('n0', n0)
    if power == 0.:
        return 0.
    xtol = config.getfloat('numerics', 'fixed_point_xtol')

    def excess(r):
        return power_at_rate(r, n0, params) - power

    hi = max(1., rate_with_gap(power / n0, 1.))
    for _ in range(MAX_BITS):
        if excess(hi) > 0.:
            break
        hi *= 2.
    else:
        raise ConvergenceError("no bracket for the rate bound at power %g" % power)
    try:
        r, info = brentq(excess, 0., hi, xtol=xtol, rtol=4 * np.finfo(float).eps, full_output=True)
    except (ValueError, RuntimeError) as e:
        raise ConvergenceError("rate bound at power %g did not converge: %s" % (power, e))
    if not info.converged:
        raise ConvergenceError("rate bound at power %g did not converge" % power)
    logger.debug("rate bound %.12g at power %g after %d iterations", r, power, info.iterations)
    return r


def recover_target_pe(power, bits, n0=1., coding_gain_db=0.):
    """
    Target error rate at which ``power`` is exactly the power of ``bits``-bit
    PAM, i.e. the Pe solving power_for_integer_rate(bits, n0, Pe) = power.

    The solve runs on log Pe over [1e-15, 0.5].

    :raises DomainError: if no such Pe exists in that range
    """
    bits = _check_bits(bits)
    power = _check_positive('power', power)

    def excess(log_pe):
        return power_for_integer_rate(bits, n0, GapParams(math.exp(log_pe), coding_gain_db)) - power

    lo, hi = math.log(1e-15), math.log(.5)
    if excess(lo) < 0. or excess(hi) > 0.:
        raise DomainError("power %g does not meet %d bit(s) for any Pe in [1e-15, 0.5]" % (power, bits))
    log_pe = brentq(excess, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps)
    pe = math.exp(log_pe)
    logger.info("recovered Pe=%.6g from power %g at %d bit(s)", pe, power, bits)
    return pe
