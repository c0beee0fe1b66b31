# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)

import numpy as np
from scipy.special import erfc, erfcinv

from ..core.errors import DomainError


def std_norm_pdf(x):
    """Standard Gaussian density function"""
    return 1. / np.sqrt(2. * np.pi) * np.exp(-.5 * np.asarray(x, dtype=float) ** 2)


def std_norm_cdf(x):
    """Cumulative standard Gaussian distribution"""
    return 0.5 * erfc(-np.asarray(x, dtype=float) / np.sqrt(2.))


def q_func(x):
    """
    Gaussian tail probability Q(x) = P(Z > x) for a standard normal Z.

    Evaluated through ``erfc`` so the relative accuracy holds deep in the tail.

    :param x: argument(s)
    :type x: float or np.ndarray
    :raises DomainError: for NaN or infinite arguments
    """
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("q_func needs finite arguments")
    q = 0.5 * erfc(x / np.sqrt(2.))
    return float(q) if q.ndim == 0 else q


def q_inv(p):
    """
    Inverse of :func:`q_func` on (0, 1).

    Starts from the ``erfcinv`` value and polishes it with Newton steps on Q,
    whose derivative is minus the standard density.

    :param p: tail probability, 0 < p < 1
    :type p: float
    :raises DomainError: when p is outside (0, 1)
    """
    p = float(p)
    if not (0. < p < 1.):
        raise DomainError("q_inv needs 0 < p < 1, got %r" % p)
    x = np.sqrt(2.) * erfcinv(2. * p)
    for _ in range(2):
        pdf = std_norm_pdf(x)
        if pdf <= 0.:
            break
        x += (q_func(x) - p) / pdf
    return float(x)


def box_muller(u1, u2):
    """
    Map two arrays of uniforms on [0, 1) to two arrays of independent standard
    normals.
    """
    # 1 - u lies in (0, 1], so the log is finite
    r = np.sqrt(-2. * np.log1p(-u1))
    t = 2. * np.pi * u2
    return r * np.cos(t), r * np.sin(t)
