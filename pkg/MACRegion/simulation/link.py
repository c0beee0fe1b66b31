# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)
"""
Symbol level Monte Carlo of schedules over the real AWGN MAC.

Every shard of every phase draws from its own counter-based generator,
``Philox`` keyed by ``SeedSequence(seed, spawn_key=(phase, shard))``, and
Gaussian noise comes from Box-Muller on its uniforms. Shards may run on a
thread pool; counts are reduced in shard order, so a report depends on
(schedule, symbols, seed) only.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import stats

from .constellation import build_sum_constellation, detect
from ..core.errors import DomainError
from ..util.config import config, thread_count
from ..util.misc import wilson_halfwidth
from ..util.univariate_Gaussian import box_muller

logger = logging.getLogger(__name__)

GENERATOR = 'Philox-4x64 (numpy) + Box-Muller'


class SimReport(object):
    """
    Empirical per-user symbol error rates of a simulated schedule.

    ``ser_ci95`` are half widths of Wilson 95% intervals. ``expected_ser``
    is the exact nearest point error probability of the simulated phases,
    weighted like the symbols. ``joint_ser`` counts symbols where either
    label is wrong.
    """
    def __init__(self, per_user_errors, per_user_symbols, joint_errors, symbols_run,
                 throughput_bits, seed, target_pe, expected_ser):
        self.per_user_errors = tuple(int(e) for e in per_user_errors)
        self.per_user_symbols = tuple(int(n) for n in per_user_symbols)
        self.joint_errors = int(joint_errors)
        self.symbols_run = int(symbols_run)
        if self.symbols_run <= 0:
            raise DomainError("a report needs at least one symbol")
        self.throughput_bits = float(throughput_bits)
        self.seed = int(seed)
        self.target_pe = float(target_pe)
        self.expected_ser = tuple(float(e) for e in expected_ser)
        self.generator = GENERATOR

    @property
    def per_user_ser(self):
        return tuple(e / float(n) if n else 0. for e, n in zip(self.per_user_errors, self.per_user_symbols))

    @property
    def ser_ci95(self):
        z = float(stats.norm.ppf(.975))
        return tuple(wilson_halfwidth(e, n, z) for e, n in zip(self.per_user_errors, self.per_user_symbols))

    @property
    def joint_ser(self):
        return self.joint_errors / float(self.symbols_run)

    def thresholds(self, margin_sigmas=None):
        """
        Per-user SER limits: reference + margin sqrt(reference / N), the
        reference being the larger of the target Pe and the exact expected SER.
        """
        if margin_sigmas is None:
            margin_sigmas = config.getfloat('simulation', 'margin_sigmas')
        limits = []
        for n, expected in zip(self.per_user_symbols, self.expected_ser):
            reference = max(self.target_pe, expected)
            limits.append(float(reference + margin_sigmas * np.sqrt(reference / n)) if n else 1.)
        return tuple(limits)

    def compliance(self, margin_sigmas=None):
        """per-user True when the empirical SER is within its threshold"""
        return tuple(bool(ser <= limit) for ser, limit in zip(self.per_user_ser, self.thresholds(margin_sigmas)))

    def to_dict(self):
        return {
            'per_user_ser': list(self.per_user_ser),
            'ser_ci95': list(self.ser_ci95),
            'per_user_errors': list(self.per_user_errors),
            'per_user_symbols': list(self.per_user_symbols),
            'symbols_run': self.symbols_run,
            'joint_ser': self.joint_ser,
            'throughput_bits': self.throughput_bits,
            'seed': self.seed,
            'generator': self.generator,
            'target_pe': self.target_pe,
            'expected_ser': list(self.expected_ser),
            'thresholds': list(self.thresholds()),
            'compliant': list(self.compliance()),
        }

    def __repr__(self):
        return "SimReport(ser=(%.4g, %.4g), symbols=%d, seed=%d)" % (self.per_user_ser + (self.symbols_run, self.seed))


def _generator(seed, phase_index, shard_index):
    ss = np.random.SeedSequence(seed, spawn_key=(phase_index, shard_index))
    return np.random.Generator(np.random.Philox(ss))


def _run_shard(constellation, sigma, n, seed, phase_index, shard_index):
    rng = _generator(seed, phase_index, shard_index)
    phase = constellation.phase
    sent1 = rng.integers(0, phase.user1.size, n) if phase.user1.active else np.zeros(n, dtype=int)
    sent2 = rng.integers(0, phase.user2.size, n) if phase.user2.active else np.zeros(n, dtype=int)
    half = (n + 1) // 2
    z0, z1 = box_muller(rng.random(half), rng.random(half))
    noise = np.concatenate((z0, z1))[:n]
    a1, a2 = constellation.user_amplitudes
    y = a1[sent1] + a2[sent2] + sigma * noise
    got1, got2 = detect(y, constellation)
    wrong1, wrong2 = got1 != sent1, got2 != sent2
    return int(np.count_nonzero(wrong1)), int(np.count_nonzero(wrong2)), int(np.count_nonzero(wrong1 | wrong2))


def _simulate_phase(phase, n0, symbols, seed, phase_index, pool):
    constellation = build_sum_constellation(phase)
    sigma = np.sqrt(n0)
    shard_size = config.getint('simulation', 'shard_size')
    sizes = [shard_size] * (symbols // shard_size)
    if symbols % shard_size:
        sizes.append(symbols % shard_size)
    futures = [pool.submit(_run_shard, constellation, sigma, n, seed, phase_index, s)
               for s, n in enumerate(sizes)]
    counts = np.zeros(3, dtype=np.int64)
    for f in futures:
        counts += f.result()
    logger.debug("phase %d: %d symbols in %d shard(s), errors %s", phase_index, symbols, len(sizes), counts.tolist())
    return counts, constellation.symbol_error_probability(n0)


def _check_symbols(symbols):
    minimum = config.getint('simulation', 'min_symbols')
    if int(symbols) != symbols or symbols < minimum:
        raise DomainError("at least %d symbols are needed, got %r" % (minimum, symbols))
    return int(symbols)


def run_phase(phase, n0, symbols, seed, target_pe=0.):
    """
    Simulate one phase on its own for ``symbols`` symbols.

    :param phase: the phase, both users at fraction-independent power
    :param n0: noise variance per real dimension
    :param symbols: number of channel uses, at least ``[simulation] min_symbols``
    :param seed: generator seed
    :param target_pe: design error rate recorded in the report
    :rtype: :class:`SimReport`
    """
    symbols = _check_symbols(symbols)
    if not n0 > 0.:
        raise DomainError("n0 must be > 0, got %r" % n0)
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        counts, expected = _simulate_phase(phase, n0, symbols, seed, 0, pool)
    active = (phase.user1.active, phase.user2.active)
    return SimReport(counts[:2], [symbols * a for a in active], counts[2], symbols,
                     phase.user1.bits + phase.user2.bits, seed, target_pe, [e * a for e, a in zip(expected, active)])


def allocate_symbols(schedule, symbols_total):
    """symbols per phase, proportional to the fractions and at least one each"""
    return [max(1, int(round(p.fraction * symbols_total))) for p in schedule.phases]


def run_schedule(schedule, symbols_total, seed):
    """
    Simulate every phase of ``schedule`` with symbols proportional to its
    fraction, phase i drawing from spawn key (i, shard).

    :rtype: :class:`SimReport`
    """
    symbols_total = _check_symbols(symbols_total)
    scenario = schedule.scenario
    allocation = allocate_symbols(schedule, symbols_total)
    errors = np.zeros(2, dtype=np.int64)
    users = np.zeros(2, dtype=np.int64)
    weighted = np.zeros(2)
    joint = 0
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        for i, (phase, n) in enumerate(zip(schedule.phases, allocation)):
            counts, expected = _simulate_phase(phase, scenario.n0, n, seed, i, pool)
            active = np.array([phase.user1.active, phase.user2.active])
            errors += counts[:2]
            users += n * active
            weighted += n * active * np.asarray(expected)
            joint += int(counts[2])
    expected_ser = [w / u if u else 0. for w, u in zip(weighted, users)]
    report = SimReport(errors, users, joint, sum(allocation), schedule.throughput, seed,
                       scenario.gap_params.target_pe, expected_ser)
    logger.info("simulated %r: %r", schedule, report)
    return report
