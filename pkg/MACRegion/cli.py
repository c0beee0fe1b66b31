# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)
"""
``macregion`` command line.

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 infeasible
target, 5 simulated SER above the compliance margin.
"""
import argparse
import logging
import sys

from .core import schemes
from .core.errors import InfeasibleTargetError, NoSuperpositionError
from .core.region import region, compare
from .core.scheduler import synth_schedule, validate_schedule, TARGETS
from .io import formats
from .simulation.link import run_schedule
from .util.config import config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3
EXIT_INFEASIBLE = 4
EXIT_NONCOMPLIANT = 5


def parse_target(text):
    """``b``, ``c``, ``b1``, ``c1`` or ``theta=<x>`` with x in [0, 1]"""
    text = text.strip()
    if text in TARGETS:
        return text
    if text.startswith('theta='):
        try:
            return float(text[len('theta='):])
        except ValueError:
            pass
    raise ValueError("target must be one of %s or theta=<0..1>, got %r" % (', '.join(TARGETS), text))


def cmd_region(args):
    scenario = formats.load_scenario(args.scenario)
    names = schemes.parse_schemes(args.schemes)
    regions = [region(name, scenario, args.samples) for name in names]
    for r in regions:
        for note in r.notes:
            logger.warning("%s: %s", r.scheme, note)
    formats.write_region_csv(args.out, regions, relabeled=scenario.relabeled)
    logger.info("wrote %d region(s) to %s", len(regions), args.out)
    return EXIT_OK


def cmd_schedule(args):
    scenario = formats.load_scenario(args.scenario)
    schedule = synth_schedule(parse_target(args.target), scenario)
    report = validate_schedule(schedule)
    if not report.passed:
        logger.error("synthesized schedule failed validation: %s", report.failures[0])
        return EXIT_INVALID
    formats.write_json(args.out, formats.schedule_to_dict(schedule))
    logger.info("wrote %r to %s", schedule, args.out)
    return EXIT_OK


def cmd_simulate(args):
    schedule = formats.load_schedule(args.schedule)
    report = validate_schedule(schedule)
    if not report.passed:
        logger.error("schedule rejected: %s", report.failures[0])
        return EXIT_INVALID
    sim = run_schedule(schedule, args.symbols, args.seed)
    formats.write_json(args.out, sim.to_dict())
    compliant = sim.compliance()
    if not all(compliant):
        for user, ok, ser, limit in zip((1, 2), compliant, sim.per_user_ser, sim.thresholds()):
            if not ok:
                logger.error("user %d SER %.4g exceeds %.4g", user, ser, limit)
        return EXIT_NONCOMPLIANT
    return EXIT_OK


def cmd_compare(args):
    scenario = formats.load_scenario(args.scenario)
    comparison = compare(scenario, args.samples)
    sys.stdout.write(formats.comparison_table(comparison))
    if args.out:
        formats.write_json(args.out, formats.comparison_to_dict(comparison))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog='macregion',
                                     description='Rate regions of the two-user Gaussian MAC with uncoded PAM')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='more diagnostics on stderr')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    p = sub.add_parser('region', help='write region boundaries as CSV')
    p.add_argument('--scenario', required=True)
    p.add_argument('--schemes', default='all', help='comma separated, from %s' % ', '.join(schemes.ALL_SCHEMES))
    p.add_argument('--samples', type=int, default=None)
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_region)

    p = sub.add_parser('schedule', help='write the schedule reaching a corner or a point of b1-c1')
    p.add_argument('--scenario', required=True)
    p.add_argument('--target', required=True, help='b, c, b1, c1 or theta=<0..1>')
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser('simulate', help='Monte Carlo a schedule file')
    p.add_argument('--schedule', required=True)
    p.add_argument('--symbols', type=int, default=1000000)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--out', required=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser('compare', help='print sum rates and containments of all schemes')
    p.add_argument('--scenario', required=True)
    p.add_argument('--samples', type=int, default=None)
    p.add_argument('--out', default=None, help='also write the table as JSON')
    p.set_defaults(func=cmd_compare)
    return parser


def _setup_logging(verbose):
    level = config.get('logging', 'level', fallback='WARNING').upper()
    if verbose:
        level = 'INFO' if verbose == 1 else 'DEBUG'
    logging.basicConfig(level=level, stream=sys.stderr,
                        format=config.get('logging', 'format', fallback='%(levelname)s %(name)s: %(message)s'))
    logging.captureWarnings(True)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)
    try:
        return args.func(args)
    except (InfeasibleTargetError, NoSuperpositionError) as e:
        logger.error("infeasible target: %s", e)
        return EXIT_INFEASIBLE
    except (ValueError, OSError) as e:
        logger.error("invalid input: %s", e)
        return EXIT_INVALID
    except ArithmeticError as e:
        logger.error("numerical failure: %s", e)
        return EXIT_NUMERICAL


if __name__ == '__main__':
    sys.exit(main())
