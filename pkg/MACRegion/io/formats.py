# Copyright (c) 2024, MACRegion authors (see AUTHORS.txt).
# Licensed under the BSD 3-clause license (see LICENSE.txt)
"""
File formats: scenario JSON, region CSV, schedule JSON and report JSON.

Every writer goes through :func:`~MACRegion.util.misc.atomic_write`, so a
destination is either complete or untouched.
"""
import csv
import io
import json
import numbers

from ..core import schemes
from ..core.awgn_gap import GapParams, PamSpec
from ..core.errors import DomainError
from ..core.region import RateRegion
from ..core.scheduler import Scenario, Phase, Schedule
from ..util.misc import atomic_write

SCENARIO_KEYS = ('p1', 'p2', 'n0', 'pe')
SCENARIO_OPTIONAL = ('coding_gain_db',)
REGION_HEADER = ('scheme', 'vertex', 'r1', 'r2')


def _number(d, key, where):
    value = d[key]
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise DomainError("%s: %s must be a number, got %r" % (where, key, value))
    return float(value)


def _check_keys(d, required, optional, where):
    if not isinstance(d, dict):
        raise DomainError("%s must be a JSON object" % where)
    unknown = sorted(set(d) - set(required) - set(optional))
    if unknown:
        raise DomainError("%s: unknown key(s) %s" % (where, ', '.join(unknown)))
    missing = [k for k in required if k not in d]
    if missing:
        raise DomainError("%s: missing key(s) %s" % (where, ', '.join(missing)))


def scenario_from_dict(d, relabeled=False):
    """
    Build a :class:`~MACRegion.core.scheduler.Scenario` from
    ``{p1, p2, n0, pe, coding_gain_db?}``; unknown keys are rejected.

    :param relabeled: ``d`` holds the internal labels of a swapped scenario
    """
    _check_keys(d, SCENARIO_KEYS, SCENARIO_OPTIONAL, 'scenario')
    values = dict((k, _number(d, k, 'scenario')) for k in d)
    params = GapParams(values['pe'], values.get('coding_gain_db', 0.))
    return Scenario(values['p1'], values['p2'], values['n0'], params, relabeled=relabeled)


def scenario_to_dict(scenario):
    """the scenario in its internal labels, user 1 the stronger"""
    d = {'p1': scenario.p1, 'p2': scenario.p2, 'n0': scenario.n0, 'pe': scenario.gap_params.target_pe}
    if scenario.gap_params.coding_gain_db:
        d['coding_gain_db'] = scenario.gap_params.coding_gain_db
    return d


def _load_json(path):
    try:
        with open(path) as f:
            return json.load(f)
    except ValueError as e:
        raise DomainError("%s is not valid JSON: %s" % (path, e))


def load_scenario(path):
    return scenario_from_dict(_load_json(path))


def region_csv(regions, relabeled=False):
    """
    CSV text of ``regions`` with header ``scheme,vertex,r1,r2``.

    With ``relabeled`` the rates are written in the caller's labels: the
    coordinates are swapped back and the vertex order reversed, so the
    boundary still runs from the r2 axis to the r1 axis.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(REGION_HEADER)
    for region in regions:
        vertices = region.vertices
        if relabeled:
            vertices = [(v.r2, v.r1) for v in reversed(vertices)]
        for i, (r1, r2) in enumerate(vertices):
            writer.writerow((region.scheme, i, '%.12g' % r1, '%.12g' % r2))
    return buf.getvalue()


def write_region_csv(path, regions, relabeled=False):
    atomic_write(path, region_csv(regions, relabeled))


def parse_region_csv(text, relabeled=False):
    """
    Regions from the text of :func:`region_csv`, in file order.

    With ``relabeled`` the file is in the caller's labels and the vertices
    are swapped and reversed back. Notes are not stored in the CSV.
    """
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != REGION_HEADER:
        raise DomainError("region CSV must start with header %s" % ','.join(REGION_HEADER))
    grouped = []
    for line, row in enumerate(rows[1:], 2):
        if len(row) != len(REGION_HEADER):
            raise DomainError("region CSV line %d: expected %d fields, got %d" % (line, len(REGION_HEADER), len(row)))
        scheme, index, r1, r2 = row
        if not grouped or grouped[-1][0] != scheme:
            grouped.append((scheme, []))
        vertices = grouped[-1][1]
        try:
            index, r1, r2 = int(index), float(r1), float(r2)
        except ValueError as e:
            raise DomainError("region CSV line %d: %s" % (line, e))
        if index != len(vertices):
            raise DomainError("region CSV line %d: vertex %d of %s is out of order" % (line, index, scheme))
        vertices.append((r1, r2))
    regions = []
    for scheme, vertices in grouped:
        if relabeled:
            vertices = [(r2, r1) for r1, r2 in reversed(vertices)]
        regions.append(RateRegion(scheme, vertices))
    return regions


def read_region_csv(path, relabeled=False):
    with open(path, newline='') as f:
        return parse_region_csv(f.read(), relabeled)


def _spec_to_dict(spec):
    return {'bits': spec.bits, 'power': spec.power}


def _spec_from_dict(d, where):
    _check_keys(d, ('bits', 'power'), (), where)
    bits = d['bits']
    if isinstance(bits, bool) or not isinstance(bits, numbers.Integral):
        raise DomainError("%s: bits must be an integer, got %r" % (where, bits))
    return PamSpec.from_power(bits, _number(d, 'power', where))


def schedule_to_dict(schedule):
    """
    Schedule JSON: scenario, target, relabeling flag, phases and rates.

    Scenario and phases are in internal labels; ``relabeled`` tells whether
    they are swapped with respect to the input scenario.
    """
    rates = schedule.rates
    return {
        'scenario': scenario_to_dict(schedule.scenario),
        'target': schedule.target,
        'relabeled': schedule.scenario.relabeled,
        'phases': [{'fraction': p.fraction,
                    'user1': _spec_to_dict(p.user1),
                    'user2': _spec_to_dict(p.user2)} for p in schedule.phases],
        'rates': {'r1': rates.r1, 'r2': rates.r2},
        'notes': list(schedule.notes),
    }


def schedule_from_dict(d):
    """inverse of :func:`schedule_to_dict`; ``rates`` is recomputed, not trusted"""
    _check_keys(d, ('scenario', 'phases'), ('target', 'relabeled', 'rates', 'notes'), 'schedule')
    relabeled = d.get('relabeled', False)
    if not isinstance(relabeled, bool):
        raise DomainError("schedule: relabeled must be true or false, got %r" % (relabeled,))
    scenario = scenario_from_dict(d['scenario'], relabeled)
    if not isinstance(d['phases'], list) or not d['phases']:
        raise DomainError("schedule: phases must be a non-empty list")
    phases = []
    for i, p in enumerate(d['phases']):
        where = 'schedule phase %d' % i
        _check_keys(p, ('fraction', 'user1', 'user2'), (), where)
        phases.append(Phase(_number(p, 'fraction', where),
                            _spec_from_dict(p['user1'], where + ' user1'),
                            _spec_from_dict(p['user2'], where + ' user2')))
    return Schedule(phases, scenario, target=d.get('target'), notes=d.get('notes', ()))


def load_schedule(path):
    return schedule_from_dict(_load_json(path))


def dumps(obj):
    """deterministic JSON: sorted keys, fixed indentation, full precision floats"""
    return json.dumps(obj, sort_keys=True, indent=2) + '\n'


def write_json(path, obj):
    atomic_write(path, dumps(obj))


def comparison_to_dict(comparison):
    return {
        'scenario': scenario_to_dict(comparison.scenario),
        'max_sum_rate': comparison.max_sum_rate,
        'sum_rate_gap': comparison.sum_rate_gap,
        'containment': comparison.containment,
        'tol': comparison.tol,
    }


def comparison_table(comparison):
    """plain text table: max sum rates, sum-rate gap and containment matrix"""
    names = [n for n in schemes.ALL_SCHEMES if n in comparison.regions]
    width = max(len(n) for n in names)
    lines = ['%-*s  max sum rate' % (width, 'scheme')]
    for n in names:
        lines.append('%-*s  %.6f' % (width, n, comparison.max_sum_rate[n]))
    lines.append('')
    lines.append('sum-rate gap (gap_outer - superpos_pc): %.6f bits' % comparison.sum_rate_gap)
    lines.append('')
    lines.append('containment at tol %g (row contains column)' % comparison.tol)
    short = [n.replace('_', '')[:9] for n in names]
    lines.append('%-*s  %s' % (width, '', ' '.join('%9s' % s for s in short)))
    for o in names:
        cells = ' '.join('%9s' % ('yes' if comparison.containment[o][i] else 'no') for i in names)
        lines.append('%-*s  %s' % (width, o, cells))
    return '\n'.join(lines) + '\n'
