import os
import json
from dataclasses import asdict

import pandas as pd
from jinja2 import Environment, FileSystemLoader

import torifan.log as log
from torifan.divisor import class_group_rank
from torifan.helpers import format_rational, format_vector
from torifan.mmp import case_bound

logger = log.createCustomLogger('output')
ROOT_PATH = os.path.abspath(os.path.dirname(__file__))

file_loader = FileSystemLoader(os.path.join(ROOT_PATH, 'templates'))
env = Environment(loader=file_loader, trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)
env.filters['rational'] = format_rational
env.filters['vector'] = format_vector

CHECK_COLUMNS = ['check_id', 'status', 'expected', 'computed', 'citation']


def _ray_rows(f):
    return [{'index': i, 'name': f.name(i), 'ray': format_vector(u)} for i, u in enumerate(f.rays)]


def fan_summary(f):
    return {
        'rays': _ray_rows(f),
        'cones': [
            {'cone': f.cone_name(c.rays), 'rays': list(c.rays), 'multiplicity': c.multiplicity}
            for c in f.max_cones
        ],
        'rho': class_group_rank(f),
        'complete': f.complete,
    }


def verdict_summary(verdict, f):
    if verdict.holds:
        return {'holds': True, 'witness': None, 'cone': None, 'discrepancy': None}
    return {
        'holds': False,
        'witness': format_vector(verdict.witness),
        'cone': f.cone_name(verdict.cone),
        'discrepancy': format_rational(verdict.value),
    }


def extremal_ray_summary(f, ray, classification=None):
    summary = {
        'direction': format_vector(ray.direction),
        'walls': [f.wall_name(w) for w in ray.walls],
        'profile': format_vector(ray.curve.profile),
    }
    if classification is not None:
        summary['kind'] = classification.kind
        summary['k_sign'] = classification.k_sign
        summary['label'] = classification.type_label
    return summary


def game_summary(report):
    sides = []
    for side in report.sides:
        steps = []
        for step in side.steps:
            steps.append({
                'flipped': ['tau' + step.fan.cone_name(w) for w in step.flipped_walls],
                'flip_k_sign': step.flip_k_sign,
                'volume': format_rational(step.volume),
                'terminal': step.terminal,
            })
        sides.append({
            'steps': steps,
            'end': {
                'kind': side.end.kind,
                'k_sign': side.end.k_sign,
                'label': side.end.type_label,
            },
        })
    bound = case_bound(report)
    return {'sides': sides, 'volume_bound': None if bound is None else format_rational(bound)}


def checks_table(results):
    return pd.DataFrame([asdict(r) for r in results], columns=CHECK_COLUMNS)


def render(template, **context):
    logger.debug(f'Rendering {template} ...')
    return env.get_template(template).render(**context)


def emit(report, template, as_json=False):
    '''
    Print a report on stdout, as JSON or through its text template.
    '''
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        print(render(template, report=report), end='')


def emit_checks(results, as_json=False):
    table = checks_table(results)
    if as_json:
        print(json.dumps(table.to_dict(orient='records'), indent=2))
        return
    counts = table['status'].value_counts()
    print(render(
        'checks.j2',
        table=table.to_string(index=False) if len(table) else '',
        counts={s: int(counts.get(s, 0)) for s in ('PASS', 'FAIL', 'AUDIT')},
        audits=table[table['status'] == 'AUDIT'].to_dict(orient='records'),
    ), end='')
