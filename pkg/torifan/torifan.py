import sys
import json

import torifan.log as log
from torifan.bundles import candidate_bundle_parameters, fiber_coefficient
from torifan.checks import failed, run_checks
from torifan.divisor import anticanonical_divisor, divisor
from torifan.errors import NotProjective, PicardRankTooLarge, TorifanError
from torifan.fan import bundle_over_P1, flip, flipped_bundle_over_P1
from torifan.helpers import (
    format_rational,
    format_vector,
    load_fan,
    parse_args,
    parse_point,
    parse_vector,
    parse_wall,
)
from torifan.intersection import curve_class, dot, lift_class, mori_cone, nef_cone
from torifan.mmp import classify_ray, two_ray_game
from torifan.output import (
    emit,
    emit_checks,
    extremal_ray_summary,
    fan_summary,
    game_summary,
    verdict_summary,
)
from torifan.singularity import (
    discrepancy,
    discrepancy_via_subdivision,
    gorenstein_index,
    is_canonical,
    is_terminal,
)
from torifan.volume import anticanonical_volume, triple

logger = log.createCustomLogger('torifan')

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def cmd_info(args):
    f = load_fan(args)
    report = fan_summary(f)
    if f.complete:
        report['smooth'] = f.is_smooth()
        report['terminal'] = is_terminal(f).holds
        report['canonical'] = is_canonical(f).holds
        report['gorenstein_index'] = int(gorenstein_index(f))
        try:
            report['volume'] = format_rational(anticanonical_volume(f))
        except (NotProjective, PicardRankTooLarge) as e:
            logger.warning(f'No volume: {e}')
    emit(report, 'info.j2', args.json)
    return EXIT_OK


def cmd_flip(args):
    f = load_fan(args)
    w = f.wall(*parse_wall(f, args.wall))
    g = flip(f, w)
    report = {
        'flipped': f.wall_name(w),
        'created': 'tau' + g.cone_name(tuple(sorted((w.off_a, w.off_b)))),
        'fan': fan_summary(g),
        'fan_file': g.to_dict(),
    }
    emit(report, 'fan.j2', args.json)
    return EXIT_OK


def cmd_mori(args):
    f = load_fan(args)
    rays = []
    for r in mori_cone(f):
        rays.append(extremal_ray_summary(f, r, classify_ray(f, r)))
    emit({'rays': rays}, 'mori.j2', args.json)
    return EXIT_OK


def cmd_nef(args):
    f = load_fan(args)
    generators = [
        {'reduced': format_vector(n), 'divisor': format_vector(lift_class(f, n).coeffs)}
        for n in nef_cone(f)
    ]
    emit({'generators': generators}, 'nef.j2', args.json)
    return EXIT_OK


def cmd_terminal(args):
    f = load_fan(args)
    emit(verdict_summary(is_terminal(f), f), 'value.j2', args.json)
    return EXIT_OK


def cmd_canonical(args):
    f = load_fan(args)
    emit(verdict_summary(is_canonical(f), f), 'value.j2', args.json)
    return EXIT_OK


def cmd_discrepancy(args):
    f = load_fan(args)
    r = discrepancy(f, parse_point(args.point))
    report = {
        'point': format_vector(r.point),
        'cone': f.cone_name(r.cone),
        'face': f.cone_name(r.face),
        'discrepancy': format_rational(r.value),
        'via_subdivision': format_rational(discrepancy_via_subdivision(f, r.point)),
    }
    emit(report, 'value.j2', args.json)
    return EXIT_OK


def cmd_volume(args):
    f = load_fan(args)
    if args.divisor is None:
        report = {'divisor': '-K', 'volume': format_rational(anticanonical_volume(f))}
    else:
        D = divisor(f, parse_vector(args.divisor))
        report = {'divisor': format_vector(D.coeffs), 'volume': format_rational(triple(f, D, D, D))}
    emit(report, 'value.j2', args.json)
    return EXIT_OK


def cmd_tworay(args):
    f = load_fan(args)
    emit(game_summary(two_ray_game(f)), 'game.j2', args.json)
    return EXIT_OK


def cmd_export(args):
    print(json.dumps(load_fan(args).to_dict(), indent=2))
    return EXIT_OK


def cmd_verify_paper(args):
    results = run_checks(args.only, args.n_threads)
    emit_checks(results, args.json)
    return EXIT_FAILED if failed(results) else EXIT_OK


def cmd_bundle_params(args):
    rows = []
    for alpha, beta in candidate_bundle_parameters():
        f = bundle_over_P1(alpha, beta)
        g = flipped_bundle_over_P1(alpha, beta)
        rows.append({
            'alpha': alpha,
            'beta': beta,
            'a': fiber_coefficient(alpha, beta),
            'anticanonical_degree': format_rational(
                dot(anticanonical_divisor(f), curve_class(f, f.wall(1, 2)))
            ),
            'discrepancy': format_rational(discrepancy(g, (0, 1, 1)).value),
        })
    emit({'candidates': rows}, 'bundles.j2', args.json)
    return EXIT_OK


COMMANDS = {
    'info': cmd_info,
    'flip': cmd_flip,
    'mori': cmd_mori,
    'nef': cmd_nef,
    'terminal': cmd_terminal,
    'canonical': cmd_canonical,
    'discrepancy': cmd_discrepancy,
    'volume': cmd_volume,
    'tworay': cmd_tworay,
    'export': cmd_export,
    'verify-paper': cmd_verify_paper,
    'bundle-params': cmd_bundle_params,
}


# ------------------------------------------------------------
# Main
# ------------------------------------------------------------
def main(argv=None):
    args = parse_args(argv)
    log.setVerbosity(args.verbose)

    try:
        code = COMMANDS[args.command](args)
    except TorifanError as e:
        logger.error(f'{type(e).__name__}: {e}')
        sys.exit(EXIT_INPUT)
    sys.exit(code)
