'''
The golden checklist behind `verify-paper`.

Every group returns a list of CheckResult. Groups are independent and may run
in worker processes; results are always reported in CHECK_GROUPS order.
'''

import random
import multiprocessing as mp
from dataclasses import dataclass
from math import gcd

import sympy

import torifan.log as log
from torifan import lattice
from torifan.bundles import (
    candidate_bundle_parameters,
    del_pezzo_fiber_bound,
    fiber_coefficient,
    fiber_line_degrees,
    identity_model_volume,
)
from torifan.divisor import (
    TorusDivisor,
    anticanonical_divisor,
    canonical_divisor,
    class_group_rank,
    linearly_equivalent,
    named_divisor,
    principal_divisor,
    q_cartier_data,
)
from torifan.fan import (
    bundle_over_P1,
    bundle_over_P2,
    flip,
    flipped_bundle_over_P1,
    projective_space,
    weighted_projective,
)
from torifan.helpers import CHECK_GROUPS, format_rational, format_vector
from torifan.intersection import (
    curve_class,
    dot,
    is_nef,
    lift_class,
    mori_cone,
    nef_cone,
    reduced_divisor_class,
    same_ray,
    wall_classes,
)
from torifan.mmp import classify_ray, two_ray_game, volume_bound_table, volume_case_table
from torifan.singularity import (
    discrepancy,
    discrepancy_via_subdivision,
    gorenstein_index,
    is_canonical,
    is_terminal,
)
from torifan.volume import (
    anticanonical_volume,
    cube,
    divisor_polytope,
    polytope_volume,
    polytope_volume_from_vertex,
    triple,
    wps_hypersurface_volume,
)

logger = log.createCustomLogger('checks')

PASS, FAIL, AUDIT = 'PASS', 'FAIL', 'AUDIT'

BUNDLE_PARAMETERS = ((6, 5), (5, 3), (4, 1))
WPS_WEIGHTS = ((1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 1, 3), (1, 1, 2, 3), (1, 1, 4, 6))
PROPERTY_SEED = 1729
SAMPLES_PER_WALL = 100

# ray positions in bundle_over_P1
V1, E1, E2, E0, V0 = range(5)
FIBER_RAYS = {0: E0, 1: E1, 2: E2}
FLIP_WALL = (E1, E2)
FLIPPED_WALL = (V1, V0)
W = (0, 1, 1)


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    expected: str
    computed: str
    status: str
    citation: str


def show(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, sympy.logic.boolalg.BooleanAtom)):
        return 'true' if value else 'false'
    if isinstance(value, (tuple, list)):
        return format_vector(value)
    return format_rational(value)


def check(check_id, expected, computed, citation):
    expected, computed = show(expected), show(computed)
    status = PASS if expected == computed else FAIL
    if status == FAIL:
        logger.warning(f'{check_id}: expected {expected}, computed {computed}.')
    return CheckResult(check_id, expected, computed, status, citation)


def audit(check_id, printed, computed, citation, consistent):
    '''
    A documented disagreement with a printed value; FAIL if the engine does
    not reproduce the corrected value either.
    '''
    return CheckResult(check_id, printed, computed, AUDIT if consistent else FAIL, citation)


def bundle_curve_names():
    '''
    Wall -> curve label on bundle_over_P1: C_i = V(v1 e_i), C'_i = V(v0 e_i),
    C''_i = V(e_j e_k) for {j, k} = {0, 1, 2} - {i}.
    '''
    names = {}
    for i, e in FIBER_RAYS.items():
        names[tuple(sorted((V1, e)))] = f'C{i}'
        names[tuple(sorted((V0, e)))] = f"C'{i}"
        names[tuple(sorted(FIBER_RAYS[j] for j in FIBER_RAYS if j != i))] = f"C''{i}"
    return names


def grouping(groups):
    ordered = sorted(tuple(sorted(g)) for g in groups)
    return ' | '.join('{' + ','.join(g) + '}' for g in ordered)


# ------------------------------------------------------------
# Groups
# ------------------------------------------------------------
def volume_checks():
    results = [
        check('volumes.P3', 64, anticanonical_volume(projective_space()), '(-K)^3 of P^3'),
        check(
            'volumes.P(1,1,1,3)', 72, anticanonical_volume(weighted_projective(1, 1, 1, 3)),
            'equality case P(1,1,1,3)',
        ),
        check(
            'volumes.P(1,1,4,6)', 72, anticanonical_volume(weighted_projective(1, 1, 4, 6)),
            'equality case P(1,1,4,6)',
        ),
        check(
            'volumes.P(1,1,1,2)', sympy.Rational(125, 2),
            anticanonical_volume(weighted_projective(1, 1, 1, 2)),
            'terminal equality case 125/2',
        ),
        check(
            'volumes.P_P2(O+O(3))', 72, anticanonical_volume(bundle_over_P2(3)),
            'equality case over P^2',
        ),
        check(
            'volumes.P_P2(O+O(1))', 56, anticanonical_volume(bundle_over_P2(1)),
            'blow-up of P^3 at a point',
        ),
    ]
    for alpha, beta in BUNDLE_PARAMETERS:
        oracle = 27 * (alpha + beta) + 27 * (2 - alpha - beta)
        results.append(check(
            f'volumes.X_l({alpha},{beta})', oracle,
            anticanonical_volume(bundle_over_P1(alpha, beta)),
            '27(alpha+beta) + 27(2-alpha-beta)',
        ))
    return results


def wps_checks():
    results = []
    for weights in WPS_WEIGHTS:
        f = weighted_projective(weights)
        closed_form = sympy.Rational(sum(weights) ** 3, weights[0] * weights[1] * weights[2] * weights[3])
        label = ','.join(str(w) for w in weights)
        results.append(check(
            f'wps.volume.P({label})', closed_form, anticanonical_volume(f), '(sum w)^3 / prod w',
        ))
        omitting_first = next(c for c in f.max_cones if c.rays == (1, 2, 3))
        results.append(check(
            f'wps.multiplicity.P({label})', weights[0], omitting_first.multiplicity,
            'mult of the cone omitting v0 is w0',
        ))
    for degree, weights, expected, citation in (
        (66, (1, 5, 6, 22, 33), sympy.Rational(1, 330), 'X_66 in P(1,5,6,22,33)'),
        (4, (1, 1, 1, 1, 1), 4, 'quartic threefold'),
        (6, (1, 1, 1, 1, 3), 2, 'sextic double solid'),
    ):
        results.append(check(
            f'wps.hypersurface.X_{degree}', expected, wps_hypersurface_volume(degree, weights), citation,
        ))
    return results


def _bundle_checks(alpha, beta):
    f = bundle_over_P1(alpha, beta)
    tag = f'bundle({alpha},{beta})'
    D0, D1, D2 = (named_divisor(f, {n: 1}) for n in ('D0', 'D1', 'D2'))
    F, G = named_divisor(f, {'E1': 1}), named_divisor(f, {'E0': 1})

    results = [
        check(f'{tag}.D0~D1+aE0', True, linearly_equivalent(f, D0, D1 + alpha * G).equivalent, 'divisor relations'),
        check(f'{tag}.D0~D2+bE0', True, linearly_equivalent(f, D0, D2 + beta * G).equivalent, 'divisor relations'),
        check(f'{tag}.E0~E1', True, linearly_equivalent(f, G, F).equivalent, 'divisor relations'),
        check(
            f'{tag}.-K~3D0+(2-a-b)E1', True,
            linearly_equivalent(f, anticanonical_divisor(f), 3 * D0 + (2 - alpha - beta) * F).equivalent,
            'anticanonical class',
        ),
    ]

    names = bundle_curve_names()
    curves = {names[w.rays]: curve_class(f, w) for w in f.walls()}
    table = {}
    for i in range(3):
        table[f'F.C{i}'] = (F, f'C{i}', 0)
        table[f"F.C'{i}"] = (F, f"C'{i}", 0)
        table[f"F.C''{i}"] = (F, f"C''{i}", 1)
        table[f'D0.C{i}'] = (D0, f'C{i}', 1)
        table[f"D0.C'{i}"] = (D0, f"C'{i}", 1)
    table["D0.C''0"] = (D0, "C''0", 0)
    table["D0.C''1"] = (D0, "C''1", alpha)
    table["D0.C''2"] = (D0, "C''2", beta)
    for key, (D, curve, expected) in table.items():
        results.append(check(f'{tag}.{key}', expected, dot(D, curves[curve]), 'intersection table'))
    results.append(check(
        f"{tag}.-K.C''0", 2 - alpha - beta, dot(anticanonical_divisor(f), curves["C''0"]),
        'anti-flipping curve',
    ))

    rays = mori_cone(f)
    computed = grouping([names[w.rays] for w in r.walls] for r in rays)
    expected = grouping([["C0", "C1", "C2", "C'0", "C'1", "C'2"], ["C''0"]])
    results.append(check(f'{tag}.mori', expected, computed, 'NE = R[C_l] + R[C\'\'0]'))
    interior = all(
        not any(same_ray(curves[c].reduced, r.direction) for r in rays) for c in ("C''1", "C''2")
    )
    results.append(check(f"{tag}.mori.C''1,C''2-interior", True, interior, "[C''1] = [C''0] + alpha [C_l]"))

    generators = {lattice.clear_denominators(reduced_divisor_class(f, D)) for D in (D0, F)}
    results.append(check(f'{tag}.nef', True, generators == set(nef_cone(f)), 'Nef = R[D0] + R[F]'))
    return results


def bundle_checks():
    return [r for alpha, beta in BUNDLE_PARAMETERS for r in _bundle_checks(alpha, beta)]


def _flip_checks(alpha, beta):
    f = bundle_over_P1(alpha, beta)
    g = flip(f, FLIP_WALL)
    tag = f'flip({alpha},{beta})'
    before = {c.rays for c in f.max_cones}
    replaced = {(V1, E1, E2), (E1, E2, V0)}
    created = {(V1, E1, V0), (V1, E2, V0)}
    results = [check(
        f'{tag}.cones', True, {c.rays for c in g.max_cones} == (before - replaced) | created,
        'cones <v0,v1,e1>, <v0,v1,e2> replace tau(e1 e2)',
    )]

    c_minus = curve_class(g, g.wall(*FLIPPED_WALL))
    ab = alpha * beta
    for name, expected in (
        ('D0', 0),
        ('E0', sympy.Rational(-1, ab)),
        ('E1', sympy.Rational(-1, ab)),
    ):
        results.append(check(
            f'{tag}.{name}.C-', expected, dot(named_divisor(g, {name: 1}), c_minus), 'flipped curve C-',
        ))
    results.append(check(
        f'{tag}.-K.C-', sympy.Rational(alpha + beta - 2, ab), dot(anticanonical_divisor(g), c_minus),
        '(alpha+beta-2)/(alpha beta) > 0',
    ))
    results.append(check(f'{tag}.involution', True, flip(g, FLIPPED_WALL) == f, 'double flip'))
    return results


def flip_checks():
    return [r for alpha, beta in BUNDLE_PARAMETERS for r in _flip_checks(alpha, beta)]


def _terminal_summary(verdict):
    if verdict.holds:
        return 'true, no witness'
    sign = 'negative' if verdict.value < 0 else 'non-negative'
    return f'false, {sign} witness'


def singularity_checks():
    results = []
    for alpha, beta in BUNDLE_PARAMETERS:
        g = flipped_bundle_over_P1(alpha, beta)
        tag = f'singularities({alpha},{beta})'
        m = q_cartier_data(g, canonical_divisor(g)).on((V1, E2, V0))
        results.append(check(
            f'{tag}.m_K', (1, sympy.Rational(2 - beta, alpha), 1), m, 'Cartier data of K on <v0,v1,e2>',
        ))
        if (alpha, beta) == (4, 1):
            continue
        value = discrepancy(g, W).value
        results.append(check(f'{tag}.a(E_w)', sympy.Rational(2 - beta, alpha), value, 'discrepancy at w = (0,1,1)'))
        results.append(check(
            f'{tag}.a(E_w).subdivision', value, discrepancy_via_subdivision(g, W), 'star subdivision',
        ))
        verdict = is_terminal(g)
        results.append(check(
            f'{tag}.terminal', 'false, negative witness',
            _terminal_summary(verdict),
            'X_l^- is not terminal',
        ))

    f = bundle_over_P1(6, 5)
    results.append(check('singularities.X_l.smooth', True, f.is_smooth(), 'X_l is smooth'))
    results.append(check('singularities.X_l.terminal', True, is_terminal(f).holds, 'smooth implies terminal'))

    p1112 = weighted_projective(1, 1, 1, 2)
    results.append(check('singularities.P(1,1,1,2).terminal', True, is_terminal(p1112).holds, 'terminal Q-Fano'))
    results.append(check('singularities.P(1,1,1,2).index', 2, gorenstein_index(p1112), 'index of K'))
    p1113 = weighted_projective(1, 1, 1, 3)
    results.append(check('singularities.P(1,1,1,3).index', 1, gorenstein_index(p1113), 'Gorenstein'))
    results.append(check('singularities.P(1,1,1,3).canonical', True, is_canonical(p1113).holds, 'canonical'))
    return results


def audit_checks():
    printed, computed, consistent = [], [], True
    for alpha, beta in BUNDLE_PARAMETERS:
        g = flipped_bundle_over_P1(alpha, beta)
        c_minus = curve_class(g, g.wall(*FLIPPED_WALL))
        d1 = dot(named_divisor(g, {'D1': 1}), c_minus)
        d2 = dot(named_divisor(g, {'D2': 1}), c_minus)
        lcm = alpha * beta // gcd(alpha, beta)
        printed.append(f'({alpha},{beta}): {format_rational(sympy.Rational(lcm, beta))}, {format_rational(sympy.Rational(lcm, alpha))}')
        computed.append(f'({alpha},{beta}): {format_rational(d1)}, {format_rational(d2)}')
        g_ab = gcd(alpha, beta)
        consistent = consistent and d1 == sympy.Rational(g_ab, beta) and d2 == sympy.Rational(g_ab, alpha)
    results = [audit(
        'audit.D1.C-,D2.C-',
        'lcm(a,b)/b, lcm(a,b)/a: ' + '; '.join(printed),
        'gcd(a,b)/b, gcd(a,b)/a: ' + '; '.join(computed),
        'printed l.c.m. contradicts E0.C- = -gcd(alpha,beta)/(alpha beta)',
        consistent,
    )]

    g = flipped_bundle_over_P1(4, 1)
    value = discrepancy(g, W).value
    verdict = is_terminal(g)
    terminal = 'terminal' if verdict.holds else f'not terminal, witness {format_vector(verdict.witness)} with a = {format_rational(verdict.value)}'
    results.append(audit(
        'audit.(4,1).a(E_w)',
        '< 0',
        f'{format_rational(value)}; X_l^-(4,1) {terminal}',
        'printed sign of (2-beta)/alpha at (4,1)',
        value == sympy.Rational(1, 4) and discrepancy_via_subdivision(g, W) == value,
    ))
    return results


def property_fixtures():
    fixtures = [('P3', projective_space())]
    fixtures += [(f'P{w}', weighted_projective(w)) for w in WPS_WEIGHTS]
    fixtures += [(f'P_P2(O+O({a}))', bundle_over_P2(a)) for a in (0, 1, 3)]
    for alpha, beta in BUNDLE_PARAMETERS:
        fixtures.append((f'X_l({alpha},{beta})', bundle_over_P1(alpha, beta)))
        fixtures.append((f'X_l^-({alpha},{beta})', flipped_bundle_over_P1(alpha, beta)))
    return fixtures


def _random_divisor(rng, f, bound=2):
    return TorusDivisor(tuple(rng.randint(-bound, bound) for _ in range(f.n_rays)))


def _numerical_triviality(rng, f):
    failures = 0
    for c in wall_classes(f):
        for _ in range(SAMPLES_PER_WALL):
            m = tuple(rng.randint(-9, 9) for _ in range(3))
            if dot(principal_divisor(f, m), c) != 0:
                failures += 1
    return failures


def _nef_duality(f):
    normals = nef_cone(f)
    rho = len(normals[0])
    nef = all(is_nef(f, lift_class(f, n)) for n in normals)
    supported = all(
        lattice.rank([n for n in normals if lattice.dot(n, r.direction) == 0]) == rho - 1
        for r in mori_cone(f)
    )
    return nef and supported


def _trilinear_defect(rng, f):
    D1, D2, D3, D4 = (_random_divisor(rng, f) for _ in range(4))
    m = tuple(rng.randint(-3, 3) for _ in range(3))
    base = triple(f, D1, D3, D4)
    defects = [
        triple(f, D1 + D2, D3, D4) - base - triple(f, D2, D3, D4),
        triple(f, D1 + principal_divisor(f, m), D3, D4) - base,
        triple(f, D4, D1, D3) - base,
    ]
    return sum(abs(d) for d in defects)


def property_checks():
    rng = random.Random(PROPERTY_SEED)
    results = []
    for name, f in property_fixtures():
        results.append(check(
            f'properties.triviality.{name}', 0, _numerical_triviality(rng, f),
            f'{SAMPLES_PER_WALL} random m per wall pair to 0',
        ))
        results.append(check(f'properties.rho.{name}', f.n_rays - 3, class_group_rank(f), 'rho = rays - 3'))
        results.append(check(f'properties.nef-duality.{name}', True, _nef_duality(f), 'Nef dual to NE'))

    for name, f in property_fixtures()[:1] + [
        ('P(1,1,1,2)', weighted_projective(1, 1, 1, 2)),
        ('P_P2(O+O(3))', bundle_over_P2(3)),
        ('X_l(6,5)', bundle_over_P1(6, 5)),
        ('X_l^-(6,5)', flipped_bundle_over_P1(6, 5)),
    ]:
        results.append(check(
            f'properties.trilinear.{name}', 0, _trilinear_defect(rng, f),
            'trilinear, symmetric, invariant under linear equivalence',
        ))
        generators = [lift_class(f, n) for n in nef_cone(f)]
        monotone = all(cube(f, a + b) >= cube(f, a) for a in generators for b in generators)
        results.append(check(f'properties.monotone.{name}', True, monotone, 'nef + nef does not lose volume'))
        minus_k = anticanonical_divisor(f)
        if is_nef(f, minus_k):
            P = divisor_polytope(f, minus_k)
            results.append(check(
                f'properties.volume-two-ways.{name}', polytope_volume(P), polytope_volume_from_vertex(P),
                'centroid and vertex pyramids agree',
            ))
    return results


def two_ray_checks():
    results = []
    for label, f, expected in (
        ('P_P2(O+O(3))', bundle_over_P2(3), ['(2,0)^0', '(3,2)^-']),
        ('P2xP1', bundle_over_P2(0), ['(3,1)^-', '(3,2)^-']),
    ):
        report = two_ray_game(f)
        ends = sorted(side.end.type_label for side in report.sides)
        results.append(check(f'tworay.{label}', ', '.join(expected), ', '.join(ends), 'two-ray game ends'))

    g = flipped_bundle_over_P1(6, 5)
    report = two_ray_game(g)
    small = [side for side in report.sides if len(side.steps) > 1]
    computed = 'no flip'
    if len(small) == 1:
        side = small[0]
        back = side.steps[-1].fan == bundle_over_P1(6, 5)
        computed = (
            f'{len(side.steps) - 1} {side.steps[1].flip_k_sign} flip, '
            f'{"X_l" if back else "other fan"}, {side.end.type_label}'
        )
    results.append(check(
        'tworay.X_l^-(6,5)', '1 negative flip, X_l, (3,1)^-', computed, 'the flip back to X_l',
    ))

    f = bundle_over_P1(6, 5)
    kinds = sorted(f'{c.kind} {c.k_sign}' for c in (classify_ray(f, r) for r in mori_cone(f)))
    results.append(check('tworay.X_l.rays', 'fiber negative, small positive', ', '.join(kinds), 'NE(X_l)'))
    return results


def bound_checks():
    table = volume_case_table()
    results = [
        check(f'bounds.{key}', expected, table[key], 'case table of the volume bound')
        for key, expected in (((1, 1), 54), ((1, 0), 81), ((2, 1), 48), ((2, 0), 72))
    ]
    results.append(check('bounds.trivial', 1, volume_bound_table(1, 1, 1), 'a <= b'))
    return results


def supplement_checks():
    results = [check(
        'supplements.candidates', '(6,5) (5,3) (4,1)',
        ' '.join(format_vector(p) for p in candidate_bundle_parameters()), '0 <= 2 alpha - 7 = beta < alpha',
    )]
    for alpha, beta in candidate_bundle_parameters():
        f = bundle_over_P1(alpha, beta)
        tag = f'supplements({alpha},{beta})'
        a = fiber_coefficient(alpha, beta)
        results.append(check(f'{tag}.a', 9, a, '-K = aF + 3E'))
        D1 = named_divisor(f, {'D1': 1})
        results.append(check(
            f'{tag}.(aF+3E)^3', anticanonical_volume(f), identity_model_volume(a, triple(f, D1, D1, D1)),
            '27a + 27E^3 with E = D1',
        ))
        results.append(check(f'{tag}.fiber-line', (3, 1), tuple(fiber_line_degrees(alpha, beta)), '-K.C_l = 3'))
    results.append(check('supplements.identity-model', True, identity_model_volume(9, 1) > 81, 'a > 8, E^3 > 0'))
    results.append(check('supplements.fiber-bound.K2=8', 72, del_pezzo_fiber_bound(8, 3), '9 K_F^2'))
    results.append(check('supplements.fiber-bound.b=2', 54, del_pezzo_fiber_bound(9, 2), '6 K_F^2'))
    return results


GROUPS = {
    'volumes': volume_checks,
    'wps': wps_checks,
    'bundle': bundle_checks,
    'flip': flip_checks,
    'singularities': singularity_checks,
    'audit': audit_checks,
    'properties': property_checks,
    'tworay': two_ray_checks,
    'bounds': bound_checks,
    'supplements': supplement_checks,
}


def run_group(name):
    logger.info(f'Running {name} checks ...')
    return GROUPS[name]()


def run_checks(only=None, n_threads=1):
    groups = [g for g in CHECK_GROUPS if not only or g in only]
    if n_threads > 1:
        with mp.Pool(n_threads) as pool:
            batches = pool.map(run_group, groups)
    else:
        batches = [run_group(g) for g in groups]
    return [r for batch in batches for r in batch]


def failed(results):
    return any(r.status == FAIL for r in results)
