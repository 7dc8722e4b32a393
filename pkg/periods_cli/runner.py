"""
Report files, budget overrides and the acceptance suite.

Reports are sorted-key JSON so that identical configurations give
byte-identical files. The suite fans its jobs out over a thread pool and
assembles the results in job order.
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from pathlib import Path

from django.conf import settings

from hermitian_periods.exceptions import BudgetExceeded, HermitianPeriodsError, InvalidInput

from .serializers import RunConfigSerializer

logger = logging.getLogger('periods_cli')

SUITE_FAMILIES = ('H', 'assembly', 'lambda', 'P', 'zeta', 'K', 'koecher')
# the zeta class sum is enumerated at unramified primes only
UNRAMIFIED_ONLY = ('zeta',)
Q_BINOMIAL_LENGTHS = range(1, 7)
# Delta coefficients, and the prime cutoff of the explicit side
RANKIN_EULER_CUTOFF = 1000


def validate_config(data):
    serializer = RunConfigSerializer(data=data)
    if not serializer.is_valid():
        raise InvalidInput(f"invalid run configuration: {serializer.errors}")
    return serializer.validated_data


def load_json(value, what='argument'):
    """Inline JSON, or ``@path`` / an existing path to a JSON file"""
    text = value
    path = Path(value[1:] if value.startswith('@') else value)
    if value.startswith('@') or path.is_file():
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{what} is not valid JSON: {exc}") from exc


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, default=str)


def write_report(name, payload, output=None) -> Path:
    path = Path(output) if output else Path(settings.LATTICE_SETTINGS['REPORT_DIR']) / f"{name}.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(payload) + '\n')
    logger.info(f"Report written to {path}")
    return path


@contextmanager
def budget_override(budget=None):
    """Temporarily replace ENUMERATION_BUDGET for the duration of one run"""
    if budget is None:
        yield
        return
    lattice = settings.LATTICE_SETTINGS
    previous = lattice['ENUMERATION_BUDGET']
    lattice['ENUMERATION_BUDGET'] = budget
    logger.info(f"Enumeration budget set to {budget}")
    try:
        yield
    finally:
        lattice['ENUMERATION_BUDGET'] = previous


# -- suite ----------------------------------------------------------------------

def _verification_job(family, D, p, m, d0, order):
    from series_identities.services import VerificationService

    def job():
        from quadratic_symbols.local import splitting_type

        ctx = splitting_type(D, p)
        reports = VerificationService.compute(family, ctx, m, d0=d0, order=order)
        return {
            'passed': all(r.passed for r in reports),
            'calibrated': any(r.deltas for r in reports),
            'reports': VerificationService.report(reports),
        }
    return job


def _unimodular_job(D, p, m):
    def job():
        from exact_algebra.laurent import LaurentPoly
        from hermitian_lattices.matrices import LocalHermitian
        from quadratic_symbols.local import splitting_type
        from siegel_series.polynomials import recover_F

        result = recover_F(LocalHermitian.identity(splitting_type(D, p), m))
        return {'passed': result.F == LaurentPoly.constant(1), 'calibrated': False, 'F': str(result.F)}
    return job


def _mass_job(D):
    def job():
        from hermitian_lattices.matrices import GlobalHermitian
        from hermitian_lattices.services import LatticeService
        from quadratic_symbols.fields import make_field

        report = LatticeService.mass_report(GlobalHermitian.identity(make_field(D), 2))
        return {'passed': report['agree'], 'calibrated': False, 'report': report}
    return job


def _lvalue_job(D):
    def job():
        from global_assembly.lvalues import completed_L, dirichlet_L
        from quadratic_symbols.fields import make_field

        field = make_field(D)
        values = {
            'Lambda(2)': completed_L(2).to_dict(),
            'zeta(2)': dirichlet_L(2).to_dict(),
            'L(1,chi)': dirichlet_L(1, field=field).to_dict(),
        }
        passed = values['Lambda(2)'] == {'value': '1/12', 'pi_exp': '0', 'sqrt': 1}
        return {'passed': passed, 'calibrated': False, 'values': values}
    return job


def _m2_job():
    def job():
        from global_assembly.rankin import check_m2_consistency

        report = check_m2_consistency()
        return {'passed': report['passed'], 'calibrated': False, 'report': report}
    return job


def _density_job(D, p, m):
    def job():
        from hermitian_lattices.matrices import LocalHermitian
        from local_densities import closed_forms, density
        from local_densities.services import DensityService
        from quadratic_symbols.local import splitting_type

        ctx = splitting_type(D, p)
        unimodular = LocalHermitian.theta if ctx.is_ramified else LocalHermitian.identity
        rows = []
        if not (ctx.is_ramified and m % 2):
            for k in (1, 2):
                counted = density.alpha(unimodular(ctx, 2 * k), unimodular(ctx, m)).value
                closed = closed_forms.alpha_unimodular_pair(ctx, k, m)
                rows.append({'k': k, 'counted': str(counted), 'closed': str(closed), 'passed': counted == closed})
        T = unimodular(ctx, m) if ctx.is_ramified and m % 2 == 0 else LocalHermitian.identity(ctx, m)
        reports = DensityService.checks(T)
        passed = all(row['passed'] for row in rows) and all(r['passed'] for r in reports)
        return {'passed': passed, 'calibrated': False, 'unimodular_pairs': rows, 'checks': reports}
    return job


def _functional_equation_job(D, p, m):
    def job():
        from hermitian_lattices.matrices import LocalHermitian
        from quadratic_symbols.local import splitting_type
        from siegel_series.polynomials import functional_equations, recover_F

        ctx = splitting_type(D, p)
        desk = [[1] * m, [1] * (m - 1) + [p], [1] * (m - 1) + [p ** 2]]
        if m == 2:
            desk.append([p, p])
        rows = []
        for diagonal in desk:
            T = LocalHermitian.diagonal(ctx, diagonal)
            results = functional_equations(T, recover_F(T).tilde())
            rows.append({
                'T': diagonal,
                'equations': [{'equation': name, 'holds': holds} for name, holds in results],
                'passed': all(holds for _, holds in results),
            })
        return {'passed': all(row['passed'] for row in rows), 'calibrated': False, 'matrices': rows}
    return job


def _q_binomial_job(lengths):
    def job():
        from exact_algebra.qpoch import verify_q_binomial_identity

        reports = [verify_q_binomial_identity(length) for length in lengths]
        failed = [r.length for r in reports if not r.holds]
        return {'passed': not failed, 'calibrated': False, 'lengths': list(lengths), 'failed_lengths': failed}
    return job


def _rankin_job(D, cutoff):
    def job():
        from global_assembly.forms import delta_form
        from global_assembly.rankin import compare_rankin
        from quadratic_symbols.fields import make_field

        f = delta_form(RANKIN_EULER_CUTOFF)
        field = make_field(D)
        comparisons = [
            compare_rankin(1, f, field, s, cutoff, RANKIN_EULER_CUTOFF) for s in (2 * f.k + 2, 2 * f.k + 3)
        ]
        return {'passed': all(c['agrees'] for c in comparisons), 'calibrated': False, 'comparisons': comparisons}
    return job


def suite_jobs(config):
    """(label, callable) pairs of the acceptance matrix for one field"""
    from quadratic_symbols.local import splitting_type

    D = config['D']
    order = config.get('order')
    jobs = []
    for p in config['primes']:
        ctx = splitting_type(D, p)
        for m in config['m']:
            if m > 2:
                logger.warning(f"suite runs class sums for m <= 2; skipping m={m}")
                continue
            jobs.append((f"density/{ctx.label}/m={m}", _density_job(D, p, m)))
            jobs.append((f"siegel/functional_equations/{ctx.label}/m={m}", _functional_equation_job(D, p, m)))
            for d0 in ctx.unit_classes():
                for family in SUITE_FAMILIES:
                    if ctx.is_ramified and family in UNRAMIFIED_ONLY:
                        continue
                    label = f"verify/{family}/{ctx.label}/m={m}/d0={d0}"
                    jobs.append((label, _verification_job(family, D, p, m, d0, order)))
            jobs.append((f"verify/L/{ctx.label}/m={m}", _verification_job('L', D, p, m, 1, order)))
            if ctx.is_ramified and m % 2 == 0:
                jobs.append((f"verify/H_parts/{ctx.label}/m={m}", _verification_job('H_parts', D, p, m, 1, order)))
            if not ctx.is_ramified:
                jobs.append((f"siegel/unimodular/{ctx.label}/m={m}", _unimodular_job(D, p, m)))
    jobs.append(('qpoch/q_binomial', _q_binomial_job(Q_BINOMIAL_LENGTHS)))
    if 2 in config['m'] and D in (3, 4):
        jobs.append((f"mass/D={D}/identity_2", _mass_job(D)))
    jobs.append((f"lvalues/D={D}", _lvalue_job(D)))
    jobs.append(('period/m2_consistency', _m2_job()))
    if 1 in config['m'] and D == 4 and config['rankin_cutoff']:
        jobs.append((f"period/rankin/D={D}/m=1", _rankin_job(D, config['rankin_cutoff'])))
    return jobs


def _guarded(label, job):
    try:
        return job()
    except BudgetExceeded:
        raise
    except HermitianPeriodsError as exc:
        logger.warning(f"{label}: {exc}")
        return {'passed': False, 'calibrated': False, 'error': f"{type(exc).__name__}: {exc}"}


def run_suite(config):
    """Returns (report, accepted)"""
    jobs = suite_jobs(config)
    logger.info(f"Suite for D={config['D']}: {len(jobs)} jobs on {config['workers']} workers")
    with ThreadPoolExecutor(max_workers=config['workers']) as pool:
        results = list(pool.map(lambda item: _guarded(*item), jobs))
    entries = {label: result for (label, _), result in zip(jobs, results)}
    failed = sorted(label for label, result in entries.items() if not result['passed'])
    calibrated = sorted(label for label, result in entries.items() if result['calibrated'])
    accepted = not failed and (config['allow_calibration'] or not calibrated)
    report = {
        'D': config['D'],
        'primes': config['primes'],
        'm': config['m'],
        'order': config.get('order'),
        'allow_calibration': config['allow_calibration'],
        'rankin_cutoff': config['rankin_cutoff'],
        'jobs': entries,
        'failed': failed,
        'calibrated': calibrated,
        'accepted': accepted,
    }
    if failed:
        logger.warning(f"Suite failures: {', '.join(failed)}")
    return report, accepted
