"""Command-line entry point for pellsieve."""
import logging
import sys

import click

from config import (DEFAULT_FORMAT, DEFAULT_JOBS, DEFAULT_RESIDUAL_CAP, DEFAULT_SIEVE_PRIMES,
                    EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE, OUTPUT_FORMATS, TABLE_N_MAX)
from models.checkpoint import Checkpoint
from models.lucas import LucasParams
from models.output import OutputRecord
from models.search import MPolicy, SearchHit, SearchQuery
from services.lucas import lucas_mod, lucas_pair
from services.output import render
from services.pell import (cf_sqrt, fundamental_n1, fundamental_n2, gen_n1, gen_n2, gen_ratio,
                           ratio_minimal, solve_neg4k)
from services.probes import (conjecture1_probe, conjecture2_probe, reproduce_table, reproduce_theorems,
                             solve_c1, verify_inequality)
from services.search import check_instance, sweep
from services.sieve import applicable_rules, classify_exclusion, qr_excluded_classes, residual_classes
from services.validator import InconsistencyError

logger = logging.getLogger(__name__)

PROG_NAME = 'pellsieve'


def _parse_primes(ctx, param, value):
    if value is None:
        return DEFAULT_SIEVE_PRIMES
    try:
        return tuple(int(p) for p in value.split(',') if p.strip())
    except ValueError:
        raise click.BadParameter(f'expected a comma-separated list of primes, got {value!r}')


format_option = click.option('--format', 'fmt', type=click.Choice(OUTPUT_FORMATS),
                             default=DEFAULT_FORMAT, show_default=True)
primes_option = click.option('--primes', callback=_parse_primes,
                             help='Comma-separated odd primes for the residue sieve.')
jobs_option = click.option('--jobs', type=click.IntRange(min=1), default=DEFAULT_JOBS, show_default=True)


def _emit(objects, fmt: str, output=None):
    text = render(objects, fmt)
    if output:
        with open(output, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info(f'Wrote {len(objects)} record(s) to {output}')
    else:
        click.echo(text, nl=False)


def _require_all_ok(reports):
    failures = [f'{r.label}: missing={r.missing} unexpected={r.unexpected}' for r in reports if not r.ok]
    if failures:
        raise InconsistencyError(failures)


@click.group()
@click.option('--quiet', is_flag=True, help='Only warnings and errors on stderr.')
@click.option('--verbose', is_flag=True, help='Debug logging on stderr.')
def cli(quiet, verbose):
    """Lucas sequences, Pell equations and the search for (a^n - 2^m)(b^n - 2^m) = x^2."""
    level = logging.WARNING if quiet else logging.DEBUG if verbose else logging.INFO
    logging.getLogger().setLevel(level)


# ── Search ────────────────────────────────────────────────────

@cli.command()
@click.argument('a', type=int)
@click.argument('b', type=int)
@click.argument('m', type=int)
@click.argument('n', type=int)
@format_option
def check(a, b, m, n, fmt):
    """Test one instance (a, b, m, n)."""
    x = check_instance(a, b, m, n)
    if x is None:
        logger.info(f'({a}^{n} - 2^{m})({b}^{n} - 2^{m}) is not a perfect square')
        return
    _emit([SearchHit(min(a, b), max(a, b), n, m, x)], fmt)


@cli.command('sweep')
@click.option('--a-min', type=int, default=2, show_default=True)
@click.option('--a-max', type=int, required=True)
@click.option('--b-min', type=int, default=2, show_default=True)
@click.option('--b-max', type=int, required=True)
@click.option('--n-min', type=int, default=2, show_default=True)
@click.option('--n-max', type=int, required=True)
@click.option('--m', 'm_fixed', type=int, default=None, help='Fixed exponent m (default 1).')
@click.option('--m-all', is_flag=True, help='Every 0 < m < n.')
@click.option('--no-sieve', is_flag=True, help='Skip the classifier and the residue sieve.')
@primes_option
@jobs_option
@format_option
@click.option('--checkpoint', type=click.Path(dir_okay=False), default=None)
@click.option('--output', type=click.Path(dir_okay=False), default=None)
def sweep_command(a_min, a_max, b_min, b_max, n_min, n_max, m_fixed, m_all, no_sieve, primes,
                  jobs, fmt, checkpoint, output):
    """Search a box of (a, b, n) exhaustively."""
    if m_all and m_fixed is not None:
        raise click.UsageError('--m and --m-all are mutually exclusive')
    policy = MPolicy.all_below_n() if m_all else MPolicy.fixed_at(1 if m_fixed is None else m_fixed)
    query = SearchQuery(
        a_range=(a_min, a_max),
        b_range=(b_min, b_max),
        n_range=(n_min, n_max),
        m_policy=policy,
        sieve_primes=() if no_sieve else primes,
        use_classifier=not no_sieve,
    )
    store = Checkpoint(checkpoint, query.key()) if checkpoint else None
    hits = sweep(query, jobs=jobs, checkpoint=store)
    logger.info(f'{len(hits)} hit(s)')
    _emit(hits, fmt, output)


# ── Pell equations ────────────────────────────────────────────

@cli.group()
def pell():
    """Pell-type equations and their solution families."""


@pell.command('fund')
@click.argument('d', type=int)
@format_option
def pell_fund(d, fmt):
    """Fundamental solutions of x^2 - d*y^2 = 1 and, when solvable, = 2."""
    pairs = [fundamental_n1(d)]
    n2 = fundamental_n2(d)
    if n2 is None:
        logger.info(f'x^2 - {d}y^2 = 2 has no solution')
    else:
        pairs.append(n2)
    _emit(pairs, fmt)


@pell.command('gen')
@click.argument('d', type=int)
@click.argument('count', type=int)
@format_option
def pell_gen(d, count, fmt):
    """First solutions of x^2 - d*y^2 = 1."""
    _emit(gen_n1(d, count), fmt)


@pell.command('gen2')
@click.argument('d', type=int)
@click.argument('count', type=int)
@format_option
def pell_gen2(d, count, fmt):
    """First solutions of x^2 - d*y^2 = 2."""
    _emit(gen_n2(d, count), fmt)


@pell.command('ratio')
@click.argument('a', type=int)
@click.argument('b', type=int)
@click.argument('count', type=int)
@format_option
def pell_ratio(a, b, count, fmt):
    """Minimal solution and first solutions of a*x^2 - b*y^2 = 1."""
    _emit([ratio_minimal(a, b), *gen_ratio(a, b, count)], fmt)


@pell.command('neg4k')
@click.argument('k', type=int)
@click.argument('count', type=int)
@format_option
def pell_neg4k(k, count, fmt):
    """First solutions of u^2 - 5*v^2 = -4^k."""
    _emit(solve_neg4k(k, count), fmt)


@pell.command('cf')
@click.argument('d', type=int)
@format_option
def pell_cf(d, fmt):
    """Periodic continued fraction of sqrt(d)."""
    _emit([cf_sqrt(d)], fmt)


# ── Lucas sequences ───────────────────────────────────────────

@cli.group()
def lucas():
    """Lucas sequences U_n(P, Q) and V_n(P, Q)."""


def _lucas_values(P, Q, n, modulus, which):
    params = LucasParams(P, Q)
    if modulus is None:
        pair = lucas_pair(params, n)
        u, v = pair.U, pair.V
    else:
        u, v = lucas_mod(params, n, modulus)
    payload = {'P': str(P), 'Q': str(Q), 'n': str(n)}
    if modulus is not None:
        payload['mod'] = str(modulus)
    if which in ('u', 'pair'):
        payload['U'] = str(u)
    if which in ('v', 'pair'):
        payload['V'] = str(v)
    return OutputRecord('lucas_value', payload)


def _lucas_command(which: str, doc: str):
    @lucas.command(which, help=doc, context_settings={'ignore_unknown_options': True})
    @click.argument('P', type=int)
    @click.argument('Q', type=int)
    @click.argument('n', type=int)
    @click.option('--mod', 'modulus', type=int, default=None, help='Reduce modulo M (Q = -1 only).')
    @format_option
    def command(p, q, n, modulus, fmt):
        _emit([_lucas_values(p, q, n, modulus, which)], fmt)
    return command


_lucas_command('u', 'U_n(P, Q).')
_lucas_command('v', 'V_n(P, Q).')
_lucas_command('pair', 'U_n(P, Q) and V_n(P, Q).')


# ── Sieve ─────────────────────────────────────────────────────

@cli.group()
def sieve():
    """Exclusion rules and quadratic-residue classes."""


@sieve.command('classify')
@click.argument('a', type=int)
@click.argument('b', type=int)
@click.argument('m', type=int)
@click.argument('n', type=int)
@click.option('--all', 'show_all', is_flag=True, help='Every rule that applies, not just the first.')
@format_option
def sieve_classify(a, b, m, n, show_all, fmt):
    """Which rule, if any, rules out (a, b, m, n)."""
    if show_all:
        _emit(applicable_rules(a, b, m, n), fmt)
    else:
        _emit([classify_exclusion(a, b, m, n)], fmt)


@sieve.command('classes')
@click.argument('a', type=int)
@click.argument('b', type=int)
@click.argument('m', type=int)
@click.argument('p', type=int)
@format_option
def sieve_classes(a, b, m, p, fmt):
    """Classes of n excluded by quadratic residues modulo p."""
    _emit([qr_excluded_classes(a, b, m, p)], fmt)


@sieve.command('residual')
@click.argument('a', type=int)
@click.argument('b', type=int)
@click.argument('m', type=int)
@primes_option
@click.option('--cap', type=int, default=DEFAULT_RESIDUAL_CAP, show_default=True)
@format_option
def sieve_residual(a, b, m, primes, cap, fmt):
    """Classes of n that survive every listed prime."""
    _emit([residual_classes(a, b, m, primes, cap)], fmt)


# ── Conjectures ───────────────────────────────────────────────

@cli.group()
def conjecture():
    """Probes of the two open conjectures on a finite box."""


@conjecture.command('one')
@click.argument('k_list', metavar='K...', type=int, nargs=-1, required=True)
@click.option('--n-max', type=int, default=100, show_default=True)
@click.option('--reference', is_flag=True, help='Also accept k = 3.')
@jobs_option
@format_option
def conjecture_one(k_list, n_max, reference, jobs, fmt):
    """Hits of (2^n - 2)((2P_k)^n - 2) = x^2 for each k."""
    _emit(conjecture1_probe(list(k_list), n_max, jobs=jobs, reference=reference), fmt)


@conjecture.command('two')
@click.argument('limit_a', type=int)
@click.argument('limit_b', type=int)
@click.argument('n_max', type=int)
@jobs_option
@format_option
def conjecture_two(limit_a, limit_b, n_max, jobs, fmt):
    """Largest n among the hits with 2 < a < b."""
    report = conjecture2_probe(limit_a, limit_b, n_max, jobs=jobs)
    _emit([report] if fmt == 'json' else list(report.hits), fmt)


# ── Verification ──────────────────────────────────────────────

@cli.group()
def verify():
    """Exact checks of the recorded results."""


def _inequality_command(which: str, doc: str):
    @verify.command(which.lower(), help=doc)
    @click.argument('m_min', type=int)
    @click.argument('m_max', type=int)
    @format_option
    def command(m_min, m_max, fmt):
        _emit(verify_inequality(which, (m_min, m_max)), fmt)
    return command


_inequality_command('L9', '5^m > 2^(2m+1) - 3 for each m in [M_MIN, M_MAX].')
_inequality_command('L11', '2*3^(4m-3) > 5^m + 1 for each m in [M_MIN, M_MAX].')


@verify.command('c1')
@click.argument('m_max', type=int)
@format_option
def verify_c1(m_max, fmt):
    """Solutions of (z+1)(2z-1)^2 = 10^(2m) with m <= M_MAX."""
    _emit([{'m': m, 'z': z} for m, z in solve_c1(m_max)], fmt)


@verify.command('table')
@click.option('--n-max', type=int, default=TABLE_N_MAX, show_default=True)
@jobs_option
@click.option('--checkpoint', type=click.Path(dir_okay=False), default=None)
@format_option
def verify_table(n_max, jobs, checkpoint, fmt):
    """Sweep 2 <= a < b <= 100 with m = 1 and compare with the recorded table."""
    report = reproduce_table(n_max, jobs=jobs, checkpoint_path=checkpoint)
    _emit([report] if fmt == 'json' else list(report.found), fmt)
    _require_all_ok([report])


@verify.command('theorems')
@click.option('--n-max', type=int, default=None, help='Override the recorded n bound of every pair.')
@jobs_option
@format_option
def verify_theorems(n_max, jobs, fmt):
    """Re-run every recorded single-pair solution set."""
    reports = reproduce_theorems(n_max, jobs=jobs)
    _emit(reports if fmt == 'json' else [h for r in reports for h in r.found], fmt)
    _require_all_ok(reports)


def run(argv=None) -> int:
    """Run the command line; returns the process exit code."""
    logging.basicConfig(level=logging.INFO, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        rv = cli.main(args=argv, prog_name=PROG_NAME, standalone_mode=False)
    except InconsistencyError as e:
        click.echo(f'Internal inconsistency: {e}', err=True)
        return EXIT_INCONSISTENT
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except click.Abort:
        click.echo('Aborted!', err=True)
        return EXIT_USAGE
    except ValueError as e:
        click.echo(f'Error: {e}', err=True)
        return EXIT_USAGE
    return rv if isinstance(rv, int) else EXIT_OK


if __name__ == '__main__':
    sys.exit(run())
