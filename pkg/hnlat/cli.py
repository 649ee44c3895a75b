# cli.py
import logging
import math
import random
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

import click
from rich.logging import RichHandler
from rich.markup import escape
from rich.text import Text

from hnlat import config
from hnlat.config import APP_VERSION
from hnlat.enumeration import (
    EnumConfig,
    all_subs_with_deg_at_least,
    ranked_subs_with_deg_at_least,
)
from hnlat.errors import EnumerationIncomplete, HnlatError, InputError
from hnlat.formatting import LatticeFormatter, console, err_console
from hnlat.help import CommandHelp
from hnlat.hn import hn_filtration, is_semistable, verify_hn
from hnlat.lattice import (
    Sublattice,
    degree,
    degree_of_gen_sub,
    degree_of_sub,
    saturation,
    saturation_index,
)
from hnlat import oracle
from hnlat.properties import PROPERTIES, SuiteContext, random_lattices, run_suite
from hnlat.serialization import (
    degree_payload,
    dumps,
    envelope,
    lattice_to_dict,
    load_lattice_file,
    parse_rational,
    sublattice_payload,
)

logger = logging.getLogger(__name__)

# digits used when comparing ½·ln D against a decimal threshold
_LOG_PRECISION = 60


def _setup_logging(verbose):
    level = logging.DEBUG if verbose else getattr(logging, config.LOG_LEVEL, logging.WARNING)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
    )
    logging.getLogger().setLevel(level)


def _fail(e):
    """Report an hnlat error on stderr and exit with its code."""
    err_console.print(Text.from_markup(LatticeFormatter.error(escape(str(e)))))
    sys.exit(e.exit_code)


def _emit(payload, table=None):
    if table is not None:
        console.print(table)
    else:
        click.echo(dumps(payload))


def _threshold(value):
    D_min = parse_rational(value)
    if D_min <= 0:
        raise InputError(f"--dmin must be positive, got {value}")
    return D_min


def _decimal_threshold(c):
    """Rational D_min just below e^{2c}, so the search keeps everything with ½·ln D >= c."""
    with localcontext() as ctx:
        ctx.prec = _LOG_PRECISION
        try:
            D = Fraction((2 * Decimal(c)).exp())
        except (ArithmeticError, ValueError):
            raise InputError(f"--c must be a finite decimal number, got {c!r}")
    if D == 0:
        raise InputError(f"--c {c} is too small to give a positive threshold")
    return D - D / 10 ** 40


def _log_at_least(D, c):
    with localcontext() as ctx:
        ctx.prec = _LOG_PRECISION
        return Decimal(D.numerator).ln() - Decimal(D.denominator).ln() >= 2 * Decimal(c)


def _enum_config(threads, cap=None):
    base = EnumConfig.from_env()
    threads = base.threads if threads is None else max(1, threads)
    return EnumConfig(
        max_candidates=cap if cap is not None else base.max_candidates,
        parallel=threads > 1,
        threads=threads,
    )


def show_help_callback(ctx, param, value):
    """Callback to show help and exit."""
    if value and not ctx.resilient_parsing:
        help_text = CommandHelp.get_command_help(ctx.info_name)
        console.print(Text.from_markup(help_text))
        ctx.exit()


def help_option(f):
    return click.option('--help', '-h', is_flag=True, is_eager=True, expose_value=False,
                        callback=show_help_callback, help='Show detailed help for this command')(f)


def threads_option(f):
    return click.option('--threads', type=int, default=None,
                        help='Enumeration threads (default HNLAT_THREADS)')(f)


@click.group(context_settings={'help_option_names': ['-h', '--help']})
@click.version_option(version=APP_VERSION)
@click.option('--verbose', '-v', is_flag=True, help='Debug logging on stderr')
def cli(verbose):
    """Exact arithmetic slopes and Harder-Narasimhan filtrations of hermitian lattices."""
    _setup_logging(verbose)


@cli.command()
def commands():
    """Show all available commands with examples."""
    console.print(Text.from_markup(CommandHelp.get_main_help()))


@cli.command(name='degree')
@click.argument('file', type=click.Path())
@click.option('--sub', 'sub_name', default=None, help='Named submodule from the file')
@click.option('--table', is_flag=True, help='Render a table instead of JSON')
@help_option
def degree_cmd(file, sub_name, table):
    """Arithmetic degree of a lattice or of a named submodule."""
    try:
        lf = load_lattice_file(file)
        E = lf.lattice
        request = {"file": file, "lattice": lattice_to_dict(E)}
        if sub_name is None:
            result = {"degree": degree_payload(degree(E))}
        else:
            if sub_name not in lf.subs:
                raise InputError(f"No submodule named {sub_name!r} in {file}")
            S = lf.subs[sub_name]
            request["sub"] = sub_name
            sat = saturation(E, S)
            index = saturation_index(S)
            result = {
                "sub": sub_name,
                "generators": [list(g) for g in S.gens],
                "degree": degree_payload(degree_of_gen_sub(E, S)),
                "saturation": sublattice_payload(E, sat),
                "saturation_index": index,
                "saturation_defect_log_approx": format(math.log(index), ".12g"),
            }
        payload = envelope("degree", request, result)
        _emit(payload, LatticeFormatter.degree_table(result) if table else None)
    except HnlatError as e:
        _fail(e)


@cli.command(name='enum')
@click.argument('file', type=click.Path())
@click.option('--rank', 'rank', type=int, default=None, help='Rank of the sublattices')
@click.option('--all', 'all_ranks', is_flag=True, help='Every rank, including the lattice itself')
@click.option('--dmin', default=None, help='Exact threshold p/q on D')
@click.option('--c', 'c', default=None, help='Decimal threshold on ½·log D')
@click.option('--cap', type=int, default=None, help='Search-tree node cap')
@click.option('--table', is_flag=True, help='Render a table instead of JSON')
@threads_option
@help_option
def enum_cmd(file, rank, all_ranks, dmin, c, cap, table, threads):
    """Saturated sublattices with D >= D_min."""
    try:
        if (rank is None) == (not all_ranks):
            raise InputError("Give exactly one of --rank S or --all")
        if (dmin is None) == (c is None):
            raise InputError("Give exactly one of --dmin P/Q or --c X")
        D_min = _threshold(dmin) if dmin is not None else _decimal_threshold(c)
        E = load_lattice_file(file).lattice
        cfg = _enum_config(threads, cap)

        request = {"file": file, "D_min": str(D_min)}
        if c is not None:
            request["c"] = c
        request["rank"] = "all" if all_ranks else rank

        complete = True
        try:
            if all_ranks:
                by_rank = all_subs_with_deg_at_least(E, D_min, cfg)
            elif rank == E.rank:
                by_rank = {rank: [Sublattice.whole(rank)] if degree(E).D >= D_min else []}
            else:
                by_rank = {rank: ranked_subs_with_deg_at_least(E, rank, D_min, cfg)}
        except EnumerationIncomplete as e:
            logger.info(str(e))
            complete = False
            by_rank = e.partial if isinstance(e.partial, dict) else {rank: e.partial or []}

        subs = [F for s in sorted(by_rank) for F in by_rank[s]]
        if c is not None:
            subs = [F for F in subs if _log_at_least(degree_of_sub(E, F).D, c)]
        entries = [sublattice_payload(E, F) for F in subs]
        payload = envelope("enum", request, {"count": len(entries), "sublattices": entries}, complete)
        _emit(payload, LatticeFormatter.sublattice_table("Sublattices", entries) if table else None)
    except HnlatError as e:
        _fail(e)


def _steps_payload(E, flt):
    return {
        "steps": [
            {"rank": step.sublattice.rank,
             "basis": [list(r) for r in step.sublattice.basis],
             "quotient_degree": degree_payload(step.quotient_degree)}
            for step in flt.steps
        ],
        "slopes": [degree_payload(deg) for deg in flt.slopes],
        "polygon": [{"rank": v.rank, "D": str(v.D), "log_value_approx": format(v.log_value(), ".12g")}
                    for v in flt.polygon()],
    }


@cli.command(name='hn')
@click.argument('file', type=click.Path())
@click.option('--table', is_flag=True, help='Render a table instead of JSON')
@threads_option
@help_option
def hn_cmd(file, table, threads):
    """Harder-Narasimhan filtration."""
    try:
        E = load_lattice_file(file).lattice
        cfg = _enum_config(threads)
        flt = hn_filtration(E, cfg)
        report = verify_hn(E, flt, cfg)
        result = _steps_payload(E, flt)
        result["verification"] = {"passed": report.passed, "conditions": list(report.details)}
        payload = envelope("hn", {"file": file}, result)
        _emit(payload, LatticeFormatter.hn_table(result) if table else None)
    except EnumerationIncomplete as e:
        logger.info(str(e))
        _emit(envelope("hn", {"file": file}, None, complete=False))
    except HnlatError as e:
        _fail(e)


@cli.command(name='semistable')
@click.argument('file', type=click.Path())
@click.option('--table', is_flag=True, help='Render a table instead of JSON')
@threads_option
@help_option
def semistable_cmd(file, table, threads):
    """Semistability test with a destabilizing witness."""
    try:
        E = load_lattice_file(file).lattice
        report = is_semistable(E, _enum_config(threads))
        witness = None
        if report.witness is not None:
            witness = sublattice_payload(E, report.witness)
        result = {
            "semistable": report.semistable,
            "slope": degree_payload(report.slope_E),
            "witness": witness,
        }
        payload = envelope("semistable", {"file": file}, result, report.conclusive)
        _emit(payload, LatticeFormatter.semistable_table(result) if table else None)
    except HnlatError as e:
        _fail(e)


@cli.command(name='check')
@click.argument('file', type=click.Path(), required=False)
@click.option('--random', 'count', type=int, default=None, help='Number of random lattices')
@click.option('--rank', type=int, default=3, help='Rank of the random lattices')
@click.option('--seed', type=int, default=0, help='Random seed')
@click.option('--dmin', default="1", help='Threshold for the enumeration properties')
@click.option('--property', 'names', multiple=True, help='Run only these properties')
@threads_option
@help_option
def check_cmd(file, count, rank, seed, dmin, names, threads):
    """Run the invariant suite."""
    try:
        if (file is None) == (count is None):
            raise InputError("Give either FILE or --random N")
        unknown = [n for n in names if n not in PROPERTIES]
        if unknown:
            raise InputError(f"Unknown properties {unknown}; known: {sorted(PROPERTIES)}")
        rng = random.Random(seed)
        if file is not None:
            lattices = [load_lattice_file(file).lattice]
            request = {"file": file, "seed": seed}
        else:
            if count < 1 or rank < 1:
                raise InputError("--random and --rank must be positive")
            lattices = random_lattices(rng, count, rank)
            request = {"random": count, "rank": rank, "seed": seed}
        request["dmin"] = dmin
        ctx = SuiteContext(rng=rng, cfg=_enum_config(threads), dmin=_threshold(dmin))
        results = run_suite(lattices, ctx, names or None, progress=sys.stderr.isatty())
        passed = all(r.ok for r in results)
        payload = envelope("check", request, {
            "passed": passed,
            "properties": [r.to_dict() for r in results],
        })
        _emit(payload)
        if not passed:
            err_console.print(Text.from_markup(LatticeFormatter.error("Some properties failed")))
            sys.exit(1)
    except HnlatError as e:
        _fail(e)


@cli.command(name='oracle-short')
@click.argument('file', type=click.Path())
@click.option('--bound', required=True, help='Norm bound p/q')
@help_option
def oracle_short_cmd(file, bound):
    """Brute-force short vectors."""
    try:
        E = load_lattice_file(file).lattice
        report = oracle.naive_short_vectors(E.metric, parse_rational(bound))
        vectors = [{"vector": list(v), "norm": str(norm)} for v, norm in report.vectors]
        payload = envelope("oracle-short", {"file": file, "bound": str(report.bound)},
                           {"count": len(vectors), "vectors": vectors}, report.complete)
        _emit(payload)
    except HnlatError as e:
        _fail(e)


@cli.command(name='oracle-subs')
@click.argument('file', type=click.Path())
@click.option('--rank', type=int, required=True, help='Rank of the sublattices')
@click.option('--dmin', required=True, help='Exact threshold p/q on D')
@help_option
def oracle_subs_cmd(file, rank, dmin):
    """Brute-force sublattice enumeration."""
    try:
        E = load_lattice_file(file).lattice
        D_min = _threshold(dmin)
        entries = [sublattice_payload(E, F) for F in oracle.naive_subs(E, rank, D_min)]
        payload = envelope("oracle-subs", {"file": file, "rank": rank, "D_min": str(D_min)},
                           {"count": len(entries), "sublattices": entries}, True)
        _emit(payload)
    except HnlatError as e:
        _fail(e)


@cli.command(name='oracle-hn')
@click.argument('file', type=click.Path())
@help_option
def oracle_hn_cmd(file):
    """Brute-force HN filtration."""
    try:
        E = load_lattice_file(file).lattice
        payload = envelope("oracle-hn", {"file": file}, _steps_payload(E, oracle.naive_hn(E)))
        _emit(payload)
    except HnlatError as e:
        _fail(e)


if __name__ == '__main__':
    cli()
