"""
Command-line front end

    polymax generate CASE [P Q] [--out FILE]
    polymax count FILE
    polymax verify P Q
    polymax search --p P --q Q [options]
    polymax render FILE [--out FILE] [--signs]

Exit codes: 0 success, 1 validation or degeneracy, 2 falsification,
3 usage error.
"""

import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import click
from rich.console import Console
from rich.table import Table

from ..analysis.bounds import CaseTag, audit_bound_chain, find_triple, max_intersections
from ..config.settings import OUTPUT_DIR, PROFILES, SYSTEM_CONFIG, update_config
from ..constructions.generators import applicable_cases, gen_figure4_counterexample, generate_pair
from ..core.errors import FalsificationError, NotInGeneralPosition, PolymaxError
from ..geometry.polygon import crossing_report, general_position, is_simple
from ..search.oracle import SearchConfig, SearchMode, certify_never_exceeds, search_max
from ..utils.logger import PerformanceLogger, get_logger, setup_logging
from .document import PolygonDocument
from .render import RenderSpec, render_svg

logger = get_logger(__name__)

CASES = {
    "even-even": CaseTag.EVEN_EVEN,
    "even-odd": CaseTag.EVEN_ODD,
    "odd-odd-general": CaseTag.ODD_ODD_GENERAL,
    "odd-odd-simple": CaseTag.ODD_ODD_SIMPLE,
    "figure4": None,
}

USAGE_ERROR = 3


def _console() -> Console:
    return Console(file=sys.stdout, highlight=False, soft_wrap=True)


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


@click.group(name="polymax")
@click.version_option(SYSTEM_CONFIG["version"], prog_name="polymax")
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
@click.option("--profile", type=click.Choice(sorted(PROFILES)), default="desk", show_default=True)
def cli(log_level: Optional[str], profile: str):
    """Maximum number of intersections between two polygons"""
    if PROFILES[profile]:
        update_config(PROFILES[profile])
    setup_logging(level=log_level)


@cli.command()
@click.argument("case", type=click.Choice(list(CASES)))
@click.argument("p", type=int, required=False)
@click.argument("q", type=int, required=False)
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="document to write")
def generate(case: str, p: Optional[int], q: Optional[int], out: Optional[Path]):
    """Build an extremal pair and write it as a polygon document"""
    if CASES[case] is None:
        p_poly, q_poly = gen_figure4_counterexample()
        total = crossing_report(p_poly, q_poly).total
        bound = max_intersections(len(p_poly), len(q_poly), True).value
        document = PolygonDocument.from_pair(p_poly, q_poly)
    else:
        if p is None or q is None:
            raise click.UsageError(f"{case} needs both P and Q")
        with PerformanceLogger(f"generate {case} ({p}, {q})"):
            pair = generate_pair(CASES[case], p, q)
        total, bound = pair.claimed_total, max_intersections(p, q, pair.simple).value
        document = pair.to_document()

    out = out or OUTPUT_DIR / (f"{case}.json" if CASES[case] is None else f"{case}-{p}-{q}.json")
    document.write(out)
    logger.info(f"wrote {out}")
    click.echo(f"total={total} bound={bound}")


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False, path_type=Path))
def count(file: Path):
    """Count the crossings of the two polygons in a document"""
    p, q = PolygonDocument.read(file).pair()
    console = _console()
    console.print(f"P simple: {_yes_no(is_simple(p))}")
    console.print(f"Q simple: {_yes_no(is_simple(q))}")

    report = general_position(p, q)
    if not report.ok:
        console.print("general position: violated")
        for violation in report.violations:
            console.print(f"  {violation.describe()}")
        raise NotInGeneralPosition(report)
    console.print("general position: ok")

    crossings = crossing_report(p, q)
    table = Table(title="|E_P(e)| per edge of Q")
    table.add_column("edge", justify="right")
    table.add_column("crossing P-edges", justify="right")
    table.add_column("P-edges")
    for j, refs in sorted(crossings.edges_crossing_map(len(q)).items()):
        table.add_row(f"Q{j}", str(len(refs)), " ".join(str(r) for r in sorted(refs)))
    console.print(table)
    console.print(f"total={crossings.total}")


@cli.command()
@click.argument("p", type=int)
@click.argument("q", type=int)
def verify(p: int, q: int):
    """Run every construction for (P, Q) with its self-checks"""
    max_intersections(p, q, True)
    console = _console()
    table = Table(title=f"constructions for ({p}, {q})")
    for column in ("case", "claimed", "bound", "status"):
        table.add_column(column)

    failures: List[str] = []
    notes: List[str] = []
    for case in applicable_cases(p, q):
        bound = max_intersections(p, q, case is not CaseTag.ODD_ODD_GENERAL).value
        try:
            pair = generate_pair(case, p, q)
        except FalsificationError as e:
            table.add_row(case.value, "-", str(bound), "FAIL")
            failures.append(f"{case.value}: {e.message}")
            continue
        status = "PASS"
        if case is CaseTag.ODD_ODD_SIMPLE:
            triple = find_triple(pair.p_poly, pair.q_poly)
            notes.append(f"triple {' '.join(str(e) for e in triple.edges)} shares {triple.size} P-edge(s)")
            audit = audit_bound_chain(pair.p_poly, pair.q_poly)
            notes.append(f"bound audit: {'passed' if audit.passed else 'failed'}")
            if not audit.passed:
                status = "FAIL"
                failures += [f"audit: {finding}" for finding in audit.findings]
        table.add_row(case.value, str(pair.claimed_total), str(bound), status)

    console.print(table)
    for note in notes:
        console.print(note)
    if failures:
        raise FalsificationError("; ".join(failures))


@cli.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--q", "q", type=int, required=True)
@click.option("--simple/--non-simple", default=True, show_default=True)
@click.option("--grid", type=int, default=5, show_default=True)
@click.option("--exhaustive/--randomized", default=False, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--iters", type=int, default=1000, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--budget", type=int, default=None, help="exhaustive predicate budget")
@click.option("--progress/--no-progress", default=None, help="progress bar (default from the profile)")
@click.option("--certify", is_flag=True, help="check every evaluated pair against the bound")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="write JSON here")
def search(p, q, simple, grid, exhaustive, seed, iters, workers, budget, progress, certify, out):
    """Search small grid configurations for the most crossings"""
    config = SearchConfig(
        p=p,
        q=q,
        require_simple=simple,
        grid=grid,
        mode=SearchMode.EXHAUSTIVE if exhaustive else SearchMode.RANDOMIZED,
        seed=seed,
        iterations=iters,
        workers=workers,
        progress=progress,
        budget=budget,
    )
    if certify:
        report = certify_never_exceeds(config)
        payload, passed = report.to_dict(), report.passed
    else:
        payload, passed = search_max(config).to_dict(), True

    text = json.dumps(payload, indent=2) + "\n"
    if out:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)
    if not passed:
        raise FalsificationError(f"search found pairs beating the bound {payload['bound']['value']}")


@cli.command()
@click.argument("file", type=click.Path(dir_okay=False, path_type=Path))
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="SVG to write")
@click.option("--crossings/--no-crossings", default=True, show_default=True)
@click.option("--signs", is_flag=True, help="label Q edges with their +/- sign")
@click.option("--anchor", type=int, default=0, show_default=True, help="Q edge signed +")
@click.option("--width", type=int, default=None)
@click.option("--height", type=int, default=None)
def render(file: Path, out: Optional[Path], crossings: bool, signs: bool, anchor: int, width, height):
    """Draw the polygons of a document as SVG"""
    spec = RenderSpec(mark_crossings=crossings, annotate_signs=signs, sign_anchor=anchor)
    if width:
        spec.width = width
    if height:
        spec.height = height
    svg = render_svg(PolygonDocument.read(file), spec)
    out = out or file.with_suffix(".svg")
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(svg, encoding="utf-8")
    click.echo(str(out))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Invoke the command group and translate failures into exit codes"""
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name="polymax", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return USAGE_ERROR
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        return 1
    except PolymaxError as e:
        click.echo(f"error: {e.message}", err=True)
        return e.exit_code
    return result if isinstance(result, int) else 0
