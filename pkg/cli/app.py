import json
import logging
import os
import sys
from enum import Enum
from functools import wraps
from pathlib import Path

import typer

from cli.formatting import (
    TABLE1_COLUMNS,
    TABLE2_COLUMNS,
    OutputFormat,
    degrees_label,
    group_rows,
    render,
    report_row,
    surface_row,
    tuple_rows,
    wall_rows,
)
from src.boothby_wang import (
    BaseSurfaceData,
    HodgeDiamond,
    bw_classify,
    ci3_diamond,
    higher_dim_pair,
    link_sign,
    seven_dim_pair,
)
from src.calculations import get_dictionary, load_config, stringify_integers
from src.cohomology_ring import AmbientSpace
from src.complete_intersection import (
    CompleteIntersectionSpec,
    chern_numbers,
    ci3_hodge,
    wall_invariants,
)
from src.errors import ConfigError, DomainError, IntegrityError, VerificationMismatch
from src.fixtures import TABLE2_PAIRS, TABLE2_ROWS, seed_tables, table2_multidegrees
from src.horikawa import (
    branch_locus,
    hirzebruch_ample,
    horikawa_canonical_base,
    horikawa_invariants,
    horikawa_spin,
    nonspin_tuple,
    theorem_c_pair,
)
from src.pair_search import SearchBounds, search_collisions
from src.surface_tuples import SurfaceInvariants, tuple_search
from src.verification import verify_tables

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(name)s - %(levelname)s - %(message)s"
SPILL_ENV = "SASAKI_SPILL_DIR"

app = typer.Typer(
    help="Invariants of Sasaki structures over surfaces and complete intersections",
    add_completion=False,
    no_args_is_help=True,
)
bw_app = typer.Typer(help="Boothby-Wang total spaces", no_args_is_help=True)
app.add_typer(bw_app, name="bw")

FORMAT_OPTION = typer.Option(OutputFormat.TABLE, "--format", help="table, json or csv")


class NamedBase(str, Enum):
    K3 = "k3"
    CP2 = "cp2"


def configure_logging(settings, verbose=False):
    """Route every module logger to the configured file, or to stderr"""
    level_name = "DEBUG" if verbose else str(settings["Log Level"]).upper()
    level = logging.getLevelName(level_name)
    if not isinstance(level, int):
        raise ConfigError(f"unknown log level {settings['Log Level']!r}")
    options = {"level": level, "format": LOG_FORMAT, "force": True}
    if settings["Log File"]:
        options["filename"] = settings["Log File"]
    else:
        options["stream"] = sys.stderr
    logging.basicConfig(**options)


def handle_errors(command):
    """Map the error taxonomy onto exit codes 1 and 3"""

    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except VerificationMismatch as err:
            for line in err.diff:
                typer.echo(line, err=True)
            raise typer.Exit(code=1)
        except (DomainError, IntegrityError) as err:
            logger.error("%s: %s", type(err).__name__, err)
            typer.echo(f"error: {err}", err=True)
            raise typer.Exit(code=3)

    return wrapper


def parse_integers(text, name):
    """Comma separated integers; an empty string gives an empty list"""
    text = text.strip()
    if not text:
        return []
    try:
        return [int(piece) for piece in text.split(",")]
    except ValueError:
        raise typer.BadParameter(f"{text!r} is not a comma separated list of integers", param_hint=name)


def parse_complete_intersection(ambient, degrees):
    dims = parse_integers(ambient, "--ambient")
    if not dims:
        raise typer.BadParameter("at least one factor dimension is needed", param_hint="--ambient")
    space = AmbientSpace(tuple(dims))
    if space.rank == 1:
        equations = [(d,) for d in parse_integers(degrees, "--degrees")]
    else:
        equations = [
            tuple(parse_integers(piece, "--degrees")) for piece in degrees.split(";") if piece.strip()
        ]
    return CompleteIntersectionSpec(space, tuple(equations))


def emit(payload, rows, output_format, columns=None, footer=None):
    typer.echo(render(payload, rows, output_format, columns=columns, footer=footer))


@app.callback()
@handle_errors
def main(
    ctx: typer.Context,
    config: Path = typer.Option(None, "--config", help="Configuration file, defaults to config.json"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level"),
):
    settings = load_config(str(config) if config else None)
    configure_logging(settings, verbose)
    ctx.obj = settings


@app.command()
@handle_errors
def ci(
    ambient: str = typer.Option(..., help="Factor dimensions, e.g. 9 or 1,3"),
    degrees: str = typer.Option("", help="Degrees 70,16,16 or multidegrees 2,5;1,1 for products"),
    wall: bool = typer.Option(False, "--wall", help="Wall invariants (d, k, m, e)"),
    hodge: bool = typer.Option(False, "--hodge", help="h03 and h12 of a threefold"),
    diamond: bool = typer.Option(False, "--diamond", help="Full Hodge diamond of a threefold"),
    output_format: OutputFormat = FORMAT_OPTION,
):
    """Chern numbers of a complete intersection"""
    spec = parse_complete_intersection(ambient, degrees)
    report = chern_numbers(spec)
    payload = {"chern": report.to_json()}
    numbers = {
        name: degrees_label(value) if isinstance(value, tuple) else value
        for name, value in report.numbers.items()
    }
    rows = [{"dim": report.dim, "c1": str(report.c1), **numbers}]
    columns = None
    footer = None
    if wall or hodge or diamond:
        w = wall_invariants(spec)
        payload["wall"] = w.to_json()
        rows = wall_rows([w])
        columns = TABLE2_COLUMNS
        if hodge or diamond:
            h = ci3_hodge(w, w.d)
            payload["hodge"] = h.to_json()
            rows[0].update({"h03": h.h03, "h12": h.h12, "b3": h.b3})
            columns = TABLE2_COLUMNS + ["h03", "h12", "b3"]
        if diamond:
            d = ci3_diamond(w, w.d)
            payload["diamond"] = d.to_json()
            footer = d.pprint()
    emit(payload, rows, output_format, columns=columns, footer=footer)


@app.command("tuple-search")
@handle_errors
def tuple_search_command(
    k: int = typer.Option(..., "-k", "--k", min=1, help="Number of surfaces"),
    q: str = typer.Option("", "--q", help="Explicit q values, e.g. 2,3,4,6,8"),
    parity: str = typer.Option(None, "--parity", help="Restrict the greedy q choice to even or odd"),
    output_format: OutputFormat = FORMAT_OPTION,
):
    """Hypersurfaces in CP^1 x CP^2 with equal c2 and distinct c1^2"""
    q_values = parse_integers(q, "--q")
    if parity not in (None, "even", "odd"):
        raise typer.BadParameter("use even or odd", param_hint="--parity")
    result = tuple_search(k, q_override=q_values or None, parity=parity)
    emit(
        result.to_json(),
        tuple_rows(result),
        output_format,
        columns=TABLE1_COLUMNS,
        footer=f"n = {result.n}",
    )


@app.command()
@handle_errors
def horikawa(
    i: int = typer.Option(..., "--i", min=1, help="Degree of the Hirzebruch surface"),
    output_format: OutputFormat = FORMAT_OPTION,
):
    """Invariants of the Horikawa surface Y_i"""
    inv = horikawa_invariants(i)
    verdict = horikawa_spin(i)
    canonical = horikawa_canonical_base(i)
    branch_ample = hirzebruch_ample(i, branch_locus(i))
    payload = {
        "i": str(i),
        "invariants": inv.to_json(),
        "spin": verdict.spin,
        "witness": str(verdict.witness),
        "branch_ample": branch_ample,
        "canonical_base": str(canonical),
    }
    row = surface_row(f"Y_{i}", inv)
    row.update({"witness": verdict.witness, "branch_ample": branch_ample})
    emit(payload, [row], output_format)


@app.command("theorem-c")
@handle_errors
def theorem_c(
    k: int = typer.Option(..., "-k", "--k", min=1, help="Family index"),
    output_format: OutputFormat = FORMAT_OPTION,
):
    """X_k and Z_k = Y_{8k+2} on one five-manifold"""
    pair = theorem_c_pair(k)
    rows = [
        {**surface_row(f"X_{k}", pair.xk), "manifold": pair.reports[0].manifold.label},
        {**surface_row(f"Z_{k}", pair.zk), "manifold": pair.reports[1].manifold.label},
    ]
    footer = f"Hodge numbers differ: {pair.hodge_differ}; Hamilton: {pair.contact_obstruction.value}"
    emit(pair.to_json(), rows, output_format, footer=footer)


@app.command("nonspin-tuple")
@handle_errors
def nonspin_tuple_command(
    ctx: typer.Context,
    k: int = typer.Option(..., "-k", "--k", min=1, help="Number of surfaces"),
    euler: str = typer.Option(None, "--euler", help="Euler class a,b; defaults to the configured one"),
    output_format: OutputFormat = FORMAT_OPTION,
):
    """k surfaces over which a x_1 + b x_2 gives the same non-spin total space"""
    coefficients = parse_integers(euler, "--euler") if euler else list(ctx.obj["Euler Class"])
    if len(coefficients) != 2:
        raise typer.BadParameter("the Euler class needs two coefficients", param_hint="--euler")
    entries = nonspin_tuple(k, tuple(coefficients))
    rows = [
        {
            **surface_row(degrees_label(entry.surface.bidegree), entry.invariants),
            "manifold": entry.report.manifold.label,
        }
        for entry in entries
    ]
    emit([entry.to_json() for entry in entries], rows, output_format)


def _read_base(path):
    try:
        data = get_dictionary(path)
    except (OSError, json.JSONDecodeError) as err:
        raise typer.BadParameter(f"cannot read {path}: {err}", param_hint="--from-file")
    if "inv" in data:
        return BaseSurfaceData.from_json(data)
    try:
        inv = SurfaceInvariants.from_chern(
            c1_coeffs=tuple(int(c) for c in data["c1_coeffs"]),
            c1sq=int(data["c1sq"]),
            c2=int(data["c2"]),
            ample_canonical=bool(data.get("ample_canonical", False)),
            spin=data.get("spin"),
            c1_div=int(data["c1_div"]) if "c1_div" in data else None,
        )
    except KeyError as err:
        raise typer.BadParameter(f"missing field {err}", param_hint="--from-file")
    euler_class = data.get("euler_class")
    return BaseSurfaceData.from_surface(
        inv, tuple(int(c) for c in euler_class) if euler_class is not None else None
    )


@bw_app.command()
@handle_errors
def classify(
    from_file: Path = typer.Option(None, "--from-file", help="Json record of the base surface"),
    base: NamedBase = typer.Option(None, "--base", help="A named base instead of a file"),
    output_format: OutputFormat = FORMAT_OPTION,
):
    """Smale-Barden type, contact c1 and basic Hodge numbers of the total space"""
    if (from_file is None) == (base is None):
        raise typer.BadParameter("give exactly one of --from-file and --base")
    if base is not None:
        data = BaseSurfaceData.k3() if base == NamedBase.K3 else BaseSurfaceData.cp2()
        label = base.value
    else:
        data = _read_base(str(from_file))
        label = from_file.name
    report = bw_classify(data)
    footer = "\n".join(report.notes) if report.notes else None
    emit(report.to_json(), [report_row(label, report)], output_format, footer=footer)


def _factor_diamond(factor):
    """Diamond and canonical ampleness of point, curve:G, plane:D or ci:D1,...,Dr"""
    kind, _, argument = factor.partition(":")
    if kind == "point":
        return HodgeDiamond.point(), True, True
    if kind == "curve":
        genus = parse_integers(argument, "--factor")
        if len(genus) != 1:
            raise typer.BadParameter("use curve:G", param_hint="--factor")
        return HodgeDiamond.curve(genus[0]), genus[0] >= 2, genus[0] == 0
    if kind == "plane":
        degree = parse_integers(argument, "--factor")
        if len(degree) != 1:
            raise typer.BadParameter("use plane:D", param_hint="--factor")
        diamond = HodgeDiamond.plane_curve(degree[0])
        return diamond, degree[0] >= 4, degree[0] <= 2
    if kind == "ci":
        degrees = parse_integers(argument, "--factor")
        w = wall_invariants(CompleteIntersectionSpec.threefold(degrees))
        return ci3_diamond(w, w.d), w.k < 0, True
    raise typer.BadParameter(f"unknown factor {factor!r}", param_hint="--factor")


@bw_app.command("pair")
@handle_errors
def pair_command(
    row_pair: int = typer.Option(1, "--pair", min=1, max=len(TABLE2_PAIRS), help="Known pair number"),
    k: int = typer.Option(1, "-k", "--k", min=1, help="Euler class k x for the seven-dimensional case"),
    factor: str = typer.Option("point", "--factor", help="point, curve:G, plane:D or ci:D1,...,Dr"),
    output_format: OutputFormat = FORMAT_OPTION,
):
    """Sasaki structures with different basic Hodge numbers over a known pair"""
    first, second = TABLE2_PAIRS[row_pair - 1]
    pair = tuple(
        wall_invariants(CompleteIntersectionSpec.threefold(TABLE2_ROWS[index]["degrees"]))
        for index in (first, second)
    )
    p_diamond, ample, simply_connected = _factor_diamond(factor)
    if p_diamond.dim == 0:
        report = seven_dim_pair(k, pair)
    else:
        report = higher_dim_pair(
            pair, p_diamond, p_ample_canonical=ample, p_simply_connected=simply_connected
        )
    rows = [
        {
            "degrees": degrees_label(w.degrees),
            "dimension": report.total_dimension,
            "pi1": report.fundamental_group,
            "euler": diamond.euler(),
            "middle_row": degrees_label(diamond.middle_row()),
        }
        for w, diamond in zip(report.pair, report.diamonds)
    ]
    emit(report.to_json(), rows, output_format)


@app.command("link-sign")
@handle_errors
def link_sign_command(
    weights: str = typer.Option(..., "--weights", help="Weights, e.g. 1,1,1,21"),
    degree: int = typer.Option(..., "--degree", help="Degree of the polynomial"),
    output_format: OutputFormat = FORMAT_OPTION,
):
    """Sign of sum(w) - d for a weighted homogeneous link"""
    values = parse_integers(weights, "--weights")
    sign = link_sign(values, degree)
    payload = {"weights": stringify_integers(values), "degree": str(degree), "sign": sign.value}
    emit(payload, [{"weights": degrees_label(values), "degree": degree, "sign": sign.value}], output_format)


@app.command("pair-search")
@handle_errors
def pair_search_command(
    ctx: typer.Context,
    max_r: int = typer.Option(..., "--max-r", min=1, help="Largest number of equations"),
    max_degree: int = typer.Option(..., "--max-degree", min=2, help="Largest single degree"),
    max_total_degree: int = typer.Option(None, "--max-total-degree", help="Largest product of degrees"),
    jobs: int = typer.Option(None, "--jobs", min=1, help="Worker processes, defaults to the configured count"),
    spill_dir: Path = typer.Option(None, "--spill-dir", envvar=SPILL_ENV, help="Directory for spilled runs"),
    known_pairs: bool = typer.Option(False, "--known-pairs", help="Restrict to the published multidegrees"),
    output_format: OutputFormat = FORMAT_OPTION,
):
    """Wall-equivalent threefolds with different first Chern classes"""
    settings = ctx.obj
    bounds = SearchBounds(
        max_codim=max_r,
        max_degree=max_degree,
        max_total_degree=max_total_degree,
        memory_budget=settings["Memory Budget"],
    )
    spill = spill_dir if spill_dir is not None else settings["Spill Directory"]
    groups = search_collisions(
        bounds,
        candidates=table2_multidegrees() if known_pairs else None,
        jobs=jobs or int(settings["Jobs"]),
        spill_dir=os.fspath(spill) if spill else None,
    )
    emit(
        [group.to_json() for group in groups],
        group_rows(groups),
        output_format,
        columns=["group"] + TABLE2_COLUMNS + ["label"],
    )


@app.command()
@handle_errors
def verify(
    seed_tables_flag: bool = typer.Option(False, "--seed-tables", help="Print the stored tables and stop"),
    k_max: int = typer.Option(100, "--k-max", min=1, help="Last k of the paired-family identities"),
    output_format: OutputFormat = FORMAT_OPTION,
):
    """Replay both published tables and the paired-family identities"""
    if seed_tables_flag:
        typer.echo(json.dumps(seed_tables(), indent=2))
        return
    result = verify_tables(k_max)
    if not result.ok:
        raise VerificationMismatch(list(result.diff))
    checks = ["table 1", "table 2", "small search", f"paired families k=1..{k_max}"]
    emit(
        {"ok": True, "checks": checks},
        [{"check": check, "status": "match"} for check in checks],
        output_format,
    )


if __name__ == "__main__":
    app()
