"""Command line interface.

Exit codes: 0 success, 2 invalid input, 3 internal inconsistency (results
disagreeing with the built-in reference data, or numerically inconsistent
input that slipped past validation).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import catalog as cat
from .etale import classify
from .fusion_ring import FusionRing, RingStructureError, fpdim, load_ring, validate_ring
from .modular_data import (MAX_DEN, TOL, NotACharacterError, NumericalInconsistencyError, central_charge,
                           enumerate_modular_data, is_modular, load_modular)
from .nimrep import MAX_NIMREP_DIM, SearchSpaceError, search_nimreps
from .report import HYPOTHESIS, UsageError, classify_all, classify_catalog, physics_lookup, render

EXIT_INVALID = 2
EXIT_INCONSISTENT = 3


class InvalidInput(click.ClickException):
    exit_code = EXIT_INVALID


class Inconsistent(click.ClickException):
    exit_code = EXIT_INCONSISTENT


def _echo_json(obj) -> None:
    click.echo(json.dumps(obj, indent=2, ensure_ascii=False))


def _load_ring_arg(arg: str) -> FusionRing:
    """A ring JSON file or a catalog id."""
    if Path(arg).exists():
        try:
            return load_ring(arg)
        except (OSError, ValueError, RingStructureError) as exc:
            raise InvalidInput(f"{arg}: {exc}") from exc
    try:
        return cat.entries_for(arg)[0].ring
    except KeyError as exc:
        raise InvalidInput(f"{arg} is neither a file nor a catalog id ({exc})") from exc


def _check_against_catalog(records) -> list[str]:
    """Disagreements between classification records and the expected tables."""
    problems = []
    for r in records:
        entry_id, _, k = r.mfc_id.partition("#")
        try:
            entry = cat.load_builtin(entry_id)
        except KeyError:
            continue
        if r.error is not None:
            problems.append(f"{r.mfc_id}: {r.error}")
            continue
        got = sorted((a.n, a.BA_name, a.rank_BA, a.lagrangian) for a in r.algebras if a.confirmed)
        want = sorted((a.n, a.BA_name, a.rank_BA, a.lagrangian) for a in entry.expected_algebras(int(k)))
        if got != want:
            problems.append(f"{r.mfc_id}: found {got}, expected {want}")
    return problems


@click.group()
@click.option("--tolerance", type=float, default=TOL, show_default=True,
              help="Numerical tolerance for modular-data checks.")
@click.option("--max-den", type=int, default=MAX_DEN, show_default=True,
              help="Largest denominator of conformal dimensions searched.")
@click.pass_context
def main(ctx: click.Context, tolerance: float, max_den: int) -> None:
    """Connected étale algebras in modular fusion categories."""
    ctx.ensure_object(dict)
    ctx.obj.update(tolerance=tolerance, max_den=max_den)


# ring

@main.group()
def ring() -> None:
    """Fusion ring utilities."""


@ring.command("validate")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def ring_validate(path: str) -> None:
    """Check unit, associativity and duality axioms."""
    r = _load_ring_arg(path)
    problems = validate_ring(r)
    if problems:
        for p in problems:
            click.echo(f"violation: {p}")
        raise InvalidInput(f"{len(problems)} axiom violation(s)")
    click.echo(f"valid fusion ring of rank {r.rank}")


@ring.command("fpdim")
@click.argument("ring_arg", metavar="RING")
def ring_fpdim(ring_arg: str) -> None:
    """Frobenius-Perron dimensions of simples and the total dimension."""
    r = _load_ring_arg(ring_arg)
    if validate_ring(r):
        raise InvalidInput("not a valid fusion ring; run `mfc ring validate`")
    fp = fpdim(r)
    for label, x in zip(r.labels, fp.fpdim_simple):
        click.echo(f"FPdim({label}) = {x:.12g}")
    click.echo(f"FPdim(total) = {fp.fpdim_total:.12g}")


# modular data

@main.group()
def modular() -> None:
    """Modular data enumeration and checks."""


@modular.command("enumerate")
@click.argument("ring_arg", metavar="RING")
@click.option("--max-den", type=int, default=None, help="Overrides the global --max-den.")
@click.option("--json", "as_json", is_flag=True, help="Emit the variants as JSON.")
@click.pass_context
def modular_enumerate(ctx: click.Context, ring_arg: str, max_den: int | None, as_json: bool) -> None:
    """All modular data on RING up to ring automorphisms."""
    r = _load_ring_arg(ring_arg)
    if validate_ring(r):
        raise InvalidInput("not a valid fusion ring")
    mds = enumerate_modular_data(r, max_den=max_den or ctx.obj["max_den"], tol=ctx.obj["tolerance"])
    if as_json:
        _echo_json({"count": len(mds), "unitary": sum(m.is_unitary() for m in mds),
                    "variants": [m.to_dict(inline_ring=False) for m in mds]})
        return
    click.echo(f"{len(mds)} modular data ({sum(m.is_unitary() for m in mds)} unitary)")
    for k, m in enumerate(mds):
        d = ", ".join(f"{x:.6g}" for x in m.d)
        h = ", ".join(str(x) for x in m.h)
        click.echo(f"{k:3d}  d=({d})  h=({h})  D_sign={m.D_sign:+d}")


def _load_md(path: str, tol: float):
    try:
        return load_modular(path, tol=tol)
    except (OSError, ValueError, KeyError, RingStructureError, NotACharacterError) as exc:
        raise InvalidInput(f"{path}: {exc}") from exc


@modular.command("check")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def modular_check(ctx: click.Context, path: str) -> None:
    """Run the modularity battery on a modular-data file."""
    md = _load_md(path, ctx.obj["tolerance"])
    verdict = is_modular(md)
    click.echo(f"status: {verdict.status}")
    for diag in verdict.diagnostics:
        click.echo(f"  {diag}")
    if not verdict.ok:
        raise InvalidInput(f"data is {verdict.status}")
    c = central_charge(md, max_den=ctx.obj["max_den"])
    click.echo(f"central charge: {c}")


# classification

@main.command("classify")
@click.argument("target")
@click.option("--json", "fmt", flag_value="json", help="JSON record output.")
@click.option("--md", "fmt", flag_value="markdown", default=True, help="Markdown tables (default).")
@click.option("--variant", type=int, default=None, help="Restrict a catalog entry to one variant.")
@click.pass_context
def classify_cmd(ctx: click.Context, target: str, fmt: str, variant: int | None) -> None:
    """Classify connected étale algebras of a modular-data file or catalog entry."""
    if Path(target).exists():
        md = _load_md(target, ctx.obj["tolerance"])
        records = classify_all([md], ids=[Path(target).stem])
        problems = []
    else:
        try:
            entries = cat.entries_for(target)
        except KeyError as exc:
            raise InvalidInput(str(exc)) from exc
        if variant is not None:
            if len(entries) != 1 or not 0 <= variant < len(entries[0].variants):
                raise InvalidInput(f"variant {variant} out of range")
            e = entries[0]
            records = [classify(e.modular_data(variant), mfc_id=f"{e.id}#{variant}")]
        else:
            records = classify_catalog(entries)
        problems = _check_against_catalog(records)
    click.echo(render(records, fmt))
    if any(r.error for r in records) and not problems:
        raise InvalidInput("input is not modular")
    if problems:
        raise Inconsistent("; ".join(problems))


@main.command("nimrep")
@click.argument("ring_arg", metavar="RING")
@click.option("--dim", "r", type=int, required=True, help="NIM-rep dimension.")
@click.option("--all", "include_all", is_flag=True, help="Include decomposable NIM-reps.")
@click.option("--max-dim", type=int, default=MAX_NIMREP_DIM, show_default=True, help="Search-space cap.")
def nimrep_cmd(ring_arg: str, r: int, include_all: bool, max_dim: int) -> None:
    """NIM-reps of RING of a given dimension, as JSON."""
    ring_ = _load_ring_arg(ring_arg)
    if validate_ring(ring_):
        raise InvalidInput("not a valid fusion ring")
    try:
        reps = search_nimreps(ring_, r, max_dim=max_dim, indecomposable=not include_all)
    except (SearchSpaceError, ValueError) as exc:
        raise InvalidInput(str(exc)) from exc
    _echo_json({
        "ring": ring_.name or ring_arg,
        "labels": list(ring_.labels),
        "dim": r,
        "indecomposable_only": not include_all,
        "count": len(reps),
        "nimreps": [{"matrices": {lab: m.tolist() for lab, m in zip(ring_.labels, rep.matrices)},
                     "indecomposable": rep.is_indecomposable()} for rep in reps],
    })


# catalog

@main.group("catalog")
def catalog_group() -> None:
    """Built-in reference data."""


@catalog_group.command("list")
def catalog_list() -> None:
    rows = cat.list_entries()
    click.echo("| id | rank | B | MFCs | unitary | completely anisotropic? |")
    click.echo("|---|---|---|---|---|---|")
    for row in rows:
        click.echo(f"| {row.id} | {row.rank} | {row.name} | {row.mfc_count} | {row.unitary_count} | "
                   f"{row.anisotropic} |")


@catalog_group.command("show")
@click.argument("entry_id")
@click.option("--variant", type=int, default=None, help="Export one variant as a modular-data document.")
def catalog_show(entry_id: str, variant: int | None) -> None:
    """Export an entry (ring plus variants) as JSON."""
    try:
        entries = cat.entries_for(entry_id)
    except KeyError as exc:
        raise InvalidInput(str(exc)) from exc
    if variant is None:
        docs = [e.to_dict() for e in entries]
        _echo_json(docs[0] if len(docs) == 1 else docs)
        return
    if len(entries) != 1 or not 0 <= variant < len(entries[0].variants):
        raise InvalidInput(f"variant {variant} out of range")
    _echo_json(entries[0].variant_dict(variant))


# report

@main.command("report")
@click.argument("entry_ids", nargs=-1)
@click.option("--all", "use_all", is_flag=True, help="Every catalog entry.")
@click.option("--format", "fmt", type=click.Choice(["md", "markdown", "json"]), default="md", show_default=True)
def report_cmd(entry_ids: tuple[str, ...], use_all: bool, fmt: str) -> None:
    """Classification tables and GSD/SSB report for catalog entries."""
    if use_all == bool(entry_ids):
        raise click.UsageError("give either --all or one or more entry ids")
    try:
        entries = cat.all_entries() if use_all else [e for i in entry_ids for e in cat.entries_for(i)]
    except KeyError as exc:
        raise InvalidInput(str(exc)) from exc
    records = classify_catalog(entries)
    try:
        click.echo(render(records, fmt))
    except UsageError as exc:
        raise click.UsageError(str(exc)) from exc
    problems = _check_against_catalog(records)
    if problems:
        raise Inconsistent("; ".join(problems))


@main.command("physics")
@click.argument("model")
def physics_cmd(model: str) -> None:
    """GSD prediction for a named minimal-model deformation."""
    try:
        result = physics_lookup(model)
    except KeyError as exc:
        raise InvalidInput(str(exc.args[0])) from exc
    except LookupError as exc:
        raise Inconsistent(str(exc)) from exc
    click.echo(f"Hypothesis: {HYPOTHESIS}")
    click.echo(result.summary())


def run() -> None:
    try:
        main(standalone_mode=True)
    except NumericalInconsistencyError as exc:
        click.echo(f"Error: {exc}", err=True)
        sys.exit(EXIT_INCONSISTENT)


__all__ = ["main", "run", "EXIT_INVALID", "EXIT_INCONSISTENT"]
