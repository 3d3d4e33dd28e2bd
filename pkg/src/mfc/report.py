"""Batch classification, ground-state-degeneracy report and table rendering."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .catalog import CatalogEntry, all_entries, load_builtin
from .etale import ClassificationRecord, classify
from .modular_data import ModularData, is_modular
from .nimrep import MAX_NIMREP_DIM

__all__ = [
    "HYPOTHESIS",
    "SCHEMA_NAME",
    "SCHEMA_VERSION",
    "UsageError",
    "GsdCase",
    "PhysicsModel",
    "PHYSICS_MODELS",
    "classify_all",
    "classify_catalog",
    "gsd_report",
    "render",
    "parse_json",
    "physics_lookup",
]

HYPOTHESIS = "Suppose two-dimensional B-symmetric gapped phases are described by indecomposable B_A's."
SCHEMA_NAME = "mfc.classification"
SCHEMA_VERSION = 1


class UsageError(ValueError):
    """Unsupported rendering format or malformed document."""


def _error_record(mfc_id: str, md: ModularData, message: str) -> ClassificationRecord:
    return ClassificationRecord(
        mfc_id=mfc_id, labels=md.ring.labels, d=tuple(md.d), h=tuple(str(x) for x in md.h), D_sign=md.D_sign,
        algebras=(), rejected=(), anisotropic=False, gsd_set=(), gsd_partial=True, ssb=False, error=message,
    )


def classify_all(source: CatalogEntry | Sequence[ModularData], ids: Sequence[str] | None = None,
                 max_dim: int = MAX_NIMREP_DIM) -> list[ClassificationRecord]:
    """One record per variant, in input order.

    Non-modular inputs produce a record carrying ``error`` instead of stopping
    the batch.
    """
    if isinstance(source, CatalogEntry):
        mds = [source.modular_data(k) for k in range(len(source.variants))]
        ids = [f"{source.id}#{k}" for k in range(len(mds))]
    else:
        mds = list(source)
        ids = list(ids) if ids is not None else [f"input#{k}" for k in range(len(mds))]
        if len(ids) != len(mds):
            raise ValueError("ids and modular data differ in length")
    out = []
    for mfc_id, md in zip(ids, mds):
        verdict = is_modular(md)
        if not verdict.ok:
            out.append(_error_record(mfc_id, md, f"{verdict.status}: {'; '.join(verdict.diagnostics)}"))
            continue
        out.append(classify(md, mfc_id=mfc_id, max_dim=max_dim))
    return out


def classify_catalog(entries: Iterable[CatalogEntry] | None = None,
                     max_dim: int = MAX_NIMREP_DIM) -> list[ClassificationRecord]:
    records = []
    for e in entries if entries is not None else all_entries():
        records.extend(classify_all(e, max_dim=max_dim))
    return records


# ground-state degeneracy

_DISPLAY = {"su5_1": "Vec_{Z/5Z}^1"}


@dataclass(frozen=True)
class GsdCase:
    """Variants of one entry sharing a GSD set."""

    entry_id: str
    mfc: str
    variant_ids: tuple[str, ...]
    gsd_set: tuple[int, ...]
    ssb: bool
    partial: bool
    qualifier: str

    @property
    def count(self) -> int:
        return len(self.variant_ids)


def _entry_of(mfc_id: str) -> str:
    return mfc_id.split("#", 1)[0]


def gsd_report(records: Sequence[ClassificationRecord]) -> list[GsdCase]:
    """Group records by entry and GSD set; one case per distinct set.

    When an entry splits, the qualifier names the non-anisotropic group by
    its size and the rest as "the other N".
    """
    groups: dict[str, dict[tuple[int, ...], list[ClassificationRecord]]] = {}
    for r in records:
        groups.setdefault(_entry_of(r.mfc_id), {}).setdefault(tuple(r.gsd_set), []).append(r)
    cases = []
    for entry_id, by_gsd in groups.items():
        try:
            name = _DISPLAY.get(entry_id, load_builtin(entry_id).name)
        except KeyError:
            name = entry_id
        for gsd in sorted(by_gsd):
            recs = by_gsd[gsd]
            qualifier = ""
            if len(by_gsd) > 1 and all(r.anisotropic for r in recs):
                qualifier = f"the other {len(recs)}"
            elif len(by_gsd) > 1:
                labels = sorted({a.label for r in recs for a in r.algebras if a.confirmed and any(a.n[1:])})
                qualifier = f"{len(recs)} with {', '.join(labels)}"
            cases.append(GsdCase(
                entry_id=entry_id, mfc=name, variant_ids=tuple(r.mfc_id for r in recs), gsd_set=gsd,
                ssb=bool(gsd) and all(g > 1 for g in gsd), partial=any(r.gsd_partial for r in recs),
                qualifier=qualifier,
            ))
    return cases


def _fmt_set(values: Iterable[int]) -> str:
    return "{" + ",".join(str(v) for v in values) + "}"


# rendering

def _record_section(entry_id: str, recs: list[ClassificationRecord]) -> list[str]:
    try:
        title = load_builtin(entry_id).name
    except KeyError:
        title = entry_id
    lines = [f"## {title}", ""]
    ok = [r for r in recs if r.error is None]
    rows: dict[tuple, list[str]] = {}
    for r in ok:
        for a in r.algebras:
            key = (a.n, a.label, a.BA_name, a.rank_BA, a.lagrangian, a.verdict, a.confirmation_source)
            rows.setdefault(key, []).append(r.mfc_id.rsplit("#", 1)[-1])
    if ok:
        lines += ["| Connected étale algebra A | B_A | rank(B_A) | Lagrangian? |", "|---|---|---|---|"]
        # smaller algebras first, then earlier objects first
        ordered = sorted(rows.items(), key=lambda kv: (sum(kv[0][0]), [-x for x in kv[0][0]]))
        for (n, label, ba, rank, lag, verdict, source), where in ordered:
            cell = label
            if len(where) < len(ok):
                cell += f" for variants {', '.join(where)}"
            if verdict == "needs_confirmation":
                cell += f" (confirmed: {source})" if source else " (unconfirmed)"
            ba_cell = "B" if ba == "B" else (ba or "?")
            lines.append(f"| {cell} | {ba_cell} | {rank if rank is not None else '?'} | {'Yes' if lag else 'No'} |")
        lines += ["", "| variant | d | h | D sign | anisotropic | GSD |", "|---|---|---|---|---|---|"]
        for r in ok:
            d = ", ".join(f"{x:.6g}" for x in r.d[1:]) or "-"
            h = ", ".join(r.h[1:]) or "-"
            gsd = _fmt_set(r.gsd_set) + (" (partial)" if r.gsd_partial else "")
            lines.append(f"| {r.mfc_id.rsplit('#', 1)[-1]} | {d} | {h} | {r.D_sign:+d} | "
                         f"{'Yes' if r.anisotropic else 'No'} | {gsd} |")
    errors = [r for r in recs if r.error is not None]
    if errors:
        lines += ["", "Errors:", ""]
        lines += [f"- {r.mfc_id}: {r.error}" for r in errors]
    lines.append("")
    return lines


def _markdown(records: Sequence[ClassificationRecord], include_gsd: bool) -> str:
    lines = ["# Connected étale algebras", "", f"> Hypothesis: {HYPOTHESIS}", ""]
    grouped: dict[str, list[ClassificationRecord]] = {}
    for r in records:
        grouped.setdefault(_entry_of(r.mfc_id), []).append(r)
    for entry_id, recs in grouped.items():
        lines += _record_section(entry_id, recs)
    if include_gsd and records:
        lines += ["## Ground state degeneracy", "", "| B | cases | GSD | SSB |", "|---|---|---|---|"]
        for c in gsd_report(records):
            label = c.mfc + (f" ({c.qualifier})" if c.qualifier else "")
            gsd = _fmt_set(c.gsd_set) + (" (partial)" if c.partial else "")
            lines.append(f"| {label} | {c.count} | {gsd} | {'Yes' if c.ssb else 'No'} |")
        lines.append("")
    return "\n".join(lines)


def render(records: Sequence[ClassificationRecord], format: str = "markdown", include_gsd: bool = True) -> str:
    """Markdown tables or a versioned JSON document."""
    fmt = format.lower()
    if fmt in ("markdown", "md"):
        return _markdown(records, include_gsd)
    if fmt == "json":
        doc = {
            "schema": SCHEMA_NAME,
            "version": SCHEMA_VERSION,
            "hypothesis": HYPOTHESIS,
            "records": [r.to_dict() for r in records],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False)
    raise UsageError(f"unknown format {format!r}; use 'markdown' or 'json'")


def parse_json(text: str) -> list[ClassificationRecord]:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA_NAME or doc.get("version") != SCHEMA_VERSION:
        raise UsageError(f"expected schema {SCHEMA_NAME} v{SCHEMA_VERSION}")
    return [ClassificationRecord.from_dict(r) for r in doc["records"]]


# named deformations of minimal models

@dataclass(frozen=True)
class PhysicsModel:
    name: str
    entry_id: str
    d_class: int  # index among the entry's distinct quantum-dimension vectors
    h: tuple[Fraction, ...]  # conformal dimensions of X, Y, ... before reduction mod 1
    identification: str


PHYSICS_MODELS: dict[str, PhysicsModel] = {
    m.name: m for m in (
        PhysicsModel("M5_9_phi12", "psu2_7", 0, (Fraction(11, 3), Fraction(1, 9), Fraction(4, 3)),
                     "X=L_{7,1}, Y=L_{3,1}, Z=L_{5,1}"),
        PhysicsModel("M5_11_phi51", "su2_3", 0, (Fraction(27, 4), Fraction(17, 5), Fraction(23, 20)),
                     "X=L_{1,4}, Y=L_{1,3}, Z=L_{1,2}"),
        PhysicsModel("M6_11_phi12", "psu2_9", 0,
                     (Fraction(76, 11), Fraction(1, 11), Fraction(39, 11), Fraction(14, 11)),
                     "X=L_{9,1}, Y=L_{3,1}, Z=L_{7,1}, W=L_{5,1}"),
        PhysicsModel("M6_13_phi51", "su2_4", 0, (Fraction(11), Fraction(9, 8), Fraction(53, 8), Fraction(10, 3)),
                     "X=L_{1,5}, Y=L_{1,2}, Z=L_{1,4}, W=L_{1,3}"),
    )
}


@dataclass(frozen=True)
class PhysicsResult:
    model: PhysicsModel
    variant_ids: tuple[str, ...]
    records: tuple[ClassificationRecord, ...]

    @property
    def gsd_set(self) -> tuple[int, ...]:
        return tuple(sorted({g for r in self.records for g in r.gsd_set}))

    @property
    def ssb(self) -> bool:
        return all(r.ssb for r in self.records)

    def summary(self) -> str:
        gsd = self.gsd_set
        shown = str(gsd[0]) if len(gsd) == 1 else _fmt_set(gsd)
        return (f"{self.model.name}: {load_builtin(self.model.entry_id).name} ({self.model.identification}); "
                f"variants {', '.join(self.variant_ids)}; GSD = {shown}; "
                f"SSB: {'yes' if self.ssb else 'no'}")


def physics_lookup(name: str) -> PhysicsResult:
    """Classify the catalog variants matching a named minimal-model deformation."""
    key = {k.lower(): k for k in PHYSICS_MODELS}.get(name.lower())
    if key is None:
        raise KeyError(f"unknown model {name!r}; known: {', '.join(PHYSICS_MODELS)}")
    model = PHYSICS_MODELS[key]
    entry = load_builtin(model.entry_id)
    d_classes: list[tuple[float, ...]] = []
    for v in entry.variants:
        if v.d not in d_classes:
            d_classes.append(v.d)
    target_h = (Fraction(0),) + tuple(x % 1 for x in model.h)
    ks = [k for k, v in enumerate(entry.variants) if v.d == d_classes[model.d_class] and v.h == target_h]
    if not ks:
        raise LookupError(f"{model.name}: no catalog variant matches")
    ids = tuple(f"{entry.id}#{k}" for k in ks)
    records = tuple(classify(entry.modular_data(k), mfc_id=i) for k, i in zip(ks, ids))
    return PhysicsResult(model, ids, records)
