"""Deterministic TSV report tables and their bit-exact emission.

Every file is UTF-8 with LF endings, starts with a ``#`` header line that
records the indicator configuration, then a column-name line, then data rows.
Floating-point cells are rendered with 6 decimal places (round-half-even, as
produced by ``format(x, '.6f')``); empty cells mean "undefined". Emission is
write-to-temp plus atomic rename, so a failed run never leaves partial files.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .classifier import Assignment
from .corpus import Corpus
from .errors import EmptyScopeError, UndefinedValueError
from .indicators import (
    ALL_AREAS,
    ALL_SOURCES,
    CompositionTable,
    IndicatorConfig,
    MeanIfValue,
    PrestigeValue,
    RankingTable,
    RepresentationTable,
    SummaryRow,
    composition,
    mean_impact_factor,
    prestige,
    rank_journals,
    representation,
    summary_row,
)
from .taxonomy import Taxonomy

#: Scope label for the pooled --journals set in composition rows.
COMBINED_SCOPE = "COMBINED"

TABLE_FILES = (
    "summary.tsv",
    "composition.tsv",
    "representation.tsv",
    "field_if.tsv",
    "prestige.tsv",
    "ranking.tsv",
)

MANIFEST_FILE = "manifest.tsv"

TABLE_COLUMNS = {
    "summary.tsv": ("journal_id", "articles", "articles_classified", "citations", "mean_if"),
    "composition.tsv": ("scope", "area", "count", "share"),
    "representation.tsv": ("area", "share_set", "share_all_sources", "ratio"),
    "field_if.tsv": ("journal_id", "area", "year", "numerator", "denominator", "value", "skipped_years"),
    "prestige.tsv": ("journal_id", "area", "journal_if", "baseline_if", "value"),
    "ranking.tsv": ("area", "rank", "journal_id", "value", "field_restricted"),
}


def fmt_float(x: float) -> str:
    """Fixed 6-decimal rendering; IEEE correct rounding is round-half-even."""
    return f"{x:.6f}"


def _opt(x: float | int | None) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return fmt_float(x)
    return str(x)


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility record emitted alongside every table set.

    Contains no timestamps or absolute paths, so identical inputs and flags
    produce a byte-identical manifest.
    """

    command: str
    version: str
    config: dict[str, str]
    inputs: dict[str, str]
    outputs: tuple[str, ...]

    def to_lines(self) -> list[str]:
        lines = ["key\tvalue", f"command\t{self.command}", f"version\t{self.version}"]
        lines += [f"config.{k}\t{v}" for k, v in sorted(self.config.items())]
        lines += [f"input.{k}.sha256\t{v}" for k, v in sorted(self.inputs.items())]
        lines.append("outputs\t" + ",".join(self.outputs))
        return lines


@dataclass(frozen=True)
class ReportTables:
    """All computed indicator tables for one run."""

    config: IndicatorConfig
    journals: tuple[str, ...]
    summary: tuple[SummaryRow, ...]
    compositions: tuple[tuple[str, CompositionTable], ...]
    representation: RepresentationTable | None
    field_if: tuple[MeanIfValue, ...]
    prestige: tuple[PrestigeValue, ...]
    rankings: tuple[RankingTable, ...]


def _target_areas(taxonomy: Taxonomy) -> tuple[str, ...]:
    return tuple(
        sorted({taxonomy.broad_area_of(name) for name in taxonomy.assignment_targets})
    )


def build_report_tables(
    corpus: Corpus,
    assignments: Mapping[str, Assignment],
    taxonomy: Taxonomy,
    journals: Iterable[str],
    config: IndicatorConfig | None = None,
) -> ReportTables:
    """Compute every report table for the given journal list.

    Scopes or cells whose value is undefined (zero denominator, nothing
    classified) are skipped rather than fabricated; the emitters render
    whatever is present.
    """
    if config is None:
        config = IndicatorConfig()
    journal_list = tuple(sorted(set(journals)))
    for j in journal_list:
        corpus.journal(j)
    areas = _target_areas(taxonomy)

    summary = [summary_row(corpus, assignments, ALL_SOURCES, config)]
    summary += [summary_row(corpus, assignments, j, config) for j in journal_list]

    compositions: list[tuple[str, CompositionTable]] = []
    try:
        compositions.append(
            (COMBINED_SCOPE, composition(corpus, assignments, journal_list, config.pub_window))
        )
    except EmptyScopeError:
        pass
    for j in journal_list:
        try:
            compositions.append((j, composition(corpus, assignments, (j,), config.pub_window)))
        except EmptyScopeError:
            continue

    try:
        rep = representation(corpus, assignments, journal_list, config.pub_window)
    except EmptyScopeError:
        rep = None

    field_if: list[MeanIfValue] = []
    for j in (ALL_SOURCES,) + journal_list:
        for area in (ALL_AREAS,) + areas:
            try:
                field_if.append(mean_impact_factor(corpus, assignments, j, area, config))
            except UndefinedValueError:
                continue

    baselines = {
        m.area: m for m in field_if if m.journal_id == ALL_SOURCES and m.area != ALL_AREAS
    }
    journal_means = {
        (m.journal_id, m.area): m for m in field_if if m.journal_id != ALL_SOURCES
    }
    prestige_rows: list[PrestigeValue] = []
    for j in journal_list:
        for area in areas:
            jm = journal_means.get((j, area))
            base = baselines.get(area)
            if jm is not None and base is not None and base.value > 0:
                prestige_rows.append(
                    prestige(jm.value, base.value, journal_id=j, area=area)
                )

    rankings = [
        rank_journals(corpus, assignments, taxonomy, area, journal_list, config)
        for area in areas
    ]

    return ReportTables(
        config=config,
        journals=journal_list,
        summary=tuple(summary),
        compositions=tuple(compositions),
        representation=rep,
        field_if=tuple(field_if),
        prestige=tuple(prestige_rows),
        rankings=tuple(rankings),
    )


def _config_header(config: IndicatorConfig) -> str:
    denom = ",".join(sorted(config.denominator_doc_types))
    citing = ",".join(sorted(config.citing_doc_types))
    return (
        f"# window={config.window} kappa={fmt_float(config.kappa)}"
        f" if_years={config.if_year_range[0]}:{config.if_year_range[1]}"
        f" pub_years={config.pub_window[0]}:{config.pub_window[1]}"
        f" denominator_doc_types={denom} citing_doc_types={citing}"
    )


def _table(name: str, config: IndicatorConfig, rows: list[str], extra_comments: list[str] | None = None) -> str:
    lines = [_config_header(config)]
    if extra_comments:
        lines += extra_comments
    lines.append("\t".join(TABLE_COLUMNS[name]))
    lines += rows
    return "\n".join(lines) + "\n"


def render_tables(tables: ReportTables) -> dict[str, str]:
    """Render every table file to its exact text, keyed by file name."""
    cfg = tables.config

    rows = [
        f"{r.journal_id}\t{r.articles}\t{r.articles_classified}\t{r.citations}\t{_opt(r.mean_if)}"
        for r in sorted(tables.summary, key=lambda r: r.journal_id)
    ]
    out = {"summary.tsv": _table("summary.tsv", cfg, rows)}

    rows = []
    for scope, comp in sorted(tables.compositions, key=lambda sc: sc[0]):
        for area in sorted(comp.counts):
            rows.append(f"{scope}\t{area}\t{comp.counts[area]}\t{fmt_float(comp.share(area))}")
    out["composition.tsv"] = _table("composition.tsv", cfg, rows)

    rows = []
    comments = []
    if tables.representation is not None:
        rep = tables.representation
        for area in sorted(rep.ratios):
            rows.append(
                f"{area}\t{fmt_float(rep.share_set.get(area, 0.0))}"
                f"\t{fmt_float(rep.share_all[area])}\t{fmt_float(rep.ratios[area])}"
            )
        if rep.omitted_areas:
            comments.append("# omitted_areas=" + ";".join(rep.omitted_areas))
    out["representation.tsv"] = _table("representation.tsv", cfg, rows, comments)

    rows = []
    for m in sorted(tables.field_if, key=lambda m: (m.journal_id, m.area)):
        for v in m.yearly:
            rows.append(
                f"{m.journal_id}\t{m.area}\t{v.year}\t{v.numerator}\t{v.denominator}"
                f"\t{fmt_float(v.value)}\t"
            )
        skipped = ";".join(str(y) for y in m.skipped_years)
        rows.append(f"{m.journal_id}\t{m.area}\tmean\t\t\t{fmt_float(m.value)}\t{skipped}")
    out["field_if.tsv"] = _table("field_if.tsv", cfg, rows)

    rows = [
        f"{p.journal_id}\t{p.area}\t{fmt_float(p.journal_if)}\t{fmt_float(p.baseline_if)}\t{fmt_float(p.value)}"
        for p in sorted(tables.prestige, key=lambda p: (p.journal_id, p.area))
    ]
    out["prestige.tsv"] = _table("prestige.tsv", cfg, rows)

    rows = []
    for ranking in sorted(tables.rankings, key=lambda r: r.area):
        for e in ranking.entries:
            flag = "true" if e.field_restricted else "false"
            rows.append(f"{ranking.area}\t{_opt(e.rank)}\t{e.journal_id}\t{_opt(e.value)}\t{flag}")
    out["ranking.tsv"] = _table("ranking.tsv", cfg, rows)
    return out


def write_text_atomic(path: Path | str, text: str) -> None:
    """Write via a temp file in the same directory plus atomic rename."""
    path = Path(path)
    tmp = path.with_name(f".{path.name}.tmp")
    try:
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def emit_report(tables: ReportTables, manifest: RunManifest, out_dir: Path | str) -> list[str]:
    """Write all table files plus ``manifest.tsv`` into ``out_dir``.

    All files are staged as temps first and renamed together, so a failure
    leaves the directory in its prior state. Returns the written paths in
    file-name order. Re-running on identical tables produces byte-identical
    files.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    renders = render_tables(tables)
    renders[MANIFEST_FILE] = "\n".join(manifest.to_lines()) + "\n"
    staged: list[tuple[Path, Path]] = []
    try:
        for name in sorted(renders):
            tmp = out / f".{name}.tmp"
            with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(renders[name])
            staged.append((tmp, out / name))
        for tmp, final in staged:
            os.replace(tmp, final)
    except BaseException:
        for tmp, _final in staged:
            tmp.unlink(missing_ok=True)
        raise
    return [str(out / name) for name in sorted(renders)]
