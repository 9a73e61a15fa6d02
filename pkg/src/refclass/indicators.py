"""Field-resolved journal impact indicators over a classified corpus.

The central quantity is an impact-factor-like measure: citations received in
year y to a journal's qualifying items published in the preceding ``window``
years, divided by the count of those items, scaled by a correction factor
``kappa``. Restricting the item set to one broad area (via the assignment
table) yields per-field values; using all sources yields field baselines.
Prestige is the ratio of a journal's field value to the field baseline.

All aggregation is pure read-only work over the immutable corpus and
assignment table: integer numerators and denominators are accumulated first
and divided exactly once, so results are independent of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .classifier import Assignment
from .corpus import Corpus
from .errors import (
    ConfigError,
    DomainError,
    EmptyScopeError,
    UndefinedValueError,
    UnknownNameError,
)
from .taxonomy import BROAD_AREAS, Taxonomy

#: Scope token: aggregate over every journal in the corpus.
ALL_SOURCES = "ALL_SOURCES"
#: Area token: no broad-area restriction.
ALL_AREAS = "ALL"

ARTICLE_ONLY = frozenset({"article"})
ALL_DOC_TYPES = frozenset({"article", "review", "other"})


@dataclass(frozen=True)
class IndicatorConfig:
    """Knobs of the impact computation.

    ``denominator_doc_types`` filters the cited (citable) side, reviews are
    excluded by default; ``citing_doc_types`` filters the citing side, all
    document types count by default.
    """

    window: int = 2
    kappa: float = 1.04
    denominator_doc_types: frozenset[str] = ARTICLE_ONLY
    citing_doc_types: frozenset[str] = ALL_DOC_TYPES
    if_year_range: tuple[int, int] = (2007, 2016)
    pub_window: tuple[int, int] = (2005, 2015)

    def __post_init__(self):
        if self.window < 1:
            raise ConfigError("window must be >= 1")
        if not self.kappa > 0:
            raise ConfigError("kappa must be positive")
        object.__setattr__(self, "denominator_doc_types", frozenset(self.denominator_doc_types))
        object.__setattr__(self, "citing_doc_types", frozenset(self.citing_doc_types))
        if not self.denominator_doc_types or not self.citing_doc_types:
            raise ConfigError("doc type sets must be non-empty")
        for name, (lo, hi) in (
            ("if_year_range", self.if_year_range),
            ("pub_window", self.pub_window),
        ):
            if lo > hi:
                raise ConfigError(f"empty {name}")
        object.__setattr__(self, "if_year_range", tuple(int(y) for y in self.if_year_range))
        object.__setattr__(self, "pub_window", tuple(int(y) for y in self.pub_window))


@dataclass(frozen=True)
class IfValue:
    """One impact value cell: exact integer counts plus the scaled ratio."""

    journal_id: str
    area: str
    year: int
    numerator: int
    denominator: int
    value: float


@dataclass(frozen=True)
class MeanIfValue:
    """Mean of yearly impact values; zero-denominator years are skipped and listed."""

    journal_id: str
    area: str
    value: float
    yearly: tuple[IfValue, ...]
    skipped_years: tuple[int, ...]


@dataclass(frozen=True)
class PrestigeValue:
    """Ratio of a journal's (field) impact value to the field baseline."""

    journal_id: str
    area: str
    journal_if: float
    baseline_if: float
    value: float


def _area_of(assignments: Mapping[str, Assignment], article_id: str) -> str | None:
    a = assignments.get(article_id)
    return a.broad_area if a is not None else None


def _denominator_articles(
    corpus: Corpus,
    assignments: Mapping[str, Assignment],
    journal: str,
    years: tuple[int, int],
    area: str,
    doc_types: frozenset[str],
) -> list[str]:
    lo, hi = years
    if journal == ALL_SOURCES:
        candidates: Iterable[str] = corpus.articles
    else:
        candidates = corpus.articles_by_journal.get(journal)
        if candidates is None:
            raise UnknownNameError(f"unknown journal: {journal!r}")
    out = []
    for a_id in candidates:
        art = corpus.articles[a_id]
        if not lo <= art.year <= hi or art.doc_type not in doc_types:
            continue
        if area != ALL_AREAS and _area_of(assignments, a_id) != area:
            continue
        out.append(a_id)
    return out


def impact_factor(
    corpus: Corpus,
    assignments: Mapping[str, Assignment],
    journal: str,
    year: int,
    area: str = ALL_AREAS,
    config: IndicatorConfig | None = None,
) -> IfValue:
    """Impact value of ``journal`` (or :data:`ALL_SOURCES`) in ``year``.

    Denominator: qualifying items published in ``[year - window, year - 1]``,
    restricted to ``area`` via the assignment table unless ``area`` is
    :data:`ALL_AREAS` (unclassified items are excluded from area-restricted
    counts but included in whole-journal counts). Numerator: citations from
    qualifying citers of exactly ``year`` to that item set. Raises
    :class:`UndefinedValueError` when the denominator is zero.
    """
    if config is None:
        config = IndicatorConfig()
    window = (year - config.window, year - 1)
    denom_ids = _denominator_articles(
        corpus, assignments, journal, window, area, config.denominator_doc_types
    )
    if not denom_ids:
        raise UndefinedValueError(
            f"no qualifying articles for journal={journal} area={area} year={year}"
        )
    numerator = 0
    citing_types = config.citing_doc_types
    articles = corpus.articles
    index = corpus.citation_index
    for a_id in denom_ids:
        for citer_id, citer_year in index.get(a_id, ()):
            if citer_year == year and articles[citer_id].doc_type in citing_types:
                numerator += 1
    denominator = len(denom_ids)
    return IfValue(journal, area, year, numerator, denominator, config.kappa * (numerator / denominator))


def mean_impact_factor(
    corpus: Corpus,
    assignments: Mapping[str, Assignment],
    journal: str,
    area: str = ALL_AREAS,
    config: IndicatorConfig | None = None,
) -> MeanIfValue:
    """Arithmetic mean of yearly impact values over ``config.if_year_range``.

    Years with a zero denominator are skipped and reported in
    ``skipped_years``; if every year is undefined the mean itself is
    undefined and raises :class:`UndefinedValueError`.
    """
    if config is None:
        config = IndicatorConfig()
    yearly: list[IfValue] = []
    skipped: list[int] = []
    lo, hi = config.if_year_range
    for year in range(lo, hi + 1):
        try:
            yearly.append(impact_factor(corpus, assignments, journal, year, area, config))
        except UndefinedValueError:
            skipped.append(year)
    if not yearly:
        raise UndefinedValueError(
            f"impact value undefined in every year {lo}-{hi} for journal={journal} area={area}"
        )
    mean = sum(v.value for v in yearly) / len(yearly)
    return MeanIfValue(journal, area, mean, tuple(yearly), tuple(skipped))


def prestige(
    journal_if: float,
    baseline_if: float,
    *,
    journal_id: str = "",
    area: str = ALL_AREAS,
) -> PrestigeValue:
    """Field-normalized standing: ``journal_if / baseline_if``.

    ``baseline_if`` must be positive; scale-invariant in the common factor.
    """
    if not baseline_if > 0:
        raise DomainError(f"baseline impact value must be positive, got {baseline_if}")
    return PrestigeValue(journal_id, area, journal_if, baseline_if, journal_if / baseline_if)


@dataclass(frozen=True)
class CompositionTable:
    """Per-area article shares within a journal set and publication window."""

    journal_set: tuple[str, ...]
    pub_window: tuple[int, int]
    counts: dict[str, int]
    total: int

    @property
    def shares(self) -> dict[str, float]:
        return {area: n / self.total for area, n in self.counts.items()}

    def share(self, area: str) -> float:
        return self.counts.get(area, 0) / self.total


def _classified_area_counts(
    corpus: Corpus,
    assignments: Mapping[str, Assignment],
    journal_set: frozenset[str] | None,
    pub_window: tuple[int, int],
    doc_types: frozenset[str],
) -> dict[str, int]:
    lo, hi = pub_window
    counts: dict[str, int] = {}
    for a_id, art in corpus.articles.items():
        if journal_set is not None and art.journal_id not in journal_set:
            continue
        if not lo <= art.year <= hi or art.doc_type not in doc_types:
            continue
        area = _area_of(assignments, a_id)
        if area is not None:
            counts[area] = counts.get(area, 0) + 1
    return dict(sorted(counts.items()))


def composition(
    corpus: Corpus,
    assignments: Mapping[str, Assignment],
    journal_set: Iterable[str],
    pub_window: tuple[int, int],
    *,
    doc_types: frozenset[str] = ARTICLE_ONLY,
) -> CompositionTable:
    """Disciplinary composition of the classified articles in a journal set.

    Shares are over classified articles only and sum to 1; areas with no
    classified article in scope are absent from ``counts`` (``share`` reports
    them as 0). Raises :class:`EmptyScopeError` when nothing in scope is
    classified.
    """
    journals = tuple(sorted(set(journal_set)))
    if not journals:
        raise EmptyScopeError("empty journal set")
    for j in journals:
        corpus.journal(j)
    counts = _classified_area_counts(corpus, assignments, frozenset(journals), pub_window, doc_types)
    total = sum(counts.values())
    if total == 0:
        raise EmptyScopeError(
            f"no classified articles in journals {journals} within {pub_window}"
        )
    return CompositionTable(journals, tuple(pub_window), counts, total)


@dataclass(frozen=True)
class RepresentationTable:
    """Per-area over/under-representation of a journal set against all sources."""

    journal_set: tuple[str, ...]
    pub_window: tuple[int, int]
    ratios: dict[str, float]
    share_set: dict[str, float]
    share_all: dict[str, float]
    omitted_areas: tuple[str, ...]


def representation(
    corpus: Corpus,
    assignments: Mapping[str, Assignment],
    journal_set: Iterable[str],
    pub_window: tuple[int, int],
    *,
    doc_types: frozenset[str] = ARTICLE_ONLY,
) -> RepresentationTable:
    """Ratio of each area's share in the set to its share over all sources.

    Ratios are defined for every area with a positive all-sources share
    (0.0 when the set has no such articles); areas with zero all-sources
    share are omitted and listed in ``omitted_areas``.
    """
    inside = composition(corpus, assignments, journal_set, pub_window, doc_types=doc_types)
    all_counts = _classified_area_counts(corpus, assignments, None, tuple(pub_window), doc_types)
    all_total = sum(all_counts.values())
    if all_total == 0:
        raise EmptyScopeError(f"no classified articles in the corpus within {pub_window}")
    share_all = {area: n / all_total for area, n in all_counts.items()}
    ratios = {area: inside.share(area) / share for area, share in share_all.items()}
    omitted = tuple(a for a in BROAD_AREAS if a not in share_all)
    return RepresentationTable(
        inside.journal_set, inside.pub_window, ratios, inside.shares, share_all, omitted
    )


@dataclass(frozen=True)
class RankingEntry:
    journal_id: str
    value: float | None
    field_restricted: bool
    rank: int | None


@dataclass(frozen=True)
class RankingTable:
    area: str
    entries: tuple[RankingEntry, ...]


def rank_journals(
    corpus: Corpus,
    assignments: Mapping[str, Assignment],
    taxonomy: Taxonomy,
    area: str,
    journals: Iterable[str],
    config: IndicatorConfig | None = None,
) -> RankingTable:
    """Rank journals within one broad area by mean impact value.

    Journals carrying any multidisciplinary category are scored by their
    area-restricted mean; disciplinary journals by their whole-journal mean.
    Sorted descending, ties broken by journal id; journals with an undefined
    mean are listed last, unranked.
    """
    if config is None:
        config = IndicatorConfig()
    scored: list[tuple[str, float, bool]] = []
    undefined: list[tuple[str, bool]] = []
    for j_id in sorted(set(journals)):
        journal = corpus.journal(j_id)
        multi = any(taxonomy.is_multidisciplinary(c) for c in journal.categories)
        try:
            mean = mean_impact_factor(
                corpus, assignments, j_id, area if multi else ALL_AREAS, config
            )
            scored.append((j_id, mean.value, multi))
        except UndefinedValueError:
            undefined.append((j_id, multi))
    scored.sort(key=lambda item: (-item[1], item[0]))
    entries = [
        RankingEntry(j_id, value, multi, rank)
        for rank, (j_id, value, multi) in enumerate(scored, start=1)
    ]
    entries += [RankingEntry(j_id, None, multi, None) for j_id, multi in sorted(undefined)]
    return RankingTable(area, tuple(entries))


@dataclass(frozen=True)
class SummaryRow:
    """Per-journal counts and means backing the headline summary table."""

    journal_id: str
    articles: int
    articles_classified: int
    citations: int
    mean_if: float | None


def summary_row(
    corpus: Corpus,
    assignments: Mapping[str, Assignment],
    journal: str,
    config: IndicatorConfig,
) -> SummaryRow:
    """Counts for one journal (or ALL_SOURCES): publication-window articles,
    how many are classified, citations received over the impact-year range,
    and the whole-journal mean impact value (None when undefined)."""
    denom_ids = _denominator_articles(
        corpus,
        assignments,
        journal,
        config.pub_window,
        ALL_AREAS,
        config.denominator_doc_types,
    )
    classified = sum(1 for a_id in denom_ids if _area_of(assignments, a_id) is not None)
    lo, hi = config.if_year_range
    citations = 0
    for a_id in denom_ids:
        for citer_id, citer_year in corpus.citation_index.get(a_id, ()):
            if lo <= citer_year <= hi and corpus.articles[citer_id].doc_type in config.citing_doc_types:
                citations += 1
    try:
        mean: float | None = mean_impact_factor(corpus, assignments, journal, ALL_AREAS, config).value
    except UndefinedValueError:
        mean = None
    return SummaryRow(journal, len(denom_ids), classified, citations, mean)
