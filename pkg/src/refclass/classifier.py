"""Iterative reference-based classification of articles.

Articles published in classifier journals (exactly one non-multidisciplinary
category) are seeded with that category and never change. Every other
article is repeatedly re-labeled by tallying the current labels of its
in-corpus references and taking the strict plurality, until the label table
reaches a fixed point or ``max_iterations`` passes have run. Updates are
synchronous: iteration k+1 reads only iteration k's table, so the result is
independent of traversal order and parallelism degree.

Tie handling: under the default ``unclassified-until-stable`` policy a tied
tally resolves to no label during iterations; once iteration stops, a single
terminal pass breaks remaining ties lexicographically (status ``tie-broken``,
computed from the final table). The terminal pass breaks ties only - it never
applies strict-plurality resolutions left pending by an iteration cutoff.
Under the ``lexicographic`` policy ties are broken immediately.

Bookkeeping: an assignment's ``iteration`` and ``tally`` snapshot belong to
the iteration that last changed its label (0 and an empty tally for seeds).
Articles left unclassified carry ``iteration = 0`` and the final-table tally
that failed to resolve.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping

from .corpus import ArticleRecord, Corpus
from .errors import ConfigError, ParseError, ValidationError
from .taxonomy import BROAD_AREA_SET, Taxonomy

STATUS_SEEDED = "journal-seeded"
STATUS_REFERENCE = "reference-classified"
STATUS_TIE_BROKEN = "tie-broken"
STATUS_UNCLASSIFIED = "unclassified"
STATUSES = (STATUS_SEEDED, STATUS_REFERENCE, STATUS_TIE_BROKEN, STATUS_UNCLASSIFIED)

TIE_UNTIL_STABLE = "unclassified-until-stable"
TIE_LEXICOGRAPHIC = "lexicographic"
TIE_POLICIES = (TIE_UNTIL_STABLE, TIE_LEXICOGRAPHIC)

MODE_CATEGORY = "category-level"
MODE_BROAD_AREA = "broad-area-level"
MODES = (MODE_CATEGORY, MODE_BROAD_AREA)


@dataclass(frozen=True)
class VoteTally:
    """Vote counts per label (category, or broad area in broad-area mode)."""

    counts: dict[str, int]
    total_votes: int

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> "VoteTally":
        counts = dict(counts)
        return cls(counts, sum(counts.values()))

    def leaders(self) -> tuple[str, ...]:
        """Labels holding the maximum count, sorted ascending; empty if no votes."""
        if not self.counts:
            return ()
        top = max(self.counts.values())
        return tuple(sorted(k for k, v in self.counts.items() if v == top))


EMPTY_TALLY = VoteTally({}, 0)


@dataclass(frozen=True)
class ClassifierConfig:
    max_iterations: int = 10
    min_votes: int = 1
    tie_policy: str = TIE_UNTIL_STABLE
    mode: str = MODE_CATEGORY

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ConfigError("max_iterations must be >= 1")
        if self.min_votes < 1:
            raise ConfigError("min_votes must be >= 1")
        if self.tie_policy not in TIE_POLICIES:
            raise ConfigError(f"unknown tie_policy: {self.tie_policy!r}")
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode: {self.mode!r}")


@dataclass(frozen=True)
class Assignment:
    """Classification outcome for one article, with vote provenance."""

    article_id: str
    category: str | None
    broad_area: str | None
    status: str
    iteration: int
    tally: VoteTally | None


@dataclass(frozen=True)
class IterationStats:
    iteration: int
    newly_classified: int
    changed: int


@dataclass(frozen=True)
class ClassificationResult:
    assignments: dict[str, Assignment]
    iterations_run: int
    iteration_stats: tuple[IterationStats, ...]


def seed_assignments(corpus: Corpus, taxonomy: Taxonomy) -> dict[str, Assignment]:
    """Iteration-0 table: classifier-journal articles seeded, everything else unclassified."""
    table: dict[str, Assignment] = {}
    classifier_journal = {
        j_id: taxonomy.is_classifier_journal(j) for j_id, j in corpus.journals.items()
    }
    for art_id, art in corpus.articles.items():
        if classifier_journal[art.journal_id]:
            cat = corpus.journals[art.journal_id].categories[0]
            table[art_id] = Assignment(
                art_id, cat, taxonomy.broad_area_of(cat), STATUS_SEEDED, 0, EMPTY_TALLY
            )
        else:
            table[art_id] = Assignment(art_id, None, None, STATUS_UNCLASSIFIED, 0, EMPTY_TALLY)
    return table


def tally_references(
    article: ArticleRecord,
    assignments: Mapping[str, Assignment],
    taxonomy: Taxonomy,
    mode: str = MODE_CATEGORY,
) -> VoteTally:
    """Count one vote per in-corpus reference that currently carries a label.

    Dangling and unclassified references contribute nothing; an empty tally
    is a valid result.
    """
    counts: dict[str, int] = {}
    for ref in article.references:
        a = assignments.get(ref)
        if a is None:
            continue
        key = a.category if mode == MODE_CATEGORY else a.broad_area
        if key is not None:
            counts[key] = counts.get(key, 0) + 1
    return VoteTally(counts, sum(counts.values()))


def resolve_tally(
    tally: VoteTally,
    config: ClassifierConfig,
    context: str | None = None,
    *,
    terminal: bool = False,
) -> str | None:
    """Resolve a tally to a label, or None.

    Requires ``total_votes >= min_votes`` and a strict plurality; a tie
    resolves lexicographically when the policy says so or in the terminal
    pass, and to None otherwise. ``context`` (an article id) only decorates
    diagnostics and never affects the result.
    """
    del context
    if tally.total_votes < config.min_votes:
        return None
    leaders = tally.leaders()
    if not leaders:
        return None
    if len(leaders) == 1:
        return leaders[0]
    if terminal or config.tie_policy == TIE_LEXICOGRAPHIC:
        return leaders[0]
    return None


def _label_of(assignment: Assignment, mode: str) -> str | None:
    return assignment.category if mode == MODE_CATEGORY else assignment.broad_area


def _chunk(seq: list, n: int) -> list[list]:
    if n <= 1 or len(seq) <= 1:
        return [seq]
    size = (len(seq) + n - 1) // n
    return [seq[i : i + size] for i in range(0, len(seq), size)]


def classify(
    corpus: Corpus,
    taxonomy: Taxonomy,
    config: ClassifierConfig | None = None,
    *,
    threads: int = 1,
) -> ClassificationResult:
    """Run the full iterative classification to its fixed point.

    ``threads`` partitions the per-article tally work of each iteration;
    because every article reads only the previous iteration's table, the
    result is byte-identical for any thread count.
    """
    if config is None:
        config = ClassifierConfig()
    if threads < 1:
        raise ConfigError("threads must be >= 1")
    seeds = seed_assignments(corpus, taxonomy)
    mode = config.mode

    # Hot state: label table keyed by article id holding the vote key
    # (category, or broad area in broad-area mode).
    label: dict[str, str | None] = {a_id: _label_of(a, mode) for a_id, a in seeds.items()}
    open_ids = sorted(a_id for a_id, a in seeds.items() if a.status != STATUS_SEEDED)
    open_refs = [(a_id, corpus.articles[a_id].references) for a_id in open_ids]

    # Per-article bookkeeping for non-seeded articles.
    set_iteration: dict[str, int] = {}
    via_tie: dict[str, bool] = {}
    snapshot: dict[str, VoteTally] = {}

    def sweep(chunk: list[tuple[str, tuple[str, ...]]], prev: dict[str, str | None]):
        get = prev.get
        out = []
        for a_id, refs in chunk:
            counts: dict[str, int] = {}
            for ref in refs:
                key = get(ref)
                if key is not None:
                    counts[key] = counts.get(key, 0) + 1
            tally = VoteTally(counts, sum(counts.values()))
            resolved = resolve_tally(tally, config)
            tied = resolved is not None and len(tally.leaders()) > 1
            out.append((a_id, resolved, tied, tally))
        return out

    stats: list[IterationStats] = []
    iterations_run = 0
    for iteration in range(1, config.max_iterations + 1):
        iterations_run = iteration
        if threads > 1 and len(open_refs) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = [
                    item
                    for part in pool.map(lambda c: sweep(c, label), _chunk(open_refs, threads))
                    for item in part
                ]
        else:
            results = sweep(open_refs, label)
        newly = changed = 0
        next_label = dict(label)
        for a_id, resolved, tied, tally in results:
            old = label[a_id]
            if resolved != old:
                next_label[a_id] = resolved
                if old is None and resolved is not None:
                    newly += 1
                else:
                    changed += 1
                if resolved is not None:
                    set_iteration[a_id] = iteration
                    via_tie[a_id] = tied
                    snapshot[a_id] = tally
        stats.append(IterationStats(iteration, newly, changed))
        label = next_label
        if newly == 0 and changed == 0:
            break

    # Terminal pass: recompute open tallies from the final table; break
    # remaining ties lexicographically, record final tallies for the rest.
    final_sweep = sweep(open_refs, label)
    for a_id, _resolved, _tied, tally in final_sweep:
        if label[a_id] is None:
            leaders = tally.leaders()
            if tally.total_votes >= config.min_votes and len(leaders) > 1:
                label[a_id] = leaders[0]
                set_iteration[a_id] = iterations_run
                via_tie[a_id] = True
                snapshot[a_id] = tally
            else:
                snapshot[a_id] = tally

    assignments: dict[str, Assignment] = {}
    for a_id in corpus.articles:
        seed = seeds[a_id]
        if seed.status == STATUS_SEEDED:
            assignments[a_id] = seed
            continue
        value = label[a_id]
        if value is None:
            assignments[a_id] = Assignment(
                a_id, None, None, STATUS_UNCLASSIFIED, 0, snapshot[a_id]
            )
        else:
            status = STATUS_TIE_BROKEN if via_tie[a_id] else STATUS_REFERENCE
            if mode == MODE_CATEGORY:
                cat: str | None = value
                area = taxonomy.broad_area_of(value)
            else:
                cat = None
                area = value
            assignments[a_id] = Assignment(
                a_id, cat, area, status, set_iteration[a_id], snapshot[a_id]
            )
    return ClassificationResult(assignments, iterations_run, tuple(stats))


@dataclass(frozen=True)
class AccuracyReport:
    """Coverage and accuracy of a classification against planted truth."""

    total: int
    classified: int
    coverage: float
    category_accuracy: float | None
    broad_area_accuracy: float | None
    confusion: dict[tuple[str, str], int]

    @property
    def broad_area_error(self) -> float | None:
        if self.broad_area_accuracy is None:
            return None
        return 1.0 - self.broad_area_accuracy


def evaluate_accuracy(result: ClassificationResult, truth, taxonomy: Taxonomy) -> AccuracyReport:
    """Score assignments against a :class:`~refclass.synthetic.GroundTruth`.

    Coverage is the classified fraction; accuracies are over classified
    articles only. Raises :class:`ValidationError` if the result covers an
    article the truth does not.
    """
    missing = [a_id for a_id in result.assignments if a_id not in truth.field_of]
    if missing:
        raise ValidationError(f"articles missing from ground truth: {missing[:5]}")
    total = len(result.assignments)
    classified = 0
    cat_seen = cat_right = 0
    area_seen = area_right = 0
    confusion: dict[tuple[str, str], int] = {}
    for a_id, a in result.assignments.items():
        if a.broad_area is None:
            continue
        classified += 1
        true_cat = truth.category_of(a_id)
        true_area = taxonomy.broad_area_of(true_cat)
        if a.category is not None:
            cat_seen += 1
            cat_right += a.category == true_cat
        area_seen += 1
        area_right += a.broad_area == true_area
        key = (true_area, a.broad_area)
        confusion[key] = confusion.get(key, 0) + 1
    return AccuracyReport(
        total=total,
        classified=classified,
        coverage=classified / total if total else 0.0,
        category_accuracy=cat_right / cat_seen if cat_seen else None,
        broad_area_accuracy=area_right / area_seen if area_seen else None,
        confusion=dict(sorted(confusion.items())),
    )


def emit_assignments(result: ClassificationResult) -> str:
    """Render the assignment table TSV, rows sorted by article id.

    Columns: article_id, category, broad_area, status, iteration,
    total_votes. Unclassified rows carry empty category and broad_area.
    """
    lines = []
    for a_id in sorted(result.assignments):
        a = result.assignments[a_id]
        votes = a.tally.total_votes if a.tally is not None else 0
        lines.append(
            f"{a_id}\t{a.category or ''}\t{a.broad_area or ''}\t{a.status}\t{a.iteration}\t{votes}"
        )
    return "\n".join(lines) + "\n"


def read_assignments(source: Iterable[str]) -> dict[str, Assignment]:
    """Parse an assignment TSV back into a table (tally details are not stored)."""
    table: dict[str, Assignment] = {}
    for line_no, raw in enumerate(source, start=1):
        if not raw.strip() or raw.startswith("#"):
            continue
        parts = raw.rstrip("\n").split("\t")
        if len(parts) != 6:
            raise ParseError(f"assignment row needs 6 columns, got {len(parts)}", line_no, raw)
        a_id, cat, area, status, iteration_s, votes_s = (p.strip() for p in parts)
        if not a_id:
            raise ParseError("empty article id", line_no, raw)
        if status not in STATUSES:
            raise ParseError("unknown status", line_no, status)
        if (area == "") != (status == STATUS_UNCLASSIFIED):
            raise ParseError("status/broad_area mismatch", line_no, raw)
        if cat and not area:
            raise ParseError("category without broad_area", line_no, raw)
        if area and area not in BROAD_AREA_SET:
            raise ParseError("unknown broad area", line_no, area)
        try:
            iteration = int(iteration_s)
            votes = int(votes_s)
        except ValueError:
            raise ParseError("non-integer iteration or votes", line_no, raw) from None
        if a_id in table:
            raise ValidationError("duplicate article id", line_no, a_id)
        table[a_id] = Assignment(
            a_id, cat or None, area or None, status, iteration, VoteTally({}, votes)
        )
    return table
