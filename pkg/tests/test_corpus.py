"""Record parsing, corpus building, citation-index inversion, validation."""

from __future__ import annotations

import numpy as np
import pytest

from refclass.corpus import (
    ArticleRecord,
    JournalRecord,
    build_corpus,
    emit_corpus,
    emit_record,
    parse_record,
    read_corpus,
    read_records,
    validate_corpus,
)
from refclass.errors import ParseError, UnknownNameError, ValidationError

from conftest import article, journal, random_corpus


def test_parse_article_row():
    rec = parse_record("A\tP1\tJ1\t2010\tarticle\tP2,P3")
    assert rec == ArticleRecord("P1", "J1", 2010, "article", ("P2", "P3"))


def test_parse_journal_row():
    rec = parse_record("J\tJ1\tNature-like\tMultidisciplinary Sciences")
    assert rec == JournalRecord("J1", "Nature-like", ("Multidisciplinary Sciences",))
    multi = parse_record("J\tJ2\tBoth\tOncology;Cell Biology")
    assert multi.categories == ("Oncology", "Cell Biology")


def test_parse_non_integer_year():
    with pytest.raises(ParseError) as exc:
        parse_record("A\tP9\tJ1\t20X5\tarticle\t", line_no=7)
    assert "non-integer year" in str(exc.value)
    assert exc.value.line_no == 7


@pytest.mark.parametrize(
    "line,fragment",
    [
        ("A\tP1\tJ1\t2010\tarticle", "6 columns"),
        ("A\tP1\tJ1\t2010\tletter\t", "doc_type"),
        ("A\tP1\tJ1\t2010\tarticle\tP2,,P3", "empty reference"),
        ("Q\tP1\tJ1", "unknown record tag"),
        ("J\tJ1\tName", "4 columns"),
        ("J\tJ1\tName\t", "no categories"),
        ("J\tJ1\tName\tOncology;;Cell Biology", "empty category"),
    ],
)
def test_parse_errors(line, fragment):
    with pytest.raises(ParseError) as exc:
        parse_record(line, line_no=3)
    assert fragment in str(exc.value)
    assert exc.value.line_no == 3


def test_read_records_skips_comments_and_blanks():
    text = "# corpus\n\nJ\tJ1\tN\tOncology\nA\tP1\tJ1\t2010\tarticle\t\n"
    recs = list(read_records(text.splitlines(keepends=True)))
    assert len(recs) == 2


def test_single_edge_inversion():
    corpus = build_corpus(
        [
            journal("J1", "Oncology"),
            article("P1", "J1", 2010),
            article("P2", "J1", 2011, refs=("P1",)),
        ]
    )
    assert corpus.citation_index["P1"] == (("P2", 2011),)
    assert "P2" not in corpus.citation_index


def test_dangling_reference_allowed_and_counted():
    corpus = build_corpus(
        [journal("J1", "Oncology"), article("P1", "J1", 2010, refs=("X",))]
    )
    assert "X" not in corpus.citation_index
    assert corpus.dangling_reference_count == 1


def test_duplicate_references_collapse_once():
    corpus = build_corpus(
        [
            journal("J1", "Oncology"),
            article("P1", "J1", 2010),
            article("P2", "J1", 2011, refs=("P1", "P1", "P1")),
        ]
    )
    assert corpus.articles["P2"].references == ("P1",)
    assert corpus.citation_index["P1"] == (("P2", 2011),)


def test_build_errors():
    with pytest.raises(ValidationError, match="duplicate article"):
        build_corpus(
            [journal("J1", "Oncology"), article("P1", "J1", 2010), article("P1", "J1", 2011)]
        )
    with pytest.raises(ValidationError, match="duplicate journal"):
        build_corpus([journal("J1", "Oncology"), journal("J1", "Oncology")])
    with pytest.raises(ValidationError, match="unknown journals.*J9"):
        build_corpus([journal("J1", "Oncology"), article("P1", "J9", 2010)])
    with pytest.raises(ValidationError, match="cites itself"):
        build_corpus([journal("J1", "Oncology"), article("P1", "J1", 2010, refs=("P1",))])
    with pytest.raises(ValidationError, match="outside bounds"):
        build_corpus([journal("J1", "Oncology"), article("P1", "J1", 1666)])


def test_journal_order_independent():
    a = build_corpus([journal("J1", "Oncology"), article("P1", "J1", 2010)])
    b = build_corpus([article("P1", "J1", 2010), journal("J1", "Oncology")])
    assert emit_corpus(a) == emit_corpus(b)


def test_unknown_lookups():
    corpus = build_corpus([journal("J1", "Oncology"), article("P1", "J1", 2010)])
    with pytest.raises(UnknownNameError):
        corpus.article("P9")
    with pytest.raises(UnknownNameError):
        corpus.journal("J9")


def brute_force_index(articles: dict) -> dict:
    # independent double loop over all reference lists
    index: dict[str, list[tuple[str, int]]] = {}
    for cited_id in articles:
        for citer in articles.values():
            if cited_id in citer.references:
                index.setdefault(cited_id, []).append((citer.id, citer.year))
    return {k: tuple(sorted(v)) for k, v in index.items()}


def test_citation_index_matches_brute_force_on_random_corpus():
    rng = np.random.default_rng(1234)
    corpus, _ = random_corpus(rng, max_articles=1000)
    expected = brute_force_index(dict(corpus.articles))
    got = {k: tuple(sorted(v)) for k, v in corpus.citation_index.items()}
    assert got == expected


def test_citation_index_inversion_round_trip():
    # re-deriving reference lists from the index reproduces the in-corpus
    # reference multiset
    rng = np.random.default_rng(99)
    for _ in range(5):
        corpus, _ = random_corpus(rng, max_articles=200)
        rebuilt: dict[str, list[str]] = {a: [] for a in corpus.articles}
        for cited, entries in corpus.citation_index.items():
            for citer, _year in entries:
                rebuilt[citer].append(cited)
        for a_id, art in corpus.articles.items():
            in_corpus_refs = sorted(r for r in art.references if r in corpus.articles)
            assert sorted(rebuilt[a_id]) == in_corpus_refs


def test_parse_emit_parse_identity():
    rng = np.random.default_rng(7)
    doc_types = ("article", "review", "other")
    for i in range(300):
        if rng.random() < 0.5:
            rec = ArticleRecord(
                f"P{i}",
                f"J{int(rng.integers(5))}",
                int(rng.integers(1900, 2101)),
                doc_types[int(rng.integers(3))],
                tuple(f"R{int(rng.integers(50))}" for _ in range(int(rng.integers(0, 5)))),
            )
        else:
            rec = JournalRecord(
                f"J{i}",
                f"Journal {i}",
                tuple(f"C{j}" for j in range(int(rng.integers(1, 4)))),
            )
        assert parse_record(emit_record(rec)) == rec


def test_canonical_emission_sorted_and_stable():
    corpus = build_corpus(
        [
            article("P2", "J1", 2011, refs=("P1",)),
            journal("J2", "Oncology"),
            article("P1", "J2", 2010),
            journal("J1", "Cell Biology"),
        ]
    )
    text = emit_corpus(corpus)
    lines = text.splitlines()
    assert [ln.split("\t")[1] for ln in lines] == ["J1", "J2", "P1", "P2"]
    assert emit_corpus(read_corpus(text.splitlines(keepends=True))) == text


def test_validation_report_counts():
    corpus = build_corpus(
        [
            journal("J1", "Oncology"),
            journal("J2", "Multidisciplinary Sciences"),
            article("P1", "J1", 2010, refs=("P2", "X1")),
            article("P2", "J1", 2011, doc_type="review"),
            article("P3", "J2", 2011, refs=("P1",)),
        ]
    )
    report = validate_corpus(corpus)
    assert report.articles == 3
    assert report.journals == 2
    assert report.dangling_references == 1
    assert report.zero_reference_articles == 1
    assert report.doc_type_counts == {"article": 2, "review": 1}
    assert report.year_counts == {2010: 1, 2011: 2}
    assert report.journal_article_counts == {"J1": 2, "J2": 1}
    assert any(line.startswith("articles\t3") for line in report.as_lines())


def test_record_field_constraints():
    with pytest.raises(ValidationError):
        ArticleRecord("", "J1", 2010, "article")
    with pytest.raises(ValidationError):
        ArticleRecord("P,1", "J1", 2010, "article")
    with pytest.raises(ValidationError):
        JournalRecord("J1", "Name", ())
    with pytest.raises(ValidationError):
        JournalRecord("J1", "Name", ("Onco;logy",))
