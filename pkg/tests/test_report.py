"""Table rendering rules, atomic emission, manifests."""

from __future__ import annotations

import pytest

from refclass.classifier import classify
from refclass.corpus import build_corpus
from refclass.indicators import IndicatorConfig, PrestigeValue
from refclass.report import (
    MANIFEST_FILE,
    TABLE_COLUMNS,
    TABLE_FILES,
    ReportTables,
    RunManifest,
    build_report_tables,
    emit_report,
    fmt_float,
    render_tables,
    write_text_atomic,
)

from conftest import article, journal

ASTRO = "Astronomy & Astrophysics"
ONCO = "Oncology"
MULTI = "Multidisciplinary Sciences"


def toy_tables(toy_taxonomy):
    """One general journal drawing from two fields, plus citing filler."""
    records = [
        journal("JG", MULTI),
        journal("JA", ASTRO),
        journal("JO", ONCO),
        article("A1", "JA", 2006),
        article("A2", "JA", 2007),
        article("O1", "JO", 2006),
        article("G1", "JG", 2006, refs=("A1",)),
        article("G2", "JG", 2006, refs=("A1",)),
        article("G3", "JG", 2007, refs=("O1",)),
        *[article(f"C{i}", "JO", 2008, refs=("G1", "A2")) for i in range(3)],
    ]
    corpus = build_corpus(records)
    assignments = classify(corpus, toy_taxonomy).assignments
    config = IndicatorConfig(kappa=1.0, if_year_range=(2008, 2008), pub_window=(2005, 2015))
    return build_report_tables(corpus, assignments, toy_taxonomy, ("JG",), config)


def manifest_for(tables) -> RunManifest:
    return RunManifest(
        command="indicators",
        version="0.1.0",
        config={"window": str(tables.config.window), "kappa": fmt_float(tables.config.kappa)},
        inputs={"corpus": "0" * 64},
        outputs=tuple(sorted(TABLE_FILES + (MANIFEST_FILE,))),
    )


def test_float_rendering_rules():
    assert fmt_float(35.3 / 2.2) == "16.045455"
    assert fmt_float(0.1) == "0.100000"
    assert fmt_float(2.0) == "2.000000"


def test_composition_rows_for_two_field_general_journal(toy_taxonomy):
    tables = toy_tables(toy_taxonomy)
    text = render_tables(tables)["composition.tsv"]
    lines = text.splitlines()
    assert lines[1] == "\t".join(TABLE_COLUMNS["composition.tsv"])
    data = lines[2:]
    # single journal in the set: COMBINED rows equal the per-journal rows
    combined = [ln for ln in data if ln.startswith("COMBINED\t")]
    assert len(combined) == 2
    shares = [float(ln.split("\t")[3]) for ln in combined]
    assert sum(shares) == pytest.approx(1.0, abs=1e-9)


def test_prestige_row_rendering(toy_taxonomy):
    tables = toy_tables(toy_taxonomy)
    crafted = ReportTables(
        config=tables.config,
        journals=tables.journals,
        summary=tables.summary,
        compositions=tables.compositions,
        representation=tables.representation,
        field_if=tables.field_if,
        prestige=(PrestigeValue("JG", "Astronomy", 35.3, 2.2, 35.3 / 2.2),),
        rankings=tables.rankings,
    )
    text = render_tables(crafted)["prestige.tsv"]
    row = [ln for ln in text.splitlines() if ln.startswith("JG\tAstronomy")][0]
    assert row.split("\t") == ["JG", "Astronomy", "35.300000", "2.200000", "16.045455"]


def test_header_records_config(toy_taxonomy):
    tables = toy_tables(toy_taxonomy)
    for name, text in render_tables(tables).items():
        head = text.splitlines()[0]
        assert head.startswith("# window=2 kappa=1.000000 if_years=2008:2008")
        assert "pub_years=2005:2015" in head


def test_every_field_if_cell_reproducible_from_library_ops(toy_taxonomy):
    from refclass.indicators import impact_factor, mean_impact_factor

    records = [
        journal("JG", MULTI),
        journal("JA", ASTRO),
        journal("JO", ONCO),
        article("A1", "JA", 2006),
        article("A2", "JA", 2007),
        article("O1", "JO", 2006),
        article("G1", "JG", 2006, refs=("A1",)),
        article("G2", "JG", 2006, refs=("A1",)),
        article("G3", "JG", 2007, refs=("O1",)),
        *[article(f"C{i}", "JO", 2008, refs=("G1", "A2")) for i in range(3)],
    ]
    corpus = build_corpus(records)
    assignments = classify(corpus, toy_taxonomy).assignments
    config = IndicatorConfig(kappa=1.0, if_year_range=(2008, 2008), pub_window=(2005, 2015))
    tables = build_report_tables(corpus, assignments, toy_taxonomy, ("JG",), config)
    rows = [
        ln.split("\t")
        for ln in render_tables(tables)["field_if.tsv"].splitlines()
        if not ln.startswith("#")
    ][1:]
    assert rows, "expected at least one field_if row"
    for cols in rows:
        journal_id, area, year_s, num_s, den_s, value_s, _skipped = cols
        if year_s == "mean":
            direct = mean_impact_factor(corpus, assignments, journal_id, area, config)
            assert fmt_float(direct.value) == value_s
        else:
            direct = impact_factor(corpus, assignments, journal_id, int(year_s), area, config)
            assert (str(direct.numerator), str(direct.denominator)) == (num_s, den_s)
            assert fmt_float(direct.value) == value_s


def test_emit_report_is_deterministic(tmp_path, toy_taxonomy):
    tables = toy_tables(toy_taxonomy)
    manifest = manifest_for(tables)
    dir_a = tmp_path / "a"
    dir_b = tmp_path / "b"
    paths_a = emit_report(tables, manifest, dir_a)
    paths_b = emit_report(tables, manifest, dir_b)
    assert [p.split("/")[-1] for p in paths_a] == [p.split("/")[-1] for p in paths_b]
    for name in TABLE_FILES + (MANIFEST_FILE,):
        assert (dir_a / name).read_bytes() == (dir_b / name).read_bytes()
    # re-running into the same directory is also byte-stable
    emit_report(tables, manifest, dir_a)
    for name in TABLE_FILES:
        assert (dir_a / name).read_bytes() == (dir_b / name).read_bytes()


def test_emit_report_failure_leaves_prior_state(tmp_path, toy_taxonomy):
    tables = toy_tables(toy_taxonomy)
    manifest = manifest_for(tables)
    out = tmp_path / "out"
    out.mkdir()
    # a directory squatting on the first staged rename target forces failure
    (out / "composition.tsv").mkdir()
    with pytest.raises(OSError):
        emit_report(tables, manifest, out)
    leftovers = [p.name for p in out.iterdir() if p.name != "composition.tsv"]
    assert leftovers == []


def test_write_text_atomic(tmp_path):
    target = tmp_path / "x.tsv"
    write_text_atomic(target, "a\tb\n")
    assert target.read_text() == "a\tb\n"
    assert list(tmp_path.iterdir()) == [target]


def test_manifest_lines_are_ordered():
    manifest = RunManifest(
        command="indicators",
        version="0.1.0",
        config={"window": "2", "kappa": "1.040000"},
        inputs={"corpus": "ab", "taxonomy": "cd"},
        outputs=("a.tsv", "b.tsv"),
    )
    lines = manifest.to_lines()
    assert lines[0] == "key\tvalue"
    assert lines[1] == "command\tindicators"
    assert "config.kappa\t1.040000" in lines
    assert lines[-1] == "outputs\ta.tsv,b.tsv"
    assert lines.index("config.kappa\t1.040000") < lines.index("config.window\t2")


def test_empty_tables_emit_header_only(tmp_path, toy_taxonomy):
    tables = toy_tables(toy_taxonomy)
    empty = ReportTables(
        config=tables.config,
        journals=tables.journals,
        summary=(),
        compositions=(),
        representation=None,
        field_if=(),
        prestige=(),
        rankings=(),
    )
    rendered = render_tables(empty)
    for name in TABLE_FILES:
        lines = rendered[name].splitlines()
        assert lines[0].startswith("#")
        data = [ln for ln in lines if not ln.startswith("#")]
        assert data == ["\t".join(TABLE_COLUMNS[name])]
