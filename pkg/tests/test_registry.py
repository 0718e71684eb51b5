import json

import pytest
from hypothesis import given, strategies as st

from z4scx.codegen import Family
from z4scx.registry import (
    CSV_COLUMNS,
    REPORT_COLUMNS,
    CodeRecord,
    Flags,
    SearchConfig,
    TableError,
    Verdict,
    classify,
    classify_params,
    export_report,
    load_best_known,
    load_reference_rows,
    make_record,
    parse_best_known,
    provenance,
    records_from_json,
    reproduce_reference_tables,
    search,
)
from z4scx.simplicial import parse_subset

HEADER = "n,k1,k2,dL,source\n"
EMPTY = parse_best_known(HEADER)


def table(*rows):
    return parse_best_known(HEADER + "".join(r + "\n" for r in rows))


# ----------------------------------------------------------------- ingestion


def test_lookup():
    t = table("16,2,1,8,db", "20,2,1,16,db")
    assert t.get(16, 2, 1).dL == 8
    assert t.get(20, 2, 1).dL == 16
    assert t.get(16, 1, 1) is None


@pytest.mark.parametrize(
    "body,line",
    [
        ("16,2,1,8,db\n16,2,1\n", 3),
        ("16,2,x,8,db\n", 2),
        ("16,2,1,0,db\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(body, line):
    with pytest.raises(TableError, match=f":{line}:"):
        parse_best_known(HEADER + body)


def test_duplicate_keys_rejected():
    with pytest.raises(TableError, match="duplicate"):
        table("16,2,1,8,db", "16,2,1,9,other")


def test_header_required():
    with pytest.raises(TableError, match=":1:"):
        parse_best_known("16,2,1,8,db\n")


def test_bundled_snapshot_loads():
    t = load_best_known()
    assert len(t) > 0
    assert t.get(16, 2, 1).dL == 8


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_best_known(tmp_path / "absent.csv")


# ------------------------------------------------------------------- verdicts


def test_classification_examples():
    t = table("28,2,1,22,db", "14,1,4,12,db")
    assert classify_params(28, 2, 1, 28, t) == Verdict("improved", 22)
    assert classify_params(54, 1, 4, 53, t) == Verdict("new")
    assert classify_params(14, 1, 4, 12, t) == Verdict("best-known", 12)
    assert classify_params(14, 1, 4, 10, t) == Verdict("dominated", 12)
    assert classify_params(130, 1, 4, 100, t) == Verdict("unknown")


def test_empty_table_only_new_or_unknown():
    for n in (4, 64, 128, 129, 400):
        assert classify_params(n, 1, 1, 2, EMPTY).kind in ("new", "unknown")


def test_verdict_strings():
    assert str(Verdict("improved", 8)) == "improved (d_L^best=8)"
    assert str(Verdict("new")) == "new"
    with pytest.raises(ValueError):
        Verdict("better")


@given(st.integers(1, 128), st.integers(0, 3), st.integers(0, 5), st.integers(1, 200), st.integers(1, 200))
def test_monotone_in_distance(n, k1, k2, best, d):
    t = table(f"{n},{k1},{k2},{best},db")
    v = classify_params(n, k1, k2, d, t)
    assert v.kind in Verdict.KINDS
    if v.kind == "improved":
        assert classify_params(n, k1, k2, d + 1, t).kind == "improved"
    ranks = {"dominated": 0, "best-known": 1, "improved": 2}
    assert ranks[v.kind] <= ranks[classify_params(n, k1, k2, d + 1, t).kind]


# -------------------------------------------------------------------- records


def rec(family, m, a, b, c, **kw):
    A, B, C = (parse_subset(t, m) for t in (a, b, c))
    return make_record(family, m, A, B, C, **kw)


def test_record_fields_and_verdict():
    r = rec("f1", 4, "{2,3}", "{3,4}", "{2,3}", table=load_best_known())
    assert (r.n, r.k1, r.k2, r.dL) == (16, 2, 1, 16)
    assert r.flags.plotkin_optimal and not r.flags.projective
    assert r.verdict == Verdict("improved", 8)
    assert r.provenance == "F1 (C=A)"


def test_closed_form_records_are_unverified():
    r = rec("f1", 4, "{1}", "{2}", "{3}", enumerate_code=False)
    e = rec("f1", 4, "{1}", "{2}", "{3}")
    assert not r.verified and e.verified
    assert (r.n, r.k1, r.k2, r.dL) == (e.n, e.k1, e.k2, e.dL)


def test_provenance_tags():
    S = lambda t: parse_subset(t, 4)  # noqa: E731
    assert provenance("f1", S("{1}"), S("{}"), S("{1,2}")) == "F1 (B⊊C, A⊆C)"
    assert provenance("f2", S("{3}"), S("{1}"), S("{1,2}")) == "F2 (B⊊C)"
    assert provenance("f3", S("{1}"), S("{2}"), S("{1}")) == "F3 (C=A)"
    assert provenance("f3", S("{1}"), S("{2}"), S("{3}")) == "F3"


def test_json_round_trip():
    recs = [rec("f2", 4, "{2,3}", "{4}", "{1}", table=load_best_known()), rec("f3", 3, "{1}", "{2}", "{3}")]
    again = records_from_json(export_report(recs, "json"))
    assert again == recs


@given(st.integers(1, 500), st.booleans(), st.sampled_from(["", "a note, with comma"]))
def test_record_dict_round_trip(n, flag, note):
    r = CodeRecord("f1", 3, "{1}", "{}", "{1,2}", n, 1, 2, n // 2 or None,
                   Flags(flag, not flag, None, flag), "F1", True, Verdict("new"), note)
    assert CodeRecord.from_dict(json.loads(json.dumps(r.to_dict()))) == r


# --------------------------------------------------------------------- search


def test_nested_search_finds_improved_rows():
    recs = search(SearchConfig(Family.F1, range(2, 5), constraint="nested-contains-a"), load_best_known())
    found = {(r.n, r.k1, r.k2, r.dL): r.verdict.kind for r in recs}
    assert found[(12, 0, 4, 12)] == "improved"
    assert found[(24, 2, 1, 24)] == "improved"


def test_projective_search_covers_reference_rows():
    recs = search(SearchConfig(Family.F2, range(2, 8), projective_only=True), load_best_known())
    assert all(r.flags.projective for r in recs)
    found = {(r.n, r.k1, r.k2, r.dL): r.verdict for r in recs}
    rows = [r for r in load_reference_rows() if r.table == "f2-projective"]
    assert len(rows) == 16
    verdicts = [found[(r.n, r.k1, r.k2, r.dL)].kind for r in rows]
    assert sum(v in ("new", "improved") for v in verdicts) == 10
    assert verdicts.count("best-known") == 6


def test_search_is_sorted_deduplicated_and_deterministic():
    cfg = SearchConfig(Family.F3, range(2, 4))
    first, second = search(cfg), search(cfg)
    assert export_report(first, "csv") == export_report(second, "csv")
    keys = [r.key() for r in first]
    assert len(keys) == len(set(keys))
    order = [(r.n, r.k1, r.k2, -(r.dL or 0)) for r in first]
    assert order == sorted(order)


def test_empty_range():
    assert search(SearchConfig(Family.F1, range(0))) == []


# -------------------------------------------------------------------- reports


def test_empty_export_is_header_only():
    assert export_report([], "markdown").splitlines()[0] == "| " + " | ".join(REPORT_COLUMNS) + " |"
    assert len(export_report([], "markdown").splitlines()) == 2
    assert export_report([], "csv") == ",".join(CSV_COLUMNS) + "\n"
    assert export_report([], "json").strip() == "[]"


def test_unknown_format():
    with pytest.raises(ValueError):
        export_report([], "xml")


def test_markdown_is_byte_stable():
    recs = search(SearchConfig(Family.F1, range(2, 4), constraint="c-equals-a"), load_best_known())
    assert export_report(recs, "markdown") == export_report(list(recs), "markdown")


def test_reference_reproduction():
    rep = reproduce_reference_tables()
    assert rep.ok, rep.mismatches
    assert {k: len(v) for k, v in rep.tables.items()} == {
        "f1-new": 10, "f3-new": 12, "f2-projective": 16, "consolidated": 32,
    }


def test_typo_row_is_evaluated_at_four():
    typo = [r for r in load_reference_rows() if r.listed_m != r.m]
    assert len(typo) == 1
    assert typo[0].listed_m == 3 and typo[0].m == 4
    assert "m=3" in typo[0].note


def test_classify_record_helper():
    r = rec("f1", 3, "{1,3}", "{}", "{1,2,3}")
    assert classify(r, EMPTY) == Verdict("new")
