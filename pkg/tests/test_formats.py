import pytest

from sedf.algebra import ParseError
from sedf.constructions import cyclotomic_half_sedf, exponential_sedf, gsedf_z7
from sedf.diffcore import verify_sedf
from sedf.feasibility import SedfParams, classify
from sedf.formats import (
    CatalogRecord,
    append_records,
    current_records,
    format_family,
    make_record,
    parse_family,
    read_catalog,
    read_family,
    write_family,
)

Z33_TEXT = "group Z3xZ3\nset (0,1) (0,2) (1,0) (2,0)\nset (1,1) (1,2) (2,1) (2,2)\n"


def test_z3xz3_file_parses():
    fam = parse_family(Z33_TEXT)
    assert fam.group.spec == "Z3xZ3" and fam.m == 2
    assert verify_sedf(fam).lam == 2


def test_byte_identical_round_trip():
    assert format_family(parse_family(Z33_TEXT)) == Z33_TEXT


def test_cyclic_bare_integers():
    text = format_family(exponential_sedf(3))
    assert text == "group Z10\nset 0 1 2\nset 3 6 9\n"
    assert parse_family("group Z10\nset (0) 1 (2)\nset 9 6 3\n") == exponential_sedf(3)


def test_spaces_inside_tuples():
    fam = parse_family("group Z3xZ3\nset ( 0 , 1 ) (0,2)(1,0) (2, 0)\nset (1,1) (1,2) (2,1) (2,2)\n")
    assert format_family(fam) == Z33_TEXT


def test_comments_and_blank_lines():
    fam = parse_family("# header\n\ngroup Z7   # seven\nset 1\nset 2\nset 4\nset 0 3 5 6\n")
    assert fam == gsedf_z7()


@pytest.mark.parametrize(
    "text,where",
    [
        ("set 1\n", "line 1"),
        ("group Z5\nset 1 7\n", "line 2"),
        ("group Z3xZ3\nset (0,1,2)\n", "line 2"),
        ("group Z5\nfoo 1\n", "line 2"),
        ("group Z5\nset 1 x\n", "line 2"),
        ("group Z5\n", "no set"),
        ("group Z5\nset 1 2\nset 2 3\n", "disjoint|repeat|overlap"),
        ("group Q5\nset 1\n", "Q5"),
    ],
)
def test_parse_errors(text, where):
    with pytest.raises(ParseError, match=where):
        parse_family(text)


def test_file_io(tmp_path):
    fam = cyclotomic_half_sedf(13)
    path = tmp_path / "c13.txt"
    write_family(path, fam)
    assert read_family(path) == fam


def test_catalog_idempotent(tmp_path):
    cat = tmp_path / "catalog.tsv"
    p = SedfParams(9, 2, 4, 2)
    r1 = make_record("sedf", str(p), classify(p), timestamp="t1")
    r2 = make_record("sedf", str(p), classify(p), timestamp="t2")
    append_records(cat, [r1])
    append_records(cat, [r2])
    recs = read_catalog(cat)
    assert len(recs) == 2 and recs[0].same_content(recs[1]) and recs[0] != recs[1]
    assert r1.group == "Z3xZ3" and r1.witness == "cyclotomic_half(9)"


def test_catalog_last_record_wins(tmp_path):
    cat = tmp_path / "catalog.tsv"
    a = CatalogRecord("sedf", "(9,2,4,2)", "Z3xZ3", "open", "", "", "", "t1")
    b = CatalogRecord("sedf", "(9,2,4,2)", "Z3xZ3", "exists", "", "cyclotomic_half(9)", "", "t2")
    c = CatalogRecord("sedf", "(19,5,3,2)", "", "infeasible", "prime_order", "", "", "t3")
    append_records(cat, [a, c, b])
    cur = current_records(cat)
    assert len(cur) == 2 and cur[("sedf", "(9,2,4,2)", "Z3xZ3")].status == "exists"


def test_catalog_line_round_trip():
    r = CatalogRecord("gsedf", "(7,4;1,1,1,4;1,1,1,2)", "Z7", "exists", "", "gsedf_z7()", "", "t")
    assert CatalogRecord.from_line(r.to_line()) == r
    with pytest.raises(ParseError):
        CatalogRecord.from_line("a\tb\n")
    with pytest.raises(ValueError):
        CatalogRecord("sedf", "x\ty", "", "", "", "", "", "").to_line()


def test_missing_catalog_reads_empty(tmp_path):
    assert read_catalog(tmp_path / "nothing.tsv") == []
