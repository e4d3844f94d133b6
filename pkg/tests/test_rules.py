import pytest

from conftest import dct
from timexnorm.engine import RuleLayer
from timexnorm.rules import (base_only_catalog, load_catalog, parse_number, resolve_catalog,
                             default_catalog_text)

DCT = dct("20120417")


def test_manifest_minimum_sizes(catalog):
    counts = catalog.manifest().counts
    assert counts["extension"] >= 16
    assert counts["manipulation"] >= 12
    assert counts["post"] >= 4
    assert catalog.manifest().version == "1.0"


def _enabled(catalog):
    return [r for r in catalog.rules if r.enabled and r.example]


@pytest.mark.parametrize("rule_id", [r.id for r in _enabled(__import__("timexnorm").load_default_catalog())])
def test_rule_example_fires_its_rule(catalog, rule_id):
    rule = catalog[rule_id]
    result = catalog.normalise(rule.example, DCT)
    assert result.fired, rule.example
    assert rule_id in result.trace


def test_every_rule_has_an_example(catalog):
    assert all(r.example for r in catalog.rules)


def test_weeks_ago_precise_opt_in(catalog):
    assert catalog.normalise("two weeks ago", dct("19891030")).value_str == "1989-WXX"
    precise = catalog.with_enabled("base.weeks_ago_precise")
    r = precise.normalise("two weeks ago", dct("19891030"))
    assert r.value_str == "1989-W42"
    assert r.trace[-1] == "base.weeks_ago_precise"


@pytest.mark.parametrize("text,dct_raw,value", [
    ("Saint Patrick's day", "20120417", "2012-03-17"),
    ("St. Patrick's Day 2010", "20120417", "2010-03-17"),
    ("Thanksgiving", "20120417", "2012-11-22"),
    ("Easter Sunday", "20120101", "2012-04-08"),
    ("today", "20110926", "2011-09-26"),
    ("tomorrow", "20111231", "2012-01-01"),
    ("last Sunday", "20120417", "2012-04-15"),
    ("next Monday", "20120417", "2012-04-23"),
    ("this year", "20120417", "2012"),
    ("next month", "20121215", "2013-01"),
    ("last week", "20120417", "2012-W15"),
    ("the second quarter of 1988", "20120417", "1988-Q2"),
    ("the 1980s", "20120417", "198X"),
    ("the eighties", "20120417", "198X"),
    ("half an hour", "20120417", "PT30M"),
    ("a couple of weeks", "20120417", "P2W"),
    ("every two weeks", "20120417", "P2W"),
    ("the day before yesterday", "20120417", "2012-04-15"),
    ("March 15 2001", "20120417", "2001-03-15"),
    ("9 a.m.", "20120417", "2012-04-17T09:00"),
    ("now", "20120417", "PRESENT_REF"),
])
def test_rule_outputs(catalog, text, dct_raw, value):
    assert catalog.normalise(text, dct(dct_raw)).value_str == value


def test_fully_qualified_dates_taken_at_face_value(catalog):
    # digits are reported as written, without calendar validation
    assert catalog.normalise("31/04/2011", DCT).value_str == "2011-04-31"


def test_parse_number():
    assert parse_number("forty") == 40
    assert parse_number("twenty-five") == 25
    assert parse_number("12") == 12
    assert parse_number("a") == 1
    with pytest.raises(ValueError):
        parse_number("many")


def test_base_only_has_no_extension_or_manipulation():
    base = base_only_catalog()
    assert base.layer(RuleLayer.EXTENSION) == []
    assert base.layer(RuleLayer.MANIPULATION) == []
    assert not base.normalise("Thanksgiving day", DCT).fired


def test_load_catalog_from_path(tmp_path, catalog):
    path = tmp_path / "rules.tsv"
    path.write_text(default_catalog_text(), encoding="utf-8")
    loaded = load_catalog(path)
    assert loaded.manifest() == catalog.manifest()
    assert resolve_catalog(str(path)).manifest() == catalog.manifest()
    assert resolve_catalog("default") is resolve_catalog(None)


@pytest.mark.parametrize("row", range(40))
def test_reference_fixture_rows_produce_grammar_values(catalog, reference_records, row):
    r = reference_records[row]
    out = catalog.normalise(r.text, r.utterance)
    if out.fired:
        from timexnorm.model import parse_value
        assert parse_value(out.value_str, out.timex_type) == out.value
