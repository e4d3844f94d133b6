import pytest

from conftest import dct
from timexnorm.engine import (Catalog, Enrich, NoRuleFired, Produce, Rewrite, Rule, RuleLayer,
                              format_rules, normalise_text, parse_action, parse_rules,
                              validate_catalog)
from timexnorm.errors import CatalogError
from timexnorm.model import CalendarDate, TimexType
from timexnorm.rules import build_catalog


def _rule(id_, layer, prio, pattern, action):
    return Rule(id_, RuleLayer(layer), prio, pattern, action)


def test_normalise_text():
    assert normalise_text("  Nearly   TWO\tweeks ago ") == "nearly two weeks ago"
    assert normalise_text("Saint Patrick’s day") == "saint patrick's day"


def test_monti_yesterday(catalog):
    r = catalog.normalise("yesterday", dct("20120417"))
    assert (r.timex_type, r.value_str) == (TimexType.DATE, "2012-04-16")


def test_rewrite_then_base(catalog):
    r = catalog.normalise("more than two years", dct("20110926"))
    assert (r.timex_type.value, r.value_str) == ("DURATION", "P2Y")
    assert r.rewritten_text == "two years"
    assert catalog[r.trace[0]].layer is RuleLayer.MANIPULATION
    assert catalog[r.trace[1]].layer is RuleLayer.BASE


def test_base_then_enrich(catalog):
    r = catalog.normalise("the summer of 1862", dct("20110926"))
    assert r.value_str == "1862-SU"
    assert [catalog[i].layer for i in r.trace] == [RuleLayer.BASE, RuleLayer.POST_MANIPULATION]
    assert r.trace[-1] == "post.season"


def test_no_rule_fired(catalog):
    r = catalog.normalise("flibbertigibbet", dct("20110926"))
    assert isinstance(r, NoRuleFired)
    assert not r.fired and r.value_str is None


def test_empty_text_is_a_miss(catalog):
    assert not catalog.normalise("   ", dct("20110926")).fired


def test_deictic_rules_need_a_dct(catalog):
    assert not catalog.normalise("yesterday", None).fired
    assert catalog.normalise("two years", None).value_str == "P2Y"


def test_explain_next_day_stable(catalog):
    a = catalog.explain("next day", dct("20110926"))
    b = catalog.explain("next day", dct("20110926"))
    assert a.stage("base").fired == b.stage("base").fired == ["base.next_day"]
    assert a.format() == b.format()


def test_explain_single_rewrite(catalog):
    e = catalog.explain("more than two years", dct("20110926"))
    assert len(e.stage("manipulation").fired) == 1
    assert e.stage("base").text == "two years"


def test_explain_extension_skips_base(catalog):
    e = catalog.explain("Thanksgiving day", dct("20120417"))
    assert e.stage("extension").fired == ["ext.thanksgiving"]
    assert e.stage("base").attempted == []
    assert e.stage("manipulation").attempted == []
    assert e.outcome.value_str == "2012-11-22"


def test_explain_reports_miss_inline(catalog):
    e = catalog.explain("xyzzy", dct("20110926"))
    assert not e.outcome.fired
    assert "NoRuleFired" in e.format()


def test_explain_records_captures(catalog):
    e = catalog.explain("nearly two weeks ago", dct("19891030"))
    assert e.stage("base").captures["n"] == "two"
    assert e.stage("base").captures["unit"] == "weeks"


# -- validation ----------------------------------------------------------------

def test_validate_duplicate_id():
    rules = [_rule("ext.thanksgiving", "extension", 1, "a", Produce(TimexType.DATE, "year")),
             _rule("ext.thanksgiving", "extension", 2, "b", Produce(TimexType.DATE, "year"))]
    kinds = [f.kind for f in validate_catalog(rules)]
    assert kinds == ["duplicate-id"]


def test_validate_layer_action_mismatch():
    rules = [_rule("b1", "base", 1, "x", Rewrite("y"))]
    assert [f.kind for f in validate_catalog(rules)] == ["layer-action-mismatch"]
    rules = [_rule("p1", "post", 1, "x", Produce(TimexType.DATE, "year"))]
    assert [f.kind for f in validate_catalog(rules)] == ["layer-action-mismatch"]


def test_validate_bad_pattern_and_priority():
    rules = [_rule("b1", "base", 1, "(unclosed", Produce(TimexType.DATE, "year")),
             _rule("b2", "base", 1, "%NOPE%", Produce(TimexType.DATE, "year"))]
    kinds = sorted(f.kind for f in validate_catalog(rules, macros={}))
    assert kinds == ["bad-pattern", "bad-pattern", "duplicate-priority"]


def test_validate_unknown_builder():
    rules = [_rule("b1", "base", 1, "x", Produce(TimexType.DATE, "nope"))]
    assert [f.kind for f in validate_catalog(rules, builders={})] == ["unknown-builder"]


def test_shipped_catalog_is_clean(catalog):
    assert validate_catalog(catalog.rules, catalog.builders, catalog.transformers,
                            catalog.macros) == []


def test_invalid_catalog_refused():
    with pytest.raises(CatalogError):
        build_catalog([_rule("b1", "base", 1, "x", Rewrite("y"))])


# -- semantics on a tiny hand-made catalog -------------------------------------

@pytest.fixture
def tiny():
    rules = [
        _rule("e1", "extension", 1, r"the big day", Produce(TimexType.DATE, "literal", ("2000-01-01",))),
        _rule("m1", "manipulation", 1, r"about (?P<rest>.+)", Rewrite("{rest}")),
        _rule("m2", "manipulation", 2, r"(?P<rest>.+) or so", Rewrite("{rest}")),
        _rule("b1", "base", 1, r"%YEAR%", Produce(TimexType.DATE, "year")),
        _rule("b2", "base", 2, r"\d{4}", Produce(TimexType.DATE, "literal", ("1111",))),
        _rule("b3", "base", 3, r"(?:.* )?%YEAR% or so", Produce(TimexType.DATE, "year")),
        _rule("p1", "post", 1, r"(?:.* )?%SEASON% .*", Enrich("season")),
    ]
    return build_catalog(rules)


def test_first_match_by_priority(tiny):
    assert tiny.normalise("1999").trace == ("b1",)
    assert tiny.without("b1").normalise("1999").trace == ("b2",)


def test_rewrite_happens_once(tiny):
    # m1 strips "about"; m2 would strip "or so" but no second pass runs
    r = tiny.normalise("about 1999 or so")
    assert r.rewritten_text == "1999 or so"
    assert r.trace == ("m1", "b3")


def test_extension_excludes_rewrite(tiny):
    assert tiny.normalise("the big day").trace == ("e1",)


def test_enrichment_keeps_type(tiny):
    r = tiny.normalise("summer 1999")
    assert r is not None and not r.fired  # b1 needs a bare year
    r = tiny.with_enabled("b1").normalise("1999")
    assert r.value == CalendarDate(1999)


def test_disabled_rules_skipped(tiny):
    off = tiny.with_enabled("b1", enabled=False)
    assert off.normalise("1999").trace == ("b2",)
    assert off.manifest().counts["base"] == 2


def test_rule_file_round_trip(catalog):
    text = format_rules(catalog.rules, catalog.version)
    rules, version = parse_rules(text)
    assert version == catalog.version
    assert rules == list(catalog.rules)


def test_parse_action():
    assert parse_action("produce DATE shift day -1") == Produce(TimexType.DATE, "shift", ("day", "-1"))
    assert parse_action("rewrite {n} {unit} ago") == Rewrite("{n} {unit} ago")
    assert parse_action("enrich season") == Enrich("season")
    with pytest.raises(ValueError):
        parse_action("explode now")


def test_parse_rules_rejects_short_lines():
    with pytest.raises(ValueError, match="line 1"):
        parse_rules("only\tthree\tfields\n")


def test_catalog_is_catalog(catalog):
    assert isinstance(catalog, Catalog)
