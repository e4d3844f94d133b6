from importlib import resources
from pathlib import Path

import pytest

from timexnorm import load_default_catalog, parse_dct
from timexnorm.corpus import make_record, read_corpus
from timexnorm.engine import NoRuleFired, NormalisationResult
from timexnorm.model import TimexType, parse_value

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def catalog():
    return load_default_catalog()


@pytest.fixture(scope="session")
def reference_fixture_path():
    return Path(str(resources.files("timexnorm.data").joinpath("reference_fixture.tsv")))


@pytest.fixture(scope="session")
def reference_records(reference_fixture_path):
    records, errors = read_corpus(reference_fixture_path)
    assert not errors
    return records


@pytest.fixture
def monti_xml():
    return (FIXTURES / "monti.timeml.xml").read_text()


def fake_result(text, type_, value):
    t = TimexType(type_)
    return NormalisationResult(text, t, parse_value(value, t), ("test.fake",))


@pytest.fixture
def planted():
    """20 gold records and system outputs with 3 type and 5 value errors.

    Rows marked T/V below are the planted type/value errors:
      r3  T    wrong type, right value
      r7  T V  NoRuleFired
      r11 T    wrong type, right value
      r5  V    one-character difference (2011-04-1X style via 2011-04-19)
      r9  V    less specific (2011-04 for 2011-04-18)
      r13 V    PAST_REF for FUTURE_REF
      r16 V    1988 for 1988-Q2
    """
    gold_rows = [
        ("yesterday", "DATE", "2012-04-16"), ("next day", "DATE", "2011-09-27"),
        ("two years", "DURATION", "P2Y"), ("nearly a month", "DATE", "P1M"),
        ("today", "DATE", "2011-09-26"), ("april 18", "DATE", "2011-04-18"),
        ("an hour", "DURATION", "PT1H"), ("25", "DATE", "1999-04-25"),
        ("daily", "SET", "P1D"), ("mid april", "DATE", "2011-04-18"),
        ("1994", "DATE", "1994"), ("weekly", "SET", "P1W"),
        ("now", "DATE", "PRESENT_REF"), ("three years before", "DATE", "FUTURE_REF"),
        ("the 1980s", "DATE", "198X"), ("two days", "DURATION", "P2D"),
        ("last year", "DATE", "1988-Q2"), ("1862", "DATE", "1862"),
        ("tomorrow", "DATE", "2011-09-27"), ("10:30", "TIME", "2011-09-26T10:30"),
    ]
    gold = [make_record(t, ty, v, "20110926") for t, ty, v in gold_rows]
    system = [fake_result(t, ty, v) for t, ty, v in gold_rows]
    system[3] = fake_result("nearly a month", "DURATION", "P1M")
    system[7] = NoRuleFired("25")
    system[11] = fake_result("weekly", "DURATION", "P1W")
    system[5] = fake_result("april 18", "DATE", "2011-04-19")
    system[9] = fake_result("mid april", "DATE", "2011-04")
    system[13] = fake_result("three years before", "DATE", "PAST_REF")
    system[16] = fake_result("last year", "DATE", "1988")
    return gold, system


def dct(raw):
    return parse_dct(raw)


# -- acceptance reporting --------------------------------------------------------

ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[ACCEPTANCE_KEY]


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
