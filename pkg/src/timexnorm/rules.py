"""The shipped rule catalog: regex macros, value builders and enrichers.

Rule patterns themselves live in ``data/default_rules.tsv``; this module
supplies what the action specs in that file refer to by name.
"""

from __future__ import annotations

import datetime as _dt
import re
from importlib import resources
from pathlib import Path
from typing import Optional

from . import calendar as cal
from .engine import Catalog, parse_rules, read_rules
from .errors import MalformedValue, RangeExceeded
from .model import (CalendarDate, DecadeDate, Duration, QuarterDate, RecurrenceSet,
                    Season, SeasonDate, SpecialRef, TimeOfDay, WeekDate, parse_value)

DEFAULT_CATALOG_FILE = "default_rules.tsv"

_UNITS = ["one", "two", "three", "four", "five", "six", "seven", "eight", "nine"]
_TEENS = ["ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen",
          "seventeen", "eighteen", "nineteen"]
_TENS = ["twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"]

NUMBER_WORDS = {"a": 1, "an": 1}
NUMBER_WORDS.update({w: i + 1 for i, w in enumerate(_UNITS)})
NUMBER_WORDS.update({w: i + 10 for i, w in enumerate(_TEENS)})
NUMBER_WORDS.update({w: (i + 2) * 10 for i, w in enumerate(_TENS)})

_NUM_WORD_RE = (
    r"(?:(?:a|one) hundred|(?:%s)(?:[- ](?:%s))?|%s|%s|an?)" % (
        "|".join(_TENS), "|".join(_UNITS), "|".join(_TEENS), "|".join(_UNITS)))

MONTHS = {
    "january": 1, "february": 2, "march": 3, "april": 4, "may": 5, "june": 6,
    "july": 7, "august": 8, "september": 9, "october": 10, "november": 11,
    "december": 12, "jan": 1, "feb": 2, "mar": 3, "apr": 4, "jun": 6, "jul": 7,
    "aug": 8, "sep": 9, "sept": 9, "oct": 10, "nov": 11, "dec": 12,
}

WEEKDAYS = {
    "monday": cal.Weekday.MONDAY, "tuesday": cal.Weekday.TUESDAY,
    "wednesday": cal.Weekday.WEDNESDAY, "thursday": cal.Weekday.THURSDAY,
    "friday": cal.Weekday.FRIDAY, "saturday": cal.Weekday.SATURDAY,
    "sunday": cal.Weekday.SUNDAY, "mon": cal.Weekday.MONDAY,
    "tue": cal.Weekday.TUESDAY, "tues": cal.Weekday.TUESDAY,
    "wed": cal.Weekday.WEDNESDAY, "thu": cal.Weekday.THURSDAY,
    "thur": cal.Weekday.THURSDAY, "thurs": cal.Weekday.THURSDAY,
    "fri": cal.Weekday.FRIDAY, "sat": cal.Weekday.SATURDAY, "sun": cal.Weekday.SUNDAY,
}

SEASON_WORDS = {"spring": Season.SP, "summer": Season.SU, "autumn": Season.FA,
                "fall": Season.FA, "winter": Season.WI}

ORDINALS = {"first": 1, "1st": 1, "second": 2, "2nd": 2, "third": 3, "3rd": 3,
            "fourth": 4, "4th": 4}

DECADE_WORDS = {w: i + 2 for i, w in enumerate(
    ["twenties", "thirties", "forties", "fifties", "sixties", "seventies",
     "eighties", "nineties"])}


def _alt(words):
    return "|".join(sorted(words, key=len, reverse=True))


MACROS = {
    "NUM": rf"(?P<n>\d{{1,4}}|{_NUM_WORD_RE})",
    "UNIT": (r"(?P<unit>seconds?|secs?|minutes?|mins?|hours?|hrs?|days?|weeks?"
             r"|fortnights?|months?|quarters?|years?|yrs?|decades?|centur(?:y|ies))"),
    "MONTH": rf"(?P<month>{_alt(MONTHS)})",
    "DAY": r"(?P<day>\d{1,2})(?:st|nd|rd|th)?",
    "YEAR": r"(?P<year>\d{4})",
    "WEEKDAY": rf"(?P<weekday>{_alt(WEEKDAYS)})",
    "SEASON": rf"(?P<season>{_alt(SEASON_WORDS)})",
    "ORD": rf"(?P<ord>{_alt(ORDINALS)}|last|final)",
}


def parse_number(s: str) -> int:
    s = s.strip().lower()
    if s.isdigit():
        return int(s)
    if s.endswith("hundred"):
        return 100
    total = 0
    for part in re.split(r"[- ]", s):
        if part not in NUMBER_WORDS:
            raise ValueError(f"not a number word: {part!r}")
        total += NUMBER_WORDS[part]
    return total


_UNIT_ALIASES = {"sec": "second", "min": "minute", "hr": "hour", "yr": "year",
                 "centuries": "century"}


def canonical_unit(s: str) -> str:
    s = s.lower()
    if s in _UNIT_ALIASES:
        return _UNIT_ALIASES[s]
    if s.endswith("s") and s[:-1] in _UNIT_ALIASES:
        return _UNIT_ALIASES[s[:-1]]
    if s.endswith("s") and s != "s":
        s = s[:-1]
    return s


def month_number(s: str) -> int:
    s = s.lower().rstrip(".")
    if s.isdigit():
        return int(s)
    return MONTHS[s]


def _need(dct):
    if dct is None:
        return None
    return dct.date


def _full(d: _dt.date) -> CalendarDate:
    return CalendarDate(d.year, d.month, d.day)


def _dct_datetime(dct) -> _dt.datetime:
    return _dt.datetime(dct.year, dct.month, dct.day, dct.hour or 0, dct.minute or 0)


# -- builders: (groups, dct, *args) -> value or None ------------------------

def build_literal(groups, dct, raw):
    return parse_value(raw)


def build_set_literal(groups, dct, raw):
    return RecurrenceSet(parse_value(raw))


def build_ref(groups, dct, name):
    return SpecialRef(name)


def build_shift(groups, dct, unit, n):
    today = _need(dct)
    if today is None:
        return None
    return _full(cal.offset_date(today, int(n), unit))


def build_weekday(groups, dct, direction):
    today = _need(dct)
    if today is None:
        return None
    w = WEEKDAYS[groups["weekday"].rstrip(".")]
    if direction == "last":
        return _full(cal.previous_weekday(today, w))
    return _full(cal.next_weekday(today, w))


def _unit_value(today: _dt.date, unit: str, n: int, precise_weeks=False):
    if unit == "day":
        return _full(cal.offset_date(today, n, cal.Unit.DAY))
    if unit in ("week", "fortnight"):
        d = cal.offset_date(today, n * (2 if unit == "fortnight" else 1), cal.Unit.WEEK)
        if precise_weeks:
            return WeekDate(*cal.iso_week(d))
        return WeekDate(d.year)
    if unit == "month":
        d = cal.offset_date(today, n, cal.Unit.MONTH)
        return CalendarDate(d.year, d.month)
    if unit == "quarter":
        d = cal.offset_date(today, 3 * n, cal.Unit.MONTH)
        return QuarterDate(d.year, cal.quarter_of(d.month))
    years = {"year": 1, "decade": 10, "century": 100}.get(unit)
    if years is None:
        raise MalformedValue(f"no calendar value for unit {unit!r}")
    return CalendarDate(today.year + n * years)


def build_relative_unit(groups, dct, offset):
    """this/last/next <unit>, at the granularity of the unit."""
    today = _need(dct)
    if today is None:
        return None
    unit = canonical_unit(groups["unit"])
    n = int(offset)
    if unit == "week":
        return WeekDate(*cal.iso_week(cal.offset_date(today, n, cal.Unit.WEEK)))
    return _unit_value(today, unit, n)


def build_relative_count(groups, dct, sign, precise="no"):
    """<n> <unit> ago / from now."""
    if dct is None:
        return None
    n = parse_number(groups["n"]) * int(sign)
    unit = canonical_unit(groups["unit"])
    if unit in ("hour", "minute", "second"):
        step = {"hour": 3600, "minute": 60, "second": 1}[unit]
        try:
            moment = _dct_datetime(dct) + _dt.timedelta(seconds=n * step)
        except OverflowError:
            raise RangeExceeded("time offset out of range") from None
        return TimeOfDay(_full(moment.date()), moment.hour, moment.minute)
    return _unit_value(dct.date, unit, n, precise_weeks=precise == "precise")


_DURATION_FIELDS = {
    "second": ("seconds", 1), "minute": ("minutes", 1), "hour": ("hours", 1),
    "day": ("days", 1), "week": ("weeks", 1), "fortnight": ("weeks", 2),
    "month": ("months", 1), "quarter": ("months", 3), "year": ("years", 1),
    "decade": ("years", 10), "century": ("years", 100),
}


def _duration(groups) -> Duration:
    n = parse_number(groups["n"]) if groups.get("n") else 1
    name, factor = _DURATION_FIELDS[canonical_unit(groups["unit"])]
    return Duration(**{name: n * factor})


def build_duration(groups, dct):
    return _duration(groups)


def build_set_every(groups, dct):
    return RecurrenceSet(_duration(groups))


def build_full_date(groups, dct):
    return CalendarDate(int(groups["year"]), month_number(groups["month"]),
                        int(groups["day"]))


def build_month_year(groups, dct):
    return CalendarDate(int(groups["year"]), month_number(groups["month"]))


def build_year(groups, dct):
    return CalendarDate(int(groups["year"]))


def build_clock(groups, dct):
    if dct is None:
        return None
    hour = int(groups["hour"])
    minute = int(groups.get("minute") or 0)
    ampm = (groups.get("ampm") or "").replace(".", "")
    if ampm in ("am", "pm"):
        if not 1 <= hour <= 12:
            raise MalformedValue(f"bad 12-hour clock time {hour}")
        hour = hour % 12 + (12 if ampm == "pm" else 0)
    return TimeOfDay(_full(dct.date), hour, minute)


def build_clock_fixed(groups, dct, hour, minute):
    if dct is None:
        return None
    return TimeOfDay(_full(dct.date), int(hour), int(minute))


def build_festivity(groups, dct, name):
    if groups.get("year"):
        year = int(groups["year"])
    elif dct is not None:
        year = dct.year
    else:
        return None
    return _full(cal.festivity_date(name, year))


def build_decade(groups, dct):
    if groups.get("decade"):
        digits = groups["decade"].lstrip("'")
        if len(digits) == 2:
            return DecadeDate(190 + int(digits[0]))
        return DecadeDate(int(digits[:3]))
    return DecadeDate(190 + DECADE_WORDS[groups["word"]])


_SEASON_START = {Season.SP: 3, Season.SU: 6, Season.FA: 9, Season.WI: 12}


def build_season_relative(groups, dct):
    if dct is None:
        return None
    season = SEASON_WORDS[groups["season"]]
    direction = groups["dir"].split()[-1]
    year, month = dct.year, dct.month
    # winter starting in December belongs to that December's year
    if month <= 2:
        current = (year - 1, Season.WI)
    else:
        current = (year, cal.season_of(month))
    cy, cs = current
    start, cstart = _SEASON_START[season], _SEASON_START[cs]
    if direction == "this":
        target_year = cy if season is cs else year
    elif direction in ("last", "past"):
        target_year = cy if start < cstart else cy - 1
    else:
        target_year = cy if start > cstart else cy + 1
    return SeasonDate(target_year, season)


BUILDERS = {
    "literal": build_literal,
    "set_literal": build_set_literal,
    "ref": build_ref,
    "shift": build_shift,
    "weekday": build_weekday,
    "relative_unit": build_relative_unit,
    "relative_count": build_relative_count,
    "duration": build_duration,
    "set_every": build_set_every,
    "full_date": build_full_date,
    "month_year": build_month_year,
    "year": build_year,
    "clock": build_clock,
    "clock_fixed": build_clock_fixed,
    "festivity": build_festivity,
    "decade": build_decade,
    "season_relative": build_season_relative,
}


# -- enrichers: (value, groups, dct, *args) -> new value or None --------------

def _bare_year(value) -> Optional[int]:
    if isinstance(value, CalendarDate) and value.month is None:
        return value.year
    return None


def enrich_season(value, groups, dct):
    year = _bare_year(value)
    if year is None:
        return None
    return SeasonDate(year, SEASON_WORDS[groups["season"]])


def enrich_quarter(value, groups, dct):
    year = _bare_year(value)
    if year is None:
        return None
    ord_ = groups["ord"]
    q = 4 if ord_ in ("last", "final") else ORDINALS[ord_]
    return QuarterDate(year, f"Q{q}")


def enrich_week(value, groups, dct):
    year = _bare_year(value)
    if year is None:
        return None
    if groups.get("wn"):
        week = int(groups["wn"])
    elif groups["ord"] in ("last", "final"):
        week = cal.weeks_in_iso_year(year)
    else:
        week = ORDINALS[groups["ord"]]
    if week > cal.weeks_in_iso_year(year):
        return None
    return WeekDate(year, week)


def enrich_every_other(value, groups, dct):
    if not isinstance(value, RecurrenceSet):
        return None
    return RecurrenceSet(value.period.scaled(2))


TRANSFORMERS = {
    "season": enrich_season,
    "quarter": enrich_quarter,
    "week_of_year": enrich_week,
    "every_other": enrich_every_other,
}


def build_catalog(rules, version="unversioned") -> Catalog:
    return Catalog(rules, BUILDERS, TRANSFORMERS, MACROS, version)


def load_catalog(path) -> Catalog:
    """Load and compile a rule file against the shipped builders."""
    rules, version = read_rules(path)
    return build_catalog(rules, version)


def default_catalog_text() -> str:
    return resources.files("timexnorm.data").joinpath(DEFAULT_CATALOG_FILE).read_text("utf-8")


_DEFAULT = None


def load_default_catalog() -> Catalog:
    global _DEFAULT
    if _DEFAULT is None:
        rules, version = parse_rules(default_catalog_text())
        _DEFAULT = build_catalog(rules, version)
    return _DEFAULT


def base_only_catalog() -> Catalog:
    """The default catalog restricted to its base layer."""
    return load_default_catalog().only_layers("base")


def resolve_catalog(spec: Optional[str]) -> Catalog:
    """Map a CLI catalog argument to a catalog.

    ``None`` or ``"default"`` is the shipped catalog, ``"base-only"`` its base
    layer; anything else is read as a rule file path.
    """
    if spec in (None, "default"):
        return load_default_catalog()
    if spec == "base-only":
        return base_only_catalog()
    return load_catalog(Path(spec))
