"""TIMEX3 types, the value grammar and document creation times.

Every value form is an immutable dataclass with a ``render`` method that
produces the canonical TimeML string. ``parse_value`` is the inverse::

    >>> parse_value("P2Y")
    Duration(years=2, months=None, weeks=None, days=None, hours=None, minutes=None, seconds=None)
    >>> render_value(parse_value("1862-SU"))
    '1862-SU'
"""

from __future__ import annotations

import datetime as _dt
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering
from typing import Optional, Union

from .errors import MalformedDct, MalformedValue

__all__ = [
    "TimexType", "Season", "Quarter", "SpecialRef",
    "CalendarDate", "WeekDate", "SeasonDate", "QuarterDate", "DecadeDate",
    "TimeOfDay", "Duration", "RecurrenceSet", "TimexValue",
    "Dct", "parse_dct", "parse_value", "render_value",
]


class TimexType(str, Enum):
    DATE = "DATE"
    TIME = "TIME"
    DURATION = "DURATION"
    SET = "SET"

    def __str__(self):
        return self.value


class Season(str, Enum):
    SP = "SP"
    SU = "SU"
    FA = "FA"
    WI = "WI"

    def __str__(self):
        return self.value


class Quarter(str, Enum):
    Q1 = "Q1"
    Q2 = "Q2"
    Q3 = "Q3"
    Q4 = "Q4"

    def __str__(self):
        return self.value

    @property
    def number(self) -> int:
        return int(self.value[1])


class SpecialRef(str, Enum):
    PAST_REF = "PAST_REF"
    PRESENT_REF = "PRESENT_REF"
    FUTURE_REF = "FUTURE_REF"

    def __str__(self):
        return self.value

    def render(self) -> str:
        return self.value


def _check_year(year):
    if not 0 <= year <= 9999:
        raise MalformedValue(f"year out of range: {year}")


@dataclass(frozen=True)
class CalendarDate:
    """A year, optionally refined to a month and a day.

    Day numbers are checked against 1-31 only; "2011-04-31" is representable
    because fully-qualified surface forms are taken at face value.
    """

    year: int
    month: Optional[int] = None
    day: Optional[int] = None

    def __post_init__(self):
        _check_year(self.year)
        if self.month is not None and not 1 <= self.month <= 12:
            raise MalformedValue(f"month out of range: {self.month}")
        if self.day is not None:
            if self.month is None:
                raise MalformedValue("day without month")
            if not 1 <= self.day <= 31:
                raise MalformedValue(f"day out of range: {self.day}")

    def render(self) -> str:
        out = f"{self.year:04d}"
        if self.month is not None:
            out += f"-{self.month:02d}"
        if self.day is not None:
            out += f"-{self.day:02d}"
        return out

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class WeekDate:
    year: int
    week: Optional[int] = None  # None renders as WXX

    def __post_init__(self):
        _check_year(self.year)
        if self.week is not None and not 1 <= self.week <= 53:
            raise MalformedValue(f"week out of range: {self.week}")

    def render(self) -> str:
        week = "XX" if self.week is None else f"{self.week:02d}"
        return f"{self.year:04d}-W{week}"

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class SeasonDate:
    year: int
    season: Season

    def __post_init__(self):
        _check_year(self.year)
        object.__setattr__(self, "season", Season(self.season))

    def render(self) -> str:
        return f"{self.year:04d}-{self.season.value}"

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class QuarterDate:
    year: int
    quarter: Quarter

    def __post_init__(self):
        _check_year(self.year)
        object.__setattr__(self, "quarter", Quarter(self.quarter))

    def render(self) -> str:
        return f"{self.year:04d}-{self.quarter.value}"

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class DecadeDate:
    """A decade given by its first three year digits: 198 -> "198X"."""

    prefix: int

    def __post_init__(self):
        if not 0 <= self.prefix <= 999:
            raise MalformedValue(f"decade prefix out of range: {self.prefix}")

    def render(self) -> str:
        return f"{self.prefix:03d}X"

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class TimeOfDay:
    date: CalendarDate
    hour: int
    minute: int = 0

    def __post_init__(self):
        if self.date.day is None:
            raise MalformedValue("time of day needs a full date")
        if not 0 <= self.hour <= 23 or not 0 <= self.minute <= 59:
            raise MalformedValue(f"bad clock time {self.hour}:{self.minute}")

    def render(self) -> str:
        return f"{self.date.render()}T{self.hour:02d}:{self.minute:02d}"

    def __str__(self):
        return self.render()


_DATE_UNITS = (("years", "Y"), ("months", "M"), ("weeks", "W"), ("days", "D"))
_TIME_UNITS = (("hours", "H"), ("minutes", "M"), ("seconds", "S"))


@dataclass(frozen=True)
class Duration:
    years: Optional[int] = None
    months: Optional[int] = None
    weeks: Optional[int] = None
    days: Optional[int] = None
    hours: Optional[int] = None
    minutes: Optional[int] = None
    seconds: Optional[int] = None

    def __post_init__(self):
        mags = [getattr(self, name) for name, _ in _DATE_UNITS + _TIME_UNITS]
        present = [m for m in mags if m is not None]
        if not present:
            raise MalformedValue("duration without units")
        if any(m < 1 for m in present):
            raise MalformedValue("duration magnitudes must be >= 1")

    def render(self) -> str:
        out = "P"
        for name, code in _DATE_UNITS:
            mag = getattr(self, name)
            if mag is not None:
                out += f"{mag}{code}"
        time_part = ""
        for name, code in _TIME_UNITS:
            mag = getattr(self, name)
            if mag is not None:
                time_part += f"{mag}{code}"
        if time_part:
            out += "T" + time_part
        return out

    def scaled(self, factor: int) -> "Duration":
        kwargs = {}
        for name, _ in _DATE_UNITS + _TIME_UNITS:
            mag = getattr(self, name)
            kwargs[name] = None if mag is None else mag * factor
        return Duration(**kwargs)

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class RecurrenceSet:
    """A duration used as the period of a SET."""

    period: Duration

    def render(self) -> str:
        return self.period.render()

    def __str__(self):
        return self.render()


TimexValue = Union[CalendarDate, WeekDate, SeasonDate, QuarterDate, DecadeDate,
                   TimeOfDay, Duration, RecurrenceSet, SpecialRef]


_VALUE_PATTERNS = [
    (re.compile(r"(\d{4})(?:-(\d{2})(?:-(\d{2}))?)?"), "date"),
    (re.compile(r"(\d{4})-W(\d{2}|XX)"), "week"),
    (re.compile(r"(\d{4})-(SP|SU|FA|WI)"), "season"),
    (re.compile(r"(\d{4})-(Q[1-4])"), "quarter"),
    (re.compile(r"(\d{3})X"), "decade"),
    (re.compile(r"(\d{4})-(\d{2})-(\d{2})T(\d{2}):(\d{2})"), "time"),
    (re.compile(r"P(?:(\d+)Y)?(?:(\d+)M)?(?:(\d+)W)?(?:(\d+)D)?"
                r"(?:T(?=\d)(?:(\d+)H)?(?:(\d+)M)?(?:(\d+)S)?)?"), "duration"),
]


def _opt_int(s):
    return None if s is None else int(s)


def parse_value(raw: str, timex_type: Optional[TimexType] = None) -> TimexValue:
    """Parse a TimeML value string into its structured form.

    A duration-shaped value under ``timex_type=SET`` becomes a RecurrenceSet.
    Anything outside the supported grammar raises MalformedValue.
    """
    if not raw:
        raise MalformedValue("empty value")
    if raw in SpecialRef.__members__:
        return SpecialRef(raw)
    for pattern, kind in _VALUE_PATTERNS:
        m = pattern.fullmatch(raw)
        if m is None:
            continue
        g = m.groups()
        if kind == "date":
            return CalendarDate(int(g[0]), _opt_int(g[1]), _opt_int(g[2]))
        if kind == "week":
            return WeekDate(int(g[0]), None if g[1] == "XX" else int(g[1]))
        if kind == "season":
            return SeasonDate(int(g[0]), Season(g[1]))
        if kind == "quarter":
            return QuarterDate(int(g[0]), Quarter(g[1]))
        if kind == "decade":
            return DecadeDate(int(g[0]))
        if kind == "time":
            return TimeOfDay(CalendarDate(int(g[0]), int(g[1]), int(g[2])),
                             int(g[3]), int(g[4]))
        if raw == "P":
            break
        mags = [_opt_int(x) for x in g]
        if any(x is not None and str(x) != s for x, s in zip(mags, g)):
            # leading zeros are not canonical
            break
        dur = Duration(*mags)
        if timex_type == TimexType.SET:
            return RecurrenceSet(dur)
        return dur
    raise MalformedValue(f"unsupported value: {raw!r}")


def render_value(v: TimexValue) -> str:
    return v.render()


@total_ordering
@dataclass(frozen=True, eq=True)
class Dct:
    """Document creation time.

    Dcts order by date then time, a missing time sorting as 00:00:00 and
    just before an explicit midnight.
    """

    year: int
    month: int
    day: int
    hour: Optional[int] = None
    minute: Optional[int] = None
    second: Optional[int] = None
    raw: str = field(default="", compare=False)

    def __post_init__(self):
        try:
            _dt.date(self.year, self.month, self.day)
        except ValueError as exc:
            raise MalformedDct(f"invalid date in DCT {self.raw!r}: {exc}") from None
        clock = (self.hour, self.minute, self.second)
        if any(x is not None for x in clock):
            if any(x is None for x in clock):
                raise MalformedDct("partial time in DCT")
            if not (0 <= self.hour <= 23 and 0 <= self.minute <= 59
                    and 0 <= self.second <= 59):
                raise MalformedDct(f"invalid time in DCT {self.raw!r}")

    @property
    def has_time(self) -> bool:
        return self.hour is not None

    @property
    def date(self) -> _dt.date:
        return _dt.date(self.year, self.month, self.day)

    def _key(self):
        return (self.year, self.month, self.day, self.hour or 0,
                self.minute or 0, self.second or 0, self.has_time)

    def __lt__(self, other):
        if not isinstance(other, Dct):
            return NotImplemented
        return self._key() < other._key()

    def corpus_form(self) -> str:
        """Render in the corpus utterance format (YYYYMMDD[:HHMMSS])."""
        out = f"{self.year:04d}{self.month:02d}{self.day:02d}"
        if self.has_time:
            out += f":{self.hour:02d}{self.minute:02d}{self.second:02d}"
        return out

    def iso_form(self) -> str:
        out = self.date.isoformat()
        if self.has_time:
            out += f"T{self.hour:02d}:{self.minute:02d}:{self.second:02d}"
        return out


_DCT_RE = re.compile(r"(\d{4})(\d{2})(\d{2})(?::(\d{2})(\d{2})(\d{2}))?")


def parse_dct(raw: str) -> Dct:
    """Parse a corpus utterance time: ``YYYYMMDD`` or ``YYYYMMDD:HHMMSS``."""
    if not raw:
        raise MalformedDct("empty DCT")
    m = _DCT_RE.fullmatch(raw)
    if m is None:
        raise MalformedDct(f"unrecognised DCT {raw!r}")
    y, mo, d, h, mi, s = (_opt_int(x) for x in m.groups())
    return Dct(y, mo, d, h, mi, s, raw=raw)
