"""Gregorian calendar arithmetic used by the deictic and festivity rules.

Civil dates are plain :class:`datetime.date` objects.
"""

from __future__ import annotations

import calendar as _stdcal
import datetime as _dt
from enum import Enum, IntEnum

from dateutil.easter import easter as _easter

from .errors import RangeExceeded, UnknownFestivity
from .model import Quarter, Season

CivilDate = _dt.date


class Weekday(IntEnum):
    MONDAY = 0
    TUESDAY = 1
    WEDNESDAY = 2
    THURSDAY = 3
    FRIDAY = 4
    SATURDAY = 5
    SUNDAY = 6


class Unit(str, Enum):
    DAY = "day"
    WEEK = "week"
    MONTH = "month"
    YEAR = "year"


class Festivity(str, Enum):
    THANKSGIVING_US = "thanksgiving"
    SAINT_PATRICKS = "saint_patricks"
    CHRISTMAS = "christmas"
    CHRISTMAS_EVE = "christmas_eve"
    NEW_YEARS_DAY = "new_years_day"
    NEW_YEARS_EVE = "new_years_eve"
    INDEPENDENCE_US = "independence_us"
    HALLOWEEN = "halloween"
    VALENTINES = "valentines"
    EASTER = "easter"
    LABOR_DAY_US = "labor_day_us"
    MEMORIAL_DAY_US = "memorial_day_us"


_FIXED_FESTIVITIES = {
    Festivity.SAINT_PATRICKS: (3, 17),
    Festivity.CHRISTMAS: (12, 25),
    Festivity.CHRISTMAS_EVE: (12, 24),
    Festivity.NEW_YEARS_DAY: (1, 1),
    Festivity.NEW_YEARS_EVE: (12, 31),
    Festivity.INDEPENDENCE_US: (7, 4),
    Festivity.HALLOWEEN: (10, 31),
    Festivity.VALENTINES: (2, 14),
}

# (month, weekday, n): n-th weekday of the month, n=-1 for the last one
_FLOATING_FESTIVITIES = {
    Festivity.THANKSGIVING_US: (11, Weekday.THURSDAY, 4),
    Festivity.LABOR_DAY_US: (9, Weekday.MONDAY, 1),
    Festivity.MEMORIAL_DAY_US: (5, Weekday.MONDAY, -1),
}

_SEASON_BY_MONTH = {
    12: Season.WI, 1: Season.WI, 2: Season.WI,
    3: Season.SP, 4: Season.SP, 5: Season.SP,
    6: Season.SU, 7: Season.SU, 8: Season.SU,
    9: Season.FA, 10: Season.FA, 11: Season.FA,
}


def _add_months(d: CivilDate, months: int) -> CivilDate:
    total = d.year * 12 + (d.month - 1) + months
    year, month0 = divmod(total, 12)
    if not 1 <= year <= 9999:
        raise RangeExceeded(f"year {year} out of range")
    last = _stdcal.monthrange(year, month0 + 1)[1]
    return CivilDate(year, month0 + 1, min(d.day, last))


def offset_date(d: CivilDate, n: int, unit) -> CivilDate:
    """Shift ``d`` by ``n`` units.

    Day and week offsets are exact. Month and year offsets clamp the day to
    the length of the target month (Jan 31 + 1 month -> Feb 28/29).
    """
    unit = Unit(unit)
    if unit in (Unit.DAY, Unit.WEEK):
        days = n * 7 if unit is Unit.WEEK else n
        try:
            return d + _dt.timedelta(days=days)
        except OverflowError:
            raise RangeExceeded(f"{d} {n:+d} {unit.value}s out of range") from None
    months = n * 12 if unit is Unit.YEAR else n
    return _add_months(d, months)


def day_of_week(d: CivilDate) -> Weekday:
    return Weekday(d.weekday())


def previous_weekday(d: CivilDate, w: Weekday) -> CivilDate:
    """Latest date strictly before ``d`` falling on ``w`` (1 to 7 days back)."""
    back = (d.weekday() - int(w)) % 7 or 7
    return offset_date(d, -back, Unit.DAY)


def next_weekday(d: CivilDate, w: Weekday) -> CivilDate:
    """Earliest date strictly after ``d`` falling on ``w``."""
    ahead = (int(w) - d.weekday()) % 7 or 7
    return offset_date(d, ahead, Unit.DAY)


def iso_week(d: CivilDate) -> tuple[int, int]:
    iso = d.isocalendar()
    return iso[0], iso[1]


def weeks_in_iso_year(year: int) -> int:
    # Dec 28 always falls in the last ISO week of its year
    return iso_week(CivilDate(year, 12, 28))[1]


def season_of(month: int) -> Season:
    try:
        return _SEASON_BY_MONTH[month]
    except KeyError:
        raise ValueError(f"invalid month {month}") from None


def quarter_of(month: int) -> Quarter:
    if not 1 <= month <= 12:
        raise ValueError(f"invalid month {month}")
    return Quarter(f"Q{(month + 2) // 3}")


def nth_weekday(year: int, month: int, w: Weekday, n: int) -> CivilDate:
    """The n-th ``w`` of the month; ``n=-1`` selects the last one."""
    days = [CivilDate(year, month, day)
            for day in range(1, _stdcal.monthrange(year, month)[1] + 1)
            if CivilDate(year, month, day).weekday() == w]
    return days[n - 1] if n > 0 else days[n]


def festivity_date(name, year: int) -> CivilDate:
    try:
        fest = Festivity(name)
    except ValueError:
        raise UnknownFestivity(f"unknown festivity {name!r}") from None
    if not 1 <= year <= 9999:
        raise RangeExceeded(f"year {year} out of range")
    if fest in _FIXED_FESTIVITIES:
        month, day = _FIXED_FESTIVITIES[fest]
        return CivilDate(year, month, day)
    if fest in _FLOATING_FESTIVITIES:
        month, w, n = _FLOATING_FESTIVITIES[fest]
        return nth_weekday(year, month, w, n)
    return _easter(year)
