"""Brute-force reference implementations, independent of datetime."""

ANCHOR_YEAR = 1800
ANCHOR_WEEKDAY = 2  # 1800-01-01 was a Wednesday (Monday = 0)


def is_leap(y):
    return y % 4 == 0 and (y % 100 != 0 or y % 400 == 0)


def month_length(y, m):
    if m == 2:
        return 29 if is_leap(y) else 28
    return 30 if m in (4, 6, 9, 11) else 31


def day_number(y, m, d):
    """Days elapsed since 1800-01-01, by summing year and month lengths."""
    n = 0
    for yy in range(ANCHOR_YEAR, y):
        n += 366 if is_leap(yy) else 365
    for mm in range(1, m):
        n += month_length(y, mm)
    return n + d - 1


def weekday(y, m, d):
    return (ANCHOR_WEEKDAY + day_number(y, m, d)) % 7


def from_day_number(n):
    y = ANCHOR_YEAR
    while n >= (366 if is_leap(y) else 365):
        n -= 366 if is_leap(y) else 365
        y += 1
    m = 1
    while n >= month_length(y, m):
        n -= month_length(y, m)
        m += 1
    return y, m, n + 1


def iso_week(y, m, d):
    """ISO week by definition: the week's Thursday decides the year."""
    n = day_number(y, m, d)
    thursday = n - weekday(y, m, d) + 3
    ty, _, _ = from_day_number(thursday)
    jan1 = day_number(ty, 1, 1)
    return ty, (thursday - jan1) // 7 + 1


def previous_weekday(y, m, d, w):
    n = day_number(y, m, d) - 1
    while (ANCHOR_WEEKDAY + n) % 7 != w:
        n -= 1
    return from_day_number(n)


def nth_weekday_of_month(y, m, w, nth):
    days = [d for d in range(1, month_length(y, m) + 1) if weekday(y, m, d) == w]
    return days[nth - 1]


def exact_wilcoxon_p(diffs):
    """Two-sided exact p by listing all 2^n sign vectors (average ranks for ties)."""
    import itertools
    d = [x for x in diffs if x != 0]
    n = len(d)
    if n == 0:
        return 1.0
    absd = sorted(abs(x) for x in d)
    def avg_rank(v):
        positions = [i + 1 for i, a in enumerate(absd) if a == v]
        return sum(positions) / len(positions)
    ranks = [avg_rank(abs(x)) for x in d]
    total = sum(ranks)
    w_plus = sum(r for r, x in zip(ranks, d) if x > 0)
    w_obs = min(w_plus, total - w_plus)
    hits = 0
    for signs in itertools.product((0, 1), repeat=n):
        wp = sum(r for r, s in zip(ranks, signs) if s)
        if min(wp, total - wp) <= w_obs + 1e-9:
            hits += 1
    return hits / 2 ** n
