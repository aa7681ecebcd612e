"""Exact counts of boards.

Everything is computed in Python integers or :class:`fractions.Fraction`;
floats never enter.  Decimal renderings are produced from the exact values
with round-half-up at the requested number of significant digits.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

USABLE = 98  # cells 2..99
MAX_STRICT_N = USABLE // 2
BARRIER = 6
REALISTIC_N = 20


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative number")
    return 1 if n < 2 else n * factorial(n - 1)


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def scientific(value: int | Fraction, digits: int = 11) -> str:
    """Render ``value`` as ``d.ddd...e+XX`` with ``digits`` significant digits."""
    v = Fraction(value)
    if v == 0:
        return "0." + "0" * (digits - 1) + "e+00"
    sign = "-" if v < 0 else ""
    v = abs(v)
    e = len(str(v.numerator)) - len(str(v.denominator))
    if v >= Fraction(10) ** (e + 1):
        e += 1
    if v < Fraction(10) ** e:
        e -= 1
    scaled = v / Fraction(10) ** (e - digits + 1)
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    if q >= 10 ** digits:
        q //= 10
        e += 1
    s = str(q)
    mant = s[0] + ("." + s[1:] if digits > 1 else "")
    return f"{sign}{mant}e{e:+03d}"


@dataclass(frozen=True)
class BigCount:
    value: int | Fraction

    @property
    def decimal_approx(self) -> str:
        return scientific(self.value, 11)

    def approx(self, digits: int = 11) -> str:
        return scientific(self.value, digits)

    def __float__(self) -> float:
        return float(self.value)

    def __int__(self) -> int:
        return int(self.value)

    def __eq__(self, other) -> bool:
        if isinstance(other, BigCount):
            return self.value == other.value
        return self.value == other

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        return str(self.value)


def _count(n: int) -> int:
    return binomial(USABLE, 2 * n) * binomial(2 * n, n) * factorial(n)


def count_boards(n: int) -> BigCount:
    """Boards with ``n`` components and no shared exits."""
    if not 0 <= n <= MAX_STRICT_N:
        raise ValueError(f"n must lie in 0..{MAX_STRICT_N}, got {n}")
    return BigCount(_count(n))


def total_boards(max_n: int = MAX_STRICT_N) -> BigCount:
    return BigCount(sum(_count(n) for n in range(max_n + 1)))


def barrier_placement_term(m: int) -> int:
    """Six chutes entering at ``m..m+5`` with distinct exits below ``m``."""
    return binomial(m - 2, BARRIER) * factorial(BARRIER)


def barrier_placements() -> BigCount:
    return BigCount(sum(barrier_placement_term(m) for m in range(8, 95)))


def chute_barrier_term(n: int) -> int:
    rest = n - BARRIER
    return (
        int(barrier_placements())
        * binomial(USABLE - 2 * BARRIER, 2 * rest)
        * binomial(2 * rest, rest)
        * factorial(rest)
    )


def chute_barrier_upper_bound(max_n: int = MAX_STRICT_N) -> BigCount:
    """Overcount of boards holding at least one chute-barrier."""
    return BigCount(sum(chute_barrier_term(n) for n in range(BARRIER, max_n + 1)))


def winnable_lower_bound(max_n: int = MAX_STRICT_N) -> tuple[BigCount, Fraction]:
    """Boards without a chute-barrier (all ultimately winnable), and their share."""
    t = int(total_boards(max_n))
    c = int(chute_barrier_upper_bound(max_n))
    return BigCount(t - c), Fraction(t - c, t)


def shared_exit_term(n: int, k: int) -> int:
    """Overcount of boards with ``n`` components and ``k`` distinct exits."""
    return (
        binomial(USABLE, n + k)
        * binomial(n + k, n)
        * (factorial(n) // factorial(n - k))
        * k ** (n - k)
    )


def shared_exit_bounds(max_n: int = MAX_STRICT_N) -> tuple[BigCount, BigCount]:
    """Crude (lower, upper) bounds on the number of boards allowing shared exits.

    The upper bound sums the overcounting terms; the lower bound divides each
    term by the largest possible overcount factor ``(n/k)**k``.  The empty
    board is left out.
    """
    upper = 0
    lower = Fraction(0)
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            t = shared_exit_term(n, k)
            upper += t
            lower += Fraction(t * k**k, n**k)
    return BigCount(lower), BigCount(upper)


def summary() -> list[dict]:
    """Every published quantity, one row per formula."""
    diff, frac = winnable_lower_bound()
    diff20, frac20 = winnable_lower_bound(REALISTIC_N)
    lo, hi = shared_exit_bounds()
    rows = [
        ("count_boards(1)", count_boards(1)),
        ("count_boards(2)", count_boards(2)),
        ("total_boards", total_boards()),
        ("total_boards(N<=20)", total_boards(REALISTIC_N)),
        ("barrier_placements", barrier_placements()),
        ("chute_barrier_upper_bound", chute_barrier_upper_bound()),
        ("chute_barrier_upper_bound(N<=20)", chute_barrier_upper_bound(REALISTIC_N)),
        ("winnable_lower_bound", diff),
        ("winnable_fraction", BigCount(frac)),
        ("winnable_lower_bound(N<=20)", diff20),
        ("winnable_fraction(N<=20)", BigCount(frac20)),
        ("shared_exit_lower", lo),
        ("shared_exit_upper", hi),
    ]
    out = []
    for name, bc in rows:
        v = bc.value
        exact = f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) and v.denominator != 1 else str(int(v))
        out.append({"quantity": name, "exact": exact, "approx": bc.decimal_approx})
    return out
