"""Discount-factor schedules ``h: size -> (0, 1]`` and their checks.

Exact schedules return :class:`fractions.Fraction`. The infinite alternating
series is irrational, so it is available exactly only as a partial sum or
as a finite-rank member ``h_r`` of the same family; :func:`h_inf_float`
evaluates the derangement closed form in high precision for display.
"""

from __future__ import annotations

import json
import math
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from hypermatch.errors import (
    InvalidDiscount,
    InvalidK,
    ScheduleUndefinedForSize,
)
from hypermatch.hypergraph import Hypergraph
from hypermatch.rational import parse_rational


def _need_k(k: int, lowest: int) -> None:
    if not isinstance(k, int) or k < lowest:
        raise InvalidK(f"size k={k!r} must be an integer >= {lowest}")


def h_star(k: int) -> Fraction:
    """``1 / (k - 1 + 1/k) = k / (k^2 - k + 1)``."""
    _need_k(k, 1)
    return Fraction(k, k * k - k + 1)


def baseline(k: int) -> Fraction:
    _need_k(k, 1)
    return Fraction(1, k)


@lru_cache(maxsize=None)
def h_r(r: int, k: int) -> Fraction:
    """Finite-rank schedule; zero for sizes above ``r``.

    For ``2 <= k <= r``::

        (-1)^(r-k) (k-2)! / ((r-2)! (r + 1/r - 1))
            + sum_{i=1}^{r-k} (-1)^(i+1) (k-2)! / (k-2+i)!
    """
    _need_k(r, 2)
    _need_k(k, 2)
    if k > r:
        return Fraction(0)
    head = Fraction((-1) ** (r - k) * math.factorial(k - 2)) / (
        math.factorial(r - 2) * (r - 1 + Fraction(1, r))
    )
    return head + _series(k, r - k)


def _series(k: int, terms: int) -> Fraction:
    # (k-2)!/(k-2+i)! = 1 / ((k-1) k ... (k-2+i)), built as a running product
    total = Fraction(0)
    denom = 1
    for i in range(1, terms + 1):
        denom *= k - 2 + i
        total += Fraction((-1) ** (i + 1), denom)
    return total


def h_inf_truncated(k: int, terms: int) -> Fraction:
    """Exact partial sum of the first ``terms`` terms of the infinite series."""
    _need_k(k, 2)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    return _series(k, terms)


def derangements(n: int) -> int:
    d0, d1 = 1, 0
    if n == 0:
        return d0
    for i in range(2, n + 1):
        d0, d1 = d1, (i - 1) * (d0 + d1)
    return d1


def h_inf_float(k: int, digits: int = 30) -> mpmath.mpf:
    """``(-1)^k (D_{k-2} - (k-2)!/e)`` to at least ``digits`` significant digits.

    ``D_{k-2}`` and ``(k-2)!/e`` agree in their leading digits, so the
    working precision grows with the size of ``(k-2)!``.
    """
    _need_k(k, 2)
    fact = math.factorial(k - 2)
    extra = len(str(fact)) + 10
    with mpmath.workdps(digits + extra):
        val = (-1) ** k * (derangements(k - 2) - mpmath.mpf(fact) / mpmath.e)
        return +val


def h_tilde_inf(k: int) -> Fraction:
    """``1 / (k - k/(k^2+k-1)) = (k^2+k-1) / (k (k-1) (k+2))``."""
    _need_k(k, 2)
    return Fraction(k * k + k - 1, k * (k - 1) * (k + 2))


@dataclass(frozen=True)
class Schedule:
    """A named size-indexed discount function.

    Calling the schedule outside its domain raises :class:`InvalidK`.
    """

    name: str
    fn: Callable[[int], Fraction] = field(repr=False, compare=False)

    def __call__(self, k: int) -> Fraction:
        return self.fn(k)

    @classmethod
    def hstar(cls) -> Schedule:
        return cls("hstar", h_star)

    @classmethod
    def baseline(cls) -> Schedule:
        return cls("baseline", baseline)

    @classmethod
    def hr(cls, r: int) -> Schedule:
        _need_k(r, 2)
        return cls(f"hr:{r}", lambda k: h_r(r, k))

    @classmethod
    def hinf(cls, r: int) -> Schedule:
        """The infinite-rank schedule realized exactly as ``h_r``."""
        _need_k(r, 2)
        return cls(f"hinf@{r}", lambda k: h_r(r, k))

    @classmethod
    def hinf_truncated(cls, terms: int) -> Schedule:
        if terms < 1:
            raise ValueError("terms must be >= 1")
        return cls(f"hinf:{terms}", lambda k: h_inf_truncated(k, terms))

    @classmethod
    def htilde(cls) -> Schedule:
        return cls("htilde", h_tilde_inf)

    @classmethod
    def constant(cls, c: Fraction | int | str) -> Schedule:
        c = parse_rational(c) if isinstance(c, str) else Fraction(c)
        if not 0 <= c <= 1:
            raise InvalidDiscount(f"constant {c} outside [0, 1]")
        return cls(f"constant:{c}", lambda k: _const(k, c))

    @classmethod
    def table(cls, values: Mapping[int, Fraction], name: str = "table") -> Schedule:
        frozen = {int(k): Fraction(v) for k, v in values.items()}
        for k, v in frozen.items():
            if not 0 <= v <= 1:
                raise InvalidDiscount(f"table value h({k}) = {v} outside [0, 1]")

        def lookup(k: int) -> Fraction:
            if k not in frozen:
                raise InvalidK(f"table has no entry for size {k}")
            return frozen[k]

        return cls(name, lookup)


def _const(k: int, c: Fraction) -> Fraction:
    _need_k(k, 1)
    return c


def load_table(path: str) -> Schedule:
    """Read a ``{"<size>": "<rational>", ...}`` JSON file."""
    with open(path) as fh:
        raw = json.load(fh)
    return Schedule.table({int(k): parse_rational(v) for k, v in raw.items()}, name=f"table:{path}")


def parse_schedule(text: str, rank: int | None = None) -> Schedule:
    """Parse a schedule name as accepted on the command line.

    ``hstar | hr:<r> | hinf | hinf:<terms> | htilde | baseline |
    constant:<rational> | table:<file>``. Bare ``hinf`` is realized as
    ``h_r`` with ``r = rank + 8`` and so needs ``rank``.
    """
    head, _, arg = text.partition(":")
    if head == "hstar" and not arg:
        return Schedule.hstar()
    if head == "baseline" and not arg:
        return Schedule.baseline()
    if head == "htilde" and not arg:
        return Schedule.htilde()
    if head == "hr" and arg:
        return Schedule.hr(int(arg))
    if head == "hinf":
        if arg:
            return Schedule.hinf_truncated(int(arg))
        if rank is None:
            raise ValueError("bare 'hinf' needs the instance rank")
        return Schedule.hinf(max(rank, 2) + 8)
    if head == "constant" and arg:
        return Schedule.constant(arg)
    if head == "table" and arg:
        return load_table(arg)
    raise ValueError(f"unknown schedule {text!r}")


@dataclass(frozen=True)
class ConditionRow:
    """Exact check of the three sufficient conditions at one size ``k``.

    ``decreasing``: h(k+1) <= h(k). ``bounded``: 0 <= h(k) <= h*(k).
    ``step``: h(k+1) <= 1 - (k-1) h(k). Slacks are RHS minus LHS.
    """

    k: int
    decreasing: bool
    bounded: bool
    step: bool
    decreasing_slack: Fraction
    bounded_slack: Fraction
    step_slack: Fraction

    @property
    def ok(self) -> bool:
        return self.decreasing and self.bounded and self.step


def validate_schedule(h: Callable[[int], Fraction], k_max: int) -> list[ConditionRow]:
    """Check the goodness conditions for every ``k`` in ``2..k_max``."""
    rows = []
    for k in range(2, k_max + 1):
        hk, hk1 = Fraction(h(k)), Fraction(h(k + 1))
        cap = h_star(k)
        rows.append(
            ConditionRow(
                k=k,
                decreasing=hk1 <= hk,
                bounded=0 <= hk <= cap,
                step=hk1 <= 1 - (k - 1) * hk,
                decreasing_slack=hk - hk1,
                bounded_slack=min(cap - hk, hk),
                step_slack=1 - (k - 1) * hk - hk1,
            )
        )
    return rows


@dataclass(frozen=True)
class DiscountProfile(Sequence):
    """Per-edge discounts ``g(e)`` in (0, 1]."""

    g: tuple[Fraction, ...]
    schedule_name: str = "custom"

    def __post_init__(self) -> None:
        object.__setattr__(self, "g", tuple(Fraction(v) for v in self.g))
        for i, v in enumerate(self.g):
            if not 0 < v <= 1:
                raise InvalidDiscount(f"g({i}) = {v} outside (0, 1]")

    def __getitem__(self, i):  # type: ignore[override]
        return self.g[i]

    def __len__(self) -> int:
        return len(self.g)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.g)


def make_profile(hypergraph: Hypergraph, schedule: Schedule) -> DiscountProfile:
    """``g(e) = h(|e|)`` for every edge."""
    cache: dict[int, Fraction] = {}
    for e in hypergraph.edges:
        k = len(e)
        if k in cache:
            continue
        try:
            cache[k] = Fraction(schedule(k))
        except InvalidK as exc:
            raise ScheduleUndefinedForSize(
                f"schedule {schedule.name} undefined for size {k}"
            ) from exc
        if not 0 < cache[k] <= 1:
            raise InvalidDiscount(
                f"schedule {schedule.name} gives h({k}) = {cache[k]}, outside (0, 1]"
            )
    return DiscountProfile(tuple(cache[len(e)] for e in hypergraph.edges), schedule.name)
