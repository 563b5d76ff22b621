"""Discount pairs for hypergraphs with exactly two edge sizes ``k < l``.

Edges of size ``k`` get discount ``p`` and edges of size ``l`` get ``q``.
With ``T = p (k-1) l / ((p - q) k)``, no reduced basic fractional matching
can be stuck provided ``p <= h*(k)`` and, for every integer ``n`` in
``0..floor(T)``::

    p q (k-1)(l-1) + n (p-q)^2          p (k-1)(q l - 1) + n (p-q)(p k - 1)
    ---------------------------   >=    -----------------------------------
       p (k-1) l - k n (p-q)                       p (k-1)

Here ``n`` stands for the number of ``k``-edges meeting some ``l``-edge.
The left denominator equals ``(p-q) k (T-n)``, so it vanishes exactly at
``n = T``; that point cannot arise and is skipped.

Grid mode sweeps real ``n`` in ``[0, T)`` with exact arithmetic and also
checks the sign of the cleared-denominator quadratic at grid midpoints. It
is a dense numeric check, not a proof.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from hypermatch.discounts import h_star
from hypermatch.errors import DegenerateEqualDiscounts, InvalidK, NoFeasibleQ, OutOfRangeN

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BiUniformParams:
    k: int
    l: int
    p: Fraction
    q: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", Fraction(self.q))
        if not 2 <= self.k < self.l:
            raise InvalidK(f"need 2 <= k < l, got k={self.k}, l={self.l}")
        if not 0 < self.q <= self.p <= 1:
            raise ValueError(f"need 0 < q <= p <= 1, got p={self.p}, q={self.q}")


def biuniform_T(params: BiUniformParams) -> Fraction:
    k, l, p, q = params.k, params.l, params.p, params.q
    if p == q:
        raise DegenerateEqualDiscounts("T is unbounded when p == q")
    return p * (k - 1) * l / ((p - q) * k)


def _sides(params: BiUniformParams, n: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    k, l, p, q = params.k, params.l, params.p, params.q
    num_l = p * q * (k - 1) * (l - 1) + n * (p - q) ** 2
    den_l = p * (k - 1) * l - k * n * (p - q)
    rhs = (p * (k - 1) * (q * l - 1) + n * (p - q) * (p * k - 1)) / (p * (k - 1))
    return num_l, den_l, rhs


def biuniform_inequality_holds(params: BiUniformParams, n: Fraction | int) -> bool:
    """Evaluate the inequality exactly at a (possibly non-integer) ``n``.

    Raises :class:`OutOfRangeN` when ``n < 0`` or the left denominator is
    not positive (``n >= T``).
    """
    n = Fraction(n)
    if n < 0:
        raise OutOfRangeN(f"n = {n} is negative")
    num_l, den_l, rhs = _sides(params, n)
    if den_l <= 0:
        raise OutOfRangeN(f"n = {n} is not below T")
    return num_l / den_l >= rhs


def cleared_polynomial(params: BiUniformParams) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients ``(c0, c1, c2)`` of ``P(n) = c0 + c1 n + c2 n^2``.

    ``P(n) = p(k-1) * num_left(n) - num_right(n) * den_left(n)``; on
    ``[0, T)`` the inequality holds exactly where ``P(n) >= 0``.
    """
    k, l, p, q = params.k, params.l, params.p, params.q
    a0, a1 = p * q * (k - 1) * (l - 1), (p - q) ** 2
    b0, b1 = p * (k - 1) * (q * l - 1), (p - q) * (p * k - 1)
    d0, d1 = p * (k - 1) * l, -k * (p - q)
    s = p * (k - 1)
    return (s * a0 - b0 * d0, s * a1 - (b0 * d1 + b1 * d0), -b1 * d1)


@dataclass
class LemmaReport:
    T: Fraction
    p_ok: bool
    integer_checks: list[tuple[Fraction, bool]] = field(default_factory=list)
    grid_checks: list[tuple[Fraction, bool]] = field(default_factory=list)
    midpoint_failures: list[Fraction] = field(default_factory=list)
    skipped_T: bool = False

    @property
    def verdict(self) -> bool:
        return (
            self.p_ok
            and all(ok for _, ok in self.integer_checks)
            and all(ok for _, ok in self.grid_checks)
            and not self.midpoint_failures
        )

    @property
    def failures(self) -> list[Fraction]:
        return [n for n, ok in self.integer_checks + self.grid_checks if not ok]


def lemma_conditions(
    params: BiUniformParams, mode: str = "integer", step: Fraction | None = None
) -> LemmaReport:
    """Check the sufficient condition for a ``(p, q)`` pair.

    ``mode="integer"`` tests every integer ``n <= floor(T)``;
    ``mode="grid"`` also sweeps ``n = 0, step, 2 step, ... < T`` (default
    step ``T/1000``) and the cleared quadratic at each grid midpoint.
    """
    if mode not in ("integer", "grid"):
        raise ValueError(f"unknown mode {mode!r}")
    T = biuniform_T(params)
    report = LemmaReport(T=T, p_ok=params.p <= h_star(params.k))
    for n in range(0, math.floor(T) + 1):
        if n == T:
            report.skipped_T = True
            continue
        report.integer_checks.append((Fraction(n), biuniform_inequality_holds(params, n)))
    if mode == "grid":
        step = Fraction(step) if step is not None else T / 1000
        if step <= 0:
            raise ValueError("grid step must be positive")
        c0, c1, c2 = cleared_polynomial(params)
        i = 0
        while True:
            n = i * step
            if n >= T:
                report.skipped_T = report.skipped_T or n == T
                break
            report.grid_checks.append((n, biuniform_inequality_holds(params, n)))
            mid = n + step / 2
            if mid < T and c0 + c1 * mid + c2 * mid * mid < 0:
                report.midpoint_failures.append(mid)
            i += 1
    return report


def _verdict(k: int, l: int, p: Fraction, q: Fraction, mode: str, step_fraction: Fraction) -> bool:
    params = BiUniformParams(k, l, p, q)
    step = biuniform_T(params) * step_fraction if mode == "grid" else None
    return lemma_conditions(params, mode, step).verdict


@dataclass(frozen=True)
class MaxQResult:
    q: Fraction
    monotone: bool
    evaluations: int


def max_q(
    k: int,
    l: int,
    p: Fraction,
    mode: str = "integer",
    tol: Fraction = Fraction(1, 10**6),
    step_fraction: Fraction = Fraction(1, 1000),
    probes: int = 64,
) -> MaxQResult:
    """Largest ``q`` in ``(0, p)`` (to within ``tol``) that passes the check.

    Bisection assumes the verdict is true below some threshold and false
    above it. The assumption is probed on an evenly spaced set of ``q``
    values; if a false value sits below a true one, the search falls back
    to a downward linear scan with resolution ``tol``.
    """
    p = Fraction(p)
    tol = Fraction(tol)
    if p > h_star(k):
        raise ValueError(f"p = {p} exceeds h*({k}) = {h_star(k)}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    evals = 0

    def ok(q: Fraction) -> bool:
        nonlocal evals
        evals += 1
        return _verdict(k, l, p, q, mode, step_fraction)

    if not ok(tol):
        raise NoFeasibleQ(f"q = {tol} already fails for k={k}, l={l}, p={p}")

    seen = [(p * i / (probes + 1), None) for i in range(1, probes + 1)]
    seen = [(q, ok(q)) for q, _ in seen if q > 0]
    highest_true = max((q for q, v in seen if v), default=Fraction(0))
    lowest_false = min((q for q, v in seen if not v), default=p)
    monotone = highest_true < lowest_false

    if monotone:
        lo = max(tol, highest_true)
        hi = lowest_false
        while hi - lo > tol:
            mid = (lo + hi) / 2
            # keep denominators small; any point inside the bracket will do
            mid = mid.limit_denominator(int(4 / tol) + 1)
            if not lo < mid < hi:
                mid = (lo + hi) / 2
            if ok(mid):
                lo = mid
            else:
                hi = mid
        return MaxQResult(lo, True, evals)

    log.warning("verdict is not monotone in q for k=%s l=%s p=%s; scanning linearly", k, l, p)
    q = p - tol
    while q > tol:
        if ok(q):
            return MaxQResult(q, False, evals)
        q -= tol
    return MaxQResult(tol, False, evals)


def k_plus_one_q(k: int) -> Fraction:
    """``1 / (k + 1/k) = k / (k^2 + 1)``, the size-``k+1`` discount paired
    with ``h*(k)`` for adjacent sizes."""
    if not isinstance(k, int) or k < 2:
        raise InvalidK(f"k={k!r} must be an integer >= 2")
    return Fraction(k, k * k + 1)
