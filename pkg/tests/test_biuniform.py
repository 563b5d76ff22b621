from fractions import Fraction

import pytest
import sympy

from helpers import F
from hypermatch.analysis import (
    BiUniformParams,
    biuniform_inequality_holds,
    biuniform_T,
    cleared_polynomial,
    k_plus_one_q,
    lemma_conditions,
    max_q,
)
from hypermatch.discounts import h_star
from hypermatch.errors import DegenerateEqualDiscounts, InvalidK, NoFeasibleQ, OutOfRangeN

K, L, P, Q, N = sympy.symbols("k l p q n")
LHS = (P * Q * (K - 1) * (L - 1) + N * (P - Q) ** 2) / (P * (K - 1) * L - K * N * (P - Q))
RHS = (P * (K - 1) * (Q * L - 1) + N * (P - Q) * (P * K - 1)) / (P * (K - 1))


def _sub(expr, prm: BiUniformParams):
    return expr.subs({K: prm.k, L: prm.l, P: sympy.Rational(prm.p.numerator, prm.p.denominator),
                      Q: sympy.Rational(prm.q.numerator, prm.q.denominator)})


def test_T_values():
    assert biuniform_T(BiUniformParams(2, 3, F(2, 3), F(3, 7))) == F(21, 5)
    assert biuniform_T(BiUniformParams(2, 3, h_star(2), F(2, 5))) == F(15, 4)
    with pytest.raises(DegenerateEqualDiscounts):
        biuniform_T(BiUniformParams(2, 3, F(1, 2), F(1, 2)))


def test_params_validation():
    with pytest.raises(InvalidK):
        BiUniformParams(3, 3, F(1, 3), F(1, 4))
    with pytest.raises(ValueError):
        BiUniformParams(2, 3, F(1, 3), F(1, 2))


def test_inequality_examples():
    prm = BiUniformParams(2, 3, F(2, 3), F(3, 7))
    assert all(biuniform_inequality_holds(prm, n) for n in range(5))
    assert not biuniform_inequality_holds(prm, F(2, 5))
    with pytest.raises(OutOfRangeN):
        biuniform_inequality_holds(prm, F(21, 5))
    with pytest.raises(OutOfRangeN):
        biuniform_inequality_holds(prm, -1)


def test_n_zero_against_symbolic_simplification():
    # with n = 0 every n-term drops; simplify symbolically and compare truth values
    reduced_lhs = sympy.simplify(LHS.subs(N, 0))
    reduced_rhs = sympy.simplify(RHS.subs(N, 0))
    assert sympy.simplify(reduced_lhs - Q * (L - 1) / L) == 0
    assert sympy.simplify(reduced_rhs - (Q * L - 1)) == 0
    cases = [(3, 4, F(3, 7), F(3, 10)), (2, 3, F(2, 3), F(3, 7)), (4, 5, F(4, 13), F(4, 17)),
             (2, 5, F(1, 2), F(1, 3)), (3, 6, F(3, 7), F(1, 4))]
    for k, l, p, q in cases:
        prm = BiUniformParams(k, l, p, q)
        expected = bool(_sub(reduced_lhs, prm) >= _sub(reduced_rhs, prm))
        assert biuniform_inequality_holds(prm, 0) == expected


def test_cleared_polynomial_against_sympy():
    for k, l, p, q in [(2, 3, F(2, 3), F(3, 7)), (3, 4, F(3, 7), F(3, 10)), (4, 6, F(1, 4), F(1, 9))]:
        prm = BiUniformParams(k, l, p, q)
        d = _sub(P * (K - 1) * L - K * N * (P - Q), prm)
        poly = sympy.Poly(sympy.expand(_sub(P * (K - 1), prm) * _sub(LHS, prm) * d
                                       - _sub(RHS * P * (K - 1), prm) * d), N)
        coeffs = [Fraction(str(c)) for c in reversed(poly.all_coeffs())]
        coeffs += [Fraction(0)] * (3 - len(coeffs))
        assert cleared_polynomial(prm) == tuple(coeffs)


def test_lemma_modes():
    prm = BiUniformParams(2, 3, F(2, 3), F(3, 7))
    assert lemma_conditions(prm).verdict
    grid = lemma_conditions(prm, "grid", F(1, 100))
    assert not grid.verdict
    assert any(F(0) < n < F(4, 5) for n in grid.failures)
    t9 = BiUniformParams(3, 4, F(3, 7), F(3, 10))
    assert lemma_conditions(t9, "grid", F(1, 1000)).verdict
    with pytest.raises(ValueError):
        lemma_conditions(prm, "bogus")


def test_integral_T_is_skipped():
    # p = 1/2, q = 1/4, k = 2, l = 4: T = (1/2)(1)(4) / ((1/4)(2)) = 4
    prm = BiUniformParams(2, 4, F(1, 2), F(1, 4))
    assert biuniform_T(prm) == 4
    rep = lemma_conditions(prm)
    assert rep.skipped_T
    assert [n for n, _ in rep.integer_checks] == [0, 1, 2, 3]


def test_max_q():
    a = max_q(3, 4, F(3, 7))
    assert a.monotone and abs(float(a.q) - 0.30508) <= 1e-4
    b = max_q(4, 5, F(4, 13))
    assert b.monotone and abs(float(b.q) - 0.23656) <= 1e-4
    with pytest.raises(ValueError):
        max_q(3, 4, F(1, 2))


def test_max_q_fallbacks(monkeypatch):
    import hypermatch.analysis.biuniform as bu

    monkeypatch.setattr(bu, "_verdict", lambda *a: False)
    with pytest.raises(NoFeasibleQ):
        max_q(2, 3, F(1, 2))
    # true on (0, 1/10] and on [1/5, 3/10]: not monotone, linear scan finds the top piece
    monkeypatch.setattr(bu, "_verdict", lambda k, l, p, q, *a: q <= F(1, 10) or F(1, 5) <= q <= F(3, 10))
    res = max_q(2, 3, F(1, 2), tol=F(1, 100))
    assert not res.monotone and res.q == F(3, 10)


def test_max_q_grid_admits_closed_form():
    res = max_q(4, 5, F(4, 13), mode="grid", tol=F(1, 10**4))
    assert res.q >= k_plus_one_q(4)


def test_k_plus_one_q():
    assert k_plus_one_q(2) == F(2, 5)
    assert k_plus_one_q(3) == F(3, 10)
    with pytest.raises(InvalidK):
        k_plus_one_q(1)
    gaps = []
    for k in range(2, 101):
        gap = h_star(k + 1) - k_plus_one_q(k)
        assert gap > 0
        gaps.append(gap * k**4)
    # k^4 * gap -> 1
    assert abs(gaps[-1] - 1) < F(1, 10)
    assert all(abs(a - 1) >= abs(b - 1) for a, b in zip(gaps[10:], gaps[11:]))
