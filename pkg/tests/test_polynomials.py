import random
from fractions import Fraction

import pytest

from otlck.exactnum.intpoly import (IntPolynomial, discriminant, lagrange_int,
                                    qdivmod, qmonic, qpoly_kth_root,
                                    qresultant, resultant)
from otlck.linalg import charpoly, det, qmat


def P(*coeffs):
    return IntPolynomial(coeffs)


def test_basic_arithmetic():
    f = P(-1, -1, 0, 1)
    g = P(1, 1)
    assert (f + g).coeffs == (0, 0, 0, 1)
    assert (f * g).coeffs == (-1, -2, -1, 1, 1)
    assert f.derivative().coeffs == (-1, 0, 3)
    assert (f - f).is_zero
    assert f.eval_int(2) == 5
    assert f.eval_fraction(Fraction(1, 2)) == Fraction(-11, 8)


def test_primitive_and_content():
    f = P(-4, 0, 8)
    assert f.content() == 4
    assert f.primitive().coeffs == (-1, 0, 2)
    assert P(4, 0, -8).primitive().coeffs == (-1, 0, 2)


def test_gcd_and_squarefree():
    f = P(-1, 0, 1) * P(-1, 1)  # (x^2-1)(x-1) = (x-1)^2 (x+1)
    sf = f.squarefree_part()
    assert sf.coeffs == (-1, 0, 1)
    dec = f.squarefree_decomposition()
    assert sorted((g.coeffs, m) for g, m in dec) == [((-1, 1), 2), ((1, 1), 1)]


def test_squarefree_decomposition_multiplicities():
    f = P(-1, 1) ** 3 * P(1, 1) ** 2 * P(-2, 0, 1)
    dec = {m: g.coeffs for g, m in f.squarefree_decomposition()}
    assert dec[3] == (-1, 1)
    assert dec[2] == (1, 1)
    assert dec[1] == (-2, 0, 1)


def _sylvester_resultant(f, g):
    """Independent oracle: determinant of the Sylvester matrix."""
    m, n = f.degree, g.degree
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return det(qmat(rows))


def test_resultant_matches_sylvester_oracle():
    rng = random.Random(7)
    for _ in range(60):
        f = IntPolynomial([rng.randint(-5, 5) for _ in range(rng.randint(2, 5))])
        g = IntPolynomial([rng.randint(-5, 5) for _ in range(rng.randint(2, 5))])
        if f.degree < 1 or g.degree < 1:
            continue
        assert resultant(f, g) == _sylvester_resultant(f, g)


def test_resultant_common_root():
    f = P(-1, 1) * P(1, 1)
    g = P(-1, 1) * P(2, 1)
    assert resultant(f, g) == 0


def test_discriminant():
    # disc(x^2 + bx + c) = b^2 - 4c
    assert discriminant(P(3, 2, 1)) == Fraction(4 - 12)
    # disc(x^3 + px + q) = -4p^3 - 27q^2; for x^3 - x - 1: -4(-1)^3-27 = -23
    assert discriminant(P(-1, -1, 0, 1)) == -23


def test_lagrange_interpolation():
    f = P(2, -3, 0, 1)
    pts = [(x, f.eval_int(x)) for x in (-2, -1, 0, 1, 2)]
    assert lagrange_int(pts).coeffs == f.coeffs


def test_kth_root():
    f = [Fraction(c) for c in (1, 2, 1)]  # (x+1)^2
    assert qpoly_kth_root(f, 2) == [Fraction(1), Fraction(1)]
    g = qmonic((P(-1, 1) ** 6).to_q())
    assert qpoly_kth_root(g, 6) == [Fraction(-1), Fraction(1)]
    with pytest.raises(ValueError):
        qpoly_kth_root([Fraction(2), Fraction(0), Fraction(1)], 2)


def test_charpoly_faddeev():
    m = qmat([[2, 1], [1, 1]])
    assert charpoly(m) == [Fraction(1), Fraction(-3), Fraction(1)]
    m3 = qmat([[0, 0, 1], [1, 0, 1], [0, 1, 0]])
    # multiplication-by-alpha matrix for x^3 - x - 1
    assert charpoly(m3) == [Fraction(-1), Fraction(-1), Fraction(0), Fraction(1)]


def test_eval_gaussian():
    f = P(1, 0, 1)  # x^2 + 1 at i is 0
    assert f.eval_gaussian(Fraction(0), Fraction(1)) == (Fraction(0), Fraction(0))
    re, im = f.eval_gaussian(Fraction(1), Fraction(1))
    assert (re, im) == (Fraction(1), Fraction(2))
