import random
from fractions import Fraction

import pytest

from otlck.errors import ZeroPolynomial
from otlck.exactnum.croots import isolate_roots
from otlck.exactnum.intpoly import IntPolynomial
from otlck.exactnum.sturm import SturmChain, count_real_roots, isolate_real_roots


def P(*coeffs):
    return IntPolynomial(coeffs)


def test_sturm_count_oracle_plastic():
    # spec example x^3 - x - 1: sign-count at 1 and 2 gives exactly one root
    f = P(-1, -1, 0, 1)
    ch = SturmChain(f)
    assert ch.count_roots(Fraction(1), Fraction(2)) == 1
    assert count_real_roots(f) == 1


def test_isolate_trivial_cases():
    reals, pairs = isolate_roots(P(1, 0, 1))  # x^2 + 1
    assert not reals and len(pairs) == 1
    b = pairs[0].refine_bits(20).box()
    assert b.contains(Fraction(0), Fraction(1))

    reals, pairs = isolate_roots(P(-1, 0, 1))  # x^2 - 1
    assert [r.compare_rational(Fraction(0)) for r in reals] == [-1, 1]
    assert not pairs


def test_isolate_plastic():
    reals, pairs = isolate_roots(P(-1, -1, 0, 1))
    assert len(reals) == 1 and len(pairs) == 1
    r = reals[0].refine_bits(48)
    assert Fraction(13247, 10000) < r.lo and r.hi < Fraction(13248, 10000)
    # |complex pair|^2 = 1/real root (product of the three roots is +1)
    p = pairs[0].refine_bits(48)
    prod = p.abs_sq() * r.interval()
    assert prod.contains(1)


def test_root_counting_property():
    rng = random.Random(20240803)
    for _ in range(200):
        deg = rng.randint(1, 8)
        coeffs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.randint(1, 9)]
        f = IntPolynomial(coeffs)
        if f.degree < 1:
            continue
        sf_deg = f.squarefree_part().degree
        reals, pairs = isolate_roots(f)
        assert len(reals) + 2 * len(pairs) == sf_deg


def test_refinement_stays_inside_previous_enclosure():
    f = P(-1, -1, 0, 1)
    reals, pairs = isolate_roots(f)
    r = reals[0]
    prev = r.interval()
    for _ in range(6):
        r.refine_once()
        cur = r.interval()
        assert prev.contains_interval(cur)
        prev = cur
    p = pairs[0]
    prev_box = p.box()
    p.refine_bits(60)
    assert prev_box.contains_box(p.box())


def test_rational_roots_isolated_exactly():
    f = P(0, 1) * P(-2, 1) * P(5, 1)  # roots 0, 2, -5
    reals, pairs = isolate_roots(f)
    assert not pairs
    signs = [r.compare_rational(Fraction(0)) for r in reals]
    assert signs == [-1, 0, 1]
    assert reals[1].compare_rational(Fraction(0)) == 0


def test_complex_ordering_convention():
    # x^4 + 1: upper roots at (+-sqrt2/2 + i sqrt2/2); ordered by real part
    reals, pairs = isolate_roots(P(1, 0, 0, 0, 1))
    assert not reals and len(pairs) == 2
    b0 = pairs[0].refine_bits(30).box()
    b1 = pairs[1].refine_bits(30).box()
    assert b0.re.hi < b1.re.lo
    assert b0.im.lo > 0 and b1.im.lo > 0


def test_equal_real_parts_ordered_by_imaginary():
    # (x^2+1)(x^2+4): upper roots i and 2i share Re = 0
    f = P(1, 0, 1) * P(4, 0, 1)
    reals, pairs = isolate_roots(f)
    assert len(pairs) == 2
    b0 = pairs[0].refine_bits(30).box()
    b1 = pairs[1].refine_bits(30).box()
    assert b0.im.hi < b1.im.lo
    assert b0.contains(Fraction(0), Fraction(1))
    assert b1.contains(Fraction(0), Fraction(2))


def test_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomial):
        isolate_roots(IntPolynomial([]))
    with pytest.raises(ZeroPolynomial):
        isolate_real_roots(IntPolynomial([]))
