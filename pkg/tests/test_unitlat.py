import random
from fractions import Fraction

import pytest

from otlck.errors import WrongRank
from otlck.exactnum.interval import CertifiedInterval, pi_interval
from otlck.exactnum.intpoly import IntPolynomial
from otlck.numfield import make_field
from otlck.unitlat import (UnitGroup, check_admissible, log_image,
                           solve_matrix_c)

F = Fraction


@pytest.fixture(scope="module")
def inoue():
    K = make_field(IntPolynomial([-1, -1, 0, 1]))
    return K, UnitGroup(K, [K.generator()])


def test_log_image_examples(inoue):
    K, U = inoue
    img = log_image(U, 64)
    row = img.rows[0]
    assert len(row) == 2
    total = row[0] + row[1]
    assert total.contains(0)
    assert F(28, 100) < row[0].lo < F(29, 100)
    # trivial unit: zero row
    U1 = UnitGroup(K, [K.one()])
    img1 = log_image(U1, 32)
    assert all(x.contains(0) for x in img1.rows[0])
    # homomorphism: row(alpha^2) = 2 row(alpha) within enclosures
    U2 = UnitGroup(K, [K.generator() ** 2])
    img2 = log_image(U2, 64)
    for x, y in zip(img2.rows[0], img.rows[0]):
        assert x.intersects(y * 2)


def test_homomorphism_on_random_words(inoue):
    K, _ = inoue
    a = K.generator()
    rng = random.Random(5)
    base = log_image(UnitGroup(K, [a]), 64).rows[0]
    for _ in range(8):
        e = rng.randint(-4, 4)
        if e == 0:
            continue
        w = a ** e
        roww = log_image(UnitGroup(K, [w]), 64).rows[0]
        for x, y in zip(roww, base):
            assert x.intersects(y * e)


def test_check_admissible_cases(inoue):
    K, U = inoue
    res = check_admissible(U, 64)
    assert res.verdict == "Admissible"
    assert not res.det_interval.contains(0)
    trivial = check_admissible(UnitGroup(K, [K.one()]), 32, cap=256)
    assert trivial.verdict == "NotAdmissible"
    assert trivial.dependence_witness is not None
    with pytest.raises(WrongRank):
        check_admissible(UnitGroup(K, [K.generator(), K.generator() ** 2]))


def test_dependent_pair_not_admissible():
    # x^4 - x^3 - 1 has signature (2, 1): s = 2.  Squares of units are always
    # totally positive, and <a^2, a^4> is multiplicatively dependent.
    K = make_field(IntPolynomial([-1, 0, 0, -1, 1]))
    assert K.signature == (2, 1)
    a = K.generator()
    res = check_admissible(UnitGroup(K, [a ** 2, a ** 4]), 48, cap=512)
    assert res.verdict == "NotAdmissible"
    assert res.dependence_witness == (2, -1)


def test_solve_matrix_c_inoue(inoue):
    K, U = inoue
    img = log_image(U, 80)
    c = solve_matrix_c(U, img, "principal", 80)
    re, im = c.entries[0][0]
    assert re.contains(F(-1, 2))
    assert re.width < F(1, 10 ** 15)
    assert c.lck_flag and c.column_sums_ok
    # column sums: single row equals the entry itself here
    # branch shift: offsets (1) move Im by exactly 2 pi / kappa
    c1 = solve_matrix_c(U, img, [[1]], 80)
    assert c1.entries[0][0][0].intersects(re)
    shift = pi_interval(96) * 2 / img.kappa[0][0]
    diff = c1.entries[0][0][1] - im
    assert diff.intersects(shift)


def test_column_sums_property_on_rank_one_groups():
    for coeffs in ([-1, -1, 0, 1], [-1, 0, -1, 1]):
        K = make_field(IntPolynomial(coeffs))
        U = UnitGroup(K, [K.generator()])
        img = log_image(U, 64)
        c = solve_matrix_c(U, img, "principal", 64)
        for j in range(c.s):
            col = CertifiedInterval.exact(0)
            for i in range(c.t):
                col = col + c.entries[i][j][0]
            assert col.contains(F(-1, 2))


def test_precision_escalation_shrinks_c():
    K = make_field(IntPolynomial([-1, -1, 0, 1]))
    U = UnitGroup(K, [K.generator()])
    w1 = solve_matrix_c(U, log_image(U, 48), "principal", 48).entries[0][0][0].width
    w2 = solve_matrix_c(U, log_image(U, 96), "principal", 96).entries[0][0][0].width
    assert w2 < w1
