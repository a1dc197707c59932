import random
from fractions import Fraction

from otlck import linalg
from otlck.exactnum.interval import CertifiedInterval
from otlck.linalg import (charpoly, det, identity, imat_det, imat_from_q,
                          imat_solve, int_det, inverse, kernel,
                          minimal_poly_of_matrix, qmat, rank, solve,
                          solve_general)

F = Fraction


def test_det_inverse_solve():
    m = qmat([[2, 1], [1, 1]])
    assert det(m) == 1
    mi = inverse(m)
    assert linalg.mat_mul(m, mi) == identity(2)
    x = solve(m, [F(3), F(2)])
    assert linalg.mat_vec(m, x) == [F(3), F(2)]


def test_kernel_and_rank():
    m = qmat([[1, 2, 3], [2, 4, 6]])
    assert rank(m) == 1
    ker = kernel(m)
    assert len(ker) == 2
    for v in ker:
        assert linalg.mat_vec(m, v) == [F(0), F(0)]


def test_solve_general_inconsistent():
    assert solve_general(qmat([[1, 1], [1, 1]]), [F(0), F(1)]) is None
    sol = solve_general(qmat([[1, 1], [2, 2]]), [F(3), F(6)])
    assert sol is not None and sol[0] + sol[1] == 3


def test_charpoly_and_minimal_poly():
    m = qmat([[0, 0, 1], [1, 0, 1], [0, 1, 0]])
    chi = charpoly(m)
    assert chi == [F(-1), F(-1), F(0), F(1)]
    assert minimal_poly_of_matrix(m) == chi
    # diagonal with a repeated eigenvalue: min poly is squarefree, char not
    d = qmat([[2, 0], [0, 2]])
    assert charpoly(d) == [F(4), F(-4), F(1)]
    assert minimal_poly_of_matrix(d) == [F(-2), F(1)]


def test_int_det_matches_rational_det():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 5)
        m = [[rng.randint(-7, 7) for _ in range(n)] for _ in range(n)]
        assert int_det(m) == det(qmat(m))


def test_interval_solve_and_det():
    a = imat_from_q(qmat([[2, 1], [1, 1]]))
    b = imat_from_q(qmat([[1, 0], [0, 1]]))
    inv = imat_solve(a, b)
    assert inv[0][0].contains(1) and inv[0][1].contains(-1)
    assert imat_det(a).contains(1)
    wide = [[CertifiedInterval(F(-1), F(1))]]
    try:
        imat_solve(wide, [[CertifiedInterval.exact(1)]])
        raise AssertionError("expected pivot failure")
    except ZeroDivisionError:
        pass
