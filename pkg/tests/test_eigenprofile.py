from fractions import Fraction

from otlck.exactnum.eigen import eigenvalue_magnitude_profile
from otlck.exactnum.interval import sqrt_bounds
from otlck.linalg import qmat


def test_identity_encloses_one_exactly():
    prof = eigenvalue_magnitude_profile(qmat([[1, 0], [0, 1]]), precision=32)
    assert len(prof) == 2
    assert all(e.status == "equal_one" for e in prof)
    assert all(e.magnitude.contains(1) for e in prof)


def test_sol3_matrix_quadratic_formula_oracle():
    # eigenvalues (3 +- sqrt5)/2, computed here independently
    prof = eigenvalue_magnitude_profile(qmat([[2, 1], [1, 1]]), precision=110)
    s5 = sqrt_bounds(Fraction(5), 130)
    lam_hi = (s5 + 3) * Fraction(1, 2)
    lam_lo = (3 - s5) * Fraction(1, 2)
    assert prof[0].status == "greater_than_one"
    assert prof[1].status == "less_than_one"
    assert prof[0].magnitude.intersects(lam_hi)
    assert prof[1].magnitude.intersects(lam_lo)
    assert prof[0].magnitude.width < Fraction(1, 10**30)
    assert prof[1].magnitude.width < Fraction(1, 10**30)


def test_companion_of_plastic_polynomial():
    comp = qmat([[0, 0, 1], [1, 0, 1], [0, 1, 0]])
    prof = eigenvalue_magnitude_profile(comp, precision=64)
    statuses = [e.status for e in prof]
    assert statuses == ["greater_than_one", "less_than_one", "less_than_one"]
    assert abs(prof[0].magnitude.approx() - 1.3247) < 1e-3
    assert abs(prof[1].magnitude.approx() - 0.8688) < 1e-3


def test_unit_circle_pair_decided_equal():
    prof = eigenvalue_magnitude_profile(qmat([[0, -1], [1, 0]]), precision=32)
    assert [e.status for e in prof] == ["equal_one", "equal_one"]
    assert not prof[0].is_real


def test_multiplicity_expansion():
    # block diag of two identical companions: each eigenvalue twice
    m = qmat([[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 1]])
    prof = eigenvalue_magnitude_profile(m, precision=48)
    assert len(prof) == 4
    assert sum(1 for e in prof if e.status == "greater_than_one") == 2
