import random
from fractions import Fraction

import pytest

from otlck.errors import SignatureViolation
from otlck.exactnum.intpoly import IntPolynomial
from otlck.metrics import (bounded_unit_search, lck_condition,
                           lck_condition_element, magnitude_profile,
                           pluriclosed_condition, pluriclosed_condition_element,
                           rank_bound_probe)
from otlck.numfield import is_root_of_unity, make_field, norm
from otlck.unitlat import UnitGroup

F = Fraction


@pytest.fixture(scope="module")
def inoue():
    K = make_field(IntPolynomial([-1, -1, 0, 1]))
    return K


@pytest.fixture(scope="module")
def quintic():
    return make_field(IntPolynomial([-1, -1, 0, 0, 0, 1]))


def test_lck_condition_examples(inoue, quintic):
    # t = 1: vacuously true
    assert lck_condition(UnitGroup(inoue, [inoue.generator()])) is True
    # u = 1 passes everywhere
    assert lck_condition_element(quintic.one()) is True
    # x^5 - x - 1, u = alpha: the two pair magnitudes differ, decided exactly
    assert lck_condition_element(quintic.generator()) is False


def test_magnitude_profile_identifies_roots(quintic):
    prof = magnitude_profile(quintic.generator())
    assert len(prof.root_indices) == 2
    assert prof.root_indices[0] != prof.root_indices[1]


def test_pluriclosed_examples(inoue, quintic):
    U = UnitGroup(inoue, [inoue.generator()])
    res = pluriclosed_condition(U)
    assert res.verdict == "holds" and res.pairing == (1,)
    # powers of a passing unit still pass (multiplicativity)
    U2 = UnitGroup(inoue, [inoue.generator() ** 2])
    assert pluriclosed_condition(U2).verdict == "holds"
    # x^5 - x - 1 (s=1 < t=2): |sigma_3(u)| != 1, decided exactly
    res5 = pluriclosed_condition(UnitGroup(quintic, [quintic.generator()]))
    assert res5.verdict == "fails"
    with pytest.raises(SignatureViolation):
        pluriclosed_condition(UnitGroup(make_field(IntPolynomial([-2, 0, 1])),
                                        [make_field(IntPolynomial([-2, 0, 1])).one()]))


def test_lck_multiplicativity_on_passing_units(inoue):
    # in a (1,1) field every unit passes; products must keep passing
    rng = random.Random(8)
    a = inoue.generator()
    for _ in range(6):
        u = a ** rng.randint(-3, 3)
        v = a ** rng.randint(-3, 3)
        assert lck_condition_element(u) and lck_condition_element(v)
        assert lck_condition_element(u * v)


def test_bounded_unit_search_cubic(inoue):
    units = bounded_unit_search(inoue, 3)
    coords = {u.coords for u in units}
    a = inoue.generator()
    assert a.coords in coords
    assert (a ** 2).coords in coords
    assert a.inverse().coords in coords
    for u in units:
        assert norm(u) == 1  # totally positive with t >= 1 forces +1


def test_pluriclosed_for_all_cubic_units(inoue):
    # acceptance criterion 5 core: every totally positive norm-one unit in a
    # signature-(1,1) field satisfies the norm identity exactly
    for u in bounded_unit_search(inoue, 2):
        assert pluriclosed_condition_element(u)


def test_rank_bound_probe_branches(quintic):
    rep = rank_bound_probe(quintic, 3, "a1")
    assert rep.verdict == "confirmed"
    assert rep.rank_certified == 0 and rep.theorem_bound == 0
    assert rep.survivor_count >= 1  # the unit 1 always survives
    rep3 = rank_bound_probe(quintic, 3, "a3")
    assert rep3.verdict == "confirmed" and rep3.rank_certified == 0
    with pytest.raises(SignatureViolation):
        rank_bound_probe(make_field(IntPolynomial([-1, -1, 0, 1])), 3, "a1")


def test_survivors_are_torsion(quintic):
    rep = rank_bound_probe(quintic, 2, "a1")
    assert rep.nontorsion_coords == []
    assert rep.torsion_count == rep.survivor_count
