import random
from fractions import Fraction

import pytest

from otlck.errors import AssumptionFailure, NotLck, NotUnimodular
from otlck.liealg import LieAlgebra
from otlck.normalize import MetaAbelianInput, normalize_meta_abelian_lck
from otlck.otlike import build_ot_like, c_matrices_equivalent, standard_structure

from conftest import scramble_standard

F = Fraction


def kodaira_thurston_presented_meta_abelian():
    """R^1 x| R^3: m-part = (x1), n-part = (y1, z1, z2), [x1, y1] = z1."""
    alg = LieAlgebra(4, {(0, 1): {2: F(1)}})
    J = [[F(x) for x in row] for row in
         [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]]
    G = [[F(int(i == j)) for j in range(4)] for i in range(4)]
    return MetaAbelianInput(alg, 1, J, G)


def test_vaisman_branch_kodaira_thurston():
    res = normalize_meta_abelian_lck(kodaira_thurston_presented_meta_abelian())
    assert res.branch == "vaisman-heisenberg"
    assert res.heisenberg_d == 1
    assert res.checks["vaisman"] and res.checks["abelian_J"]


def test_abelian_input_rejected_as_kahler():
    alg = LieAlgebra(4, {})
    J = [[F(x) for x in row] for row in
         [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]]
    G = [[F(int(i == j)) for j in range(4)] for i in range(4)]
    with pytest.raises(NotLck):
        normalize_meta_abelian_lck(MetaAbelianInput(alg, 2, J, G))


def test_non_unimodular_rejected():
    # [u, v] = v alone is not unimodular
    alg = LieAlgebra(2, {(0, 1): {1: F(1)}})
    J = [[F(0), F(-1)], [F(1), F(0)]]
    G = [[F(1), F(0)], [F(0), F(1)]]
    with pytest.raises(NotUnimodular):
        normalize_meta_abelian_lck(MetaAbelianInput(alg, 1, J, G))


def test_identity_normalization_of_standard_structure():
    C = [[(F(-1, 2), F(1))]]
    ot = build_ot_like(C)
    st = standard_structure(ot)
    inp = MetaAbelianInput(ot.algebra, ot.s, st.structure.J,
                           st.structure.metric)
    res = normalize_meta_abelian_lck(inp)
    assert res.branch == "ot-like" and (res.s, res.t) == (1, 1)
    assert res.c_matrix == [[(F(-1, 2), F(1))]]
    assert res.gamma == 1 and res.metric_rescale == 1
    assert res.certified


@pytest.mark.parametrize("seed,c_entries", [
    (11, [[(F(-1, 2), F(1))]]),
    (12, [[(F(-1, 2), F(-3, 2))]]),
    (13, [[(F(-1, 2), F(2, 3)), (F(-1, 2), F(-5, 4))]]),
    (14, [[(F(-1, 2), F(0)), (F(-1, 2), F(4))]]),
    (15, [[(F(-1, 4), F(2))], [(F(-1, 4), F(-3))]]),
])
def test_round_trip_scrambled(seed, c_entries):
    ot = build_ot_like(c_entries)
    st = standard_structure(ot)
    inp = scramble_standard(ot, st, seed)
    res = normalize_meta_abelian_lck(inp)
    assert res.branch == "ot-like"
    assert (res.s, res.t) == (ot.s, ot.t)
    assert c_matrices_equivalent(res.c_matrix, c_entries,
                                 allow_column_permutation=True)
    assert res.certified
    assert res.checks["gram_identity"] and res.checks["gram_identity_v"]
    assert res.checks["omega_standard_form"]


def test_scaled_metric_recovers_gamma():
    C = [[(F(-1, 2), F(1))]]
    ot = build_ot_like(C)
    st = standard_structure(ot)
    lam = F(7, 3)
    scaled = [[x * lam for x in row] for row in st.structure.metric]
    inp = MetaAbelianInput(ot.algebra, ot.s, st.structure.J, scaled)
    res = normalize_meta_abelian_lck(inp)
    assert res.branch == "ot-like"
    assert res.gamma == lam  # gamma = t for the standard metric, scaled by lam
    assert res.metric_rescale == 1 / lam
    assert res.c_matrix == [[(F(-1, 2), F(1))]]


def test_malformed_presentation_rejected():
    # bracket between two m-part vectors violates the meta-abelian shape
    alg = LieAlgebra(4, {(0, 1): {2: F(1)}})
    J = [[F(x) for x in row] for row in
         [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]]
    G = [[F(int(i == j)) for j in range(4)] for i in range(4)]
    with pytest.raises(ValueError):
        MetaAbelianInput(alg, 2, J, G)   # indices 0,1 would both be m-part


def test_non_lck_input_rejected():
    # unimodular sol-type algebra with an incompatible structure: [u, v1] = v1,
    # [u, v2] = -v2 on basis (u, w, v1, v2) is not LCK for the flat metric
    alg = LieAlgebra(4, {(0, 2): {2: F(1)}, (0, 3): {3: F(-1)}})
    J = [[F(0), F(-1), F(0), F(0)],
         [F(1), F(0), F(0), F(0)],
         [F(0), F(0), F(0), F(-1)],
         [F(0), F(0), F(1), F(0)]]
    G = [[F(int(i == j)) for j in range(4)] for i in range(4)]
    assert alg.is_unimodular()
    with pytest.raises(NotLck):
        normalize_meta_abelian_lck(MetaAbelianInput(alg, 2, J, G))
