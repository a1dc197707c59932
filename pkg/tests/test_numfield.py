import random
from fractions import Fraction

import pytest

from otlck import linalg
from otlck.errors import IndexOutOfRange, NotIrreducible, NotMonic
from otlck.exactnum.interval import Box, CertifiedInterval
from otlck.exactnum.intpoly import IntPolynomial, qtrim
from otlck.exactnum.intpoly import qdivmod
from otlck.numfield import (FieldElement, ZModule, element_min_poly,
                            embed_element, embedding_magnitude_sq,
                            is_algebraic_integer, is_root_of_unity, is_unit,
                            is_totally_positive, make_field, min_poly_int,
                            norm, power_basis_module, regular_rep, trace)

F = Fraction


@pytest.fixture(scope="module")
def cubic():
    return make_field(IntPolynomial([-1, -1, 0, 1]))


def test_make_field_examples(cubic):
    assert cubic.degree == 3 and cubic.signature == (1, 1)
    assert make_field(IntPolynomial([-2, 0, 1])).signature == (2, 0)
    assert make_field(IntPolynomial([-1, -1, 0, 0, 0, 1])).signature == (1, 2)


def test_make_field_rejections():
    with pytest.raises(NotMonic):
        make_field(IntPolynomial([-1, 0, 2]))
    with pytest.raises(NotIrreducible):
        make_field(IntPolynomial([-1, 0, 1]))


def test_element_min_poly_examples(cubic):
    a = cubic.generator()
    assert element_min_poly(a) == [F(-1), F(-1), F(0), F(1)]
    assert element_min_poly(cubic.from_rational(2)) == [F(-2), F(1)]
    # alpha^2: oracle = kernel of the 4x3 coordinate matrix of 1, a^2, a^4, a^6
    powers = [cubic.one(), a * a, (a * a) ** 2, (a * a) ** 3]
    vecs = [list(p.coords) for p in powers]
    dep = linalg.linear_dependency(vecs)
    assert qtrim(dep) == element_min_poly(a * a)
    assert element_min_poly(a * a) == [F(-1), F(1), F(-2), F(1)]


def test_integrality_unit_positivity(cubic):
    a = cubic.generator()
    assert is_algebraic_integer(a) and is_unit(a) and is_totally_positive(a)
    assert not is_algebraic_integer(cubic.from_rational(F(1, 2)))
    m1 = cubic.from_rational(-1)
    assert is_unit(m1) and not is_totally_positive(m1)
    assert norm(a) == 1 and trace(a) == 0


def test_regular_rep_examples(cubic):
    a = cubic.generator()
    mod = power_basis_module(cubic)
    rep = regular_rep(a, mod)
    cols = [[rep.matrix[i][j] for i in range(3)] for j in range(3)]
    assert cols == [[0, 1, 0], [0, 0, 1], [1, 1, 0]]
    assert rep.det == 1 and rep.is_integral
    assert regular_rep(cubic.one(), mod).matrix == linalg.identity(3)
    inv = a.inverse()
    assert inv.coords == (F(-1), F(0), F(1))  # alpha^-1 = alpha^2 - 1
    rep_inv = regular_rep(inv, mod)
    assert rep_inv.is_integral and rep_inv.det == 1
    assert linalg.mat_mul(rep.matrix, rep_inv.matrix) == linalg.identity(3)


def test_embed_element_examples(cubic):
    a = cubic.generator()
    e1 = embed_element(a, 1, 32)
    assert F(13247, 10000) < e1.lo and e1.hi < F(13248, 10000)
    exact_one = embed_element(cubic.one(), 1, 16)
    assert exact_one.lo == exact_one.hi == 1
    sq = embedding_magnitude_sq(a, 1, 32)
    assert sq.contains(F(75488, 100000)) or (
        F(75487, 100000) < sq.lo < F(75489, 100000))
    prod = sq * e1
    assert prod.contains(1)  # norm 1: sigma1 * |sigma2|^2 = 1
    with pytest.raises(IndexOutOfRange):
        embed_element(a, 3, 16)


def test_norm_coherence_invariant():
    rng = random.Random(77)
    polys = [[-1, -1, 0, 1], [-2, 0, 1], [1, -3, 1], [-1, -1, 0, 0, 0, 1],
             [2, 1, 0, 1]]
    for coeffs in polys:
        try:
            K = make_field(IntPolynomial(coeffs))
        except Exception:
            continue
        mod = power_basis_module(K)
        for _ in range(6):
            a = K.element([rng.randint(-3, 3) for _ in range(K.degree)])
            if a.is_zero():
                continue
            rep = regular_rep(a, mod)
            chi = linalg.charpoly(rep.matrix)
            n = K.degree
            assert rep.det == (-1) ** n * chi[0]
            # min poly divides the characteristic polynomial exactly
            mp = element_min_poly(a)
            _, r = qdivmod(chi, mp)
            assert not r


def test_embedding_matrix_coherence_property():
    """Rows of embeddings of the module basis conjugate the regular rep to a
    diagonal enclosing sigma_i(a)."""
    rng = random.Random(4096)
    polys = [[-1, -1, 0, 1], [-2, 0, 1], [-1, -1, 0, 0, 0, 1],
             [1, -3, 1], [-3, 0, 1]]
    checked = 0
    for coeffs in polys:
        K = make_field(IntPolynomial(coeffs))
        mod = power_basis_module(K)
        for _ in range(12):
            a = K.element([rng.randint(-2, 2) for _ in range(K.degree)])
            if a.is_zero():
                continue
            rep = regular_rep(a, mod)
            n = K.degree
            for r in range(1, K.s + 1):
                row = [embed_element(b, r, 48) for b in mod.basis]
                sig = embed_element(a, r, 48)
                for j in range(n):
                    left = CertifiedInterval.exact(0)
                    for k in range(n):
                        left = left + row[k] * rep.matrix[k][j]
                    assert left.intersects(sig * row[j])
            for c in range(1, K.t + 1):
                row = [embed_element(b, K.s + c, 48) for b in mod.basis]
                sig = embed_element(a, K.s + c, 48)
                for j in range(n):
                    left = Box.exact(0)
                    for k in range(n):
                        left = left + row[k] * rep.matrix[k][j]
                    diff = left - sig * row[j]
                    assert diff.contains(F(0), F(0))
            checked += 1
    assert checked >= 50


def test_signature_additivity():
    for coeffs in ([-1, -1, 0, 1], [-2, 0, 1], [-1, -1, 0, 0, 0, 1],
                   [1, -3, 1], [1, 0, 0, 0, 1]):
        try:
            K = make_field(IntPolynomial(coeffs))
        except NotIrreducible:
            continue
        assert K.s + 2 * K.t == K.degree


def test_custom_module_and_scaling(cubic):
    a = cubic.generator()
    mod = power_basis_module(cubic)
    scaled = ZModule(cubic, [cubic.from_rational(2) * b for b in mod.basis])
    assert regular_rep(a, scaled).matrix == regular_rep(a, mod).matrix


def test_roots_of_unity(cubic):
    assert is_root_of_unity(cubic.one())
    assert is_root_of_unity(cubic.from_rational(-1))
    assert not is_root_of_unity(cubic.generator())
