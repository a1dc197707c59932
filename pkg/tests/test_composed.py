import random
from fractions import Fraction

import mpmath
from mpmath import mp

from otlck.exactnum.composed import RealRootIdentifier, composed_product_poly
from otlck.exactnum.intpoly import IntPolynomial


def P(*coeffs):
    return IntPolynomial(coeffs)


def test_spec_examples():
    d2 = composed_product_poly(P(-1, 0, 1), 2)
    # roots {1, -1, 1} -> (x-1)^2 (x+1) up to normalization
    assert d2.coeffs == (1, -1, -1, 1)
    assert composed_product_poly(P(0, 1), 2).coeffs == (0, 1)
    d = composed_product_poly(P(-1, -1, 0, 1), 2)
    assert d.degree == 6
    # one root equals 1/r1 = |complex pair|^2; N(alpha) = 1 so r1 * that = 1
    # |pair|^2 ~ 0.7549 must be a real root: verified numerically below


def _numeric_multiset(f, arity):
    with mp.workdps(40):
        roots = mpmath.polyroots([mp.mpf(c) for c in reversed(f.coeffs)],
                                 maxsteps=200, extraprec=80)
        out = []
        n = len(roots)
        if arity == 2:
            idx = [(i, j) for i in range(n) for j in range(i, n)]
            for i, j in idx:
                out.append(roots[i] * roots[j])
        else:
            idx = [(i, j, k) for i in range(n) for j in range(i, n)
                   for k in range(j, n)]
            for i, j, k in idx:
                out.append(roots[i] * roots[j] * roots[k])
        return out


def _match_multisets(poly, expected, tol=1e-18):
    with mp.workdps(40):
        got = mpmath.polyroots([mp.mpf(c) for c in reversed(poly.coeffs)],
                               maxsteps=400, extraprec=120)
        got = list(got)
        assert len(got) == len(expected)
        for e in expected:
            best = min(range(len(got)), key=lambda i: abs(got[i] - e))
            assert abs(got[best] - e) < tol * (1 + abs(e)) + 1e-12
            got.pop(best)


def test_pairwise_roots_match_numeric_oracle():
    rng = random.Random(42)
    done = 0
    while done < 50:
        deg = rng.randint(1, 5)
        f = IntPolynomial([rng.randint(-4, 4) for _ in range(deg)] + [rng.randint(1, 3)])
        if f.degree < 1 or f.squarefree_part().degree != f.degree:
            continue
        d2 = composed_product_poly(f, 2)
        _match_multisets(d2, _numeric_multiset(f, 2), tol=1e-10)
        done += 1


def test_triple_products_match_numeric_oracle():
    rng = random.Random(43)
    done = 0
    while done < 10:
        deg = rng.randint(1, 4)
        f = IntPolynomial([rng.randint(-3, 3) for _ in range(deg)] + [rng.randint(1, 2)])
        if f.degree < 1 or f.squarefree_part().degree != f.degree:
            continue
        d3 = composed_product_poly(f, 3)
        assert d3.degree == f.degree * (f.degree + 1) * (f.degree + 2) // 6
        _match_multisets(d3, _numeric_multiset(f, 3), tol=1e-8)
        done += 1


def test_identifier_pins_norm_of_cubic_unit():
    # alpha root of x^3 - x - 1: sigma1 * |sigma2|^2 = Norm = 1 exactly
    f = P(-1, -1, 0, 1)
    d3 = composed_product_poly(f, 3)
    ident = RealRootIdentifier(d3)
    one = ident.rational_root_index(Fraction(1))
    assert one is not None

    from otlck.exactnum.croots import isolate_roots
    reals, pairs = isolate_roots(f)
    r, p = reals[0], pairs[0]

    def enclose(bits):
        r.refine_bits(bits)
        p.refine_bits(bits)
        return r.interval() * p.abs_sq()

    assert ident.identify(enclose) == one


def test_identifier_separates_unequal_magnitudes():
    # x^5 - x - 1 has two complex pairs with distinct |.|^2
    f = P(-1, -1, 0, 0, 0, 1)
    d2 = composed_product_poly(f, 2)
    ident = RealRootIdentifier(d2)
    from otlck.exactnum.croots import isolate_roots
    _, pairs = isolate_roots(f)
    assert len(pairs) == 2

    def enc(p):
        def enclose(bits):
            p.refine_bits(bits)
            return p.abs_sq()
        return enclose

    i0 = ident.identify(enc(pairs[0]))
    i1 = ident.identify(enc(pairs[1]))
    assert i0 != i1
