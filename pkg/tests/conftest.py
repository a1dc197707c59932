import random
from fractions import Fraction

from otlck import linalg
from otlck.liealg import LieAlgebra
from otlck.normalize import MetaAbelianInput

F = Fraction


def rand_fraction(rng, lim=3, den=3):
    return F(rng.randint(-lim, lim), rng.randint(1, den))


def rand_invertible(rng, n, lim=3, den=3):
    while True:
        m = [[rand_fraction(rng, lim, den) for _ in range(n)] for _ in range(n)]
        if linalg.det(m) != 0:
            return m


def scramble_standard(ot, st, seed):
    """Random rational presentation change of an OT-like standard structure.

    The new complement basis is A-mixed and shifted by ad(.)z (which keeps
    it abelian); the nilpotent factor gets an arbitrary rational basis.
    """
    rng = random.Random(seed)
    s, dim = ot.s, ot.dim
    n_dim = dim - s
    alg = ot.algebra
    A = rand_invertible(rng, s)
    B = rand_invertible(rng, n_dim)
    z = [F(0)] * s + [rand_fraction(rng) for _ in range(n_dim)]
    cols = []
    for i in range(s):
        mcombo = [F(0)] * dim
        for j in range(s):
            mcombo[j] = A[j][i]
        shift = alg.bracket(mcombo, z)
        cols.append([mcombo[r] + shift[r] for r in range(dim)])
    for i in range(n_dim):
        col = [F(0)] * dim
        for j in range(n_dim):
            col[s + j] = B[j][i]
        cols.append(col)
    T = [[cols[j][i] for j in range(dim)] for i in range(dim)]
    Ti = linalg.inverse(T)
    brackets = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            br = alg.bracket(cols[i], cols[j])
            coords = linalg.mat_vec(Ti, br)
            comp = {k: v for k, v in enumerate(coords) if v != 0}
            if comp:
                brackets[(i, j)] = comp
    new_alg = LieAlgebra(dim, brackets)
    Jn = linalg.mat_mul(Ti, linalg.mat_mul(st.structure.J, T))
    Gn = linalg.mat_mul(linalg.transpose(T),
                        linalg.mat_mul(st.structure.metric, T))
    return MetaAbelianInput(new_alg, s, Jn, Gn)


def random_meta_abelian(rng, m, n):
    """Random Jacobi-passing meta-abelian algebra: the n-action matrices are
    polynomials in one seed matrix, hence commute."""
    d = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
    mats = []
    for _ in range(m):
        c0, c1, c2 = (F(rng.randint(-2, 2)) for _ in range(3))
        p = linalg.mat_add(
            linalg.mat_add(linalg.mat_scale(linalg.identity(n), c0),
                           linalg.mat_scale(d, c1)),
            linalg.mat_scale(linalg.mat_mul(d, d), c2))
        mats.append(p)
    brackets = {}
    for i in range(m):
        for col in range(n):
            comp = {m + r: mats[i][r][col] for r in range(n)
                    if mats[i][r][col] != 0}
            if comp:
                brackets[(i, m + col)] = comp
    return LieAlgebra(m + n, brackets)
