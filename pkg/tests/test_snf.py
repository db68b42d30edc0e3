"""Integer linear algebra: factorizations, solvers, lattice homology."""

import random

from shadowtrace.intlinalg import (hermite_basis, homology_of_pair, identity,
                                   invert_unimodular, kernel_basis,
                                   lattice_eq, mat_eq, mat_mul, mat_vec,
                                   smith_normal_form, solve_z, transpose)


def rand_mat(rng, rows, cols, lo=-6, hi=6):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def test_snf_known_values():
    d, u, v = smith_normal_form([[2, 4], [6, 8]])
    assert d[0][0] == 2 and d[1][1] == 4
    d, _, _ = smith_normal_form([[0, 0], [0, 0]])
    assert d == [[0, 0], [0, 0]]
    d, _, _ = smith_normal_form([[1, 0], [0, 1]])
    assert d == [[1, 0], [0, 1]]
    # 1 - d over the circle: cokernel order is |1 - d|
    for deg in (-1, 0, 2, 3):
        d, _, _ = smith_normal_form([[1 - deg]])
        assert d[0][0] == abs(1 - deg)


def test_snf_factorization_and_divisibility():
    rng = random.Random(11)
    for t in range(200):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        a = rand_mat(rng, rows, cols)
        d, u, v = smith_normal_form([r[:] for r in a])
        assert mat_eq(mat_mul(mat_mul(u, a), v), d)
        for i in range(rows):
            for j in range(cols):
                if i == j:
                    assert d[i][j] >= 0
                else:
                    assert d[i][j] == 0
        for i in range(min(rows, cols) - 1):
            if d[i][i]:
                assert d[i + 1][i + 1] % d[i][i] == 0
            else:
                assert d[i + 1][i + 1] == 0
        # the transforms are unimodular
        ui = invert_unimodular([r[:] for r in u])
        assert mat_eq(mat_mul(u, ui), identity(rows))
        vi = invert_unimodular([r[:] for r in v])
        assert mat_eq(mat_mul(v, vi), identity(cols))


def test_solve_z_solvable_and_unsolvable():
    rng = random.Random(12)
    for t in range(150):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        a = rand_mat(rng, rows, cols, -4, 4)
        x = [rng.randint(-3, 3) for _ in range(cols)]
        b = mat_vec(a, x)
        sol = solve_z(a, b)
        assert sol is not None and mat_vec(a, sol) == b
    # 2x = 1 has no integer solution
    assert solve_z([[2]], [1]) is None
    assert solve_z([[2, 4], [0, 0]], [2, 1]) is None
    assert solve_z([[2]], [6]) == [3]


def test_kernel_basis_spans_kernel():
    rng = random.Random(13)
    for t in range(120):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        a = rand_mat(rng, rows, cols, -4, 4)
        ks = kernel_basis(a)
        for k in ks:
            assert not any(mat_vec(a, k))
        # rank-nullity against the smith form
        d, _, _ = smith_normal_form([r[:] for r in a])
        rank = sum(1 for i in range(min(rows, cols)) if d[i][i])
        assert len(ks) == cols - rank
        # random kernel members are integer combinations of the basis
        if ks:
            comb = [0] * cols
            for k in ks:
                c = rng.randint(-2, 2)
                comb = [ci + c * ki for ci, ki in zip(comb, k)]
            assert not any(mat_vec(a, comb))
            back = solve_z(transpose(ks), comb) if ks else None
            assert back is not None


def test_hermite_and_lattice_eq():
    rng = random.Random(14)
    for t in range(100):
        ambient = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        gens = rand_mat(rng, ambient, cols, -4, 4)
        basis, pivots = hermite_basis(gens)
        assert len(basis) == len(pivots)
        assert pivots == sorted(set(pivots))
        for bi, r in zip(basis, pivots):
            assert bi[r] > 0
            assert all(bi[i] == 0 for i in range(r))
        bm = [[basis[c][r] for c in range(len(basis))]
              for r in range(ambient)]
        # the basis columns span the same lattice as the input columns
        assert lattice_eq(gens, bm, ambient)
        # appending a column combination does not change the lattice
        extra = [row[:] for row in gens]
        if cols >= 2:
            for i in range(ambient):
                extra[i].append(gens[i][0] + gens[i][1])
        assert lattice_eq(extra, bm, ambient)


def test_homology_of_pair_circle_and_sphere():
    # circle: one 0-cell pair with d_out = 0, d_in = 0 in degrees 0 and 1
    # realized by the standard triangle complex matrices; checked through
    # the interface only
    free, tor = homology_of_pair([[0, 0, 0]], [[-1, -1, 0],
                                               [1, 0, -1],
                                               [0, 1, 1]])
    # H_0 of the triangle circle: rank 1, no torsion
    assert free == 1 and tor == []
    # Klein-bottle style torsion: coker of multiplication by 2
    free, tor = homology_of_pair([[0]], [[2]])
    assert free == 0 and tor == [2]
