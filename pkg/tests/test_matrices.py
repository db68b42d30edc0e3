"""Integer matrices: trace identities, tensor rotation, sparse arithmetic."""

import random

from shadowtrace.matrices import (MATRIX, SparseMat, mat, mat_fuller,
                                  mat_multitrace, mat_trace, matmul,
                                  random_int_matrix, scalar_of, thm22_check)
from shadowtrace.selftest import random_matrix_cycle
from shadowtrace.shadow import trace


def test_trace_and_matmul_basics():
    assert mat_trace([[1, 2], [3, 4]]) == 5
    assert mat_trace([[7]]) == 7
    a = [[1, 2], [3, 4]]
    b = [[0, 1], [1, 0]]
    assert matmul(a, b) == mat([[2, 1], [4, 3]])
    # trace of a product is invariant under cyclic exchange
    rng = random.Random(21)
    for t in range(60):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        a = random_int_matrix(rng, n, m)
        b = random_int_matrix(rng, m, n)
        assert mat_trace(matmul(a, b)) == mat_trace(matmul(b, a))


def test_rotation_construction_shape():
    rng = random.Random(22)
    mats = random_matrix_cycle(rng, n_max=4)
    big = mat_fuller(mats)
    total = 1
    for m in mats:
        total *= len(m[0])
    assert len(big) == total
    assert all(len(row) == total for row in big)
    # single factor: the construction is the map itself
    a = random_int_matrix(rng, 3, 3)
    assert mat_fuller([a]) == a


def test_rotation_trace_equals_composite_trace():
    rng = random.Random(23)
    for t in range(300):
        mats = random_matrix_cycle(rng)
        lhs, rhs, ok = thm22_check(mats)
        assert ok and lhs == rhs
        comp = mats[0]
        for m in mats[1:]:
            comp = matmul(comp, m)
        assert lhs == mat_trace(comp)


def test_multitrace_against_product_trace():
    rng = random.Random(24)
    for t in range(200):
        mats = random_matrix_cycle(rng, n_max=4)
        comp = mats[0]
        for m in mats[1:]:
            comp = matmul(comp, m)
        assert mat_multitrace(mats) == mat_trace(comp)
    # k = 1 is the ordinary trace
    for t in range(40):
        a = random_int_matrix(rng, 3, 3)
        assert mat_multitrace([a]) == mat_trace(a)
    # k = 2 is tr(AB)
    for t in range(40):
        a = random_int_matrix(rng, 2, 3)
        b = random_int_matrix(rng, 3, 2)
        assert mat_multitrace([a, b]) == mat_trace(matmul(a, b))


def test_sparse_matches_dense():
    rng = random.Random(25)
    for t in range(80):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        k = rng.randint(1, 4)
        a = random_int_matrix(rng, n, m)
        b = random_int_matrix(rng, m, k)
        sa = SparseMat.from_dense(a)
        sb = SparseMat.from_dense(b)
        assert sa.mul(sb).to_dense() == matmul(a, b)
        assert sa.to_dense() == a
        assert sa.kron(sb).to_dense() == _dense_kron(a, b)
    ident = SparseMat.identity(3)
    assert ident.to_dense() == mat([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def _dense_kron(a, b):
    out = []
    for ra in a:
        for rb in b:
            out.append(tuple(x * y for x in ra for y in rb))
    return tuple(out)


def test_matrix_instance_cells_and_traces():
    rng = random.Random(26)
    c = MATRIX.free_cell(3)
    assert c.payload == 3
    ident = MATRIX.id2(c)
    assert MATRIX.comp2(ident, ident) == ident
    f = MATRIX.two_cell(c, c, [[1, 1, 0], [0, 2, 0], [1, 0, 3]])
    assert MATRIX.comp2(ident, f) == f
    # closed trace of an endomorphism 2-cell is its matrix trace
    assert scalar_of(trace(MATRIX, f, MATRIX.dualize(c), [], [])) == 6
    for t in range(40):
        n = rng.randint(1, 4)
        cell = MATRIX.free_cell(n)
        m = random_int_matrix(rng, n, n)
        g = MATRIX.two_cell(cell, cell, m)
        got = scalar_of(trace(MATRIX, g, MATRIX.dualize(cell), [], []))
        assert got == mat_trace(m)
