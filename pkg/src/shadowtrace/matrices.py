"""Exact matrices over the integers and rationals, the cyclic tensor-trace
constructions on them, and the one-object matrix instance of the shadow
interface.

Matrices are immutable tuples of tuple rows, acting on column vectors, so
a map V -> W has len(m) == dim W rows.  All arithmetic is exact (ints and
fractions.Fraction mix freely).
"""

import itertools

from .shadow import Instance, OneCell, TwoCell, ShadowObj, ShadowMap, DualPair


def mat(rows):
    return tuple(tuple(r) for r in rows)


def identity_mat(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n))
                 for i in range(n))


def zero_mat(rows, cols):
    return tuple((0,) * cols for _ in range(rows))


def matmul(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    assert all(len(r) == inner for r in a), "matmul dimension mismatch"
    out = []
    for i in range(rows):
        ai = a[i]
        row = []
        for j in range(cols):
            s = 0
            for k in range(inner):
                v = ai[k]
                if v:
                    s += v * b[k][j]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_trace(a):
    assert len(a) == (len(a[0]) if a else 0), "trace of a non-square matrix"
    return sum(a[i][i] for i in range(len(a)))


def kron(a, b):
    """Kronecker product with lexicographic bases: basis vector (i, j) of
    the product sits at index i * cols_b + j.

    >>> kron(identity_mat(2), identity_mat(3)) == identity_mat(6)
    True
    """
    ra = len(a)
    ca = len(a[0]) if ra else 0
    rb = len(b)
    cb = len(b[0]) if rb else 0
    out = []
    for i in range(ra):
        for k in range(rb):
            row = []
            for j in range(ca):
                v = a[i][j]
                brow = b[k]
                for l in range(cb):
                    row.append(v * brow[l] if v else 0)
            out.append(tuple(row))
    return tuple(out)


def swap_mat(ra, rb):
    """Permutation matrix e_(i*rb+j) -> e_(j*ra+i)."""
    n = ra * rb
    rows = [[0] * n for _ in range(n)]
    for i in range(ra):
        for j in range(rb):
            rows[j * ra + i][i * rb + j] = 1
    return mat(rows)


def rotate_tensor_mat(dims):
    """Permutation matrix sending x_1 (x) ... (x) x_n to
    x_2 (x) ... (x) x_n (x) x_1 on lexicographic tensor bases."""
    n = 1
    for d in dims:
        n *= d
    out_dims = list(dims[1:]) + [dims[0]]
    rows = [[0] * n for _ in range(n)]
    for src in itertools.product(*[range(d) for d in dims]):
        tgt = src[1:] + src[:1]
        si = _flatten(src, dims)
        ti = _flatten(tgt, out_dims)
        rows[ti][si] = 1
    return mat(rows)


def _flatten(multi, dims):
    idx = 0
    for x, d in zip(multi, dims):
        idx = idx * d + x
    return idx


def mat_fuller(mats):
    """Matrix of the cyclic rotation construction.

    Input: f_i mapping V_i -> V_{i-1}, indices mod n.  Output: the
    endomorphism of V_1 (x) ... (x) V_n sending x_1 (x) ... (x) x_n to
    f_2(x_2) (x) ... (x) f_n(x_n) (x) f_1(x_1), i.e. output slot j holds
    f_{j+1}(x_{j+1}) and slot n holds f_1(x_1).  Realized as the tensor
    f_1 (x) ... (x) f_n followed by the rotation that moves the first
    output factor to the back.

    >>> f = mat([[0, 1], [1, 0]])
    >>> mat_trace(mat_fuller([f, f]))
    2
    """
    n = len(mats)
    assert n >= 1
    rows = [len(m) for m in mats]
    cols = [len(m[0]) if m else 0 for m in mats]
    for i in range(n):
        assert rows[i] == cols[i - 1], \
            "maps do not chain cyclically: f_%d" % (i + 1)
    k = mats[0]
    for m in mats[1:]:
        k = kron(k, m)
    if n == 1:
        return k
    # reindex rows: output slot j of the result reads kron slot j+1
    out_dims = cols                      # slot j of the result has dim V_j
    kron_dims = rows                     # slot i of the kron has dim V_{i-1}
    reordered = []
    for r in itertools.product(*[range(d) for d in out_dims]):
        s = (r[n - 1],) + r[:n - 1]
        reordered.append(k[_flatten(s, kron_dims)])
    return tuple(reordered)


def mat_multitrace(mats):
    """Direct index-sum of the cyclic trace word:

        sum a0[i_k][i_0] a1[i_0][i_1] ... ak[i_{k-1}][i_k]

    which is the trace of the product a0 a1 ... ak, computed here without
    forming any product matrix so it can serve as an independent check.

    >>> mat_multitrace([identity_mat(3)])
    3
    """
    k = len(mats) - 1
    assert k >= 0
    dims = [len(m[0]) if m else 0 for m in mats]
    for j in range(len(mats)):
        assert len(mats[j]) == dims[j - 1], \
            "multitrace word does not chain cyclically"
    total = 0
    for idx in itertools.product(*[range(d) for d in dims]):
        term = mats[0][idx[k]][idx[0]]
        if not term:
            continue
        for j in range(1, k + 1):
            term *= mats[j][idx[j - 1]][idx[j]]
            if not term:
                break
        total += term
    return total


def thm22_check(mats):
    """Trace of the rotation construction against the trace of the plain
    composite f_1 f_2 ... f_n; returns (lhs, rhs, equal)."""
    comp = mats[0]
    for m in mats[1:]:
        comp = matmul(comp, m)
    lhs = mat_trace(mat_fuller(mats))
    rhs = mat_trace(comp)
    return lhs, rhs, lhs == rhs


class SparseMat:
    """Exact matrix stored by its nonzero entries.

    The word calculus composes long chains of permutation-like cells on
    tensor bases whose dimension is the product of all the factor ranks.
    Dense storage is quadratic in that product; this stays linear in the
    support, which for coherence cells is just the dimension itself.
    """

    __slots__ = ("rows", "cols", "entries", "_byrow")

    def __init__(self, rows, cols, entries):
        self.rows = rows
        self.cols = cols
        self.entries = {k: v for k, v in entries.items() if v}
        self._byrow = None

    @classmethod
    def from_dense(cls, m):
        rows = len(m)
        cols = len(m[0]) if rows else 0
        e = {}
        for i, r in enumerate(m):
            assert len(r) == cols, "ragged matrix"
            for j, v in enumerate(r):
                if v:
                    e[(i, j)] = v
        return cls(rows, cols, e)

    @classmethod
    def identity(cls, n, one=1):
        return cls(n, n, {(i, i): one for i in range(n)})

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return tuple(tuple(r) for r in out)

    def _rows_of(self):
        if self._byrow is None:
            byrow = {}
            for (i, j), v in self.entries.items():
                byrow.setdefault(i, []).append((j, v))
            self._byrow = byrow
        return self._byrow

    def mul(self, other):
        assert self.cols == other.rows, "matmul dimension mismatch"
        orows = other._rows_of()
        acc = {}
        for (i, k), v in self.entries.items():
            for j, w in orows.get(k, ()):
                key = (i, j)
                s = acc.get(key, 0) + v * w
                if s:
                    acc[key] = s
                elif key in acc:
                    del acc[key]
        return SparseMat(self.rows, other.cols, acc)

    def kron(self, other):
        rb = other.rows
        cb = other.cols
        e = {}
        for (i, j), v in self.entries.items():
            for (k, l), w in other.entries.items():
                e[(i * rb + k, j * cb + l)] = v * w
        return SparseMat(self.rows * rb, self.cols * cb, e)

    def trace(self):
        assert self.rows == self.cols, "trace of a non-square matrix"
        return sum(v for (i, j), v in self.entries.items() if i == j)

    def __eq__(self, other):
        if not isinstance(other, SparseMat):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        return "SparseMat(%d x %d, %d nonzero)" % (
            self.rows, self.cols, len(self.entries))


# ---------------------------------------------------------------------------
# the matrix instance


PT = "pt"


def _sparse_swap(ra, rb):
    return SparseMat(ra * rb, ra * rb,
                     {(j * ra + i, i * rb + j): 1
                      for i in range(ra) for j in range(rb)})


class MatrixInstance(Instance):
    """Free modules over the rationals as a one-object shadowed
    bicategory: 1-cells are ranks, 2-cells are matrices, the product is
    the Kronecker product on lexicographic bases (strictly associative and
    unital), the shadow is the identity on payloads, and theta is the
    honest swap permutation.  Traces are partial traces.

    Payloads are SparseMat; two_cell also accepts dense rows."""

    name = "matrix"

    def free_cell(self, rank):
        assert rank >= 0
        return OneCell(self, PT, PT, rank)

    def two_cell(self, dom, cod, matrix):
        if not isinstance(matrix, SparseMat):
            matrix = SparseMat.from_dense(mat(matrix))
        assert matrix.rows == cod.payload and matrix.cols == dom.payload
        return TwoCell(self, dom, cod, matrix)

    def odot(self, a, b):
        assert a.dst == b.src
        return OneCell(self, a.src, b.dst, a.payload * b.payload)

    def unit(self, obj):
        return OneCell(self, obj, obj, 1)

    def id2(self, a):
        return TwoCell(self, a, a, SparseMat.identity(a.payload))

    def comp2(self, g, f):
        assert f.cod == g.dom, "2-cells do not compose"
        return TwoCell(self, f.dom, g.cod, g.payload.mul(f.payload))

    def tensor2(self, f, g):
        return TwoCell(self, self.odot(f.dom, g.dom),
                       self.odot(f.cod, g.cod), f.payload.kron(g.payload))

    def braiding(self, a, b):
        return TwoCell(self, self.odot(a, b), self.odot(b, a),
                       _sparse_swap(a.payload, b.payload))

    def shadow_obj(self, m):
        assert m.src == m.dst
        return ShadowObj(self, m.payload)

    def shadow_map(self, f):
        return ShadowMap(self, self.shadow_obj(f.dom),
                         self.shadow_obj(f.cod), f.payload)

    def theta(self, a, b):
        return ShadowMap(self, self.shadow_obj(self.odot(a, b)),
                         self.shadow_obj(self.odot(b, a)),
                         _sparse_swap(a.payload, b.payload))

    def sh_id(self, obj):
        return ShadowMap(self, obj, obj, SparseMat.identity(obj.payload))

    def sh_comp(self, g, f):
        assert f.cod == g.dom
        return ShadowMap(self, f.dom, g.cod, g.payload.mul(f.payload))

    def sh_eq(self, f, g):
        return (f.dom == g.dom and f.cod == g.cod
                and f.payload == g.payload)

    def dualize(self, m):
        r = m.payload
        dual = OneCell(self, PT, PT, r)
        eta = TwoCell(self, self.unit(PT), self.odot(m, dual),
                      SparseMat(r * r, 1, {(i * r + i, 0): 1
                                           for i in range(r)}))
        eps = TwoCell(self, self.odot(dual, m), self.unit(PT),
                      SparseMat(1, r * r, {(0, i * r + i): 1
                                           for i in range(r)}))
        return DualPair(m, dual, eta, eps)


MATRIX = MatrixInstance()


def scalar_of(shadow_map):
    """The scalar payload of a shadow morphism between rank-1 objects."""
    assert shadow_map.dom.payload == 1 and shadow_map.cod.payload == 1
    return shadow_map.payload.entries.get((0, 0), 0)


def random_int_matrix(rng, rows, cols, lo=-4, hi=4):
    return mat([[rng.randint(lo, hi) for _ in range(cols)]
                for _ in range(rows)])
