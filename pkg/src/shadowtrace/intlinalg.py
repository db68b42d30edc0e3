"""Exact integer matrix utilities: Smith/Hermite normal forms, lattice
reduction, and linear solving over the integers.

Everything here works on plain lists of lists of Python ints, so there is
no overflow and no tolerance anywhere.  The normal forms return the
unimodular transforms because canonical coset representatives (used for
twisted conjugacy classes and quotient presentations) need them, not just
the diagonal.
"""

from fractions import Fraction


def zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def copy_matrix(a):
    return [row[:] for row in a]


def mat_mul(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    assert all(len(r) == inner for r in a), "dimension mismatch"
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            v = ai[k]
            if v:
                bk = b[k]
                for j in range(cols):
                    oi[j] += v * bk[j]
    return out


def mat_vec(a, v):
    assert all(len(r) == len(v) for r in a)
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq(a, b):
    return a == b


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def smith_normal_form(a):
    """Return (d, u, v) with d = u * a * v, u and v unimodular, and d in
    Smith normal form: diagonal d1 | d2 | ... | dr, all other entries zero,
    diagonal entries nonnegative.

    Row operations accumulate in u, column operations in v.  Pivoting is by
    least nonzero absolute value, which keeps intermediate entries small in
    practice for the incidence-style matrices we feed it.
    """
    d = copy_matrix(a)
    rows = len(d)
    cols = len(d[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        # row[dst] += c * row[src]
        drow = d[dst]
        srow = d[src]
        for k in range(cols):
            drow[k] += c * srow[k]
        urow = u[dst]
        usrc = u[src]
        for k in range(rows):
            urow[k] += c * usrc[k]

    def add_col(src, dst, c):
        for r in d:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # find pivot: least |entry| > 0 in the remaining block
        pr = pc = -1
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                e = d[i][j]
                if e and (best is None or abs(e) < best):
                    best = abs(e)
                    pr, pc = i, j
        if best is None:
            break
        swap_rows(t, pr)
        swap_cols(t, pc)
        # clear row and column t; restart if a remainder shrinks the pivot
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                e = d[i][t]
                if e:
                    q = e // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                e = d[t][j]
                if e:
                    q = e // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # divisibility: pivot must divide everything below-right
        fixed = False
        for i in range(t + 1, rows):
            if fixed:
                break
            for j in range(t + 1, cols):
                if d[i][j] % d[t][t]:
                    add_row(i, t, 1)
                    fixed = True
                    break
        if fixed:
            continue
        if d[t][t] < 0:
            for k in range(cols):
                d[t][k] = -d[t][k]
            for k in range(rows):
                u[t][k] = -u[t][k]
        t += 1
    return d, u, v


def invert_unimodular(u):
    """Exact inverse of a unimodular integer matrix."""
    n = len(u)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(u)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    inv = []
    for row in aug:
        ints = []
        for x in row[n:]:
            assert x.denominator == 1, "matrix was not unimodular"
            ints.append(int(x))
        inv.append(ints)
    return inv


def hermite_basis(a):
    """Column Hermite basis of the lattice spanned by the columns of a.

    Returns (basis, pivots): basis[i] is a column vector, pivots[i] its
    pivot row; pivot entries are positive, pivot rows strictly increase,
    and each basis column is zero above its pivot.  The basis is the
    unique one of this shape, so coset reduction against it is canonical.
    """
    rows = len(a)
    cols = len(a[0]) if rows and a[0] else 0
    m = [[a[i][j] for j in range(cols)] for i in range(rows)]

    def col(j):
        return [m[i][j] for i in range(rows)]

    def addcol(src, dst, q):
        for i in range(rows):
            m[i][dst] += q * m[i][src]

    c = 0
    pivots = []
    for r in range(rows):
        if c >= cols:
            break
        while True:
            nz = [j for j in range(c, cols) if m[r][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(m[r][j]))
            if j0 != c:
                for i in range(rows):
                    m[i][c], m[i][j0] = m[i][j0], m[i][c]
            clean = True
            for j in range(c + 1, cols):
                if m[r][j]:
                    q = m[r][j] // m[r][c]
                    addcol(c, j, -q)
                    if m[r][j]:
                        clean = False
            if clean:
                break
        if c < cols and m[r][c]:
            if m[r][c] < 0:
                for i in range(rows):
                    m[i][c] = -m[i][c]
            for k in range(c):
                if m[r][k]:
                    q = m[r][k] // m[r][c]
                    addcol(c, k, -q)
            pivots.append(r)
            c += 1
    basis = [col(j) for j in range(c)]
    return basis, pivots


class LatticeOps:
    """Reduction mod the column lattice of an integer matrix.

    Built once per lattice; supplies canonical coset representatives
    (deterministic, nonnegative pivot coordinates), membership tests, and
    the cokernel invariant factors.
    """

    def __init__(self, a):
        if not a:
            a = []
        self.ambient = len(a)
        self.matrix = copy_matrix(a)
        self.basis, self.pivots = hermite_basis(a) if a else ([], [])
        self.rank = len(self.basis)
        d, _, _ = smith_normal_form(a) if a else ([], [], [])
        self.diag = []
        n = len(a)
        m = len(a[0]) if a and a[0] else 0
        for i in range(min(n, m)):
            if d[i][i]:
                self.diag.append(d[i][i])
        assert len(self.diag) == self.rank

    def reduce(self, vec):
        """Canonical representative of vec modulo the lattice."""
        if self.ambient == 0:
            return tuple(vec)
        assert len(vec) == self.ambient
        v = list(vec)
        for i, r in enumerate(self.pivots):
            p = self.basis[i][r]
            q = v[r] // p
            if q:
                b = self.basis[i]
                for k in range(self.ambient):
                    v[k] -= q * b[k]
        return tuple(v)

    def contains(self, vec):
        return all(x == 0 for x in self.reduce(vec))

    def coker_invariants(self):
        """Invariant factors (d > 1 torsion parts) and free rank of the
        quotient Z^ambient / lattice."""
        torsion = [x for x in self.diag if x > 1]
        free = self.ambient - self.rank
        return torsion, free

    def coker_order(self):
        """Order of the cokernel, or None when infinite."""
        torsion, free = self.coker_invariants()
        if free:
            return None
        n = 1
        for t in torsion:
            n *= t
        return n


def solve_z(a, b):
    """One integer solution x of a x = b, or None.  a is rows x cols."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if rows == 0:
        return [0] * cols
    d, u, v = smith_normal_form(a)
    w = mat_vec(u, list(b))
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < min(rows, cols) else 0
        if di:
            if w[i] % di:
                return None
            y[i] = w[i] // di
        elif w[i]:
            return None
    return mat_vec(v, y)


def kernel_basis(a):
    """Basis (as columns) of the integer kernel of a."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [list(col) for col in identity(cols)]
    d, u, v = smith_normal_form(a)
    rank = sum(1 for i in range(min(rows, cols)) if d[i][i])
    basis = []
    for j in range(rank, cols):
        basis.append([v[i][j] for i in range(cols)])
    return basis


def lattice_eq(a, b, ambient):
    """Do the columns of a and b span the same sublattice of Z^ambient?"""
    la = LatticeOps(a if a else [[0] * 0 for _ in range(ambient)])
    lb = LatticeOps(b if b else [[0] * 0 for _ in range(ambient)])
    cols_a = len(a[0]) if a and a[0] else 0
    cols_b = len(b[0]) if b and b[0] else 0
    for j in range(cols_a):
        if not lb.contains([a[i][j] for i in range(ambient)]):
            return False
    for j in range(cols_b):
        if not la.contains([b[i][j] for i in range(ambient)]):
            return False
    return True


def homology_of_pair(d_out, d_in):
    """Free rank and torsion of ker(d_out) / im(d_in).

    d_out: matrix of the boundary leaving the degree (rows x n).
    d_in: matrix of the boundary entering the degree (n x cols).
    Returns (betti, torsion list).  Standard Smith-form computation.
    """
    n = len(d_in) if d_in else (len(d_out[0]) if d_out and d_out[0] else 0)
    ker = kernel_basis(d_out) if d_out else [list(c) for c in identity(n)]
    kr = len(ker)
    if kr == 0:
        return 0, []
    # express im(d_in) in the kernel basis: solve K y = d_in[:, j]
    kmat = [[ker[c][r] for c in range(kr)] for r in range(n)]
    cols = len(d_in[0]) if d_in and d_in[0] else 0
    img = []
    for j in range(cols):
        bvec = [d_in[i][j] for i in range(n)]
        y = solve_z(kmat, bvec)
        assert y is not None, "boundary image not contained in kernel"
        img.append(y)
    rel = [[img[j][i] for j in range(cols)] for i in range(kr)] if img else []
    lat = LatticeOps(rel) if rel else None
    if lat is None:
        return kr, []
    torsion, free = lat.coker_invariants()
    return free, torsion
