"""Finite simplicial complexes, self-maps, and integral chain data.

Complexes carry an explicit vertex order (the order the labels were given
in); that order decides orientation signs and is the monotonicity order the
product construction in fuller.py relies on.  Simplices are stored as
ascending tuples of vertex indices, grouped by dimension.

Self-maps come in two flavours.  A plain vertex map must send every simplex
to a simplex.  On 1-dimensional complexes a map may instead carry explicit
edge paths: each edge traverses a vertex path in the target, which is what
lets a circle model wind around itself more than once (a bare vertex map on
a cycle can only realize degrees -1, 0, 1: each edge contributes at most one
signed step to the winding, so |d| * m <= m).

Chain-level matrices are stored row-by-input: M[i] is a dict mapping the
index of an output simplex to its integer coefficient, so composition of
maps reads left-to-right (apply-first on the left).
"""

from .intlinalg import (identity, invert_unimodular, kernel_basis, mat_mul,
                        smith_normal_form, solve_z)


class InputError(ValueError):
    """Malformed complex or map data."""


# ---------------------------------------------------------------------------
# sparse integer rows


def sp_zero_rows(n):
    return [dict() for _ in range(n)]


def sp_mul(a, b):
    """Row-sparse product: (a then b) when rows index inputs."""
    out = []
    for row in a:
        acc = {}
        for j, c in row.items():
            for k, d in b[j].items():
                v = acc.get(k, 0) + c * d
                if v:
                    acc[k] = v
                else:
                    acc.pop(k, None)
        out.append(acc)
    return out


def sp_eq(a, b):
    if len(a) != len(b):
        return False
    return all(ra == rb for ra, rb in zip(a, b))


def sp_trace(a):
    return sum(row.get(i, 0) for i, row in enumerate(a))


def sp_to_dense(a, cols):
    return [[row.get(j, 0) for j in range(cols)] for row in a]


def sort_sign(values):
    """(sorted tuple, permutation parity), or (None, 0) on repeats."""
    if len(set(values)) != len(values):
        return None, 0
    order = sorted(range(len(values)), key=lambda i: values[i])
    sign = 1
    seen = [False] * len(values)
    for i in range(len(values)):
        if seen[i]:
            continue
        # cycle length parity
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return tuple(values[i] for i in order), sign


# ---------------------------------------------------------------------------
# complexes


class SimplicialComplex:
    """Downward-closed simplex sets over an ordered vertex list."""

    def __init__(self, vertices, maximal_simplices, name=""):
        self.name = name
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex label")
        self.index = {v: i for i, v in enumerate(self.vertices)}
        closure = set()
        for simplex in maximal_simplices:
            try:
                idx = tuple(sorted(self.index[v] for v in simplex))
            except KeyError as bad:
                raise InputError("simplex uses undeclared vertex %r" % (bad.args[0],))
            if len(set(idx)) != len(idx):
                raise InputError("simplex with repeated vertex: %r" % (simplex,))
            # all nonempty subsets
            m = len(idx)
            for mask in range(1, 1 << m):
                face = tuple(idx[i] for i in range(m) if mask >> i & 1)
                closure.add(face)
        for i in range(len(self.vertices)):
            closure.add((i,))
        self.simplices = []
        dim = max((len(s) - 1 for s in closure), default=0)
        for d in range(dim + 1):
            level = sorted(s for s in closure if len(s) == d + 1)
            self.simplices.append(level)
        self.position = [
            {s: k for k, s in enumerate(level)} for level in self.simplices
        ]

    @property
    def dim(self):
        return len(self.simplices) - 1

    def n_simplices(self, d):
        if 0 <= d <= self.dim:
            return len(self.simplices[d])
        return 0

    def total_simplices(self):
        return sum(len(level) for level in self.simplices)

    def euler_characteristic(self):
        return sum((-1) ** d * len(level)
                   for d, level in enumerate(self.simplices))

    def has_simplex(self, labels):
        try:
            key = tuple(sorted(self.index[v] for v in labels))
        except KeyError:
            return False
        d = len(key) - 1
        return d <= self.dim and key in self.position[d]

    def edges(self):
        return self.simplices[1] if self.dim >= 1 else []

    def is_connected(self):
        if not self.vertices:
            return True
        seen = {0}
        frontier = [0]
        adj = {i: set() for i in range(len(self.vertices))}
        for u, v in self.edges():
            adj[u].add(v)
            adj[v].add(u)
        while frontier:
            u = frontier.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == len(self.vertices)

    def labels_of(self, simplex):
        return tuple(self.vertices[i] for i in simplex)

    def __repr__(self):
        return "SimplicialComplex(%s: %d vertices, dim %d)" % (
            self.name or "?", len(self.vertices), self.dim)


class SimplicialSelfMap:
    """Self-map given on vertices, optionally refined by edge paths.

    vertex_map uses labels.  edge_paths maps an edge (as an ascending pair
    of labels matching the complex's vertex order) to the vertex path its
    image traverses; only 1-dimensional complexes accept them.  Edges with
    no entry fall back to the one-step path and must then land on a simplex.
    """

    def __init__(self, complex_, vertex_map, edge_paths=None, name=""):
        self.complex = complex_
        self.name = name
        self.vertex_map = dict(vertex_map)
        for v in complex_.vertices:
            if v not in self.vertex_map:
                raise InputError("vertex %r has no image" % (v,))
            if self.vertex_map[v] not in complex_.index:
                raise InputError("image %r of %r is not a vertex"
                                 % (self.vertex_map[v], v))
        self.edge_paths = None
        if edge_paths is not None:
            if complex_.dim > 1:
                raise InputError("edge paths only apply to 1-dimensional complexes")
            self.edge_paths = {}
            for key, path in edge_paths.items():
                u, v = key
                iu, iv = complex_.index[u], complex_.index[v]
                if iu > iv:
                    iu, iv = iv, iu
                    path = list(reversed(path))
                if (iu, iv) not in complex_.position[1]:
                    raise InputError("edge path on non-edge %r" % (key,))
                self._check_path((iu, iv), path)
                self.edge_paths[(iu, iv)] = tuple(path)
        if self.edge_paths is None:
            self._check_simplicial()
        else:
            for edge in complex_.edges():
                if edge not in self.edge_paths:
                    u, v = complex_.labels_of(edge)
                    path = (self.vertex_map[u], self.vertex_map[v])
                    self._check_path(edge, path)
                    self.edge_paths[edge] = path

    def _check_path(self, edge, path):
        x = self.complex
        u, v = edge
        path = list(path)
        if len(path) < 1:
            raise InputError("empty edge path")
        if (path[0] != self.vertex_map[x.vertices[u]]
                or path[-1] != self.vertex_map[x.vertices[v]]):
            raise InputError("edge path endpoints disagree with vertex images "
                             "on edge %r" % (x.labels_of(edge),))
        for a, b in zip(path, path[1:]):
            if a == b:
                continue
            if not x.has_simplex((a, b)):
                raise InputError("edge path step %r-%r is not an edge" % (a, b))

    def _check_simplicial(self):
        x = self.complex
        for level in x.simplices:
            for s in level:
                image = sorted({x.index[self.vertex_map[x.vertices[i]]]
                                for i in s})
                d = len(image) - 1
                if tuple(image) not in x.position[d]:
                    raise InputError(
                        "map is not simplicial on %r (image %r)"
                        % (x.labels_of(s),
                           tuple(x.vertices[i] for i in image)))

    def apply(self, label):
        return self.vertex_map[label]

    def apply_index(self, i):
        return self.complex.index[self.vertex_map[self.complex.vertices[i]]]

    def is_vertex_map(self):
        return self.edge_paths is None

    def is_identity(self):
        return (self.edge_paths is None
                and all(v == w for v, w in self.vertex_map.items()))

    def is_monotone(self):
        """Order-preserving on every simplex (needed by products)."""
        if self.edge_paths is not None:
            return False
        x = self.complex
        for level in x.simplices[1:]:
            for s in level:
                imgs = [self.apply_index(i) for i in s]
                if any(a > b for a, b in zip(imgs, imgs[1:])):
                    return False
        return True

    def compose_after(self, other):
        """self o other (other applied first).  Same underlying complex."""
        if other.complex is not self.complex:
            raise InputError("composition across different complexes")
        vm = {v: self.vertex_map[other.vertex_map[v]]
              for v in self.complex.vertices}
        if self.edge_paths is None and other.edge_paths is None:
            return SimplicialSelfMap(self.complex, vm)
        x = self.complex
        paths = {}
        for edge in x.edges():
            if other.edge_paths is not None:
                mid = other.edge_paths[edge]
            else:
                u, v = x.labels_of(edge)
                mid = (other.vertex_map[u], other.vertex_map[v])
            out = [self.vertex_map[mid[0]]]
            for a, b in zip(mid, mid[1:]):
                if a == b:
                    continue
                ia, ib = x.index[a], x.index[b]
                if self.edge_paths is not None:
                    key = (min(ia, ib), max(ia, ib))
                    seg = list(self.edge_paths[key])
                    if ia > ib:
                        seg = list(reversed(seg))
                else:
                    seg = [self.vertex_map[a], self.vertex_map[b]]
                out.extend(seg[1:])
            paths[x.labels_of(edge)] = out
        return SimplicialSelfMap(self.complex, vm, edge_paths=paths)

    def __repr__(self):
        kind = "edge-path map" if self.edge_paths is not None else "vertex map"
        return "SimplicialSelfMap(%s on %s)" % (self.name or kind,
                                                self.complex.name or "?")


def iterate(f, k):
    """k-fold composite of f with itself; k >= 1."""
    if k < 1:
        raise InputError("iterate wants k >= 1")
    out = f
    for _ in range(k - 1):
        out = f.compose_after(out)
    return out


# ---------------------------------------------------------------------------
# chain data


class ChainData:
    """Boundary matrices of a complex, row-by-input, checked once."""

    def __init__(self, complex_):
        self.complex = complex_
        self.boundaries = [sp_zero_rows(complex_.n_simplices(0))]
        for d in range(1, complex_.dim + 1):
            rows = []
            pos = complex_.position[d - 1]
            for s in complex_.simplices[d]:
                row = {}
                for j in range(len(s)):
                    face = s[:j] + s[j + 1:]
                    k = pos[face]
                    row[k] = row.get(k, 0) + (-1) ** j
                rows.append({k: c for k, c in row.items() if c})
            self.boundaries.append(rows)
        for d in range(2, complex_.dim + 1):
            square = sp_mul(self.boundaries[d], self.boundaries[d - 1])
            if any(square[i] for i in range(len(square))):
                raise AssertionError("boundary squared is nonzero in dim %d" % d)

    def boundary(self, d):
        if 0 <= d <= self.complex.dim:
            return self.boundaries[d]
        return []


def chain_data(x):
    return ChainData(x)


def chain_map(f):
    """Row-sparse matrices of f on chains, one per dimension.

    Simplices whose image collapses contribute zero rows; otherwise the
    single entry carries the sign of the permutation sorting the image.
    Edge-path maps expand each edge into its signed path edges, which keeps
    the boundary identity because the path telescopes.
    """
    x = f.complex
    mats = []
    # dimension 0
    rows = []
    for (i,) in x.simplices[0]:
        rows.append({x.position[0][(f.apply_index(i),)]: 1})
    mats.append(rows)
    if f.edge_paths is not None:
        rows = []
        pos = x.position[1]
        for edge in x.simplices[1]:
            path = f.edge_paths[edge]
            row = {}
            for a, b in zip(path, path[1:]):
                if a == b:
                    continue
                ia, ib = x.index[a], x.index[b]
                key = (min(ia, ib), max(ia, ib))
                sign = 1 if ia < ib else -1
                c = row.get(pos[key], 0) + sign
                if c:
                    row[pos[key]] = c
                else:
                    row.pop(pos[key], None)
            rows.append(row)
        mats.append(rows)
        return mats
    for d in range(1, x.dim + 1):
        rows = []
        pos = x.position[d]
        for s in x.simplices[d]:
            imgs = [f.apply_index(i) for i in s]
            target, sign = sort_sign(imgs)
            if target is None:
                rows.append({})
            else:
                rows.append({pos[target]: sign})
        mats.append(rows)
    return mats


def verify_chain_map(data, mats):
    """M_d . D_d == D_d . M_{d-1} in every positive dimension."""
    x = data.complex
    for d in range(1, x.dim + 1):
        left = sp_mul(mats[d], data.boundaries[d])
        right = sp_mul(data.boundaries[d], mats[d - 1])
        if not sp_eq(left, right):
            return False
    return True


def lefschetz(f):
    """Alternating sum of chain-level traces."""
    mats = chain_map(f)
    data = chain_data(f.complex)
    if not verify_chain_map(data, mats):
        raise AssertionError("chain matrices do not commute with the boundary")
    return sum((-1) ** d * sp_trace(mats[d]) for d in range(len(mats)))


# ---------------------------------------------------------------------------
# homology with induced maps


def _kernel_and_relations(data, d):
    """Saturated kernel basis of the outgoing boundary plus incoming image
    written in that basis.  Column convention internally."""
    x = data.complex
    n = x.n_simplices(d)
    if n == 0:
        return [], []
    if d == 0:
        ker = [list(col) for col in identity(n)]
    else:
        dense = sp_to_dense(data.boundaries[d], x.n_simplices(d - 1))
        # transpose: columns act on chains in column convention
        d_out = [[dense[i][r] for i in range(n)] for r in range(len(dense[0]))] \
            if dense and dense[0] else [[0] * n for _ in range(0)]
        ker = kernel_basis(d_out) if d_out else [list(col) for col in identity(n)]
    kr = len(ker)
    if kr == 0:
        return [], []
    kmat = [[ker[c][r] for c in range(kr)] for r in range(n)]
    rels = []
    if d + 1 <= x.dim:
        dense_in = sp_to_dense(data.boundaries[d + 1], n)
        for row in dense_in:  # each (d+1)-simplex boundary is a kernel vector
            y = solve_z(kmat, list(row))
            if y is None:
                raise AssertionError("boundary image escapes the cycle lattice")
            rels.append(y)
    rel_cols = [[rels[j][i] for j in range(len(rels))] for i in range(kr)] \
        if rels else [[] for _ in range(kr)]
    return kmat, rel_cols


def homology(x):
    """[(betti, torsion orders)] per dimension."""
    data = chain_data(x)
    out = []
    for d in range(x.dim + 1):
        kmat, rel = _kernel_and_relations(data, d)
        kr = len(kmat[0]) if kmat else 0
        if kr == 0:
            out.append((0, ()))
            continue
        if not rel or not rel[0]:
            out.append((kr, ()))
            continue
        dd, _, _ = smith_normal_form(rel)
        rank = min(len(rel), len(rel[0]))
        invariants = [dd[i][i] for i in range(rank) if dd[i][i]]
        torsion = tuple(abs(s) for s in invariants if abs(s) != 1)
        out.append((kr - len(invariants), torsion))
    return out


def homology_lefschetz(f):
    """Alternating sum of traces on the free parts of homology."""
    x = f.complex
    data = chain_data(x)
    mats = chain_map(f)
    if not verify_chain_map(data, mats):
        raise AssertionError("chain matrices do not commute with the boundary")
    total = 0
    for d in range(x.dim + 1):
        kmat, rel = _kernel_and_relations(data, d)
        kr = len(kmat[0]) if kmat else 0
        if kr == 0:
            continue
        n = x.n_simplices(d)
        dense = sp_to_dense(mats[d], n) if d < len(mats) else [[0] * n] * n
        fcols = [[dense[i][r] for i in range(n)] for r in range(n)]
        # restriction to the cycle lattice: F K = K A, solved column by column
        a = []
        for c in range(kr):
            col = [sum(fcols[r][i] * kmat[i][c] for i in range(n))
                   for r in range(n)]
            y = solve_z(kmat, col)
            if y is None:
                raise AssertionError("cycle image escapes the cycle lattice")
            a.append(y)
        amat = [[a[c][r] for c in range(kr)] for r in range(kr)]
        if rel and rel[0]:
            dd, u, _ = smith_normal_form(rel)
            rank = min(len(rel), len(rel[0]))
            invariants = sum(1 for i in range(rank) if dd[i][i])
            uinv = invert_unimodular(u)
            b = mat_mul(mat_mul(u, amat), uinv)
            total += (-1) ** d * sum(b[i][i] for i in range(invariants, kr))
        else:
            total += (-1) ** d * sum(amat[i][i] for i in range(kr))
    return total


# ---------------------------------------------------------------------------
# barycentric subdivision


def barycentric(x, name=""):
    """Order complex of the face poset: one vertex per simplex, ordered by
    (dimension, lexicographic), simplices the strict inclusion chains."""
    verts = []
    for level in x.simplices:
        verts.extend(x.labels_of(s) for s in level)
    maximal = []

    def chains(prefix, s):
        extended = False
        d = len(s) - 1
        for e_level in x.simplices[d + 1:]:
            for t in e_level:
                if set(s) < set(t):
                    extended = True
                    chains(prefix + [t], t)
        if not extended:
            maximal.append([x.labels_of(c) for c in prefix])

    for level in x.simplices:
        for s in level:
            chains([s], s)
    return SimplicialComplex(verts, maximal, name=name or (x.name and "sd " + x.name))


def barycentric_map(f, sd):
    """The induced map on the subdivided complex: a face goes to its image
    face.  Always simplicial and always monotone for the (dim, lex) order."""
    x = f.complex
    vm = {}
    for level in x.simplices:
        for s in level:
            img = tuple(sorted({f.apply_index(i) for i in s}))
            vm[x.labels_of(s)] = x.labels_of(img)
    return SimplicialSelfMap(sd, vm, name=(f.name and "sd " + f.name))
