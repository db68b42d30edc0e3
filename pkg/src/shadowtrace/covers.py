"""Spanning-tree presentations, lifted chain data, and twisted-class traces.

The regular cover of a connected complex is handled entirely through matrix
bookkeeping over the group ring.  Conventions, fixed once and used by every
caller:

  * Chains of the cover are free left modules over the group ring; the deck
    group acts on the left.  A lifted map F with twist phi satisfies
    F(g.x) = phi(g).F(x).
  * Matrices are stored row-by-input: M[i] is a dict mapping output index to
    a GroupRingElement.  Under that storage a composite apply-F-then-G has
    matrix phi_G(M_F) . M_G, the boundary identity for a lifted map reads
    M_d . D_d == phi(D_d) . M_{d-1}, and the k-fold iterate has matrix
    phi^{k-1}(M) ... phi(M) . M.
  * A change of preferred lifts rewrites a diagonal entry g as
    phi(h) g h^{-1}.  Class bookkeeping therefore records the INVERSE of
    each diagonal entry under the u g phi(u)^{-1} classes of twisted_class:
    inversion turns the left twist into the right one, so the class sum is
    independent of every choice made here (tree, basepath, preferred lifts).

Fundamental group models follow the declaration contract: graphs get a free
model of rank = number of non-tree edges (rank 0 or 1 is promoted to the
free-abelian model); in the presence of 2-simplices the group must either
abelianize to the trivial group or be declared "free-abelian" or "finite",
in which case the declared model is built from the Smith form of the
abelianized relator matrix and every 2-simplex relator is verified to die
in it.  The declaration asserts that the comparison map is an isomorphism;
the relator pass checks it is at least well defined.
"""

from collections import deque

from .bimodules import UnsupportedStructure, hattori_stallings
from .complexes import InputError, chain_data, chain_map, sort_sign, sp_trace
from .groups import (FormalSum, GroupHom, GroupRingElement, cyclic_group,
                     free_abelian_group, free_group, hom_from_generator_images,
                     identity_hom, product_model, product_pack)
from .intlinalg import hermite_basis, mat_mul, smith_normal_form, solve_z
from .matrices import SparseMat


# ---------------------------------------------------------------------------
# sparse rows over the group ring


def ring_rows_zero(n):
    return [dict() for _ in range(n)]


def ring_mul(a, b):
    """Plain product of row-sparse ring matrices (a applied first)."""
    out = []
    for row in a:
        acc = {}
        for j, e in row.items():
            for k, d in b[j].items():
                v = acc.get(k)
                v = e * d if v is None else v + e * d
                if v:
                    acc[k] = v
                else:
                    acc.pop(k, None)
        out.append(acc)
    return out


def ring_map(a, hom):
    out = []
    for row in a:
        nrow = {}
        for j, e in row.items():
            img = e.apply_hom(hom)
            if img:
                nrow[j] = img
        out.append(nrow)
    return out


def ring_eq(a, b):
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        ka = {k for k, v in ra.items() if v}
        kb = {k for k, v in rb.items() if v}
        if ka != kb:
            return False
        if any(ra[k] != rb[k] for k in ka):
            return False
    return True


def ring_augment(a):
    out = []
    for row in a:
        nrow = {}
        for j, e in row.items():
            c = e.augmentation()
            if c:
                nrow[j] = c
        out.append(nrow)
    return out


def ring_antipode(e):
    """Termwise inversion of group keys, the group-ring anti-involution."""
    model = e.model
    terms = {}
    for data, c in e.terms.items():
        key = model.inv_data(data)
        terms[key] = terms.get(key, 0) + c
    return GroupRingElement(model, terms)


# ---------------------------------------------------------------------------
# fundamental group presentations


class Pi1Data:
    """Spanning tree, generator words on non-tree edges, group model."""

    def __init__(self, complex_, basepoint, tree_edges, model, gen_images,
                 gen_of_edge, declared):
        self.complex = complex_
        self.basepoint = basepoint
        self.tree_edges = tree_edges
        self.model = model
        self.gen_images = gen_images
        self.gen_of_edge = gen_of_edge
        self.declared = declared
        self._paths = self._tree_paths()

    def _tree_paths(self):
        x = self.complex
        adj = {i: [] for i in range(len(x.vertices))}
        for u, v in self.tree_edges:
            adj[u].append(v)
            adj[v].append(u)
        paths = {self.basepoint: [self.basepoint]}
        queue = deque([self.basepoint])
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u]):
                if w not in paths:
                    paths[w] = paths[u] + [w]
                    queue.append(w)
        if len(paths) != len(x.vertices):
            raise AssertionError("spanning tree does not span")
        return paths

    def tree_path(self, v):
        """Vertex index path from the basepoint to v along the tree."""
        return self._paths[v]

    def edge_word(self, u, v):
        """Group data of the oriented step u -> v (an edge of the complex)."""
        if u == v:
            return self.model.identity_data()
        key = (u, v) if u < v else (v, u)
        if key in self.tree_edges:
            return self.model.identity_data()
        k = self.gen_of_edge[key]
        data = self.gen_images[k]
        return data if u < v else self.model.inv_data(data)

    def path_word(self, vertices):
        """Product of edge words along a vertex index path."""
        acc = self.model.identity_data()
        for a, b in zip(vertices, vertices[1:]):
            acc = self.model.mul_data(acc, self.edge_word(a, b))
        return acc

    def loop_data(self, k):
        """The k-th generator as an explicit loop (vertex index path)."""
        for (u, v), idx in self.gen_of_edge.items():
            if idx == k:
                return self.tree_path(u) + list(reversed(self.tree_path(v)))
        raise KeyError(k)

    def verify_relators(self):
        x = self.complex
        if x.dim < 2:
            return
        for a, b, c in x.simplices[2]:
            w = self.model.mul_data(
                self.model.mul_data(self.edge_word(a, b), self.edge_word(b, c)),
                self.edge_word(c, a))
            if w != self.model.identity_data():
                raise AssertionError(
                    "relator of simplex %r does not die in the declared model"
                    % (x.labels_of((a, b, c)),))


def _bfs_tree(x, basepoint):
    adj = {i: set() for i in range(len(x.vertices))}
    for u, v in x.edges():
        adj[u].add(v)
        adj[v].add(u)
    seen = {basepoint}
    tree = set()
    queue = deque([basepoint])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w not in seen:
                seen.add(w)
                tree.add((min(u, w), max(u, w)))
                queue.append(w)
    if len(seen) != len(x.vertices):
        raise InputError("complex is not connected")
    return tree


def _abelianized_relators(x, gen_of_edge):
    """Exponent-sum vectors of the 2-simplex boundary loops."""
    rows = []
    for a, b, c in (x.simplices[2] if x.dim >= 2 else []):
        vec = [0] * len(gen_of_edge)
        for u, v in ((a, b), (b, c), (c, a)):
            key = (u, v) if u < v else (v, u)
            if key in gen_of_edge:
                vec[gen_of_edge[key]] += 1 if u < v else -1
        rows.append(vec)
    return rows


def pi1_presentation(x, basepoint=None, declare=None, expect=None,
                     tree_edges=None):
    """Presentation of the fundamental group from a spanning tree.

    declare: None for the automatic model (free on graphs, trivial when the
    relators abelianize everything away), or "free-abelian" / "finite".
    expect: declared rank (free-abelian) or order (finite), checked.
    tree_edges: an explicit spanning tree (ascending index pairs) to use
    instead of the breadth-first one; choices must not change class sums.
    """
    if basepoint is None:
        base = 0
    else:
        base = x.index[basepoint] if basepoint in x.index else basepoint
    if tree_edges is None:
        tree_edges = _bfs_tree(x, base)
    else:
        tree_edges = {tuple(sorted(e)) for e in tree_edges}
        if len(tree_edges) != len(x.vertices) - 1:
            raise InputError("not a spanning tree")
        for e in tree_edges:
            if e not in x.position[1]:
                raise InputError("tree edge %r is not an edge" % (e,))
    gens = sorted(e for e in x.edges() if e not in tree_edges)
    gen_of_edge = {e: k for k, e in enumerate(gens)}
    r = len(gens)

    if declare is None and x.dim <= 1:
        if r <= 1:
            model = free_abelian_group(r)
            images = [(1,)] if r == 1 else []
        else:
            model = free_group(r)
            images = [(k + 1,) for k in range(r)]
        p = Pi1Data(x, base, tree_edges, model, images, gen_of_edge, None)
        p.verify_relators()
        return p

    rel = _abelianized_relators(x, gen_of_edge)
    if r == 0:
        model = free_abelian_group(0)
        p = Pi1Data(x, base, tree_edges, model, [], gen_of_edge, declare)
        p.verify_relators()
        return p
    relT = [[rel[j][i] for j in range(len(rel))] for i in range(r)] \
        if rel else [[] for _ in range(r)]
    if rel:
        d, u, _ = smith_normal_form(relT)
        rank = sum(1 for i in range(min(r, len(rel))) if d[i][i])
        invariants = [abs(d[i][i]) for i in range(rank)]
    else:
        u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
        rank, invariants = 0, []
    torsion = [s for s in invariants if s != 1]
    free_rank = r - rank

    if declare is None:
        if free_rank == 0 and not torsion:
            model = free_abelian_group(0)
            p = Pi1Data(x, base, tree_edges, model, [()] * r, gen_of_edge, None)
            p.verify_relators()
            return p
        raise UnsupportedStructure(
            "fundamental group of %s is not obviously trivial; declare it "
            "as free-abelian or finite" % (x.name or "the complex",))
    if declare == "free-abelian":
        if torsion:
            raise UnsupportedStructure(
                "abelianization has torsion %r; not free-abelian" % (torsion,))
        if expect is not None and expect != free_rank:
            raise InputError("declared free-abelian rank %d, presentation "
                             "gives %d" % (expect, free_rank))
        model = free_abelian_group(free_rank)
        images = [tuple(u[i][j] for i in range(rank, r)) for j in range(r)]
        p = Pi1Data(x, base, tree_edges, model, images, gen_of_edge, declare)
        p.verify_relators()
        return p
    if declare == "finite":
        if free_rank != 0:
            raise UnsupportedStructure(
                "abelianization has free rank %d; not finite" % (free_rank,))
        if not torsion:
            model = cyclic_group(1)
            images = [0] * r
        else:
            model = cyclic_group(torsion[0])
            for s in torsion[1:]:
                model = product_model(model, cyclic_group(s))
            images = []
            for j in range(r):
                vals = [u[i][j] % invariants[i]
                        for i in range(rank) if invariants[i] != 1]
                g = vals[0]
                pos = 1
                sub = cyclic_group(torsion[0])
                for s in torsion[1:]:
                    nxt = cyclic_group(s)
                    g = product_pack(sub, nxt, g, vals[pos])
                    sub = product_model(sub, nxt)
                    pos += 1
                images.append(g)
        if expect is not None and expect != model.n:
            raise InputError("declared order %d, presentation gives %d"
                             % (expect, model.n))
        p = Pi1Data(x, base, tree_edges, model, images, gen_of_edge, declare)
        p.verify_relators()
        return p
    raise InputError("unknown declaration %r" % (declare,))


def presentation_with_model(x, basepoint, model, image_of_loop,
                            tree_edges=None, declared="declared"):
    """Presentation whose generator images are computed by a callback.

    image_of_loop receives the generator's explicit loop (vertex index
    path) and returns model data.  Used for product complexes, where the
    image is read off coordinatewise.  Relators are verified afterwards.
    """
    base = x.index[basepoint] if basepoint in x.index else basepoint
    if tree_edges is None:
        tree_edges = _bfs_tree(x, base)
    gens = sorted(e for e in x.edges() if e not in tree_edges)
    gen_of_edge = {e: k for k, e in enumerate(gens)}
    images = []
    stub = Pi1Data(x, base, tree_edges, model, [None] * len(gens),
                   gen_of_edge, declared)
    for k in range(len(gens)):
        loop = stub.loop_data(k)
        images.append(image_of_loop(loop))
    p = Pi1Data(x, base, tree_edges, model, images, gen_of_edge, declared)
    p.verify_relators()
    return p


# ---------------------------------------------------------------------------
# lifted chain data


def image_path(f, path):
    """Image of a vertex index path under a self-map, as a vertex index path."""
    x = f.complex
    out = [f.apply_index(path[0])]
    for a, b in zip(path, path[1:]):
        if a == b:
            continue
        if f.edge_paths is not None:
            key = (min(a, b), max(a, b))
            seg = [x.index[lbl] for lbl in f.edge_paths[key]]
            if a > b:
                seg = list(reversed(seg))
        else:
            seg = [f.apply_index(a), f.apply_index(b)]
        out.extend(seg[1:])
    return out


def lifted_boundaries(p):
    """Boundary matrices of the cover, row-by-input over the group ring."""
    x = p.complex
    model = p.model
    one = model.identity_data()
    out = [ring_rows_zero(x.n_simplices(0))]
    for d in range(1, x.dim + 1):
        rows = []
        pos = x.position[d - 1]
        for s in x.simplices[d]:
            row = {}
            for j in range(len(s)):
                face = s[:j] + s[j + 1:]
                k = pos[face]
                data = p.edge_word(s[0], s[1]) if j == 0 else one
                e = GroupRingElement(model, {data: (-1) ** j})
                prev = row.get(k)
                e = e if prev is None else prev + e
                if e:
                    row[k] = e
                else:
                    row.pop(k, None)
            rows.append(row)
        out.append(rows)
    return out


def _spanning_columns(a):
    """Small list of column indices of a whose columns span the full
    integer lattice, or None if the columns do not surject.

    Greedy scan: a column is kept whenever it strictly enlarges the
    Hermite basis of the kept set, stopping as soon as that basis is the
    identity.  Keeps the later solve small when a has thousands of
    columns, as presentations of product complexes do.
    """
    k = len(a)
    r = len(a[0]) if k else 0
    pick = []
    basis = []

    def is_full(bs):
        if len(bs) != k:
            return False
        return all(bs[t][i] == (1 if i == t else 0)
                   for t in range(k) for i in range(k))

    for j in range(r):
        colj = [a[i][j] for i in range(k)]
        if all(c == 0 for c in colj):
            continue
        cols = basis + [colj]
        trial = [[cols[t][i] for t in range(len(cols))] for i in range(k)]
        nb, _ = hermite_basis(trial)
        if nb != basis:
            basis = nb
            pick.append(j)
            if is_full(basis):
                return pick
    return None


class CoverLift:
    """Lifted chain matrices of a self-map together with its pi1 twist.

    Verified on construction: the lifted boundaries square to zero, the
    lifted map commutes with them through the twist, and everything
    augments back to the plain chain data.
    """

    def __init__(self, f, p, basepath=None, _raw=None):
        self.f = f
        self.p = p
        x = f.complex
        model = p.model
        if _raw is not None:
            self.basepath, self.phi, self.matrices, self.boundaries, self.power = _raw
            return
        self.power = 1
        base = p.basepoint
        if basepath is None:
            basepath = _shortest_path(x, f.apply_index(base), base)
        else:
            basepath = [x.index[v] if v in x.index else v for v in basepath]
        if basepath[0] != f.apply_index(base) or basepath[-1] != base:
            raise InputError("basepath must run from the basepoint image "
                             "to the basepoint")
        self.basepath = basepath
        c0 = model.inv_data(p.path_word(basepath))
        self._m = {}
        for v in range(len(x.vertices)):
            w = p.path_word(image_path(f, p.tree_path(v)))
            self._m[v] = model.mul_data(c0, w)
        self.phi = self._induced_hom()
        self.boundaries = lifted_boundaries(p)
        self.matrices = self._lift_matrices()
        self._verify()

    def _induced_hom(self):
        p, f = self.p, self.f
        model = p.model
        datas = []
        for (u, v), k in sorted(p.gen_of_edge.items(), key=lambda kv: kv[1]):
            w = p.path_word(image_path(f, [u, v]))
            data = model.mul_data(model.mul_data(self._m[u], w),
                                  model.inv_data(self._m[v]))
            datas.append(data)
        r = len(datas)
        if model.kind == "free":
            # presentation generators ARE the model generators
            phi = GroupHom(model, model, datas)
        elif model.kind == "free_abelian":
            k = model.rank
            if k == 0:
                phi = identity_hom(model)
            else:
                # solve psi . A == B through the quotient map A; the solve
                # runs over a few spanning columns, not all r generators
                a = [[p.gen_images[j][i] for j in range(r)] for i in range(k)]
                b = [[datas[j][i] for j in range(r)] for i in range(k)]
                pick = _spanning_columns(a)
                if pick is None:
                    raise AssertionError("presentation does not surject")
                small = [[a[i][j] for j in pick] for i in range(k)]
                x = [[0] * k for _ in range(r)]
                for i in range(k):
                    e = [1 if t == i else 0 for t in range(k)]
                    sol = solve_z(small, e)
                    if sol is None:
                        raise AssertionError("presentation does not surject")
                    for t, j in enumerate(pick):
                        x[j][i] = sol[t]
                phi = GroupHom(model, model, mat_mul(b, x))
        else:
            images = {p.gen_images[j]: model.element(datas[j])
                      for j in range(r)}
            phi = hom_from_generator_images(model, model, images)
        for j in range(r):
            if phi.apply_data(p.gen_images[j]) != datas[j]:
                raise AssertionError("induced map is not well defined")
        return phi

    def _lift_matrices(self):
        f, p = self.f, self.p
        x = f.complex
        model = p.model
        mats = []
        rows = []
        for (i,) in x.simplices[0]:
            j = x.position[0][(f.apply_index(i),)]
            rows.append({j: GroupRingElement(model, {self._m[i]: 1})})
        mats.append(rows)
        if f.edge_paths is not None:
            rows = []
            pos = x.position[1]
            for (u, v) in x.simplices[1]:
                path = [x.index[lbl] for lbl in f.edge_paths[(u, v)]]
                row = {}
                c = self._m[u]
                for a, b in zip(path, path[1:]):
                    if a == b:
                        continue
                    nxt = model.mul_data(c, p.edge_word(a, b))
                    if a < b:
                        key, sign, deck = (a, b), 1, c
                    else:
                        key, sign, deck = (b, a), -1, nxt
                    e = GroupRingElement(model, {deck: sign})
                    k = pos[key]
                    prev = row.get(k)
                    e = e if prev is None else prev + e
                    if e:
                        row[k] = e
                    else:
                        row.pop(k, None)
                    c = nxt
                rows.append(row)
            mats.append(rows)
            return mats
        phi = self.phi
        for d in range(1, x.dim + 1):
            rows = []
            pos = x.position[d]
            for s in x.simplices[d]:
                imgs = [f.apply_index(i) for i in s]
                if len(set(imgs)) != len(imgs):
                    rows.append({})
                    continue
                target, sign = sort_sign(imgs)
                j0 = imgs.index(target[0])
                deck = model.mul_data(
                    phi.apply_data(p.edge_word(s[0], s[j0])), self._m[s[j0]])
                rows.append({pos[target]: GroupRingElement(model, {deck: sign})})
            mats.append(rows)
        return mats

    def _verify(self):
        f = self.f
        x = f.complex
        for d in range(2, x.dim + 1):
            sq = ring_mul(self.boundaries[d], self.boundaries[d - 1])
            if any(sq[i] for i in range(len(sq))):
                raise AssertionError("lifted boundary squared is nonzero")
        for d in range(1, len(self.matrices)):
            left = ring_mul(self.matrices[d], self.boundaries[d])
            right = ring_mul(ring_map(self.boundaries[d], self.phi),
                             self.matrices[d - 1])
            if not ring_eq(left, right):
                raise AssertionError(
                    "lifted map does not commute with the boundary in dim %d" % d)
        data = chain_data(x)
        plain = chain_map(f)
        for d in range(len(self.matrices)):
            if ring_augment(self.matrices[d]) != plain[d]:
                raise AssertionError("augmented lift disagrees with the "
                                     "chain map in dim %d" % d)
            if ring_augment(self.boundaries[d]) != data.boundaries[d]:
                raise AssertionError("augmented lifted boundary disagrees "
                                     "with the boundary in dim %d" % d)

    def iterate(self, k):
        """Lift of the k-th iterate: phi^{k-1}(M)...phi(M).M, twist phi^k."""
        if k < 1:
            raise InputError("iterate wants k >= 1")
        phi = self.phi
        out = self.matrices
        hom = phi
        for _ in range(k - 1):
            out = [ring_mul(ring_map(out[d], phi), self.matrices[d])
                   for d in range(len(out))]
            hom = phi.compose(hom)
        return CoverLift(self.f, self.p,
                         _raw=(self.basepath, hom, out, self.boundaries, k))

    def lefschetz(self):
        return sum((-1) ** d * sp_trace(ring_augment(self.matrices[d]))
                   for d in range(len(self.matrices)))

    def diagonal_class_sum(self):
        """Alternating hattori_stallings of the antipoded diagonals."""
        total = FormalSum()
        for d, rows in enumerate(self.matrices):
            n = len(rows)
            entries = {}
            for i, row in enumerate(rows):
                e = row.get(i)
                if e:
                    entries[(i, i)] = ring_antipode(e)
            hs = hattori_stallings(SparseMat(n, n, entries), self.phi)
            total = total + hs.scale((-1) ** d)
        return total


def _shortest_path(x, src, dst):
    adj = {i: set() for i in range(len(x.vertices))}
    for u, v in x.edges():
        adj[u].add(v)
        adj[v].add(u)
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for w in sorted(adj[u]):
            if w not in prev:
                prev[w] = u
                queue.append(w)
    if dst not in prev:
        raise InputError("no path between basepoint image and basepoint")
    path = [dst]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    return list(reversed(path))


def lift_to_cover(f, p, basepath=None):
    return CoverLift(f, p, basepath=basepath)


def reidemeister(f, p=None, basepath=None, power=1):
    """Alternating class sum of the lifted chain diagonals.

    Values live in the free abelian group on phi^power-twisted conjugacy
    classes; the augmentation equals the Lefschetz number of f^power.
    """
    if isinstance(f, CoverLift):
        lift = f
    else:
        if p is None:
            p = pi1_presentation(f.complex)
        lift = CoverLift(f, p, basepath=basepath)
    if power != 1:
        lift = lift.iterate(power)
    return lift.diagonal_class_sum()
