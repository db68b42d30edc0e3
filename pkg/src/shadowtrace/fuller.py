"""Cyclic product complexes, the rotation action, and trace unwinding.

The n-fold product of a complex is triangulated as the order complex of the
product vertex poset: simplices are strictly increasing chains of vertex
tuples (componentwise, in the base vertex order) whose coordinate
projections are simplices.  That triangulation is symmetric under
coordinate rotation, so the cyclic shift is always a simplicial
automorphism, and it is closed under the componentwise self-map whenever
the base map is order-preserving on every simplex.  A vertex map that is
not order-preserving is replaced by its barycentric subdivision, which
always is; the substitution is recorded in the output notes.

Maps given by edge paths (the degree-d circle maps) have no simplicial
representative on any fixed complex, so no product vertex map exists for
them.  The product trace is then computed algebraically: the chain complex
of the product is modeled by the n-fold tensor complex, where the cyclic
trace of f expands over diagonal tuples of matrix entries

    a_1 = M[s_n, s_1],  a_2 = M[s_1, s_2],  ...,  a_n = M[s_{n-1}, s_n]

with sign (-1)^d on the degree-d block (the rotation's Koszul sign folds
into the total-degree sign, leaving one sign per base degree).  Over the
group ring the tuple of inverted entries is recorded as an element of G^n
and classed under the rotation-composed twist

    Phi(h_1, ..., h_n) = (phi(h_n), phi(h_1), ..., phi(h_{n-1})).

unwind_classes sends such a class to the phi^n-twisted class of the cyclic
product w = b_n . phi(b_{n-1}) . phi^2(b_{n-2}) ... phi^{n-1}(b_1).  With
the inversion-encoded keys used throughout, w is literally the inverted
diagonal of the n-th iterate matrix, which is why the unwound Fuller class
sum equals the class sum of f^n term by term.
"""

import math
import os
from itertools import product as iproduct

from .bimodules import UnsupportedStructure
from .complexes import (InputError, SimplicialComplex, SimplicialSelfMap,
                        barycentric, barycentric_map, chain_map, iterate,
                        lefschetz)
from .covers import CoverLift, pi1_presentation, presentation_with_model
from .groups import (FormalSum, GroupElement, GroupHom, identity_hom,
                     product_model, product_pack, product_unpack,
                     twisted_class)
from .intlinalg import identity as int_identity
from .intlinalg import kernel_basis, mat_mul, mat_sub, solve_z

DEFAULT_BUDGET = 200000

OBSTRUCTION_CAVEAT = (
    "vanishing of the class sums is a complete obstruction to removing "
    "periodic points only on manifolds of dimension at least 3; on smaller "
    "complexes the verdicts are obstructions, not existence proofs")


class BudgetError(InputError):
    """Product construction would exceed the simplex budget."""

    def __init__(self, estimate, budget):
        super().__init__(
            "product needs at least %d simplices, budget is %d"
            % (estimate, budget))
        self.estimate = estimate
        self.budget = budget


def simplex_budget(budget=None):
    if budget is not None:
        return budget
    raw = os.environ.get("SHADOWTRACE_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise InputError("SHADOWTRACE_BUDGET must be an integer")
    return DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# the order-complex product


def maximal_simplices(x):
    """Index tuples of the simplices that are not proper faces."""
    non_max = set()
    for d in range(1, x.dim + 1):
        for s in x.simplices[d]:
            for j in range(len(s)):
                non_max.add(s[:j] + s[j + 1:])
    out = []
    for d in range(x.dim + 1):
        for s in x.simplices[d]:
            if s not in non_max:
                out.append(s)
    return out


def _cell_chains(dims):
    """Maximal chains of the grid poset prod [0..dims[i]], as tuples."""
    n = len(dims)
    top = tuple(dims)
    chains = []

    def rec(pos, acc):
        if pos == top:
            chains.append(tuple(acc))
            return
        for i in range(n):
            if pos[i] < dims[i]:
                nxt = pos[:i] + (pos[i] + 1,) + pos[i + 1:]
                acc.append(nxt)
                rec(nxt, acc)
                acc.pop()

    start = (0,) * n
    rec(start, [start])
    return chains


def power_complex(x, n, budget=None):
    """Order-complex triangulation of the n-fold product of x."""
    budget = simplex_budget(budget)
    maxs = maximal_simplices(x)
    est = 0
    for combo in iproduct(maxs, repeat=n):
        dims = [len(s) - 1 for s in combo]
        m = math.factorial(sum(dims))
        for dd in dims:
            m //= math.factorial(dd)
        est += m
        if est > budget:
            raise BudgetError(est, budget)
    tops = set()
    chain_cache = {}
    for combo in iproduct(maxs, repeat=n):
        dims = tuple(len(s) - 1 for s in combo)
        chains = chain_cache.get(dims)
        if chains is None:
            chains = _cell_chains(dims)
            chain_cache[dims] = chains
        for chain in chains:
            cell = tuple(
                tuple(x.vertices[combo[i][p[i]]] for i in range(n))
                for p in chain)
            tops.add(cell)
    verts = sorted({v for cell in tops for v in cell})
    px = SimplicialComplex(verts, sorted(tops),
                           name="%s^%d" % (x.name or "X", n))
    total = px.total_simplices()
    if total > budget:
        raise BudgetError(total, budget)
    return px


def rotation_map(px, n):
    """Coordinate rotation (t_1,...,t_n) -> (t_n, t_1, ..., t_{n-1})."""
    vm = {t: t[-1:] + t[:-1] for t in px.vertices}
    return SimplicialSelfMap(px, vm, name="rotation")


def fuller_vertex_map(f, px, n):
    """(t_1,...,t_n) -> (f(t_n), f(t_1), ..., f(t_{n-1})); f order-preserving."""
    vm = {t: tuple(f.apply(v) for v in t[-1:] + t[:-1]) for t in px.vertices}
    return SimplicialSelfMap(px, vm, name="fuller(%s)" % (f.name or "f"))


class FullerProductData:
    """Product complex, rotation action, and the cyclic self-map.

    work_base / work_map are the complex and map the product was actually
    built over: the originals, or the barycentric subdivision when the
    original vertex map was not order-preserving.  fuller_map is None for
    edge-path maps, which have no simplicial representative; their traces
    go through the algebraic route instead (see module docstring).
    """

    def __init__(self, base, map_, n, work_base, work_map, subdivided,
                 complex_, rotation, fuller_map, route, notes):
        self.base = base
        self.map = map_
        self.n = n
        self.work_base = work_base
        self.work_map = work_map
        self.subdivided = subdivided
        self.complex = complex_
        self.rotation = rotation
        self.fuller_map = fuller_map
        self.route = route
        self.notes = list(notes)


def fuller_complex(x, f, n, budget=None):
    if n < 1:
        raise InputError("order must be at least 1")
    notes = []
    y, g = x, f
    subdivided = False
    if f.is_vertex_map() and not f.is_monotone():
        y = barycentric(x, name="sd(%s)" % (x.name or "X"))
        g = barycentric_map(f, y)
        subdivided = True
        notes.append("base subdivided once so the map preserves the "
                     "vertex order on every simplex")
    if n == 1:
        ident = SimplicialSelfMap(y, {v: v for v in y.vertices},
                                  name="rotation")
        return FullerProductData(x, f, 1, y, g, subdivided, y, ident, g,
                                 "geometric", notes)
    if not f.is_vertex_map():
        notes.append("map is given by edge paths; product traces use the "
                     "algebraic expansion")
        try:
            px = power_complex(y, n, budget)
            rot = rotation_map(px, n)
        except BudgetError as e:
            px, rot = None, None
            notes.append("product complex skipped: %s" % e)
        return FullerProductData(x, f, n, y, g, subdivided, px, rot, None,
                                 "algebraic", notes)
    px = power_complex(y, n, budget)
    rot = rotation_map(px, n)
    fm = fuller_vertex_map(g, px, n)
    if not iterate(rot, n).is_identity():
        raise AssertionError("rotation does not have order n")
    a = fm.compose_after(rot)
    b = rot.compose_after(fm)
    if any(a.apply(v) != b.apply(v) for v in px.vertices):
        raise AssertionError("cyclic map is not rotation-equivariant")
    if px.euler_characteristic() != y.euler_characteristic() ** n:
        raise AssertionError("product Euler characteristic mismatch")
    return FullerProductData(x, f, n, y, g, subdivided, px, rot, fm,
                             "geometric", notes)


# ---------------------------------------------------------------------------
# power models, the rotation twist, unwinding


def _power_subs(base, n):
    """Intermediate product models base, base^2, ..., base^n.

    Building a finite product model fills in its whole multiplication
    table, so the chain is computed once and threaded through pack and
    unpack instead of being rebuilt per element.
    """
    subs = [base]
    for _ in range(n - 1):
        subs.append(product_model(subs[-1], base))
    return subs


def power_pack(base, n, datas, subs=None):
    if subs is None:
        subs = _power_subs(base, n)
    acc = datas[0]
    for i in range(1, n):
        acc = product_pack(subs[i - 1], base, acc, datas[i])
    return acc


def power_unpack(base, n, data, subs=None):
    if subs is None:
        subs = _power_subs(base, n)
    out = []
    for i in range(n - 1, 0, -1):
        data, last = product_unpack(subs[i - 1], base, data)
        out.append(last)
    out.append(data)
    out.reverse()
    return tuple(out)


def fuller_twist(phi, n, subs=None):
    """The rotation-composed endomorphism Phi of G^n (see module docstring)."""
    base = phi.src
    if phi.dst != base:
        raise InputError("twist must be an endomorphism")
    if n == 1:
        return phi
    if subs is None:
        subs = _power_subs(base, n)
    power = subs[-1]
    if base.kind == "free_abelian":
        r = base.rank
        if r == 0:
            return identity_hom(power)
        m = [[0] * (n * r) for _ in range(n * r)]
        pm = phi.matrix
        for t in range(n):
            s = (t - 1) % n
            for i in range(r):
                for j in range(r):
                    m[t * r + i][s * r + j] = pm[i][j]
        return GroupHom(power, power, m)
    if base.kind == "finite":
        images = []
        for gdata in range(power.n):
            datas = power_unpack(base, n, gdata, subs)
            shifted = tuple(phi.apply_data(d)
                            for d in datas[-1:] + datas[:-1])
            images.append(power_pack(base, n, shifted, subs))
        return GroupHom(power, power, tuple(images))
    raise UnsupportedStructure("cyclic products need a finite or "
                               "free-abelian group")


def _hom_power(phi, n):
    out = phi
    for _ in range(n - 1):
        out = phi.compose(out)
    return out


class UnwindBijection:
    """Classes of G^n under the rotation twist <-> phi^n classes of G.

    apply_key sends the class of (b_1,...,b_n) to the class of the cyclic
    product b_n . phi(b_{n-1}) ... phi^{n-1}(b_1) under phi^n.  verify()
    proves well-definedness and bijectivity: exhaustively for finite G,
    by integer lattice comparison for free-abelian G.
    """

    def __init__(self, n, phi):
        base = phi.src
        if phi.dst != base:
            raise InputError("twist must be an endomorphism")
        if base.kind == "free":
            raise UnsupportedStructure(
                "unwinding needs a finite or free-abelian group")
        self.n = n
        self.base = base
        self.base_phi = phi
        self.subs = _power_subs(base, n)
        self.power = self.subs[-1]
        self.twist = fuller_twist(phi, n, self.subs)
        self.power_phi = _hom_power(phi, n)

    def word(self, datas):
        model = self.base
        acc = datas[self.n - 1]
        for j in range(1, self.n):
            d = datas[self.n - 1 - j]
            for _ in range(j):
                d = self.base_phi.apply_data(d)
            acc = model.mul_data(acc, d)
        return acc

    def apply_rep(self, data):
        datas = power_unpack(self.base, self.n, data, self.subs)
        w = self.word(datas)
        return twisted_class(GroupElement(self.base, w), self.power_phi)

    def apply_key(self, cls):
        if cls.model != self.power or cls.twist != self.twist:
            raise InputError("class does not live over this cyclic twist")
        return self.apply_rep(cls.rep)

    def apply_sum(self, fs):
        return fs.map_keys(self.apply_key)

    def verify(self):
        if self.base.kind == "finite":
            return self._verify_finite()
        return self._verify_free_abelian()

    def _verify_finite(self):
        targets = {}
        for g in range(self.power.n):
            rep = twisted_class(GroupElement(self.power, g), self.twist).rep
            t = self.apply_rep(g).rep
            targets.setdefault(rep, set()).add(t)
        if any(len(v) != 1 for v in targets.values()):
            raise AssertionError("unwinding is not constant on classes")
        image = {next(iter(v)) for v in targets.values()}
        if len(image) != len(targets):
            raise AssertionError("unwinding is not injective on classes")
        full = {twisted_class(GroupElement(self.base, g), self.power_phi).rep
                for g in range(self.base.n)}
        if image != full:
            raise AssertionError("unwinding is not surjective on classes")
        return True

    def _verify_free_abelian(self):
        r = self.base.rank
        n = self.n
        if r == 0:
            return True
        pm = [list(row) for row in self.base_phi.matrix]
        powers = [int_identity(r)]
        for _ in range(n):
            powers.append(mat_mul(pm, powers[-1]))
        # W = [phi^{n-1} | phi^{n-2} | ... | I], block k for b_{k+1}
        w = [[0] * (n * r) for _ in range(r)]
        for k in range(n):
            blk = powers[n - 1 - k]
            for i in range(r):
                for j in range(r):
                    w[i][k * r + j] = blk[i][j]
        l1 = mat_sub(int_identity(n * r),
                     [list(row) for row in self.twist.matrix])
        l2 = mat_sub(int_identity(r), powers[n])
        # well defined: W maps the source relation lattice into the target's
        for c in range(n * r):
            col = [sum(w[i][t] * l1[t][c] for t in range(n * r))
                   for i in range(r)]
            if solve_z(l2, col) is None:
                raise AssertionError("unwinding is not well defined")
        # injective on classes: the W-preimage of the target lattice is
        # exactly the source lattice.  Solutions of [W | -L2] . (x; y) = 0,
        # projected to x, generate the preimage.
        stacked = [w[i] + [-l2[i][j] for j in range(r)] for i in range(r)]
        for vec in kernel_basis(stacked):
            xpart = vec[:n * r]
            if solve_z(l1, xpart) is None:
                raise AssertionError("unwinding is not injective on classes")
        # surjective: the b_n block of W is the identity
        return True


def unwind_classes(n, phi):
    return UnwindBijection(n, phi)


# ---------------------------------------------------------------------------
# algebraic cyclic traces


def algebraic_fuller_lefschetz(f, n):
    """Trace of the cyclic map on the tensor complex, over the integers.

    Expands products over diagonal tuples of chain-matrix entries; agrees
    with lefschetz(iterate(f, n)) without ever composing matrices.
    """
    mats = chain_map(f)
    total = 0
    for d, rows in enumerate(mats):
        sign = (-1) ** d

        def rec(cur, depth, acc, start):
            nonlocal total
            if depth == n - 1:
                c = rows[cur].get(start)
                if c:
                    total += sign * acc * c
                return
            for j, c in rows[cur].items():
                rec(j, depth + 1, acc * c, start)

        for s in range(len(rows)):
            rec(s, 0, 1, s)
    return total


def algebraic_fuller_trace(lift, n, uw=None):
    """Cyclic class sum of a lifted map, valued in rotation-twisted classes
    of G^n, expanded over diagonal tuples of the lifted matrices."""
    p = lift.p
    if uw is None:
        uw = unwind_classes(n, lift.phi)
    model = p.model
    power, twist = uw.power, uw.twist
    total = FormalSum()
    for d, rows in enumerate(lift.matrices):
        sign = (-1) ** d

        def emit(entries):
            for combo in iproduct(*[list(e.terms.items()) for e in entries]):
                coeff = sign
                for _, c in combo:
                    coeff *= c
                datas = tuple(model.inv_data(dt) for dt, _ in combo)
                packed = power_pack(model, n, datas, uw.subs)
                cls = twisted_class(GroupElement(power, packed), twist)
                total.add(cls, coeff)

        def rec(cur, acc, start):
            if len(acc) == n - 1:
                e = rows[cur].get(start)
                if e:
                    emit(acc + [e])
                return
            for j, e in rows[cur].items():
                rec(j, acc + [e], start)

        for s in range(len(rows)):
            rec(s, [], s)
    return total


# ---------------------------------------------------------------------------
# product presentations and product lifts


def projection_presentation(cx, py, k, width):
    """pi1 of a complex whose vertices are width-tuples of base labels,
    identified with G^k by projecting loops to coordinates 0..k-1.

    Used for the product complex itself (k = width = n) and for periodic
    subcomplexes (k < width).  Relators are verified in the power model.
    """
    base_lbl = py.complex.vertices[py.basepoint]
    bp = (base_lbl,) * width
    subs = _power_subs(py.model, k)
    model = subs[-1]

    def image_of_loop(loop):
        labels = [cx.vertices[i] for i in loop]
        datas = []
        for c in range(k):
            seq = [py.complex.index[lbl[c]] for lbl in labels]
            datas.append(py.path_word(seq))
        if k == 1:
            return datas[0]
        return power_pack(py.model, k, datas, subs)

    return presentation_with_model(cx, bp, model, image_of_loop,
                                   declared="product")


def _diagonal_path(base_path, y, width):
    return [(y.vertices[i],) * width for i in base_path]


def product_lift(pd, py, base_lift, cx=None, self_map=None, k=None):
    """Lift of a cyclic self-map on a (sub)product complex, with the
    diagonal image of the base lift's basepath; the induced twist is
    checked against the rotation-composed twist of the base lift."""
    if cx is None:
        cx, self_map, k = pd.complex, pd.fuller_map, pd.n
    pres = projection_presentation(cx, py, k, pd.n)
    dpath = _diagonal_path(base_lift.basepath, pd.work_base, pd.n)
    lift = CoverLift(self_map, pres, basepath=dpath)
    expected = fuller_twist(base_lift.phi, k)
    if lift.phi != expected:
        raise AssertionError("product twist does not match the rotation-"
                             "composed twist")
    return lift


# ---------------------------------------------------------------------------
# the three comparison checks


def fuller_lefschetz_check(x, f, n, budget=None):
    target = lefschetz(iterate(f, n))
    if algebraic_fuller_lefschetz(f, n) != target:
        return False
    try:
        pd = fuller_complex(x, f, n, budget)
    except BudgetError:
        pd = None
    if pd is not None and pd.fuller_map is not None and pd.n > 1:
        if lefschetz(pd.fuller_map) != target:
            return False
        if lefschetz(iterate(pd.work_map, n)) != target:
            return False
    return True


def fuller_reidemeister_check(x, f, n, p=None, declare=None, expect=None,
                              budget=None):
    if p is None:
        p = pi1_presentation(x, declare=declare, expect=expect)
    l1 = CoverLift(f, p)
    rn = l1.iterate(n).diagonal_class_sum()
    uw = unwind_classes(n, l1.phi)
    ra = algebraic_fuller_trace(l1, n, uw)
    if uw.apply_sum(ra) != rn:
        return False
    try:
        pd = fuller_complex(x, f, n, budget)
    except BudgetError:
        pd = None
    if pd is not None and pd.fuller_map is not None and pd.n > 1 \
            and pd.complex is not None:
        if pd.subdivided:
            py = _subdivided_presentation(pd, p)
            ly = CoverLift(pd.work_map, py)
            rny = ly.iterate(n).diagonal_class_sum()
            uwy = unwind_classes(n, ly.phi)
        else:
            py, ly, rny, uwy = p, l1, rn, uw
        lp = product_lift(pd, py, ly)
        if uwy.apply_sum(lp.diagonal_class_sum()) != rny:
            return False
    return True


def _subdivided_presentation(pd, p):
    """Presentation of the subdivided base, with the original declaration."""
    expect = None
    if p.declared == "free-abelian":
        expect = p.model.rank
    elif p.declared == "finite":
        expect = p.model.n
    return pi1_presentation(pd.work_base, declare=p.declared, expect=expect)


# ---------------------------------------------------------------------------
# periodic subcomplexes


def cyclic_fixed_subcomplex(d, fp):
    """Subcomplex of tuples of period k = n/d, its identification with the
    order-k product, and the restricted cyclic map (None when the cyclic
    map is algebraic-only)."""
    n = fp.n
    if n % d:
        raise InputError("%d does not divide %d" % (d, n))
    k = n // d
    if fp.complex is None:
        raise InputError("no product complex available (over budget)")
    if n == 1:
        ident = {v: v for v in fp.complex.vertices}
        return fp.complex, ident, fp.fuller_map
    vset = {t for t in fp.complex.vertices if t == t[k:] + t[:k]}
    kept = []
    for dim in range(fp.complex.dim + 1):
        for s in fp.complex.simplices[dim]:
            labels = tuple(fp.complex.vertices[i] for i in s)
            if all(v in vset for v in labels):
                kept.append(labels)
    sub = SimplicialComplex(sorted(vset), kept,
                            name="%s period %d" % (fp.complex.name, k))
    if k == 1:
        ident = {t: t[0] for t in sub.vertices}
    else:
        ident = {t: t[:k] for t in sub.vertices}
    restricted = None
    if fp.fuller_map is not None:
        restricted = SimplicialSelfMap(
            sub, {t: fp.fuller_map.apply(t) for t in sub.vertices},
            name="restricted %s" % fp.fuller_map.name)
    return sub, ident, restricted


def _isomorphic_via(a, ident, b):
    """Check ident: vertices(a) -> vertices(b) is a simplicial isomorphism."""
    if sorted(ident[v] for v in a.vertices) != sorted(b.vertices):
        return False
    if a.total_simplices() != b.total_simplices():
        return False
    for dim in range(a.dim + 1):
        for s in a.simplices[dim]:
            labels = tuple(sorted(ident[a.vertices[i]] for i in s))
            if not b.has_simplex(labels):
                return False
    return True


def fixed_subcomplex_check(x, f, n, p=None, declare=None, expect=None,
                           budget=None):
    """Verify the period-k identifications for every divisor of n: the
    subcomplex is isomorphic to the order-k product, the identification
    carries the restricted cyclic map to the order-k cyclic map, and the
    class sums agree when lifts are available."""
    pd = fuller_complex(x, f, n, budget)
    if pd.complex is None:
        raise InputError("no product complex available (over budget)")
    py = None
    ly = None
    if pd.fuller_map is not None:
        if p is None:
            p = pi1_presentation(x, declare=declare, expect=expect)
        py = _subdivided_presentation(pd, p) if pd.subdivided else p
        ly = CoverLift(pd.work_map, py)
    for d in _divisors(n):
        k = n // d
        sub, ident, res = cyclic_fixed_subcomplex(d, pd)
        if d == 1:
            if any(ident[v] != v for v in sub.vertices):
                return False
            continue
        pk = fuller_complex(pd.work_base, pd.work_map, k, budget)
        if not _isomorphic_via(sub, ident, pk.complex):
            return False
        if res is not None and pk.fuller_map is not None:
            for v in sub.vertices:
                if ident[res.apply(v)] != pk.fuller_map.apply(ident[v]):
                    return False
            if ly is not None:
                ls = product_lift(pd, py, ly, cx=sub, self_map=res, k=k)
                if k == 1:
                    target = ly.diagonal_class_sum()
                else:
                    target = product_lift(pk, py, ly).diagonal_class_sum()
                if ls.diagonal_class_sum() != target:
                    return False
    return True


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# the obstruction table


def obstruction_table(x, f, n, p=None, declare=None, expect=None,
                      budget=None):
    """Per-divisor table of L(f^k) and R(f^k) verdicts, cross-checked
    against the order-n cyclic data restricted to period-k tuples and
    unwound back to the base group."""
    if p is None:
        p = pi1_presentation(x, declare=declare, expect=expect)
    l1 = CoverLift(f, p)
    try:
        pd = fuller_complex(x, f, n, budget)
    except BudgetError:
        pd = None
    geo = (pd is not None and pd.fuller_map is not None
           and pd.complex is not None and pd.n > 1)
    if geo:
        if pd.subdivided:
            py = _subdivided_presentation(pd, p)
            ly = CoverLift(pd.work_map, py)
        else:
            py, ly = p, l1
    rows = []
    for k in _divisors(n):
        lk = lefschetz(iterate(f, k))
        rk = l1.iterate(k).diagonal_class_sum()
        if rk.augmentation() != lk:
            raise AssertionError("class sum augmentation disagrees with "
                                 "the trace for k=%d" % k)
        if geo:
            sub, ident, res = cyclic_fixed_subcomplex(n // k, pd)
            ls = product_lift(pd, py, ly, cx=sub, self_map=res, k=k)
            uw = unwind_classes(k, ly.phi)
            recovered = uw.apply_sum(ls.diagonal_class_sum())
            direct = ly.iterate(k).diagonal_class_sum()
            route = "geometric" + (" subdivided" if pd.subdivided else "")
        else:
            uw = unwind_classes(k, l1.phi)
            recovered = uw.apply_sum(algebraic_fuller_trace(l1, k, uw))
            direct = rk
            route = "algebraic"
        rows.append({
            "k": k,
            "lefschetz": lk,
            "reidemeister": rk,
            "nonzero": not rk.is_zero(),
            "recovered_match": recovered == direct,
            "route": route,
        })
    return {
        "complex": x.name or "",
        "map": f.name or "",
        "n": n,
        "rows": rows,
        "caveat": OBSTRUCTION_CAVEAT,
    }
