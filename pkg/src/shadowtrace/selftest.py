"""Seeded property suites shared by the command line and the tests.

Each suite draws its inputs from its own deterministic generator and
checks an exact identity; a failure is recorded as a short string.  The
machine-readable summary depends only on the seed and the size, never on
wall time, so repeated runs are byte-identical.

The generator helpers (random matrix cycles, random shadow data over the
matrix and bimodule instances, random invertible group-ring matrices) are
exported for reuse by the test suite.
"""

import random

from .bimodules import (BIMODULE, BimoduleCell, base_change_composition_iso,
                        base_change_object, diag_cell, free_cell,
                        hattori_stallings, random_equivariant, ring_of,
                        two_cell_matrix)
from .complexes import homology_lefschetz, lefschetz
from .corpus import corpus
from .corpus import entry as corpus_entry
from .covers import reidemeister
from .fuller import (fixed_subcomplex_check, fuller_lefschetz_check,
                     fuller_reidemeister_check, unwind_classes)
from .groups import (GroupElement, GroupHom, GroupRingElement, cyclic_group,
                     enumerate_homs, free_abelian_group, identity_hom,
                     product_model, ring_one, symmetric_group_3,
                     twisted_class)
from .intlinalg import (kernel_basis, mat_eq, mat_mul, mat_vec,
                        smith_normal_form, solve_z)
from .matrices import (MATRIX, SparseMat, mat_multitrace, mat_trace, matmul,
                       random_int_matrix, thm22_check)
from .shadow import (canonical_iso, check_triangles, fuller_two_cell, leaf,
                     multitrace, odot_shape, trace,
                     trace_of_composite_equals_multitrace, unit_shape,
                     word_cell)

SIZES = ("small", "full")


def _scaled(n, size):
    if size == "small":
        return max(3, n // 4)
    return n


def _rng(seed, tag):
    # stable derived stream per suite; tuple hashes of ints are not
    # randomized, but mix by hand anyway to stay clear of that contract
    h = seed & 0xFFFFFFFF
    for ch in tag:
        h = (h * 1000003 + ord(ch)) & 0xFFFFFFFF
    return random.Random(h)


# ---------------------------------------------------------------------------
# shared generators


def random_matrix_cycle(rng, n_max=5, rank_max=4, lo=-4, hi=4, size_cap=360):
    """Matrices f_i: V_i -> V_{i-1}, indices mod n, with the product of
    the ranks capped so tensor-space checks stay small."""
    n = rng.randint(1, n_max)
    while True:
        ranks = [rng.randint(1, rank_max) for _ in range(n)]
        prod = 1
        for r in ranks:
            prod *= r
        if prod <= size_cap:
            break
    return [random_int_matrix(rng, ranks[i - 1], ranks[i], lo, hi)
            for i in range(n)]


def random_matrix_shadow_data(rng, n_max=3, m_rank_max=3, side_rank_max=2):
    """Random phis/pairs/q/m/p over the matrix instance, where
    phi_i: Q_i . M_i -> M_{i-1} . P_i."""
    n = rng.randint(1, n_max)
    qs = [rng.randint(1, side_rank_max) for _ in range(n)]
    ms = [rng.randint(1, m_rank_max) for _ in range(n)]
    ps = [rng.randint(1, side_rank_max) for _ in range(n)]
    q_cells = [MATRIX.free_cell(r) for r in qs]
    m_cells = [MATRIX.free_cell(r) for r in ms]
    p_cells = [MATRIX.free_cell(r) for r in ps]
    pairs = [MATRIX.dualize(c) for c in m_cells]
    phis = []
    for i in range(n):
        dom = MATRIX.odot(q_cells[i], m_cells[i])
        cod = MATRIX.odot(m_cells[i - 1], p_cells[i])
        phis.append(MATRIX.two_cell(
            dom, cod, random_int_matrix(rng, cod.payload, dom.payload,
                                        -3, 3)))
    return phis, pairs, q_cells, m_cells, p_cells


_HOM_CACHE = {}


def all_homs(src, dst):
    """Every homomorphism src -> dst between small finite models,
    memoized; the brute force is n^n so keep orders at 6 or below."""
    key = (src, dst)
    if key not in _HOM_CACHE:
        _HOM_CACHE[key] = enumerate_homs(src, dst)
    return _HOM_CACHE[key]


def _automorphisms(model):
    return [h for h in all_homs(model, model)
            if sorted(h.images) == list(range(model.n))]


def random_dualizable_cell(rng, ring, rank_max=2):
    """Monomial endo-cell with free functional orbits: a diagonal of
    random automorphisms, conjugated by a random basis permutation."""
    model = ring.group
    autos = _automorphisms(model)
    r = rng.randint(1, rank_max)
    homs = [rng.choice(autos) for _ in range(r)]
    cell = diag_cell(ring, ring, homs)
    perm = list(range(r))
    rng.shuffle(perm)
    if perm == list(range(r)):
        return cell
    p = SparseMat(r, r, {(perm[j], j): ring_one(model) for j in range(r)})
    pinv = SparseMat(r, r, {(j, perm[j]): ring_one(model)
                            for j in range(r)})
    action = {a: p.mul(cell.action[a]).mul(pinv) for a in cell.action}
    return BimoduleCell(ring, ring, r, action)


def random_bimodule_shadow_data(rng, model, n_max=2, rank_max=2):
    """Random phis/pairs/q/m/p over the bimodule instance for one finite
    group ring; the M_i are dualizable monomial cells."""
    ring = ring_of(model)
    n = rng.randint(1, n_max)
    q_cells = [BIMODULE.cell(free_cell(ring, ring, rng.randint(1, 2)))
               for _ in range(n)]
    m_cells = [BIMODULE.cell(random_dualizable_cell(rng, ring, rank_max))
               for _ in range(n)]
    p_cells = [BIMODULE.cell(free_cell(ring, ring, rng.randint(1, 2)))
               for _ in range(n)]
    pairs = [BIMODULE.dualize(c) for c in m_cells]
    phis = []
    for i in range(n):
        dom = BIMODULE.odot(q_cells[i], m_cells[i])
        cod = BIMODULE.odot(m_cells[i - 1], p_cells[i])
        payload = random_equivariant(rng, dom.payload, cod.payload)
        phis.append(BIMODULE.two_cell(dom, cod, payload, check=True))
    return phis, pairs, q_cells, m_cells, p_cells


def random_shape(rng, lo, hi, obj=None, depth=0):
    """Random parenthesization of leaves lo..hi-1 with unit sprinkles."""
    if hi - lo == 1:
        s = leaf(lo)
    else:
        mid = rng.randint(lo + 1, hi - 1)
        s = odot_shape(random_shape(rng, lo, mid, obj, depth + 1),
                       random_shape(rng, mid, hi, obj, depth + 1))
    while depth < 3 and rng.random() < 0.2:
        if rng.random() < 0.5:
            s = odot_shape(unit_shape(obj), s)
        else:
            s = odot_shape(s, unit_shape(obj))
    return s


def random_group_ring_matrix(rng, model, n, lo=-2, hi=2, density=0.7):
    """Dense-list n x n matrix of random group ring elements."""
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            e = GroupRingElement(model, {})
            if rng.random() < density:
                terms = {}
                for _ in range(rng.randint(1, 2)):
                    terms[rng.randrange(model.n)] = rng.randint(lo, hi)
                e = GroupRingElement(model, terms)
            row.append(e)
        out.append(row)
    return out


def random_invertible_factors(rng, model, n, steps=4):
    """A list of invertible n x n factors over Z[G]: monomial matrices
    and elementary transvections I + c g E_ij.  Returns (factors,
    inverse_factors_reversed) so products are exactly inverse."""
    one = ring_one(model)
    factors = []
    invs = []
    for _ in range(steps):
        if rng.random() < 0.5:
            perm = list(range(n))
            rng.shuffle(perm)
            ents = {}
            ients = {}
            for j in range(n):
                g = rng.randrange(model.n)
                s = rng.choice((1, -1))
                ents[(perm[j], j)] = GroupRingElement(model, {g: s})
                ients[(j, perm[j])] = GroupRingElement(
                    model, {model.inv_data(g): s})
            factors.append(SparseMat(n, n, ents))
            invs.append(SparseMat(n, n, ients))
        else:
            if n < 2:
                continue
            i = rng.randrange(n)
            j = rng.randrange(n)
            while j == i:
                j = rng.randrange(n)
            g = rng.randrange(model.n)
            c = rng.choice((1, -1, 2))
            base = {(t, t): one for t in range(n)}
            plus = dict(base)
            plus[(i, j)] = GroupRingElement(model, {g: c})
            minus = dict(base)
            minus[(i, j)] = GroupRingElement(model, {g: -c})
            factors.append(SparseMat(n, n, plus))
            invs.append(SparseMat(n, n, minus))
    invs.reverse()
    return factors, invs


def apply_hom_to_sparse(phi, sp):
    """Entrywise application of a group hom to a group-ring matrix."""
    out = {}
    for k, e in sp.entries.items():
        out[k] = GroupRingElement(phi.dst, {})
        acc = {}
        for d, c in e.terms.items():
            nd = phi.apply_data(d)
            acc[nd] = acc.get(nd, 0) + c
        out[k] = GroupRingElement(phi.dst, acc)
    return SparseMat(sp.rows, sp.cols, out)


def _sparse_product(factors, n, model):
    out = SparseMat.identity(n, ring_one(model))
    for f in factors:
        out = out.mul(f)
    return out


# ---------------------------------------------------------------------------
# suites


def _suite_intlinalg(rng, size):
    fails = []
    cases = _scaled(60, size)
    for t in range(cases):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        a = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        d, u, v = smith_normal_form([r[:] for r in a])
        if not mat_eq(mat_mul(mat_mul(u, a), v), d):
            fails.append("snf factorization case %d" % t)
            continue
        for i in range(min(rows, cols) - 1):
            if d[i][i] and d[i + 1][i + 1] % d[i][i]:
                fails.append("snf divisibility case %d" % t)
                break
        x = [rng.randint(-3, 3) for _ in range(cols)]
        b = mat_vec(a, x)
        sol = solve_z(a, b)
        if sol is None or mat_vec(a, sol) != b:
            fails.append("solve_z missed a solvable system, case %d" % t)
        for k in kernel_basis(a):
            if any(mat_vec(a, k)):
                fails.append("kernel vector not in kernel, case %d" % t)
                break
    return cases, fails


def _suite_groups(rng, size):
    fails = []
    models = [cyclic_group(2), cyclic_group(3), cyclic_group(4),
              cyclic_group(6), product_model(cyclic_group(2),
                                             cyclic_group(2)),
              symmetric_group_3()]
    cases = _scaled(60, size)
    for t in range(cases):
        model = rng.choice(models)
        autos = _automorphisms(model)
        phi = rng.choice(autos)
        g = rng.randrange(model.n)
        u = rng.randrange(model.n)
        # the class is invariant under g -> u g phi(u)^-1
        moved = model.mul_data(model.mul_data(u, g),
                               model.inv_data(phi.images[u]))
        c1 = twisted_class(GroupElement(model, g), phi)
        c2 = twisted_class(GroupElement(model, moved), phi)
        if c1 != c2:
            fails.append("twisted class moved, case %d" % t)
        a = rng.randrange(model.n)
        b = rng.randrange(model.n)
        if phi.images[model.mul_data(a, b)] != model.mul_data(
                phi.images[a], phi.images[b]):
            fails.append("automorphism is not a hom, case %d" % t)
    return cases, fails


def _suite_matrices(rng, size):
    fails = []
    cases = _scaled(120, size)
    for t in range(cases):
        mats = random_matrix_cycle(rng)
        lhs, rhs, ok = thm22_check(mats)
        if not ok:
            fails.append("rotation trace %r != composite trace %r, case %d"
                         % (lhs, rhs, t))
    extra = _scaled(80, size)
    for t in range(extra):
        mats = random_matrix_cycle(rng, n_max=4)
        comp = mats[0]
        for m in mats[1:]:
            comp = matmul(comp, m)
        if mat_multitrace(mats) != mat_trace(comp):
            fails.append("multitrace != product trace, case %d" % t)
    return cases + extra, fails


def _suite_coherence(rng, size):
    fails = []
    cases = _scaled(40, size)
    ring = ring_of(cyclic_group(3))
    for t in range(cases):
        k = rng.randint(1, 4)
        for inst, cells in (
                (MATRIX, [MATRIX.free_cell(rng.randint(1, 3))
                          for _ in range(k)]),
                (BIMODULE, [BIMODULE.cell(free_cell(ring, ring,
                                                    rng.randint(1, 2)))
                            for _ in range(k)])):
            obj = cells[0].src
            a = random_shape(rng, 0, k, obj)
            b = random_shape(rng, 0, k, obj)
            m = random_shape(rng, 0, k, obj)
            direct = canonical_iso(inst, a, b, cells)
            via = inst.comp2(canonical_iso(inst, m, b, cells),
                             canonical_iso(inst, a, m, cells))
            if direct != via:
                fails.append("coherence paths differ on %s, case %d"
                             % (inst.name, t))
    return cases, fails


def _suite_shadow_matrix(rng, size):
    fails = []
    cases = _scaled(60, size)
    for t in range(cases):
        data = random_matrix_shadow_data(rng)
        if not trace_of_composite_equals_multitrace(MATRIX, *_expand(data)):
            fails.append("composite vs multitrace, case %d" % t)
    extra = _scaled(30, size)
    for t in range(extra):
        phis, pairs, q_cells, m_cells, p_cells = \
            random_matrix_shadow_data(rng, n_max=3, m_rank_max=2)
        direct = multitrace(MATRIX, phis, pairs, q_cells, m_cells, p_cells)
        big = fuller_two_cell(MATRIX, phis, q_cells, m_cells, p_cells)
        bm = word_cell(MATRIX, m_cells)
        via = trace(MATRIX, big, MATRIX.dualize(bm), q_cells, p_cells)
        if not MATRIX.sh_eq(direct, via):
            fails.append("fuller two-cell trace, case %d" % t)
    return cases + extra, fails


def _expand(data):
    phis, pairs, q_cells, m_cells, p_cells = data
    return phis, pairs, q_cells, m_cells, p_cells


def _suite_shadow_bimodule(rng, size):
    fails = []
    cases = _scaled(20, size)
    models = [cyclic_group(3), cyclic_group(4)]
    for t in range(cases):
        model = models[t % 2]
        data = random_bimodule_shadow_data(rng, model)
        if not trace_of_composite_equals_multitrace(BIMODULE,
                                                    *_expand(data)):
            fails.append("bimodule composite vs multitrace, case %d" % t)
    return cases, fails


def _suite_triangles(rng, size):
    fails = []
    cases = _scaled(60, size)
    models = [cyclic_group(3), cyclic_group(4), symmetric_group_3()]
    for t in range(cases):
        ring = ring_of(models[t % 3])
        cell = BIMODULE.cell(random_dualizable_cell(rng, ring, rank_max=2))
        pair = BIMODULE.dualize(cell)
        if not check_triangles(BIMODULE, pair):
            fails.append("triangle identity, case %d" % t)
    mcases = _scaled(20, size)
    for t in range(mcases):
        cell = MATRIX.free_cell(rng.randint(1, 4))
        if not check_triangles(MATRIX, MATRIX.dualize(cell)):
            fails.append("matrix triangle identity, case %d" % t)
    return cases + mcases, fails


def _suite_hattori_stallings(rng, size):
    fails = []
    cases = _scaled(60, size)
    c4 = cyclic_group(4)
    s3 = symmetric_group_3()
    for t in range(cases):
        model = c4 if t % 2 == 0 else s3
        phi = rng.choice(_automorphisms(model))
        n = rng.randint(1, 3)
        msp = two_cell_matrix(random_group_ring_matrix(rng, model, n), model)
        factors, invs = random_invertible_factors(rng, model, n)
        p = _sparse_product(factors, n, model)
        pinv = _sparse_product(invs, n, model)
        conj = p.mul(msp).mul(apply_hom_to_sparse(phi, pinv))
        if hattori_stallings(conj, phi) != hattori_stallings(msp, phi):
            fails.append("conjugation moved the class sum, case %d" % t)
    return cases, fails


def _suite_complexes(rng, size):
    fails = []
    entries = corpus()
    pool = [(e, f) for e in entries for f in e.maps]
    if size == "small":
        pool = [pool[i] for i in range(0, len(pool), 4)]
    for e, f in pool:
        if lefschetz(f) != homology_lefschetz(f):
            fails.append("lefschetz mismatch on %s/%s" % (e.name, f.name))
    return len(pool), fails


def _suite_covers(rng, size):
    fails = []
    entries = [e for e in corpus() if e.pi1_ok]
    pool = [(e, f) for e in entries for f in e.maps]
    step = 8 if size == "small" else 3
    pool = [pool[i] for i in range(0, len(pool), step)]
    for e, f in pool:
        p = e.presentation()
        r = reidemeister(f, p)
        if r.augmentation() != lefschetz(f):
            fails.append("augmentation != lefschetz on %s/%s"
                         % (e.name, f.name))
    return len(pool), fails


def _suite_fuller(rng, size):
    fails = []
    checks = [("circle-3", "id", 2), ("circle-3", "rot1", 2),
              ("circle-3", "refl", 2), ("circle-3", "const", 2)]
    if size != "small":
        checks += [("circle-3", "id", 3), ("circle-3", "const", 3),
                   ("circle-4", "id", 2), ("circle-6", "deg2", 2),
                   ("circle-6", "deg3", 2)]
    cases = 0
    for name, mn, n in checks:
        e = corpus_entry(name)
        f = e.map(mn)
        cases += 1
        if not fuller_lefschetz_check(e.complex, f, n):
            fails.append("fuller lefschetz %s/%s n=%d" % (name, mn, n))
        if not fuller_reidemeister_check(e.complex, f, n):
            fails.append("fuller reidemeister %s/%s n=%d" % (name, mn, n))
    sub = [("circle-3", "id", 2)]
    if size != "small":
        sub.append(("circle-3", "rot1", 2))
    for name, mn, n in sub:
        e = corpus_entry(name)
        cases += 1
        if not fixed_subcomplex_check(e.complex, e.map(mn), n):
            fails.append("fixed subcomplex %s/%s n=%d" % (name, mn, n))
    # unwind bijections: finite twists and the rank-one doubling map
    z = free_abelian_group(1)
    doubling = GroupHom(z, z, ((2,),))
    pool = [(identity_hom(cyclic_group(3)), (2, 3)),
            (identity_hom(cyclic_group(4)), (2,)),
            (doubling, (2, 3))]
    for phi, ns in pool:
        for n in ns:
            cases += 1
            uw = unwind_classes(n, phi)
            if not uw.verify():
                fails.append("unwind verify n=%d over %r" % (n, phi.src))
    return cases, fails


def base_change_pentagon(f, g, h):
    """Exact pentagon for three composable maps: pasting the composition
    isomorphisms in either order gives the same 2-cell
    <f>.<g>.<h> -> <h o g o f>."""
    cf = BIMODULE.cell(base_change_object(f).right)
    ch = BIMODULE.cell(base_change_object(h).right)
    i1 = base_change_composition_iso(f, g)
    i2 = base_change_composition_iso(g.compose(f), h)
    left = BIMODULE.comp2(i2, BIMODULE.tensor2(i1, BIMODULE.id2(ch)))
    j1 = base_change_composition_iso(g, h)
    j2 = base_change_composition_iso(f, h.compose(g))
    right = BIMODULE.comp2(j2, BIMODULE.tensor2(BIMODULE.id2(cf), j1))
    return left == right


def base_change_models():
    return [cyclic_group(1), cyclic_group(2), cyclic_group(3),
            cyclic_group(4),
            product_model(cyclic_group(2), cyclic_group(2))]


def _suite_base_change(rng, size):
    fails = []
    models = base_change_models()
    cases = _scaled(40, size)
    for t in range(cases):
        a, b, c, d = (rng.choice(models) for _ in range(4))
        f = rng.choice(all_homs(a, b))
        g = rng.choice(all_homs(b, c))
        h = rng.choice(all_homs(c, d))
        if not base_change_pentagon(f, g, h):
            fails.append("base change pentagon, case %d" % t)
    return cases, fails


_SUITES = [
    ("intlinalg", _suite_intlinalg),
    ("groups", _suite_groups),
    ("matrices", _suite_matrices),
    ("coherence", _suite_coherence),
    ("shadow-matrix", _suite_shadow_matrix),
    ("shadow-bimodule", _suite_shadow_bimodule),
    ("triangles", _suite_triangles),
    ("hattori-stallings", _suite_hattori_stallings),
    ("complexes", _suite_complexes),
    ("covers", _suite_covers),
    ("fuller", _suite_fuller),
    ("base-change", _suite_base_change),
]


def run_suites(seed=0, size="full"):
    """Run every suite; returns a list of (name, cases, failures,
    seconds) records in a fixed order."""
    import time
    if size not in SIZES:
        raise ValueError("size must be one of %r" % (SIZES,))
    out = []
    for name, fn in _SUITES:
        t0 = time.time()
        cases, fails = fn(_rng(seed, name), size)
        out.append((name, cases, fails, time.time() - t0))
    return out


def kv_lines(records, seed, size):
    """Machine-readable summary; deterministic for fixed seed and size."""
    lines = ["command = selftest", "seed = %d" % seed, "size = %s" % size]
    total_fail = 0
    for name, cases, fails, _dt in records:
        lines.append("suite.%s.cases = %d" % (name, cases))
        lines.append("suite.%s.ok = %s"
                     % (name, "true" if not fails else "false"))
        for i, msg in enumerate(fails):
            lines.append("suite.%s.fail.%d = %s" % (name, i, msg))
        total_fail += len(fails)
    lines.append("suites = %d" % len(records))
    lines.append("failures = %d" % total_fail)
    lines.append("ok = %s" % ("true" if total_fail == 0 else "false"))
    return lines


def human_lines(records, seed, size):
    lines = ["selftest seed=%d size=%s" % (seed, size)]
    total_fail = 0
    for name, cases, fails, dt in records:
        status = "ok" if not fails else "FAIL"
        lines.append("  suite %-18s %4d cases %-4s (%.2fs)"
                     % (name, cases, status, dt))
        for msg in fails:
            lines.append("    - %s" % msg)
        total_fail += len(fails)
    lines.append("result: %s"
                 % ("all suites pass" if total_fail == 0
                    else "%d failures" % total_fail))
    return lines
