"""Group models, homomorphisms, group rings, and twisted conjugacy.

Three kinds of group are supported, each with exact element arithmetic and
a deterministic total order on elements:

* finite groups given by a multiplication table (elements are indices),
* finitely generated free abelian groups (elements are int vectors),
* finitely generated free groups (elements are reduced words; the letter
  ``i + 1`` is generator i and ``-(i + 1)`` its inverse).

Twisted conjugacy u . g = u * g * phi(u)^-1 is decided exactly for the
finite and free abelian kinds.  For free groups a bounded search runs over
conjugators up to a word-length radius; its verdict carries an explicit
"bounded" status instead of pretending to be exact.
"""

import itertools

from . import intlinalg


def _reduce_word(word):
    out = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


class GroupModel:
    """A computable group: finite table, free abelian, or free."""

    def __init__(self, kind, *, table=None, rank=None, names=None, label=None):
        assert kind in ("finite", "free_abelian", "free")
        self.kind = kind
        self.label = label
        if kind == "finite":
            assert table is not None
            self.table = tuple(tuple(row) for row in table)
            self.n = len(self.table)
            self.names = tuple(names) if names else tuple(
                "g%d" % i for i in range(self.n))
            assert len(self.names) == self.n
            self._check_table()
        else:
            assert rank is not None and rank >= 0
            self.rank = rank
            if kind == "free":
                assert rank >= 1
                self.names = tuple(names) if names else tuple(
                    "abcdefgh"[i] if i < 8 else "x%d" % i for i in range(rank))

    def _check_table(self):
        n = self.n
        t = self.table
        ident = None
        for e in range(n):
            if all(t[e][x] == x and t[x][e] == x for x in range(n)):
                ident = e
                break
        assert ident is not None, "no identity element in table"
        self._ident = ident
        inv = [None] * n
        for x in range(n):
            for y in range(n):
                if t[x][y] == ident and t[y][x] == ident:
                    inv[x] = y
        assert all(v is not None for v in inv), "missing inverses"
        self._inv = tuple(inv)
        # associativity, n <= 24 in practice so the cube is cheap
        for a in range(n):
            for b in range(n):
                tab = t[a][b]
                for c in range(n):
                    assert t[tab][c] == t[a][t[b][c]], "table not associative"

    # raw element operations (data level)

    def identity_data(self):
        if self.kind == "finite":
            return self._ident
        if self.kind == "free_abelian":
            return (0,) * self.rank
        return ()

    def mul_data(self, a, b):
        if self.kind == "finite":
            return self.table[a][b]
        if self.kind == "free_abelian":
            return tuple(x + y for x, y in zip(a, b))
        return _reduce_word(a + b)

    def inv_data(self, a):
        if self.kind == "finite":
            return self._inv[a]
        if self.kind == "free_abelian":
            return tuple(-x for x in a)
        return tuple(-x for x in reversed(a))

    def sort_key(self, a):
        if self.kind == "finite":
            return a
        if self.kind == "free_abelian":
            return a
        return (len(a), a)

    def data_str(self, a):
        if self.kind == "finite":
            return self.names[a]
        if self.kind == "free_abelian":
            if self.rank == 0:
                return "e"
            if self.rank == 1:
                return str(a[0])
            return "(" + ",".join(str(x) for x in a) + ")"
        if not a:
            return "e"
        parts = []
        for letter in a:
            name = self.names[abs(letter) - 1]
            parts.append(name if letter > 0 else name + "^-1")
        return "*".join(parts)

    def check_element(self, a):
        if self.kind == "finite":
            assert isinstance(a, int) and 0 <= a < self.n, "bad finite element"
        elif self.kind == "free_abelian":
            assert isinstance(a, tuple) and len(a) == self.rank
        else:
            assert isinstance(a, tuple) and a == _reduce_word(a)

    def element(self, data):
        self.check_element(data)
        return GroupElement(self, data)

    def identity(self):
        return GroupElement(self, self.identity_data())

    def generators(self):
        """A generating list of elements, in canonical order."""
        if self.kind == "finite":
            return [GroupElement(self, i) for i in range(self.n)]
        if self.kind == "free_abelian":
            gens = []
            for i in range(self.rank):
                vec = [0] * self.rank
                vec[i] = 1
                gens.append(GroupElement(self, tuple(vec)))
            return gens
        return [GroupElement(self, (i + 1,)) for i in range(self.rank)]

    def elements(self):
        assert self.kind == "finite", "only finite groups are enumerable"
        return [GroupElement(self, i) for i in range(self.n)]

    @property
    def order(self):
        return self.n if self.kind == "finite" else None

    def is_trivial(self):
        if self.kind == "finite":
            return self.n == 1
        return self.kind == "free_abelian" and self.rank == 0

    def is_abelian(self):
        if self.kind == "free_abelian":
            return True
        if self.kind == "free":
            return self.rank <= 1
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.n) for b in range(self.n))

    def __eq__(self, other):
        if not isinstance(other, GroupModel):
            return NotImplemented
        if self.kind != other.kind:
            return False
        if self.kind == "finite":
            return self.table == other.table and self.names == other.names
        return self.rank == other.rank

    def __hash__(self):
        if self.kind == "finite":
            return hash(("finite", self.table))
        return hash((self.kind, self.rank))

    def __repr__(self):
        if self.label:
            return self.label
        if self.kind == "finite":
            return "FiniteGroup(%d)" % self.n
        return "%s(rank=%d)" % (self.kind, self.rank)


class GroupElement:
    """An element of a GroupModel; thin hashable wrapper over raw data."""

    __slots__ = ("model", "data", "_hash")

    def __init__(self, model, data):
        self.model = model
        self.data = data
        self._hash = hash(data)

    def __mul__(self, other):
        assert self.model == other.model
        return GroupElement(self.model, self.model.mul_data(self.data, other.data))

    def inv(self):
        return GroupElement(self.model, self.model.inv_data(self.data))

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = self.model.identity()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self):
        return self.data == self.model.identity_data()

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.data == other.data and self.model == other.model

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.model.data_str(self.data)


# ---------------------------------------------------------------------------
# standard models


def cyclic_group(n, label=None):
    """Z/n with elements 0..n-1 under addition."""
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = [str(i) for i in range(n)]
    return GroupModel("finite", table=table, names=names,
                      label=label or ("C%d" % n))


def trivial_group():
    return GroupModel("free_abelian", rank=0, label="1")


def free_abelian_group(rank, label=None):
    return GroupModel("free_abelian", rank=rank,
                      label=label or ("Z^%d" % rank))


def free_group(rank, names=None, label=None):
    return GroupModel("free", rank=rank, names=names,
                      label=label or ("F%d" % rank))


def symmetric_group_3():
    """S3 as a table group; elements are the six permutations of (0,1,2)
    in lexicographic order, composed left to right."""
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):
        # apply p first, then q
        return tuple(q[p[i]] for i in range(3))

    table = [[index[compose(p, q)] for q in perms] for p in perms]
    names = ["".join(str(x) for x in p) for p in perms]
    return GroupModel("finite", table=table, names=names, label="S3")


def direct_product_table(g, h, label=None):
    """Direct product of two finite table groups, elements in lex order."""
    assert g.kind == "finite" and h.kind == "finite"
    n, m = g.n, h.n
    table = [[0] * (n * m) for _ in range(n * m)]
    for a in range(n):
        for b in range(m):
            for c in range(n):
                for d in range(m):
                    table[a * m + b][c * m + d] = g.table[a][c] * m + h.table[b][d]
    names = ["%s.%s" % (g.names[a], h.names[b])
             for a in range(n) for b in range(m)]
    return GroupModel("finite", table=table, names=names,
                      label=label or ("%sx%s" % (g.label, h.label)))


def product_model(a, b, label=None):
    """External direct product.  Free abelian factors concatenate their
    coordinate vectors, so the product is strictly associative on data."""
    if a.is_trivial():
        return b
    if b.is_trivial():
        return a
    if a.kind == "free_abelian" and b.kind == "free_abelian":
        return free_abelian_group(a.rank + b.rank,
                                  label=label or ("%sx%s" % (a.label, b.label)))
    if a.kind == "finite" and b.kind == "finite":
        return direct_product_table(a, b, label=label)
    raise ValueError("unsupported product of %s and %s" % (a.kind, b.kind))


def power_model(a, n):
    """n-fold direct product of a with itself."""
    assert n >= 1
    out = a
    for _ in range(n - 1):
        out = product_model(out, a)
    return out


def product_pack(a, b, ga, gb):
    """Element data of product_model(a, b) from factor data."""
    if a.is_trivial():
        return gb
    if b.is_trivial():
        return ga
    if a.kind == "free_abelian":
        return tuple(ga) + tuple(gb)
    return ga * b.n + gb


def product_unpack(a, b, g):
    if a.is_trivial():
        return a.identity_data(), g
    if b.is_trivial():
        return g, b.identity_data()
    if a.kind == "free_abelian":
        return g[:a.rank], g[a.rank:]
    return g // b.n, g % b.n


# ---------------------------------------------------------------------------
# homomorphisms


class GroupHom:
    """Homomorphism between group models.

    The data depends on the kinds: an image tuple for every element of a
    finite source, an integer matrix (rows = target coordinates) for a free
    abelian source, or a target word per generator for a free source.  The
    constructor verifies the homomorphism property where it is checkable.
    """

    def __init__(self, src, dst, data, check=True):
        self.src = src
        self.dst = dst
        if src.kind == "finite":
            self.images = tuple(data)
            assert len(self.images) == src.n
            if check:
                for a in range(src.n):
                    for b in range(src.n):
                        lhs = dst.mul_data(self.images[a], self.images[b])
                        assert lhs == self.images[src.table[a][b]], \
                            "not a homomorphism"
        elif src.kind == "free_abelian":
            assert dst.kind == "free_abelian", \
                "free abelian sources map to free abelian targets here"
            self.matrix = tuple(tuple(row) for row in data)
            assert len(self.matrix) == dst.rank
            assert all(len(row) == src.rank for row in self.matrix)
        else:
            self.words = tuple(data)
            assert len(self.words) == src.rank

    def __call__(self, g):
        assert g.model == self.src
        return GroupElement(self.dst, self.apply_data(g.data))

    def apply_data(self, a):
        if self.src.kind == "finite":
            return self.images[a]
        if self.src.kind == "free_abelian":
            if self.dst.rank == 0:
                return ()
            return tuple(sum(row[j] * a[j] for j in range(self.src.rank))
                         for row in self.matrix)
        out = self.dst.identity_data()
        for letter in a:
            w = self.words[abs(letter) - 1]
            if isinstance(w, GroupElement):
                w = w.data
            if letter < 0:
                w = self.dst.inv_data(w)
            out = self.dst.mul_data(out, w)
        return out

    def compose(self, inner):
        """self after inner."""
        assert inner.dst == self.src
        src = inner.src
        if src.kind == "finite":
            data = tuple(self.apply_data(inner.images[a]) for a in range(src.n))
            return GroupHom(src, self.dst, data, check=False)
        if src.kind == "free_abelian":
            m = intlinalg.mat_mul([list(r) for r in self.matrix],
                                  [list(r) for r in inner.matrix])
            return GroupHom(src, self.dst, m)
        words = tuple(self.apply_data(inner.words[i] if not isinstance(
            inner.words[i], GroupElement) else inner.words[i].data)
            for i in range(src.rank))
        return GroupHom(src, self.dst, words)

    def is_endo(self):
        return self.src == self.dst

    def is_iso(self):
        if self.src.kind == "finite":
            if self.dst.kind != "finite" or self.src.n != self.dst.n:
                return False
            return len(set(self.images)) == self.src.n
        if self.src.kind == "free_abelian":
            if self.dst.kind != "free_abelian" or self.src.rank != self.dst.rank:
                return False
            if self.src.rank == 0:
                return True
            d, _, _ = intlinalg.smith_normal_form([list(r) for r in self.matrix])
            det = 1
            for i in range(self.src.rank):
                det *= d[i][i]
            return abs(det) == 1
        raise ValueError("iso test for free groups is not supported")

    def inverse(self):
        assert self.is_iso()
        if self.src.kind == "finite":
            data = [0] * self.dst.n
            for a, img in enumerate(self.images):
                data[img] = a
            return GroupHom(self.dst, self.src, tuple(data), check=False)
        m = intlinalg.invert_unimodular([list(r) for r in self.matrix]) \
            if self.src.rank else []
        return GroupHom(self.dst, self.src, m)

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        if self.src != other.src or self.dst != other.dst:
            return False
        if self.src.kind == "finite":
            return self.images == other.images
        if self.src.kind == "free_abelian":
            return self.matrix == other.matrix
        return self.words == other.words

    def __hash__(self):
        if self.src.kind == "finite":
            key = self.images
        elif self.src.kind == "free_abelian":
            key = self.matrix
        else:
            key = self.words
        return hash((self.src, self.dst, key))

    def __repr__(self):
        return "GroupHom(%r -> %r)" % (self.src, self.dst)


def identity_hom(model):
    if model.kind == "finite":
        return GroupHom(model, model, tuple(range(model.n)), check=False)
    if model.kind == "free_abelian":
        return GroupHom(model, model, intlinalg.identity(model.rank))
    return GroupHom(model, model, tuple((i + 1,) for i in range(model.rank)))


def trivial_hom(src, dst):
    if src.kind == "finite":
        return GroupHom(src, dst, tuple(dst.identity_data() for _ in range(src.n)),
                        check=False)
    if src.kind == "free_abelian":
        return GroupHom(src, dst, [[0] * src.rank for _ in range(dst.rank)])
    return GroupHom(src, dst, tuple(dst.identity_data() for _ in range(src.rank)))


def hom_from_generator_images(src, dst, images):
    """Finite source: extend generator images to all elements by closure,
    then verify.  images is a dict element-index -> GroupElement."""
    assert src.kind == "finite"
    known = {src._ident: dst.identity()}
    for g, img in images.items():
        known[g] = img
    frontier = list(known)
    while frontier:
        new = []
        for a in list(known):
            for b in list(known):
                c = src.table[a][b]
                img = known[a] * known[b]
                if c in known:
                    assert known[c] == img, "generator images inconsistent"
                else:
                    known[c] = img
                    new.append(c)
        if not new:
            break
        frontier = new
    assert len(known) == src.n, "images do not generate closure over source"
    return GroupHom(src, dst, tuple(known[a].data for a in range(src.n)))


def enumerate_homs(src, dst):
    """All homomorphisms between two finite table groups, brute force.
    Sizes stay tiny (orders <= 6) so the n^n filter is fine."""
    assert src.kind == "finite" and dst.kind == "finite"
    homs = []
    for images in itertools.product(range(dst.n), repeat=src.n):
        ok = True
        for a in range(src.n):
            for b in range(src.n):
                if dst.table[images[a]][images[b]] != images[src.table[a][b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            homs.append(GroupHom(src, dst, images, check=False))
    return homs


def product_hom(f, g, label=None):
    """f x g on the direct product of the sources."""
    src = product_model(f.src, g.src)
    dst = product_model(f.dst, g.dst)
    if src.kind == "free_abelian":
        rows = []
        fm = [list(r) for r in f.matrix] if f.src.rank else []
        gm = [list(r) for r in g.matrix] if g.src.rank else []
        for i in range(f.dst.rank):
            rows.append((fm[i] if fm else []) + [0] * g.src.rank)
        for i in range(g.dst.rank):
            rows.append([0] * f.src.rank + (gm[i] if gm else []))
        return GroupHom(src, dst, rows)
    assert src.kind == "finite"
    images = []
    for a in range(f.src.n):
        for b in range(g.src.n):
            images.append(product_pack(f.dst, g.dst,
                                       f.images[a], g.images[b]))
    return GroupHom(src, dst, tuple(images), check=False)


# ---------------------------------------------------------------------------
# group rings


class GroupRingElement:
    """Finite formal sum of group elements with integer (or Fraction)
    coefficients, stored sparsely as data -> coefficient.

    >>> g = cyclic_group(2)
    >>> e, s = g.elements()
    >>> (ring_elem(e) + ring_elem(s)) * (ring_elem(e) - ring_elem(s))
    0
    """

    __slots__ = ("model", "terms")

    def __init__(self, model, terms=None):
        self.model = model
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if v:
                    self.terms[k] = v

    def __add__(self, other):
        assert self.model == other.model
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k, 0) + v
            if w:
                out[k] = w
            elif k in out:
                del out[k]
        return GroupRingElement(self.model, out)

    def __neg__(self):
        return GroupRingElement(self.model,
                                {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        assert self.model == other.model
        out = {}
        mul = self.model.mul_data
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                c = mul(a, b)
                w = out.get(c, 0) + x * y
                if w:
                    out[c] = w
                elif c in out:
                    del out[c]
        return GroupRingElement(self.model, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        if c == 0:
            return GroupRingElement(self.model)
        return GroupRingElement(self.model,
                                {k: c * v for k, v in self.terms.items()})

    def augmentation(self):
        return sum(self.terms.values())

    def apply_hom(self, hom):
        assert hom.src == self.model
        out = {}
        for k, v in self.terms.items():
            c = hom.apply_data(k)
            out[c] = out.get(c, 0) + v
        return GroupRingElement(hom.dst, out)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __radd__(self, other):
        # lets ring elements accumulate in generic containers seeded with 0
        if other == 0:
            return self
        return NotImplemented

    def support(self):
        return sorted(self.terms, key=self.model.sort_key)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.model == other.model and self.terms == other.terms

    def __hash__(self):
        return hash((self.model, tuple(sorted(
            self.terms.items(), key=lambda kv: self.model.sort_key(kv[0])))))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in self.support():
            v = self.terms[k]
            name = self.model.data_str(k)
            if v == 1:
                parts.append(name)
            elif v == -1:
                parts.append("-" + name)
            else:
                parts.append("%d*%s" % (v, name))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def ring_elem(g, coeff=1):
    return GroupRingElement(g.model, {g.data: coeff})


def ring_zero(model):
    return GroupRingElement(model)


def ring_one(model):
    return GroupRingElement(model, {model.identity_data(): 1})


# ---------------------------------------------------------------------------
# twisted conjugacy


class TwistedConjClass:
    """A twisted conjugacy class u * g * phi(u)^-1 with a canonical
    representative.  status is "exact" when the representative is provably
    canonical and "bounded" when it came from a bounded free-group search."""

    __slots__ = ("model", "twist", "rep", "status")

    def __init__(self, model, twist, rep, status):
        self.model = model
        self.twist = twist
        self.rep = rep
        self.status = status

    def sort_key(self):
        return self.model.sort_key(self.rep)

    def __eq__(self, other):
        if not isinstance(other, TwistedConjClass):
            return NotImplemented
        return (self.model == other.model and self.twist == other.twist
                and self.rep == other.rep and self.status == other.status)

    def __hash__(self):
        return hash((self.model, self.twist, self.rep, self.status))

    def __repr__(self):
        tag = "" if self.status == "exact" else "?"
        return "[%s]%s" % (self.model.data_str(self.rep), tag)


def twisted_class(g, phi, radius=6):
    """Canonical twisted conjugacy class of g under u g phi(u)^-1.

    finite: exhaustive orbit, least element index wins.
    free abelian: canonical coset representative modulo im(id - phi).
    free: orbit under conjugators of length <= radius; least shortlex
    value found becomes the representative with status "bounded".
    """
    model = g.model
    assert phi.src == model and phi.dst == model
    if model.kind == "finite":
        orbit = set()
        for u in range(model.n):
            v = model.mul_data(model.mul_data(u, g.data),
                               model.inv_data(phi.images[u]))
            orbit.add(v)
        return TwistedConjClass(model, phi, min(orbit), "exact")
    if model.kind == "free_abelian":
        k = model.rank
        if k == 0:
            return TwistedConjClass(model, phi, (), "exact")
        m = intlinalg.mat_sub(intlinalg.identity(k),
                              [list(r) for r in phi.matrix])
        lat = _lattice_cache(model, phi, m)
        return TwistedConjClass(model, phi, lat.reduce(list(g.data)), "exact")
    best = g.data
    gens = [(i + 1,) for i in range(model.rank)]
    gens += [(-(i + 1),) for i in range(model.rank)]
    seen = {g.data}
    frontier = [((), g.data)]
    for _ in range(radius):
        new = []
        for u, _val in frontier:
            for s in gens:
                u2 = _reduce_word(s + u)
                if len(u2) <= len(u):
                    continue
                v = _reduce_word(u2 + g.data + tuple(
                    -x for x in reversed(phi.apply_data(u2))))
                if v not in seen:
                    seen.add(v)
                if (len(v), v) < (len(best), best):
                    best = v
                new.append((u2, v))
        frontier = new
    return TwistedConjClass(model, phi, best, "bounded")


_LATTICE_CACHE = {}


def _lattice_cache(model, phi, matrix):
    key = (model, phi)
    lat = _LATTICE_CACHE.get(key)
    if lat is None:
        lat = intlinalg.LatticeOps(matrix)
        _LATTICE_CACHE[key] = lat
    return lat


def twisted_class_count(model, phi):
    """Number of twisted conjugacy classes, or None when infinite."""
    if model.kind == "finite":
        reps = set()
        for g in range(model.n):
            reps.add(twisted_class(GroupElement(model, g), phi).rep)
        return len(reps)
    if model.kind == "free_abelian":
        k = model.rank
        if k == 0:
            return 1
        m = intlinalg.mat_sub(intlinalg.identity(k),
                              [list(r) for r in phi.matrix])
        return intlinalg.LatticeOps(m).coker_order()
    raise ValueError("class count unsupported for free groups")


def twisted_class_reps(model, phi):
    """All class representatives, sorted; finite count required."""
    if model.kind == "finite":
        reps = sorted({twisted_class(GroupElement(model, g), phi).rep
                       for g in range(model.n)})
        return [TwistedConjClass(model, phi, r, "exact") for r in reps]
    assert model.kind == "free_abelian"
    k = model.rank
    if k == 0:
        return [TwistedConjClass(model, phi, (), "exact")]
    m = intlinalg.mat_sub(intlinalg.identity(k),
                          [list(r) for r in phi.matrix])
    lat = intlinalg.LatticeOps(m)
    count = lat.coker_order()
    assert count is not None, "infinitely many classes"
    reps = set()
    # breadth-first over the quotient starting at 0
    frontier = [lat.reduce([0] * k)]
    reps.add(frontier[0])
    while frontier and len(reps) < count:
        new = []
        for v in frontier:
            for i in range(k):
                for d in (1, -1):
                    w = list(v)
                    w[i] += d
                    r = lat.reduce(w)
                    if r not in reps:
                        reps.add(r)
                        new.append(r)
        frontier = new
    out = sorted(reps)
    return [TwistedConjClass(model, phi, r, "exact") for r in out]


# ---------------------------------------------------------------------------
# formal sums


class FormalSum:
    """Finite formal Z-linear combination of hashable keys.

    Used for trace values over twisted conjugacy classes.  Keys sort by
    their sort_key method when present, else by repr, so printed output is
    deterministic.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, v in terms.items():
                if v:
                    self.terms[k] = v

    def add(self, key, coeff=1):
        w = self.terms.get(key, 0) + coeff
        if w:
            self.terms[key] = w
        elif key in self.terms:
            del self.terms[key]

    def __add__(self, other):
        out = FormalSum(self.terms)
        for k, v in other.terms.items():
            out.add(k, v)
        return out

    def __neg__(self):
        return FormalSum({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if c == 0:
            return FormalSum()
        return FormalSum({k: c * v for k, v in self.terms.items()})

    def map_keys(self, fn):
        out = FormalSum()
        for k, v in self.terms.items():
            out.add(fn(k), v)
        return out

    def augmentation(self):
        return sum(self.terms.values())

    def is_zero(self):
        return not self.terms

    def sorted_items(self):
        def key(kv):
            k = kv[0]
            if hasattr(k, "sort_key"):
                return k.sort_key()
            return repr(k)
        return sorted(self.terms.items(), key=key)

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.sorted_items():
            if v == 1:
                parts.append("%r" % (k,))
            elif v == -1:
                parts.append("-%r" % (k,))
            else:
                parts.append("%d*%r" % (v, k))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out
