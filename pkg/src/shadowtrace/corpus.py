"""Stock complexes and self-maps for tests and demos.

Every entry bundles a small simplicial complex, a handful of named
self-maps, and enough fundamental-group bookkeeping (declaration plus the
expected rank or order) to run class-sum computations without further
hints.  Circle entries also record the degree of each map, which pins
down the expected fixed-point data exactly.

The collection is deterministic: build_corpus() always returns the same
entries in the same order, so seeded tests can index into it.
"""

from .complexes import SimplicialComplex, SimplicialSelfMap
from .covers import pi1_presentation


class CorpusEntry:
    """A named complex, its stock self-maps, and group hints.

    maps is a list of SimplicialSelfMap, each carrying a .name unique
    within the entry.  degrees maps a map name to its degree when the
    complex is a circle; other entries leave it empty.  pi1_ok marks
    entries whose fundamental group the class-sum machinery supports.
    """

    def __init__(self, name, complex_, maps, declare=None, expect=None,
                 pi1_ok=True, tags=(), degrees=None):
        self.name = name
        self.complex = complex_
        self.maps = list(maps)
        self.declare = declare
        self.expect = expect
        self.pi1_ok = pi1_ok
        self.tags = frozenset(tags)
        self.degrees = dict(degrees or {})
        self._pres = None
        seen = set()
        for f in self.maps:
            if f.name in seen:
                raise ValueError("duplicate map name %r in %s"
                                 % (f.name, name))
            seen.add(f.name)

    def map(self, name):
        for f in self.maps:
            if f.name == name:
                return f
        raise KeyError("no map %r on %s" % (name, self.name))

    def presentation(self):
        # cached; Pi1Data is immutable in practice
        if self._pres is None:
            self._pres = pi1_presentation(self.complex, declare=self.declare,
                                          expect=self.expect)
        return self._pres

    def __repr__(self):
        return "CorpusEntry(%r, %d maps)" % (self.name, len(self.maps))


def circle(m, name=None):
    """Cycle graph on m >= 3 vertices 0..m-1."""
    if m < 3:
        raise ValueError("circle needs at least 3 vertices")
    edges = [(i, (i + 1) % m) for i in range(m)]
    return SimplicialComplex(list(range(m)), edges,
                             name=name or ("circle-%d" % m))


def path_complex(k, name=None):
    """Path graph 0 - 1 - ... - k."""
    return SimplicialComplex(list(range(k + 1)),
                             [(i, i + 1) for i in range(k)],
                             name=name or ("interval-%d" % k))


def torus_grid(name="torus-9"):
    """The 9-vertex torus: (i, j) over Z/3 x Z/3, two triangles per cell."""
    verts = [(i, j) for i in range(3) for j in range(3)]
    tris = []
    for i in range(3):
        for j in range(3):
            a = (i, j)
            b = ((i + 1) % 3, j)
            c = ((i + 1) % 3, (j + 1) % 3)
            d = (i, (j + 1) % 3)
            tris.append((a, b, c))
            tris.append((a, d, c))
    return SimplicialComplex(verts, tris, name=name)


def projective_plane(name="projective-plane-6"):
    """The 6-vertex triangulation of the projective plane."""
    faces = [(1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
             (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6)]
    return SimplicialComplex(list(range(1, 7)), faces, name=name)


def mobius_band(name="mobius-5"):
    """The 5-vertex Mobius band, faces (i, i+1, i+2) mod 5."""
    faces = [(i, (i + 1) % 5, (i + 2) % 5) for i in range(5)]
    return SimplicialComplex(list(range(5)), faces, name=name)


def annulus(name="annulus-6"):
    """Triangulated cylinder over a triangle, vertices (i, s)."""
    verts = [(i, s) for i in range(3) for s in (0, 1)]
    tris = []
    for i in range(3):
        j = (i + 1) % 3
        tris.append(((i, 0), (j, 0), (j, 1)))
        tris.append(((i, 0), (i, 1), (j, 1)))
    return SimplicialComplex(verts, tris, name=name)


def octahedron(name="sphere-octa"):
    """Boundary of the octahedron; antipodal pairs (0,5), (1,4), (2,3)."""
    faces = [(a, b, c) for a in (0, 5) for b in (1, 4) for c in (2, 3)]
    return SimplicialComplex(list(range(6)), faces, name=name)


def wedge_of_circles(k, name=None):
    """k triangle-circles joined at vertex 0."""
    verts = [0]
    edges = []
    for t in range(k):
        a, b = 2 * t + 1, 2 * t + 2
        verts += [a, b]
        edges += [(0, a), (a, b), (0, b)]
    return SimplicialComplex(verts, edges, name=name or ("wedge-%d" % k))


def _rot(m):
    return {i: (i + 1) % m for i in range(m)}


def _refl(m):
    return {i: (-i) % m for i in range(m)}


def _const(vertices, v0):
    return {v: v0 for v in vertices}


def degree_map(x, d, name=None):
    """Degree-d self-map of a circle complex with explicit edge paths.

    Vertex i goes to d*i; the edge (i, i+1) sweeps out the |d| steps from
    d*i toward d*(i+1), forward for d > 0 and backward for d < 0.
    """
    m = len(x.vertices)
    vmap = {i: (d * i) % m for i in range(m)}
    step = 1 if d >= 0 else -1
    paths = {}
    for i in range(m):
        u, v = i, (i + 1) % m
        walk = [(d * i + step * t) % m for t in range(abs(d) + 1)] or [vmap[u]]
        key = (u, v) if u < v else (v, u)
        paths[key] = walk if u < v else list(reversed(walk))
    return SimplicialSelfMap(x, vmap, edge_paths=paths,
                             name=name or ("deg%d" % d))


def _circle_entry(m, extra_degrees=()):
    x = circle(m)
    maps = [
        SimplicialSelfMap(x, {i: i for i in range(m)}, name="id"),
        SimplicialSelfMap(x, _rot(m), name="rot1"),
        SimplicialSelfMap(x, _refl(m), name="refl"),
        SimplicialSelfMap(x, _const(x.vertices, 0), name="const"),
    ]
    degrees = {"id": 1, "rot1": 1, "refl": -1, "const": 0}
    for d in extra_degrees:
        maps.append(degree_map(x, d))
        degrees["deg%d" % d] = d
    return CorpusEntry(x.name, x, maps, tags=("circle",), degrees=degrees)


def build_corpus():
    """All stock entries, in a fixed order."""
    out = []

    # the point admits exactly one self-map; list it under three names so
    # every entry carries at least three maps
    pt = SimplicialComplex(["p"], [("p",)], name="point")
    out.append(CorpusEntry("point", pt, [
        SimplicialSelfMap(pt, {"p": "p"}, name="id"),
        SimplicialSelfMap(pt, {"p": "p"}, name="const"),
        SimplicialSelfMap(pt, {"p": "p"}, name="retract"),
    ], tags=("point",)))

    i2 = path_complex(2)
    out.append(CorpusEntry("interval-2", i2, [
        SimplicialSelfMap(i2, {0: 0, 1: 1, 2: 2}, name="id"),
        SimplicialSelfMap(i2, _const(i2.vertices, 0), name="const"),
        SimplicialSelfMap(i2, {0: 2, 1: 1, 2: 0}, name="reverse"),
        SimplicialSelfMap(i2, {0: 0, 1: 1, 2: 0}, name="fold"),
    ], tags=("interval",)))

    i4 = path_complex(4)
    out.append(CorpusEntry("interval-4", i4, [
        SimplicialSelfMap(i4, {i: i for i in range(5)}, name="id"),
        SimplicialSelfMap(i4, _const(i4.vertices, 2), name="const"),
        SimplicialSelfMap(i4, {i: 4 - i for i in range(5)}, name="reverse"),
        SimplicialSelfMap(i4, {i: min(i, 4 - i) for i in range(5)},
                          name="tent"),
    ], tags=("interval",)))

    star = SimplicialComplex([0, 1, 2, 3, 4],
                             [(0, i) for i in (1, 2, 3, 4)], name="star-4")
    out.append(CorpusEntry("star-4", star, [
        SimplicialSelfMap(star, {i: i for i in range(5)}, name="id"),
        SimplicialSelfMap(star, _const(star.vertices, 0), name="const"),
        SimplicialSelfMap(star, {0: 0, 1: 2, 2: 3, 3: 4, 4: 1},
                          name="rot-leaves"),
        SimplicialSelfMap(star, {0: 0, 1: 2, 2: 1, 3: 3, 4: 4},
                          name="swap12"),
    ], tags=("tree",)))

    bt = SimplicialComplex(list(range(7)),
                           [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)],
                           name="binary-tree")
    out.append(CorpusEntry("binary-tree", bt, [
        SimplicialSelfMap(bt, {i: i for i in range(7)}, name="id"),
        SimplicialSelfMap(bt, _const(bt.vertices, 0), name="const"),
        SimplicialSelfMap(bt, {0: 0, 1: 2, 2: 1, 3: 5, 4: 6, 5: 3, 6: 4},
                          name="swap-branches"),
    ], tags=("tree",)))

    out.append(_circle_entry(3))
    out.append(_circle_entry(4, extra_degrees=(3,)))
    out.append(_circle_entry(5))
    out.append(_circle_entry(6, extra_degrees=(2, 3)))
    out.append(_circle_entry(7))
    out.append(_circle_entry(8, extra_degrees=(2,)))
    out.append(_circle_entry(12))

    tetra = SimplicialComplex([0, 1, 2, 3],
                              [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)],
                              name="sphere-tetra")
    out.append(CorpusEntry("sphere-tetra", tetra, [
        SimplicialSelfMap(tetra, {i: i for i in range(4)}, name="id"),
        SimplicialSelfMap(tetra, {0: 1, 1: 0, 2: 2, 3: 3}, name="swap01"),
        SimplicialSelfMap(tetra, {0: 1, 1: 2, 2: 3, 3: 0}, name="cycle"),
        SimplicialSelfMap(tetra, _const(tetra.vertices, 0), name="const"),
    ], tags=("sphere",)))

    octa = octahedron()
    out.append(CorpusEntry("sphere-octa", octa, [
        SimplicialSelfMap(octa, {i: i for i in range(6)}, name="id"),
        SimplicialSelfMap(octa, {i: 5 - i for i in range(6)},
                          name="antipode"),
        SimplicialSelfMap(octa, {0: 1, 1: 2, 2: 0, 5: 4, 4: 3, 3: 5},
                          name="axes3"),
        SimplicialSelfMap(octa, _const(octa.vertices, 0), name="const"),
    ], tags=("sphere",)))

    torus = torus_grid()
    tv = torus.vertices

    def tmap(fun, name):
        return SimplicialSelfMap(torus, {(i, j): fun(i, j) for (i, j) in tv},
                                 name=name)

    out.append(CorpusEntry("torus-9", torus, [
        tmap(lambda i, j: (i, j), "id"),
        tmap(lambda i, j: ((i + 1) % 3, j), "t10"),
        tmap(lambda i, j: (i, (j + 1) % 3), "t01"),
        tmap(lambda i, j: ((-i) % 3, (-j) % 3), "neg"),
        tmap(lambda i, j: (j, i), "swap"),
        tmap(lambda i, j: ((i - j) % 3, i), "rot6"),
        tmap(lambda i, j: (i, 0), "proj"),
    ], declare="free-abelian", expect=2, tags=("torus",)))

    rp2 = projective_plane()
    out.append(CorpusEntry("projective-plane-6", rp2, [
        SimplicialSelfMap(rp2, {i: i for i in range(1, 7)}, name="id"),
        SimplicialSelfMap(rp2, {1: 1, 2: 3, 3: 5, 4: 2, 5: 6, 6: 4},
                          name="auto5"),
        SimplicialSelfMap(rp2, {1: 1, 2: 2, 3: 4, 4: 3, 5: 6, 6: 5},
                          name="auto2"),
        SimplicialSelfMap(rp2, _const(rp2.vertices, 1), name="const"),
    ], declare="finite", expect=2, tags=("projective-plane",)))

    w2 = wedge_of_circles(2)
    out.append(CorpusEntry("wedge-2", w2, [
        SimplicialSelfMap(w2, {i: i for i in range(5)}, name="id"),
        SimplicialSelfMap(w2, _const(w2.vertices, 0), name="const"),
        SimplicialSelfMap(w2, {0: 0, 1: 3, 2: 4, 3: 1, 4: 2},
                          name="swap-circles"),
        SimplicialSelfMap(w2, {0: 0, 1: 1, 2: 2, 3: 0, 4: 0},
                          name="collapse-b"),
        SimplicialSelfMap(w2, {0: 0, 1: 2, 2: 1, 3: 3, 4: 4},
                          name="refl-a"),
    ], tags=("wedge",)))

    w3 = wedge_of_circles(3)
    out.append(CorpusEntry("wedge-3", w3, [
        SimplicialSelfMap(w3, {i: i for i in range(7)}, name="id"),
        SimplicialSelfMap(w3, _const(w3.vertices, 0), name="const"),
        SimplicialSelfMap(w3, {0: 0, 1: 3, 2: 4, 3: 5, 4: 6, 5: 1, 6: 2},
                          name="cycle-circles"),
        SimplicialSelfMap(w3, {0: 0, 1: 1, 2: 2, 3: 3, 4: 4, 5: 0, 6: 0},
                          name="collapse-c"),
    ], tags=("wedge",)))

    mob = mobius_band()
    out.append(CorpusEntry("mobius-5", mob, [
        SimplicialSelfMap(mob, {i: i for i in range(5)}, name="id"),
        SimplicialSelfMap(mob, _rot(5), name="rot1"),
        SimplicialSelfMap(mob, _refl(5), name="refl"),
        SimplicialSelfMap(mob, _const(mob.vertices, 0), name="const"),
    ], declare="free-abelian", expect=1, tags=("mobius",)))

    ann = annulus()
    av = ann.vertices

    def amap(fun, name):
        return SimplicialSelfMap(ann, {(i, s): fun(i, s) for (i, s) in av},
                                 name=name)

    out.append(CorpusEntry("annulus-6", ann, [
        amap(lambda i, s: (i, s), "id"),
        amap(lambda i, s: ((i + 1) % 3, s), "rot1"),
        amap(lambda i, s: ((-i) % 3, 1 - s), "antiflip"),
        amap(lambda i, s: (0, 0), "const"),
    ], declare="free-abelian", expect=1, tags=("annulus",)))

    theta = SimplicialComplex([0, 1, 2, 3, 4],
                              [(0, 2), (1, 2), (0, 3), (1, 3), (0, 4),
                               (1, 4)], name="theta")
    out.append(CorpusEntry("theta", theta, [
        SimplicialSelfMap(theta, {i: i for i in range(5)}, name="id"),
        SimplicialSelfMap(theta, _const(theta.vertices, 0), name="const"),
        SimplicialSelfMap(theta, {0: 0, 1: 1, 2: 3, 3: 2, 4: 4},
                          name="swap23"),
        SimplicialSelfMap(theta, {0: 0, 1: 1, 2: 3, 3: 4, 4: 2},
                          name="cyc234"),
        SimplicialSelfMap(theta, {0: 0, 1: 1, 2: 2, 3: 2, 4: 2},
                          name="fold"),
    ], tags=("graph",)))

    k4 = SimplicialComplex([0, 1, 2, 3],
                           [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
                           name="k4")
    out.append(CorpusEntry("k4", k4, [
        SimplicialSelfMap(k4, {i: i for i in range(4)}, name="id"),
        SimplicialSelfMap(k4, _const(k4.vertices, 0), name="const"),
        SimplicialSelfMap(k4, {0: 1, 1: 2, 2: 3, 3: 0}, name="cycle"),
        SimplicialSelfMap(k4, {0: 1, 1: 0, 2: 2, 3: 3}, name="swap01"),
    ], tags=("graph",)))

    disk = SimplicialComplex([0, 1, 2], [(0, 1, 2)], name="disk-3")
    out.append(CorpusEntry("disk-3", disk, [
        SimplicialSelfMap(disk, {0: 0, 1: 1, 2: 2}, name="id"),
        SimplicialSelfMap(disk, {0: 1, 1: 2, 2: 0}, name="rot"),
        SimplicialSelfMap(disk, {0: 1, 1: 0, 2: 2}, name="swap01"),
        SimplicialSelfMap(disk, _const(disk.vertices, 0), name="const"),
    ], tags=("disk",)))

    bow = SimplicialComplex([0, 1, 2, 3, 4], [(0, 1, 2), (0, 3, 4)],
                            name="bowtie")
    out.append(CorpusEntry("bowtie", bow, [
        SimplicialSelfMap(bow, {i: i for i in range(5)}, name="id"),
        SimplicialSelfMap(bow, _const(bow.vertices, 0), name="const"),
        SimplicialSelfMap(bow, {0: 0, 1: 3, 2: 4, 3: 1, 4: 2},
                          name="swap-lobes"),
        SimplicialSelfMap(bow, {0: 0, 1: 1, 2: 2, 3: 1, 4: 2},
                          name="squash"),
    ], tags=("disk",)))

    return out


_CACHE = None


def corpus():
    """Memoized corpus list; treat it as read-only."""
    global _CACHE
    if _CACHE is None:
        _CACHE = build_corpus()
    return _CACHE


def entry(name):
    for e in corpus():
        if e.name == name:
            return e
    raise KeyError("no corpus entry %r" % (name,))


def by_tag(tag):
    return [e for e in corpus() if tag in e.tags]
