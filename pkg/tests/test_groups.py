"""Group models, homs, group rings, twisted conjugacy."""

import random

import pytest

from shadowtrace.groups import (GroupElement, GroupHom, GroupRingElement,
                                cyclic_group, enumerate_homs,
                                free_abelian_group, hom_from_generator_images,
                                identity_hom, product_model, ring_one,
                                symmetric_group_3, twisted_class,
                                twisted_class_count, twisted_class_reps)

SMALL = [cyclic_group(1), cyclic_group(2), cyclic_group(3), cyclic_group(4),
         cyclic_group(6), product_model(cyclic_group(2), cyclic_group(2)),
         symmetric_group_3()]


def automorphisms(model):
    return [h for h in enumerate_homs(model, model)
            if sorted(h.images) == list(range(model.n))]


def test_model_axioms():
    for model in SMALL:
        e = model.identity_data()
        for a in range(model.n):
            assert model.mul_data(e, a) == a
            assert model.mul_data(a, e) == a
            assert model.mul_data(a, model.inv_data(a)) == e
        # associativity, full table for these orders
        for a in range(model.n):
            for b in range(model.n):
                for c in range(model.n):
                    assert model.mul_data(model.mul_data(a, b), c) \
                        == model.mul_data(a, model.mul_data(b, c))


def test_model_equality_is_by_value():
    assert cyclic_group(4) == cyclic_group(4)
    assert hash(cyclic_group(4)) == hash(cyclic_group(4))
    assert cyclic_group(4) != cyclic_group(3)
    assert product_model(cyclic_group(2), cyclic_group(2)) \
        == product_model(cyclic_group(2), cyclic_group(2))
    assert free_abelian_group(2) == free_abelian_group(2)
    assert free_abelian_group(2) != free_abelian_group(1)


def test_enumerate_homs_counts():
    # hom(C_m, C_n) has gcd(m, n) elements
    import math
    for m in (1, 2, 3, 4, 6):
        for n in (1, 2, 3, 4, 6):
            got = len(enumerate_homs(cyclic_group(m), cyclic_group(n)))
            assert got == math.gcd(m, n)
    s3 = symmetric_group_3()
    # Aut(S3) = Inn(S3) = S3
    assert len(automorphisms(s3)) == 6
    # maps S3 -> C6: factor through the sign, so 2 of them
    assert len(enumerate_homs(s3, cyclic_group(6))) == 2
    v4 = product_model(cyclic_group(2), cyclic_group(2))
    assert len(automorphisms(v4)) == 6
    assert len(enumerate_homs(v4, cyclic_group(2))) == 4


def test_hom_composition_and_inverse():
    rng = random.Random(5)
    for t in range(80):
        model = rng.choice(SMALL)
        autos = automorphisms(model)
        phi = rng.choice(autos)
        psi = rng.choice(autos)
        comp = psi.compose(phi)
        for a in range(model.n):
            assert comp.images[a] == psi.images[phi.images[a]]
        inv = phi.inverse()
        assert inv.compose(phi) == identity_hom(model)
        assert phi.compose(inv) == identity_hom(model)


def test_hom_from_generator_images():
    c4 = cyclic_group(4)
    doubling = hom_from_generator_images(c4, c4, {1: GroupElement(c4, 2)})
    assert doubling.images == (0, 2, 0, 2)
    # a transposition cannot go to a 3-cycle
    s3 = symmetric_group_3()
    trans = next(a for a in range(6) if a and s3.mul_data(a, a) == 0)
    three = next(a for a in range(6) if a and s3.mul_data(a, a) != 0)
    with pytest.raises(AssertionError):
        hom_from_generator_images(s3, s3, {trans: GroupElement(s3, three)})


def test_free_abelian_homs():
    z = free_abelian_group(1)
    doubling = GroupHom(z, z, ((2,),))
    a = GroupElement(z, (3,))
    assert doubling(a).data == (6,)
    z2 = free_abelian_group(2)
    swap = GroupHom(z2, z2, ((0, 1), (1, 0)))
    assert swap(GroupElement(z2, (2, 5))).data == (5, 2)
    assert swap.compose(swap) == identity_hom(z2)
    assert swap.is_iso()
    assert not GroupHom(z, z, ((2,),)).is_iso()


def test_group_ring_arithmetic():
    rng = random.Random(6)
    for model in (cyclic_group(4), symmetric_group_3()):
        one = ring_one(model)
        for t in range(60):
            a = GroupRingElement(model, {rng.randrange(model.n):
                                         rng.randint(-3, 3)
                                         for _ in range(2)})
            b = GroupRingElement(model, {rng.randrange(model.n):
                                         rng.randint(-3, 3)
                                         for _ in range(2)})
            c = GroupRingElement(model, {rng.randrange(model.n):
                                         rng.randint(-3, 3)
                                         for _ in range(2)})
            assert a * one == a and one * a == a
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c
            assert (a * b) * c == a * (b * c)
            assert (a * b).augmentation() \
                == a.augmentation() * b.augmentation()
            assert (a - a).is_zero()


def test_twisted_class_invariance_exhaustive():
    # over the small models, check every class move u g phi(u)^-1 exactly
    for model in SMALL:
        if model.n > 6:
            continue
        for phi in automorphisms(model):
            for g in range(model.n):
                base = twisted_class(GroupElement(model, g), phi)
                for u in range(model.n):
                    moved = model.mul_data(
                        model.mul_data(u, g),
                        model.inv_data(phi.images[u]))
                    assert twisted_class(GroupElement(model, moved),
                                         phi) == base
            # class count equals the number of orbits
            reps = twisted_class_reps(model, phi)
            seen = {twisted_class(GroupElement(model, g), phi)
                    for g in range(model.n)}
            assert len(reps) == len(seen)
            assert twisted_class_count(model, phi) == len(seen)


def test_twisted_class_known_counts():
    # ordinary conjugacy: C4 has 4 classes, S3 has 3
    assert twisted_class_count(cyclic_group(4),
                               identity_hom(cyclic_group(4))) == 4
    assert twisted_class_count(symmetric_group_3(),
                               identity_hom(symmetric_group_3())) == 3
    # twisting C4 by inversion: g ~ u g u^-1 twisted means g ~ g + 2u,
    # so two classes ({0, 2} and {1, 3})
    c4 = cyclic_group(4)
    invert = hom_from_generator_images(c4, c4, {1: GroupElement(c4, 3)})
    assert twisted_class_count(c4, invert) == 2


def test_free_abelian_twisted_classes():
    # for x -> d x on Z the classes are the cosets of (1 - d) Z
    z = free_abelian_group(1)
    for d in (-1, 0, 2, 3):
        phi = GroupHom(z, z, ((d,),))
        seen = set()
        for g in range(-9, 10):
            seen.add(twisted_class(GroupElement(z, (g,)), phi))
        assert len(seen) == abs(1 - d)
    # identity twist: infinitely many classes, one per integer
    ident = identity_hom(z)
    classes = {twisted_class(GroupElement(z, (g,)), ident)
               for g in range(-3, 4)}
    assert len(classes) == 7


def test_class_sort_keys_are_stable():
    model = symmetric_group_3()
    phi = identity_hom(model)
    reps = twisted_class_reps(model, phi)
    keys = [c.sort_key() for c in reps]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
