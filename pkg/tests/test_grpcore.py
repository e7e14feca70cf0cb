import random
from math import gcd

import pytest

from helpring.grpcore import (
    FAMILY_TAGS,
    ORDER16_NAMES,
    classify_2group,
    conjugacy_classes,
    contains_c4xc2,
    cyclic,
    dihedral,
    direct_product,
    elem_abelian,
    find_embedding,
    group_build,
    order16,
    parse_group_spec,
    perm_group,
    quaternion,
    semidihedral,
    two_group_catalogue,
    verify_lemma_2groups,
)


def independent_orbit(G, x):
    """Test-local conjugacy orbit via conjugation by every element."""
    return {G.mul(G.mul(g, x), G.inverse(g)) for g in range(G.order)}


def test_semidihedral_presentation():
    G = group_build(semidihedral(16))
    assert G.order == 16
    h = G._index[(1, 0)]
    a = G._index[(0, 1)]
    assert G.element_order(h) == 8
    assert G.element_order(a) == 2
    assert G.conjugate(a, h) == G.power(h, 3)


def test_trivial_group():
    G = group_build(cyclic(1))
    assert G.order == 1 and G.element_order(0) == 1


def test_c4xc2_element_orders():
    G = group_build(direct_product(cyclic(4), cyclic(2)))
    orders = sorted(G.element_order(i) for i in range(8))
    assert orders == [1, 2, 2, 2, 4, 4, 4, 4]


def test_group_axioms_sampled():
    rng = random.Random(0)
    for spec in [dihedral(16), quaternion(16), semidihedral(32), order16(13)]:
        G = group_build(spec)
        for i in range(G.order):
            assert G.mul(0, i) == i == G.mul(i, 0)
            assert G.mul(i, G.inverse(i)) == 0
        for _ in range(60):
            a, b, c = (rng.randrange(G.order) for _ in range(3))
            assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))


def test_quaternion_classes():
    G = group_build(quaternion(8))
    part = conjugacy_classes(G)
    assert sorted(c.size for c in part.classes) == [1, 1, 2, 2, 2]
    for c in part.classes:
        assert set(c.members) == independent_orbit(G, c.rep)


def test_elem_abelian_classes():
    G = group_build(elem_abelian(2, 3))
    part = conjugacy_classes(G)
    assert len(part.classes) == 8
    assert all(c.size == 1 for c in part.classes)


def test_dihedral8_classes():
    G = group_build(dihedral(8))
    part = conjugacy_classes(G)
    assert len(part.classes) == 5
    assert sum(1 for c in part.classes if c.rep_order == 4) == 1
    for c in part.classes:
        assert set(c.members) == independent_orbit(G, c.rep)


def test_class_sizes_divide_group_order():
    for spec in [dihedral(16), semidihedral(16), quaternion(16), order16(3), order16(13)]:
        G = group_build(spec)
        part = conjugacy_classes(G)
        assert sum(c.size for c in part.classes) == G.order
        for c in part.classes:
            assert G.order % c.size == 0


def test_power_map_composition():
    G = group_build(semidihedral(32))
    part = conjugacy_classes(G)
    twice = part.power_map(2)
    for idx in range(len(part.classes)):
        assert twice[twice[idx]] == part.power_class(idx, 4)


def test_class_names_deterministic():
    G = group_build(dihedral(8))
    part = conjugacy_classes(G)
    assert part.names() == ["1a", "2a", "2b", "2c", "4a"]


def test_contains_c4xc2():
    assert contains_c4xc2(group_build(direct_product(cyclic(4), cyclic(2)))) is not None
    assert contains_c4xc2(group_build(semidihedral(16))) is None
    assert contains_c4xc2(group_build(quaternion(16))) is None


def test_contains_c4xc2_witness_is_valid():
    G = group_build(order16(2))  # C4 x C4
    w = contains_c4xc2(G)
    assert w is not None
    x, y = w
    assert G.element_order(x) == 4 and G.element_order(y) == 2
    assert G.mul(x, y) == G.mul(y, x)
    assert y not in G.cyclic_subgroup(x)


def test_find_embedding_d8_in_d16():
    e = find_embedding(group_build(dihedral(16)), dihedral(8))
    assert e is not None
    T, G = e.target, e.group
    emap = e.element_map
    assert len(set(emap)) == T.order
    for a in range(T.order):
        for b in range(T.order):
            assert emap[T.mul(a, b)] == G.mul(emap[a], emap[b])


def test_find_embedding_identity_case():
    e = find_embedding(group_build(quaternion(8)), quaternion(8))
    assert e is not None
    assert len(set(e.element_map)) == 8


def test_find_embedding_absent():
    assert find_embedding(group_build(semidihedral(16)), elem_abelian(2, 3)) is None
    assert find_embedding(group_build(cyclic(16)), quaternion(8)) is None


def test_embedding_agrees_with_c4xc2_search():
    for name, spec in two_group_catalogue(16):
        G = group_build(spec)
        assert (contains_c4xc2(G) is None) == (
            find_embedding(G, direct_product(cyclic(4), cyclic(2))) is None
        ), name


def test_classify_2group_families():
    assert classify_2group(group_build(semidihedral(32))) == "semidihedral"
    assert classify_2group(group_build(cyclic(8))) == "cyclic"
    assert classify_2group(group_build(order16(2))) == "other"  # C4 x C4
    assert classify_2group(group_build(quaternion(32))) == "quaternion"
    assert classify_2group(group_build(dihedral(64))) == "dihedral"
    assert classify_2group(group_build(elem_abelian(2, 4))) == "elem_abelian"


def test_classify_roundtrip_families_up_to_64():
    cases = [(cyclic(n), "cyclic") for n in (4, 8, 16, 32, 64)]
    cases += [(dihedral(n), "dihedral") for n in (8, 16, 32, 64)]
    cases += [(semidihedral(n), "semidihedral") for n in (16, 32, 64)]
    cases += [(quaternion(n), "quaternion") for n in (8, 16, 32, 64)]
    cases += [(elem_abelian(2, r), "elem_abelian") for r in (1, 2, 3, 4, 5, 6)]
    for spec, expected in cases:
        assert classify_2group(group_build(spec)) == expected


def test_classify_rejects_non_2groups():
    with pytest.raises(ValueError):
        classify_2group(group_build(cyclic(6)))


def test_order16_catalogue_pairwise_distinct():
    seen = {}
    for i in range(1, 15):
        G = group_build(order16(i))
        assert G.order == 16
        orders = tuple(sorted(G.element_order(x) for x in range(16)))
        center = len(G.center())
        abelian = G.is_abelian()
        center_orders = tuple(sorted(G.element_order(x) for x in G.center()))
        has_q8 = find_embedding(G, quaternion(8)) is not None
        has_d8 = find_embedding(G, dihedral(8)) is not None
        fingerprint = (orders, center, abelian, center_orders, has_q8, has_d8)
        assert fingerprint not in seen, f"{ORDER16_NAMES[i-1]} vs {seen.get(fingerprint)}"
        seen[fingerprint] = ORDER16_NAMES[i - 1]


def test_lemma_2groups_order16():
    report = verify_lemma_2groups(16)
    assert report.passed
    free = {row["group"] for row in report.checked
            if row["order"] == 16 and not row["has_c4xc2"]}
    assert free == {"C16", "D16", "SD16", "Q16", "C2^4"}


def test_lemma_2groups_vacuous():
    assert verify_lemma_2groups(2).passed


def test_lemma_2groups_full():
    report = verify_lemma_2groups(64)
    assert report.passed
    assert not report.counterexamples
    for row in report.checked:
        assert row["classification"] in FAMILY_TAGS or row["has_c4xc2"]


def test_perm_group_alternating():
    G = group_build(perm_group((1, 2, 0, 3, 4), (0, 1, 3, 4, 2)))  # 3-cycles generate A5
    assert G.order == 60
    part = conjugacy_classes(G)
    assert sorted(c.size for c in part.classes) == [1, 12, 12, 15, 20]


def test_parse_group_spec():
    assert parse_group_spec("c4xc2") == direct_product(cyclic(4), cyclic(2))
    assert parse_group_spec("d16") == dihedral(16)
    assert parse_group_spec("sd16") == semidihedral(16)
    assert parse_group_spec("q8") == quaternion(8)
    assert parse_group_spec("e2^3") == elem_abelian(2, 3)
    assert parse_group_spec("o16:13") == order16(13)
    spec = parse_group_spec("perm:[(1,2,3);(1,2)]")
    assert group_build(spec).order == 6
    with pytest.raises(ValueError):
        parse_group_spec("x9z")
