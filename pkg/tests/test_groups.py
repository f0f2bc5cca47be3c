from collections import Counter

import pytest

from genkummer.groups import (
    CATALOG,
    FiniteGroupTable,
    GroupError,
    all_subgroups,
    build_group,
    conjugacy_classes,
    cyclic_subgroup_classes,
    fixed_cosets,
    group_info,
    stabilizer_classes,
    subgroup_kind,
)


@pytest.fixture(params=CATALOG)
def group(request):
    return build_group(request.param)


def census(G):
    return Counter(G.element_orders)


def test_orders():
    assert [build_group(n).order for n in CATALOG] == [2, 3, 4, 6, 8, 12, 24]


def test_q8_census():
    assert census(build_group("Q8")) == {1: 1, 2: 1, 4: 6}


def test_z6_orders():
    assert sorted(build_group("Z6").element_orders) == [1, 2, 3, 3, 6, 6]


def test_t24_center_and_q8():
    G = build_group("T24")
    center = [z for z in range(G.order) if all(G.mul(z, x) == G.mul(x, z) for x in range(G.order))]
    assert len(center) == 2
    q8s = [H for H in all_subgroups(G) if subgroup_kind(G, H) == "Q8"]
    assert len(q8s) == 1


def test_unknown_group():
    with pytest.raises(GroupError):
        build_group("D8")


def test_bad_table_rejected():
    with pytest.raises(GroupError):
        FiniteGroupTable("bad", ("e", "x", "y"), [[0, 1, 2], [1, 0, 2], [2, 2, 0]])


@pytest.mark.parametrize("name, sizes", [
    ("Q8", [1, 1, 2, 2, 2]),
    ("Z4", [1, 1, 1, 1]),
    ("T24", [1, 1, 4, 4, 6, 4, 4]),
    ("Q12", [1, 1, 2, 3, 3, 2]),
])
def test_class_sizes(name, sizes):
    assert [len(c) for c in conjugacy_classes(build_group(name))] == sizes


def test_class_equation(group):
    classes = conjugacy_classes(group)
    assert sum(len(c) for c in classes) == group.order
    assert all(group.order % len(c) == 0 for c in classes)
    assert sorted(x for c in classes for x in c) == list(range(group.order))


def _cyc_summary(name):
    return [(c.kind, c.class_size, c.normalizer_order) for c in cyclic_subgroup_classes(build_group(name))]


def test_cyclic_subgroup_classes():
    assert _cyc_summary("Q8") == [("Z2", 1, 8), ("Z4", 1, 8), ("Z4", 1, 8), ("Z4", 1, 8)]
    assert _cyc_summary("Q12") == [("Z2", 1, 12), ("Z3", 1, 12), ("Z4", 3, 4), ("Z6", 1, 12)]
    assert _cyc_summary("Z3") == [("Z3", 1, 3)]


def _stab_summary(name):
    return [(s.kind, s.index_m, s.sing_type) for s in stabilizer_classes(build_group(name))]


def test_stabilizer_tables():
    assert _stab_summary("Q8") == [("Z2", 4, "A1"), ("Z4", 2, "A3"), ("Z4", 2, "A3"),
                                   ("Z4", 2, "A3"), ("Q8", 1, "D4")]
    assert _stab_summary("Z2") == [("Z2", 1, "A1")]
    assert _stab_summary("T24") == [("Z2", 12, "A1"), ("Z3", 8, "A2"), ("Z4", 6, "A3"),
                                    ("Z6", 4, "A5"), ("Q8", 3, "D4"), ("T24", 1, "E6")]


def test_stabilizers_cover_every_catalog_subgroup(group):
    classes = stabilizer_classes(group)
    covered = {H for s in classes for H in _conjugates(group, s.subgroup)}
    for H in all_subgroups(group):
        if len(H) == 1:
            continue
        kind = subgroup_kind(group, H)
        assert kind is not None, "no Klein four or other non-catalog subgroup"
        assert H in covered
    for s in classes:
        assert group.is_subgroup(s.subgroup)
        assert subgroup_kind(group, s.subgroup) == s.kind
        assert s.index_m * len(s.subgroup) == group.order


def _conjugates(G, H):
    return {tuple(sorted(G.conj(h, x) for h in H)) for x in range(G.order)}


def test_fixed_cosets_examples():
    Q8 = build_group("Q8")
    z, i = Q8.index_of("a^2"), Q8.index_of("a")
    assert fixed_cosets(Q8, z, Q8.generated([i])) == 2
    assert fixed_cosets(Q8, i, Q8.generated([z])) == 0
    Q12 = build_group("Q12")
    u = Q12.index_of("b")
    assert Q12.element_order(u) == 4
    assert fixed_cosets(Q12, u, Q12.generated([u])) == 1


def test_fixed_cosets_rejects_nonsubgroup():
    Q8 = build_group("Q8")
    with pytest.raises(GroupError):
        fixed_cosets(Q8, 0, (0, 1))


def test_fixed_cosets_identity_and_burnside(group):
    for s in stabilizer_classes(group):
        H = s.subgroup
        assert fixed_cosets(group, group.identity, H) == s.index_m
        # transitive action on G/H: one orbit
        assert sum(fixed_cosets(group, g, H) for g in range(group.order)) == group.order


def test_fixed_cosets_conjugation_invariant(group):
    for s in stabilizer_classes(group):
        for cls in conjugacy_classes(group):
            values = {fixed_cosets(group, g, s.subgroup) for g in cls}
            assert len(values) == 1


def test_group_info_shape():
    info = group_info(build_group("Q12"))
    assert info["order"] == 12
    assert [s["sing_type"] for s in info["stabilizer_classes"]] == ["A1", "A2", "A3", "A5", "D5"]
