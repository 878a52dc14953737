from itertools import permutations

import pytest

from meshknit.dynkin import (
    TreeAutomorphism,
    flip_automorphism,
    loewy_number,
    make_tree,
    rotation_automorphism,
    tree_automorphisms,
    tree_from_name,
)
from meshknit.errors import InvalidType


def test_loewy_table():
    assert loewy_number(make_tree("A", 7)) == 7
    assert loewy_number(make_tree("D", 5)) == 7
    assert loewy_number(make_tree("E", 8)) == 29
    assert loewy_number(make_tree("E", 6)) == 11
    assert loewy_number(make_tree("E", 7)) == 17
    for n in range(4, 9):
        assert loewy_number(make_tree("D", n)) == 2 * n - 3


def test_loewy_at_least_rank_with_equality_only_for_A():
    for family, ranks in [("A", range(1, 9)), ("D", range(4, 9)), ("E", (6, 7, 8))]:
        for n in ranks:
            t = make_tree(family, n)
            if family == "A":
                assert loewy_number(t) == n
            else:
                assert loewy_number(t) > n


def test_make_tree_shapes_and_errors():
    a1 = make_tree("A", 1)
    assert a1.edges == () and list(a1.vertices) == [1]
    e6 = make_tree("E", 6)
    assert set(e6.edges) == {(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)}
    d4 = make_tree("D", 4)
    assert set(d4.edges) == {(1, 2), (2, 3), (2, 4)}
    with pytest.raises(InvalidType):
        make_tree("D", 3)
    with pytest.raises(InvalidType):
        make_tree("E", 5)
    with pytest.raises(InvalidType):
        make_tree("A", 0)
    with pytest.raises(InvalidType):
        make_tree("F", 4)
    assert tree_from_name("D_5").rank == 5
    with pytest.raises(InvalidType):
        tree_from_name("Q3")


def test_every_tree_is_a_tree():
    for family, ranks in [("A", range(1, 9)), ("D", range(4, 9)), ("E", (6, 7, 8))]:
        for n in ranks:
            t = make_tree(family, n)
            assert len(t.edges) == n - 1
            seen = {1}
            todo = [1]
            while todo:
                v = todo.pop()
                for w in t.neighbors[v]:
                    if w not in seen:
                        seen.add(w)
                        todo.append(w)
            assert seen == set(t.vertices)


def brute_force_automorphisms(tree):
    edge_set = {frozenset(e) for e in tree.edges}
    out = []
    for perm in permutations(tree.vertices):
        mapping = dict(zip(tree.vertices, perm))
        if all(frozenset((mapping[a], mapping[b])) in edge_set for a, b in tree.edges):
            out.append(tuple(perm))
    return sorted(out)


@pytest.mark.parametrize(
    "name,order",
    [("A1", 1), ("A2", 2), ("A5", 2), ("D4", 6), ("D5", 2), ("D6", 2), ("E6", 2), ("E7", 1), ("E8", 1)],
)
def test_automorphism_group_orders(name, order):
    tree = tree_from_name(name)
    auts = tree_automorphisms(tree)
    assert len(auts) == order
    assert sorted(a.mapping for a in auts) == brute_force_automorphisms(tree)


def test_a5_generator_is_the_flip():
    tree = make_tree("A", 5)
    flip = flip_automorphism(tree)
    assert flip.mapping == tuple(6 - i for i in range(1, 6))
    assert flip.order == 2


def test_d4_group_is_symmetric_on_outer_vertices():
    tree = make_tree("D", 4)
    auts = tree_automorphisms(tree)
    assert all(a(2) == 2 for a in auts)
    assert {a.order for a in auts} == {1, 2, 3}
    rot = rotation_automorphism(tree)
    assert rot.order == 3
    # closed under composition and inverse
    mappings = {a.mapping for a in auts}
    for a in auts:
        assert a.inverse().mapping in mappings
        for b in auts:
            assert a.compose(b).mapping in mappings


def test_branch_vertex_fixed():
    for name in ["D5", "D6", "D7", "E6", "E7", "E8"]:
        tree = tree_from_name(name)
        branch = tree.branch_vertex
        for aut in tree_automorphisms(tree):
            assert aut(branch) == branch


def test_depth_map_follows_edges():
    for name in ["A4", "D6", "E8"]:
        tree = tree_from_name(name)
        for lo, hi in tree.edges:
            assert tree.depth[hi] == tree.depth[lo] + 1


def test_automorphism_order_and_identity():
    ident = TreeAutomorphism((1, 2, 3))
    assert ident.is_identity and ident.order == 1
