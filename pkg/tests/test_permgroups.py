import numpy as np
import pytest

from qpt.errors import InputError, NotASubgroup
from qpt.graphs import automorphism_group, cycle_graph
from qpt.permgroups import (
    FiniteGroup,
    PermGroup,
    Permutation,
    Subgroup,
    all_subgroups,
    centralizer,
    closure,
    dihedral_group,
    stabilizer,
    subgroups_square_order,
)


def rot(n, k=1):
    return [(i + k) % n for i in range(n)]


def refl(n):
    return [(-i) % n for i in range(n)]


def test_permutation_basics():
    p = Permutation((1, 2, 0))
    assert (p * p.inverse()) == Permutation.identity(3)
    assert (p * p)(0) == 2
    with pytest.raises(InputError):
        Permutation((0, 0, 1))


def test_closure_examples():
    assert closure([], 4).order == 1
    assert closure([rot(6), refl(6)], 6).order == 12
    assert dihedral_group(5).order == 10


def test_group_closed_with_identity():
    G = dihedral_group(6)
    els = G.elements
    assert np.array_equal(els[0], np.arange(6))
    t = G.multiplication_table
    assert np.array_equal(els[t], els[:, None, :][np.arange(12)[:, None, None], 0, els[None, :, :]])


def test_square_order_subgroups_of_dihedral():
    assert subgroups_square_order(dihedral_group(5)) == []
    d6 = subgroups_square_order(dihedral_group(6))
    assert [(c.order, c.representative.abstract.describe()) for c in d6] == [(4, d6[0].representative.abstract.describe())]
    assert d6[0].representative.abstract.invariant_factors() == [2, 2]
    d8 = [c for c in subgroups_square_order(dihedral_group(8)) if c.order == 4 and c.representative.abstract.invariant_factors() == [2, 2]]
    assert len(d8) == 2


def test_centralizer_examples():
    G = dihedral_group(6)
    assert centralizer(G, np.arange(6)).order == 12
    assert centralizer(G, np.array(rot(6, 3))).order == 12
    c = centralizer(G, np.array(refl(6)))
    assert c.order == 4
    members = {tuple(p) for p in c.elements}
    assert tuple(rot(6, 3)) in members and tuple(refl(6)) in members


def test_stabilizer_examples():
    G = dihedral_group(6)
    L = Subgroup(G, G.indices_of(np.array([list(range(6)), rot(6, 3), refl(6), [(3 - i) % 6 for i in range(6)]])))
    assert L.order == 4
    s0 = stabilizer(L, 0)
    assert s0.order == 2 and {tuple(p) for p in s0.elements} == {tuple(range(6)), tuple(refl(6))}
    assert stabilizer(L, 1).order == 1
    assert stabilizer(closure([], 6), 0).order == 1


def test_subgroup_must_be_closed():
    G = dihedral_group(6)
    with pytest.raises(NotASubgroup):
        Subgroup(G, [0, G.index_of(np.array(rot(6)))])


def test_all_subgroups_counts():
    # D4 (order 8) has 10 subgroups; Z2^3 has 16
    assert len(all_subgroups(dihedral_group(4))) == 10
    z23 = FiniteGroup.abelian([2, 2, 2])
    G = PermGroup(8, (), z23.table.copy())
    assert len(all_subgroups(G)) == 16


def test_abstract_group_description():
    assert FiniteGroup.abelian([3, 3]).invariant_factors() == [3, 3]
    assert FiniteGroup.cyclic(4).invariant_factors() == [4]
    assert not dihedral_group(4).abstract.is_abelian


def test_class_representatives_cover_members():
    G = automorphism_group(cycle_graph(12))
    for cls in subgroups_square_order(G):
        keys = [m.sort_key() for m in cls.members]
        assert cls.representative.sort_key() == min(keys)
        assert cls.size == len(set(keys))
