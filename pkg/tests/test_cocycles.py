import numpy as np
import pytest

from qpt.cocycles import (
    CentralTypeSubgroup,
    Coboundary,
    TwoCocycle,
    cohomologous,
    conjugate_cocycle,
    enumerate_nondegenerate_classes_abelian,
    equivalent_pairs,
    find_nondegenerate_cocycle,
    is_central_type,
    is_coisotropic,
    is_nondegenerate,
    orthogonal_complement,
    phi,
    regular_classes,
    rho,
    twisted_center_dimension,
    verify_cocycle,
)
from qpt.errors import CocycleViolation, NondegeneracyRequired, NotASubgroup, NotConjugating
from qpt.graphs import automorphism_group, cycle_graph, rook_graph
from qpt.permgroups import FiniteGroup, PermGroup, all_subgroups, dihedral_group, subgroups_square_order
from qpt.ueb import pauli_basis


def z2sq_pauli():
    return pauli_basis().cocycle


def idx(a, b, c, d):
    """Index of (a, b, c, d) in Z2^4 built as (X^a Z^b) (x) (X^c Z^d)."""
    return 8 * a + 4 * b + 2 * c + d


def test_verify_examples():
    g = FiniteGroup.abelian([2, 2])
    assert verify_cocycle(TwoCocycle.trivial(g))
    c = z2sq_pauli()
    assert verify_cocycle(c)
    t = c.table.copy()
    t[1, 2] = (t[1, 2] + 1) % c.root_order
    with pytest.raises(CocycleViolation):
        verify_cocycle(TwoCocycle(c.group, c.root_order, t))


def test_nondegeneracy_examples(pauli2):
    assert not is_nondegenerate(TwoCocycle.trivial(FiniteGroup.cyclic(2)))
    assert twisted_center_dimension(TwoCocycle.trivial(FiniteGroup.cyclic(2))) == 2
    assert is_nondegenerate(z2sq_pauli())
    assert is_nondegenerate(pauli2.cocycle)


def test_rho_is_a_character_of_centralisers(pauli2):
    for c in (z2sq_pauli(), pauli2.cocycle, enumerate_nondegenerate_classes_abelian(FiniteGroup.abelian([3, 3]))[0]):
        g, r, N = c.group, c.rho_table, c.root_order
        for x in range(g.order):
            cent = np.flatnonzero(g.commuting[x])
            for a in cent:
                for b in cent:
                    assert r[x, g.table[a, b]] == (r[x, a] + r[x, b]) % N
        assert rho(c, 0, 1) == 0


def test_phi_examples(pauli2):
    c = pauli2.cocycle
    assert phi(c, [0]) == 1
    assert phi(c, [idx(0, 0, 0, 0), idx(0, 1, 0, 0), idx(0, 0, 0, 1), idx(0, 1, 0, 1)]) == 16
    assert phi(c, [idx(0, 0, 0, 0), idx(1, 0, 0, 0), idx(0, 1, 0, 0), idx(1, 1, 0, 0)]) == 4
    with pytest.raises(NotASubgroup):
        phi(c, [0, 1, 2])


def test_coisotropy_examples(pauli2):
    c = pauli2.cocycle
    assert is_coisotropic(c, range(16)).coisotropic
    res = is_coisotropic(c, [0])
    assert not res.coisotropic and len(res.complement) == 16
    p = z2sq_pauli()
    assert is_coisotropic(p, [0, 1]).coisotropic  # the line through Z
    assert list(orthogonal_complement(p, [0, 1])) == [0, 1]


def test_phi_bound_and_equivalence_over_all_subgroups(pauli2):
    c = pauli2.cocycle
    G = PermGroup(16, (), c.group.table.copy())
    for mask in all_subgroups(G):
        H = np.flatnonzero(mask)
        f = phi(c, H)
        assert 1 <= f <= 16
        assert (f == 16) == is_coisotropic(c, H).coisotropic


def test_cohomologous_examples():
    p = z2sq_pauli()
    beta = cohomologous(p, p)
    assert beta is not None and not np.any(beta.beta)
    assert cohomologous(p, TwoCocycle.trivial(p.group)) is None
    rng = np.random.default_rng(0)
    b = rng.integers(0, 4, size=4)
    b[0] = 0
    shifted = p + Coboundary(4, b).delta(p.group)
    found = cohomologous(p, shifted)
    assert found is not None
    assert (p + found.delta(p.group)).same_values(shifted)


def test_abelian_class_counts():
    assert enumerate_nondegenerate_classes_abelian(FiniteGroup.cyclic(2)) == []
    assert len(enumerate_nondegenerate_classes_abelian(FiniteGroup.abelian([2, 2]))) == 1
    assert len(enumerate_nondegenerate_classes_abelian(FiniteGroup.abelian([3, 3]))) == 2
    assert enumerate_nondegenerate_classes_abelian(FiniteGroup.cyclic(4)) == []
    assert len(enumerate_nondegenerate_classes_abelian(FiniteGroup.abelian([2, 2, 2, 2]))) == 28
    for c in enumerate_nondegenerate_classes_abelian(FiniteGroup.abelian([4, 4])):
        verify_cocycle(c)
        assert is_nondegenerate(c)


def test_nonabelian_search():
    d16 = dihedral_group(8).abstract
    assert d16.order == 16 and not d16.is_abelian
    assert find_nondegenerate_cocycle(d16) is None
    assert not is_central_type(d16)
    w = find_nondegenerate_cocycle(FiniteGroup.abelian([2, 2]))
    assert w is not None and is_nondegenerate(w)


def test_regular_classes_of_trivial_cocycle():
    g = dihedral_group(3).abstract
    assert len(regular_classes(TwoCocycle.trivial(g))) == 3


def test_conjugation_examples(pauli2):
    D6 = dihedral_group(6)
    cls = subgroups_square_order(D6)[0]
    L = cls.representative
    psi = enumerate_nondegenerate_classes_abelian(L.abstract)[0]
    same = conjugate_cocycle(psi, L.elements, L.elements, np.arange(6))
    assert same.same_values(psi)
    for g in L.elements:
        assert conjugate_cocycle(psi, L.elements, L.elements, g).same_values(psi)
    with pytest.raises(NotConjugating):
        conjugate_cocycle(psi, L.elements, L.elements, np.array([(i + 1) % 6 for i in range(6)]))


def test_swap_conjugation_on_z2_4(pauli2):
    # Z2^4 acting on itself by translation; swapping the two tensor factors normalises it
    c = pauli2.cocycle
    els = c.group.table.copy()
    swap = np.array([idx(cc, dd, a, b) for a in range(2) for b in range(2) for cc in range(2) for dd in range(2)])
    moved = conjugate_cocycle(c, els, els, swap)
    verify_cocycle(moved)
    assert is_nondegenerate(moved)
    assert cohomologous(moved, c) is not None


def test_equivalence_examples():
    G8 = automorphism_group(cycle_graph(8))
    z22 = [cl.representative for cl in subgroups_square_order(G8) if cl.order == 4 and cl.representative.abstract.is_abelian
           and cl.representative.abstract.invariant_factors() == [2, 2]]
    assert len(z22) == 2
    pairs = [CentralTypeSubgroup(s.elements, enumerate_nondegenerate_classes_abelian(s.abstract)[0]) for s in z22]
    assert equivalent_pairs(pairs[0], pairs[0], G8)
    assert not equivalent_pairs(pairs[0], pairs[1], G8)
    T = automorphism_group(rook_graph(3))
    z33 = [cl.representative for cl in subgroups_square_order(T) if cl.order == 9]
    assert len(z33) == 1
    phis = enumerate_nondegenerate_classes_abelian(z33[0].abstract)
    p1, p2 = (CentralTypeSubgroup(z33[0].elements, f) for f in phis)
    assert cohomologous(p1.psi, p2.psi) is None
    assert equivalent_pairs(p1, p2, T)


def test_central_type_subgroup_validation():
    g = FiniteGroup.abelian([2, 2])
    with pytest.raises(NondegeneracyRequired):
        CentralTypeSubgroup(g.table.copy(), TwoCocycle.trivial(g))


def test_json_round_trip(pauli2):
    c = pauli2.cocycle
    back = TwoCocycle.from_json(c.to_json())
    assert back.same_values(c) and back.group == c.group
