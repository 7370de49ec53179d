import numpy as np
import pytest
from conftest import c6_pair, trivial_pair

from qpt.errors import CocycleMismatch, NotAutomorphisms, NotCommutative, PPMViolation
from qpt.frobenius import center_dimension, classical_from_quantum
from qpt.graphs import are_isomorphic, cycle_graph, petersen_graph
from qpt.numerics import max_abs
from qpt.qiso import (
    PPM,
    QuantumIso,
    build_X,
    center_dim_components,
    center_dim_group,
    compose,
    dual,
    identity_iso,
    pseudo_telepathy_verdict,
    recognize_check,
    snake_residuals,
    split_frobenius_monoid,
    verify_ppm,
    verify_quantum_iso,
)
from qpt.ueb import UnitaryErrorBasis

R = [(i + 1) % 6 for i in range(6)]
S = [(-i) % 6 for i in range(6)]


def iso_of(perm, g):
    return QuantumIso.from_ppm(PPM.from_permutation(perm), g, g)


def test_ppm_from_automorphism_and_violation():
    g = cycle_graph(6)
    p = PPM.from_permutation(R)
    verify_ppm(p, g, g)
    broken = p.blocks.copy()
    broken[0, 1] = 0
    with pytest.raises(PPMViolation) as info:
        verify_ppm(PPM(broken), g, g)
    assert "completeness" in str(info.value)
    with pytest.raises(PPMViolation):
        verify_ppm(PPM.from_permutation([1, 0, 2, 3, 4, 5]), g, g)


def test_build_x_trivial_group():
    g = petersen_graph()
    pair, u = trivial_pair(g.n)
    x = build_X(g, pair, u)
    assert x.d == 1
    assert np.allclose(x.ppm.blocks[:, :, 0, 0], np.eye(g.n))
    assert center_dim_components(x) == center_dim_group(g, pair) == g.n
    split = split_frobenius_monoid(x)
    out, _ = classical_from_quantum(split.graph)
    assert are_isomorphic(out, g) is not None
    assert recognize_check(split.iso, pair, u)


def test_c6_construction():
    g, pair, u = c6_pair()
    x = build_X(g, pair, u)
    assert x.d == 2
    verify_ppm(x.ppm, g, g)
    assert center_dim_components(x) == center_dim_group(g, pair) == 3
    split = split_frobenius_monoid(x)
    assert split.graph.dim == 6 and center_dimension(split.graph.algebra) == 3
    with pytest.raises(NotCommutative):
        classical_from_quantum(split.graph)
    assert recognize_check(split.iso, pair, u)
    # moving the blocks by a rotation (not in L) breaks covariance
    moved = QuantumIso(split.iso.K[:, R], split.iso.source, split.iso.target)
    assert not recognize_check(moved, pair, u)
    v = pseudo_telepathy_verdict(g, pair, u)
    assert not v.classical and not v.pseudo_telepathic and (v.dim, v.center_dim) == (6, 3)


def test_rephased_basis_is_a_cocycle_mismatch():
    g, pair, u = c6_pair()
    mats = u.matrices.copy()
    mats[1] *= 1j  # same cohomology class, different cocycle values
    with pytest.raises(CocycleMismatch):
        build_X(g, pair, UnitaryErrorBasis(u.group, mats))


def test_build_x_rejects_non_automorphisms():
    g, pair, u = c6_pair()
    with pytest.raises(NotAutomorphisms):
        build_X(cycle_graph(6).relabel([0, 2, 1, 3, 4, 5]), pair, u)


def test_composition_of_one_dimensional_isos():
    g = cycle_graph(6)
    ident = identity_iso(g)
    a = iso_of(R, g)
    assert max_abs(compose(ident, a).K - a.K) == 0
    assert max_abs(compose(a, ident).K - a.K) == 0
    b = iso_of(S, g)
    ab = compose(a, b)  # b after a
    assert max_abs(ab.K - iso_of(np.array(S)[R], g).K) == 0


def test_duals():
    g = cycle_graph(6)
    a = iso_of(R, g)
    assert max_abs(dual(a).K - iso_of(np.argsort(R), g).K) == 0
    assert max_abs(dual(dual(a)).K - a.K) == 0
    verify_quantum_iso(dual(a))


def test_snakes_and_dual_composite_on_c6():
    g, pair, u = c6_pair()
    x = build_X(g, pair, u)
    split = split_frobenius_monoid(x)
    assert max(snake_residuals(split.iso).values()) < 1e-9
    assert max_abs(compose(dual(split.iso), split.iso).K - x.ppm.blocks) < 1e-9


def test_recognize_trivial_is_vacuous():
    g = cycle_graph(5)
    pair, u = trivial_pair(g.n)
    assert recognize_check(identity_iso(g), pair, u)


def test_ppm_json_round_trip():
    g, pair, u = c6_pair()
    x = build_X(g, pair, u)
    back = PPM.from_json(x.ppm.to_json())
    assert max_abs(back.blocks - x.ppm.blocks) == 0
