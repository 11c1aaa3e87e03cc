import numpy as np
import pytest

from charforge.algebra import (AlgebraElement, characters_of,
                               check_decomposability, convolve,
                               decompose_element, delta, random_element,
                               statement_formula_residual, to_matrix)
from charforge.characters import central_idempotents, isotypic_projectors
from charforge.circuits import embed_gate
from charforge.errors import GroupMismatch
from charforge.fixtures import H, X, Z
from charforge.groups import ClosureConfig, element_of

CX = np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex)
T = np.diag([1, np.exp(1j * np.pi / 4)])


def brute_force_convolution(g, a, b):
    out = np.zeros(g.order, dtype=complex)
    for g1 in range(g.order):
        for g2 in range(g.order):
            out[g.cayley[g1, g2]] += a[g1] * b[g2]
    return out


def test_delta_identity_is_unit(groups):
    g = groups["d4"]
    rng = np.random.default_rng(0)
    u = random_element(g, rng)
    assert np.allclose(convolve(delta(g, 0), u).coeffs, u.coeffs)
    assert np.allclose(convolve(u, delta(g, 0)).coeffs, u.coeffs)


def test_delta_convolutions_match_group_product(groups):
    g2 = groups["c2"]
    assert np.allclose(convolve(delta(g2, 1), delta(g2, 1)).coeffs, delta(g2, 0).coeffs)

    g = groups["d4"]
    xz = element_of(g, X @ Z)
    got = convolve(delta(g, element_of(g, X)), delta(g, element_of(g, Z)))
    assert np.allclose(got.coeffs, delta(g, xz).coeffs)


def test_convolution_matches_brute_force_oracle(groups):
    g = groups["s3"]
    rng = np.random.default_rng(7)
    a, b = random_element(g, rng), random_element(g, rng)
    assert np.max(np.abs(convolve(a, b).coeffs - brute_force_convolution(g, a.coeffs, b.coeffs))) <= 1e-12


def test_convolution_associative_on_random_triples(groups):
    for name in ("s3", "d4", "q8"):
        g = groups[name]
        rng = np.random.default_rng(11)
        a, b, c = (random_element(g, rng) for _ in range(3))
        left = convolve(convolve(a, b), c).coeffs
        right = convolve(a, convolve(b, c)).coeffs
        assert np.max(np.abs(left - right)) <= 1e-10


def test_group_mismatch_raises(groups):
    with pytest.raises(GroupMismatch):
        convolve(delta(groups["c2"], 0), delta(groups["d4"], 0))


def test_matrix_map_intertwines_convolution(groups):
    # mapping u to sum_g u[g] U(g) turns convolution into matrix product
    for name in ("d4", "s3"):
        g = groups[name]
        rng = np.random.default_rng(13)
        a, b = random_element(g, rng), random_element(g, rng)
        lhs = to_matrix(convolve(a, b))
        rhs = to_matrix(a) @ to_matrix(b)
        assert np.max(np.abs(lhs - rhs)) <= 1e-8


def test_decompose_idempotent_itself(groups, tables):
    g, t = groups["d4"], tables["d4"]
    es = central_idempotents(g, t)
    dec = decompose_element(AlgebraElement(g, es[1].coeffs), es)
    for i, comp in enumerate(dec.components):
        target = es[1].coeffs if i == 1 else np.zeros(g.order)
        assert np.max(np.abs(comp.coeffs - target)) <= 1e-10


def test_decompose_reconstructs_random_elements(groups, tables):
    g, t = groups["s3"], tables["s3"]
    es = central_idempotents(g, t)
    rng = np.random.default_rng(21)
    for _ in range(10):
        dec = decompose_element(random_element(g, rng), es)
        assert dec.reconstruction_residual <= 1e-8


def test_decompose_components_are_eigen(groups, tables):
    g, t = groups["q8"], tables["q8"]
    es = central_idempotents(g, t)
    rng = np.random.default_rng(2)
    dec = decompose_element(random_element(g, rng), es)
    for i, e in enumerate(es):
        for j, comp in enumerate(dec.components):
            target = comp.coeffs if i == j else 0.0
            got = convolve(AlgebraElement(g, e.coeffs), comp).coeffs
            assert np.max(np.abs(got - target)) <= 1e-8


def test_matrix_components_sum_to_unitary(groups, tables):
    g, t = groups["clifford1"], tables["clifford1"]
    es = central_idempotents(g, t)
    projs = isotypic_projectors(g, t)
    dec = decompose_element(delta(g, 17), es, projs)
    assert dec.matrix_residual <= 1e-8
    total = np.sum(dec.matrix_components, axis=0)
    assert np.max(np.abs(total - g.mats[17])) <= 1e-8


def test_characters_of_examples(groups, tables):
    g, t = groups["d4"], tables["d4"]
    assert np.allclose(characters_of(delta(g, 0), t), t.degrees)
    for idx in (1, 3, 5):
        col = t.values[:, g.class_of[idx]]
        assert np.allclose(characters_of(delta(g, idx), t), col)
    es = central_idempotents(g, t)
    for i, e in enumerate(es):
        chars = characters_of(AlgebraElement(g, e.coeffs), t)
        target = np.zeros(t.k)
        target[i] = t.degrees[i]
        assert np.max(np.abs(chars - target)) <= 1e-8


def test_statement_residual_hand_values(groups, tables):
    g2, t2 = groups["c2"], tables["c2"]
    es2 = central_idempotents(g2, t2)
    # s_1 = dI + dX, s_2 = dI - dX, coefficients chi_i(e)/d_i * |G|/d_i = 2,
    # so the right side is 2*delta_identity and the residual is exactly 1
    assert statement_formula_residual(delta(g2, 0), t2, es2) == pytest.approx(1.0, abs=1e-12)

    gt, tt = groups["trivial"], tables["trivial"]
    assert statement_formula_residual(delta(gt, 0), tt, central_idempotents(gt, tt)) <= 1e-12

    g4, t4 = groups["d4"], tables["d4"]
    es4 = central_idempotents(g4, t4)
    x = element_of(g4, X)
    assert statement_formula_residual(delta(g4, x), t4, es4) > 0.1


def test_check_decomposability_clifford_gate_set():
    # two-qubit hidden-string gate set {h0, h1, x1, cx01}: finite closure
    gens = [embed_gate(H, (0,), 2), embed_gate(H, (1,), 2),
            embed_gate(X, (1,), 2), embed_gate(CX, (0, 1), 2)]
    u = gens[0] @ gens[3] @ gens[0]
    rep = check_decomposability(u, gens, ClosureConfig(max_order=5000))
    assert rep.condition1_finite_group
    assert rep.condition1_detail == "order 2304"
    assert rep.verdict
    assert rep.condition2_orthogonality_residual <= 1e-8
    assert rep.condition3_reconstruction_residual <= 1e-8


def test_check_decomposability_h_t_fails_condition_one():
    rep = check_decomposability(np.eye(2, dtype=complex), [H, T],
                                ClosureConfig(max_order=20000))
    assert not rep.condition1_finite_group
    assert not rep.verdict
    assert rep.condition2_orthogonality_residual is None


def test_check_decomposability_identity_over_x():
    rep = check_decomposability(np.eye(2, dtype=complex), [X], ClosureConfig())
    assert rep.verdict
    assert rep.condition2_orthogonality_residual == 0.0
    assert rep.condition3_reconstruction_residual == 0.0
