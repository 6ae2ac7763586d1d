import numpy as np
import pytest
from selfmeasure.errors import AlgebraError
from selfmeasure.linalg import SpaceSpec, max_abs, random_density, random_hermitian, tensor_product
from selfmeasure.states import DensityState
from selfmeasure.algebra import (
    OperatorAlgebra, generate_algebra, full_matrix_algebra, algebra_to_document,
    Expectation, restrict_state, breuer_indistinguishable,
    ClassicalDistribution, ClassicalOutcome, minimal_projections, classical_state,
    is_extremal, point_mass, decompose,
)

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
Q_O = np.diag([0.0, 1.0, 2.0]).astype(complex)


def distribution(probabilities, values=None):
    values = values if values is not None else range(len(probabilities))
    return ClassicalDistribution(tuple(
        ClassicalOutcome(float(v), float(p), np.eye(1)) for v, p in zip(values, probabilities)
    ))


class TestGenerateAlgebra:
    def test_diagonal_generator(self):
        alg = generate_algebra([Q_O])
        assert alg.dimension == 3
        assert alg.commutative
        assert alg.unital
        for e in alg.basis:
            assert max_abs(e - np.diag(np.diag(e))) < 1e-12

    def test_paulis_give_full_algebra(self):
        alg = generate_algebra([X, Z])
        assert alg.dimension == 4
        assert not alg.commutative

    def test_identity_only(self):
        alg = generate_algebra([], include_identity=True, space_dim=3)
        assert alg.dimension == 1
        assert alg.commutative
        assert alg.unital

    def test_empty_without_dimension(self):
        with pytest.raises(AlgebraError):
            generate_algebra([])

    def test_dimension_mismatch(self):
        with pytest.raises(AlgebraError):
            generate_algebra([np.eye(2), np.eye(3)])

    def test_non_unital_projection(self):
        p = np.diag([1.0, 0.0, 0.0])
        alg = generate_algebra([p], include_identity=False)
        assert alg.dimension == 1
        assert not alg.unital

    def test_basis_built_by_gram_schmidt(self, monkeypatch):
        from selfmeasure.algebra import operator_algebra
        calls = []
        original = operator_algebra.gram_schmidt_hs

        def recording(ops, tolerance=1e-10, basis=None):
            calls.append(len(ops))
            return original(ops, tolerance=tolerance, basis=basis)

        monkeypatch.setattr(operator_algebra, "gram_schmidt_hs", recording)
        alg = generate_algebra([X, Z])
        assert calls
        gram = np.array([[np.vdot(a, b) for b in alg.basis] for a in alg.basis])
        assert max_abs(gram - np.eye(alg.dimension)) < 1e-12

    def test_dimension_capped_at_full_algebra(self):
        rng = np.random.default_rng(12)
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert generate_algebra([a, b]).dimension == 9

    def test_closure_on_random_generators(self):
        rng = np.random.default_rng(11)
        for trial in range(200):
            d = int(rng.integers(2, 7))
            if trial % 2 == 0:
                h = random_hermitian(d, rng)
                generators = [h, h @ h]
            else:
                count = int(rng.integers(1, 3))
                generators = [random_hermitian(d, rng) for _ in range(count)]
            alg = generate_algebra(generators)
            product_residual, adjoint_residual = alg.closure_residuals()
            assert product_residual < 1e-9
            assert adjoint_residual < 1e-9
            assert alg.unital

    def test_idempotent(self):
        alg = generate_algebra([tensor_product(np.eye(2), Q_O)])
        again = generate_algebra(list(alg.basis))
        assert again.dimension == alg.dimension

    def test_contains_and_residual(self):
        alg = generate_algebra([Q_O])
        assert alg.contains(np.diag([5.0, -1.0, 3.0]))
        assert not alg.contains(np.ones((3, 3)))
        assert alg.residual(Q_O) < 1e-12

    def test_full_matrix_algebra(self):
        alg = full_matrix_algebra(3)
        assert alg.dimension == 9
        assert alg.contains(np.ones((3, 3)))
        assert alg.closure_residuals()[0] < 1e-12

    def test_document(self):
        doc = algebra_to_document(generate_algebra([Q_O]), include_basis=False)
        assert doc == {"space_dim": 3, "dimension": 3, "unital": True, "commutative": True}


class TestRestriction:
    def test_maximally_mixed_on_full_algebra(self):
        d = 3
        alg = full_matrix_algebra(d)
        restricted = restrict_state(np.eye(d) / d, alg)
        expected = [np.trace(e) / d for e in alg.basis]
        assert max_abs(restricted.expectations - np.array(expected)) < 1e-15

    def test_out_of_domain_expectation(self):
        restricted = restrict_state(np.eye(3) / 3, generate_algebra([Q_O]))
        result = restricted.expectation(np.ones((3, 3)))
        assert result == Expectation(0j, False)
        assert not result.in_domain

    def test_in_domain_expectation(self):
        rho = np.diag([0.2, 0.3, 0.5]).astype(complex)
        restricted = restrict_state(rho, generate_algebra([Q_O]))
        result = restricted.expectation(Q_O)
        assert result.in_domain
        assert result.real == pytest.approx(1.3)
        assert restricted.normalization_residual() < 1e-12

    def test_density_projection(self):
        rho = random_density(3, np.random.default_rng(12))
        projected = restrict_state(rho, generate_algebra([Q_O])).density_projection()
        assert max_abs(projected - np.diag(np.diag(rho))) < 1e-12

    def test_linearity(self):
        rng = np.random.default_rng(13)
        alg = generate_algebra([random_hermitian(4, rng)])
        r1, r2 = random_density(4, rng), random_density(4, rng)
        p = 0.3
        mixed = restrict_state(p * r1 + (1 - p) * r2, alg).expectations
        combined = p * restrict_state(r1, alg).expectations + (1 - p) * restrict_state(r2, alg).expectations
        assert max_abs(mixed - combined) < 1e-10

    def test_accepts_density_state(self):
        rho = DensityState(np.eye(3) / 3, SpaceSpec.single("O", 3))
        restricted = restrict_state(rho, generate_algebra([Q_O]))
        assert restricted.expectation(np.eye(3)).real == pytest.approx(1.0)

    def test_dimension_mismatch(self):
        with pytest.raises(AlgebraError):
            restrict_state(np.eye(2) / 2, generate_algebra([Q_O]))


class TestBreuer:
    def test_same_state(self):
        rho = random_density(3, np.random.default_rng(14))
        assert breuer_indistinguishable(rho, rho, full_matrix_algebra(3))

    def test_coherence_invisible_to_diagonal_algebra(self):
        coherent = 0.5 * np.ones((2, 2))
        incoherent = 0.5 * np.eye(2)
        assert breuer_indistinguishable(coherent, incoherent, generate_algebra([Z]))
        assert not breuer_indistinguishable(coherent, incoherent, full_matrix_algebra(2))

    def test_dimension_mismatch(self):
        with pytest.raises(AlgebraError):
            breuer_indistinguishable(np.eye(2) / 2, np.eye(3) / 3, full_matrix_algebra(2))


class TestMinimalProjections:
    def test_distinct_diagonal(self):
        projections = minimal_projections(generate_algebra([Q_O]))
        expected = [np.diag(row) for row in np.eye(3)]
        assert len(projections) == 3
        for p, e in zip(projections, expected):
            assert max_abs(p - e) < 1e-10

    def test_degenerate_diagonal(self):
        projections = minimal_projections(generate_algebra([np.diag([1.0, 1.0, 2.0])]))
        assert len(projections) == 2
        assert max_abs(projections[0] - np.diag([1, 1, 0])) < 1e-10
        assert max_abs(projections[1] - np.diag([0, 0, 1])) < 1e-10

    def test_spectra_from_linalg_core(self, monkeypatch):
        from selfmeasure.algebra import classical
        calls = []
        original = classical.hermitian_eig

        def recording(a):
            calls.append(a)
            return original(a)

        monkeypatch.setattr(classical, "hermitian_eig", recording)
        projections = minimal_projections(generate_algebra([Q_O]))
        assert calls
        assert max_abs(sum(projections) - np.eye(3)) < 1e-10

    def test_identity_algebra(self):
        projections = minimal_projections(generate_algebra([], space_dim=3))
        assert len(projections) == 1
        assert max_abs(projections[0] - np.eye(3)) < 1e-10

    def test_count_matches_dimension(self):
        h = random_hermitian(5, np.random.default_rng(15))
        alg = generate_algebra([h])
        assert len(minimal_projections(alg)) == alg.dimension

    def test_non_commutative_rejected(self):
        with pytest.raises(AlgebraError):
            minimal_projections(generate_algebra([X, Z]))

    def test_non_unital_rejected(self):
        with pytest.raises(AlgebraError):
            minimal_projections(generate_algebra([np.diag([1.0, 0.0])], include_identity=False))


class TestClassicalState:
    def test_reconstructs_mean(self):
        rng = np.random.default_rng(16)
        alg = generate_algebra([Q_O])
        for _ in range(100):
            rho = random_density(3, rng)
            dist = classical_state(restrict_state(rho, alg), Q_O)
            assert dist.mean() == pytest.approx(np.trace(rho @ Q_O).real, abs=1e-9)
            assert list(dist.values) == pytest.approx([0.0, 1.0, 2.0])

    def test_outside_span(self):
        restricted = restrict_state(np.eye(3) / 3, generate_algebra([Q_O]))
        with pytest.raises(AlgebraError):
            classical_state(restricted, np.ones((3, 3)))

    def test_invalid_distribution(self):
        with pytest.raises(AlgebraError):
            distribution([0.5, 0.6])
        with pytest.raises(AlgebraError):
            distribution([1.1, -0.1])


class TestExtremality:
    def test_point_mass(self):
        assert is_extremal(distribution([1.0]))

    def test_even_split(self):
        assert not is_extremal(distribution([0.5, 0.5]))

    def test_tolerance_boundary(self):
        assert is_extremal(distribution([1 - 1e-12, 1e-12]), tol=1e-9)

    def test_point_mass_constructor(self):
        dist = point_mass(distribution([0.25, 0.75]), 1)
        assert list(dist.probabilities) == [0.0, 1.0]
        assert is_extremal(dist)

    def test_decompose(self):
        parts = decompose(distribution([0.0, 0.36, 0.64]))
        assert [weight for _, weight in parts] == pytest.approx([0.36, 0.64])
        assert all(is_extremal(d) for d, _ in parts)
        assert [int(np.argmax(d.probabilities)) for d, _ in parts] == [1, 2]


class TestOperatorAlgebraType:
    def test_empty_basis(self):
        alg = OperatorAlgebra(2, (), unital=False, commutative=True)
        assert alg.dimension == 0
        assert alg.closure_residuals() == (0.0, 0.0)
