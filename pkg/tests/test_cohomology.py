"""Cocycles, coboundaries, quotient representatives and the group actions."""

from fractions import Fraction

import pytest

from conftest import basis_vector, oracle_derived_dim
from lietriple import catalog
from lietriple.cohomology import (
    Cocycle,
    a_theta,
    aut_action,
    coboundary_of,
    coboundary_space,
    cocycle_space,
    cohomology,
    delta_indices,
    gl_action,
    is_automorphism,
    matrix_form,
)
from lietriple.errors import NotAbelianDim3, NotAnAutomorphism, RelationViolated
from lietriple.linalg import Subspace, determinant, mat_inverse, mat_mul
from lietriple.sampling import ExactRandom
from lietriple.scalars import GaussianRational, QI_ZERO


def D(system, coeffs):
    return Cocycle(system, coeffs)


class TestCocycleSpace:
    def test_dim2_abelian(self, t21):
        space = cocycle_space(t21)
        assert space.dim == 2
        assert space.span_equals([D(t21, {(1, 2, 1): 1}), D(t21, {(1, 2, 2): 1})])

    def test_dim3_abelian(self, t31):
        space = cocycle_space(t31)
        assert space.dim == 8
        printed = [
            D(t31, {(1, 2, 1): 1}), D(t31, {(1, 2, 2): 1}),
            D(t31, {(1, 3, 1): 1}), D(t31, {(1, 3, 3): 1}),
            D(t31, {(2, 3, 2): 1}), D(t31, {(2, 3, 3): 1}),
            D(t31, {(1, 2, 3): 1, (1, 3, 2): 1}),
            D(t31, {(2, 3, 1): 1, (1, 3, 2): 1}),
        ]
        assert space.span_equals(printed)

    def test_t32(self, t32):
        space = cocycle_space(t32)
        assert space.dim == 4
        printed = [
            D(t32, {(1, 2, 1): 1}), D(t32, {(1, 2, 2): 1}),
            D(t32, {(1, 3, 1): 1}), D(t32, {(1, 2, 3): 1, (1, 3, 2): 1}),
        ]
        assert space.span_equals(printed)

    def test_basis_elements_are_closed(self):
        for name in ("T2,1", "T3,1", "T3,2", "T4,9"):
            system = catalog.instantiate(name)
            for theta in cocycle_space(system).basis:
                fresh = Cocycle(system, dict(theta.coeffs))
                ok, witness = fresh.check_closed()
                assert ok, (name, witness)


class TestCoboundarySpace:
    def test_t32(self, t32):
        space = coboundary_space(t32)
        assert space.dim == 1
        assert space.span_equals([D(t32, {(1, 2, 1): 1})])

    def test_abelian_vanishes(self, t31):
        assert coboundary_space(t31).dim == 0

    def test_t49_matches_derived_dimension(self):
        system = catalog.instantiate("T4,9")
        assert coboundary_space(system).dim == 2 == oracle_derived_dim(system)

    def test_b3_inside_z3_with_derived_dimension(self):
        for name in ("T3,2", "T4,7", "T4,8", "T4,5"):
            system = catalog.instantiate(name)
            z3 = cocycle_space(system)
            b3 = coboundary_space(system)
            assert b3.dim == system.derived().dim
            for c in b3.basis:
                assert z3.contains(c)


class TestCohomology:
    def test_t32_classes(self, t32):
        dim_h3, reps = cohomology(t32)
        assert dim_h3 == 3 == reps.dim
        b3 = coboundary_space(t32)
        printed = [D(t32, {(1, 2, 2): 1}), D(t32, {(1, 3, 1): 1}),
                   D(t32, {(1, 2, 3): 1, (1, 3, 2): 1})]
        # same span modulo coboundaries
        combined, _ = dim_h3, None
        lhs = Subspace(len(delta_indices(3)),
                       [c.coordinates() for c in reps.basis] + list(b3.coordinates))
        rhs = Subspace(len(delta_indices(3)),
                       [c.coordinates() for c in printed] + list(b3.coordinates))
        assert lhs == rhs

    def test_abelian_dims(self, t21, t31):
        assert cohomology(t21)[0] == 2
        assert cohomology(t31)[0] == 8


class TestRadical:
    def test_delta121_on_abelian(self, t31):
        rad = D(t31, {(1, 2, 1): 1}).radical()
        assert rad.dim == 1 and rad.contains(basis_vector(3, 3))

    def test_rank3_cocycle_has_zero_radical(self, t31):
        theta = D(t31, {(2, 3, 2): 1, (1, 3, 3): -1})
        assert theta.radical().dim == 0

    def test_zero_cocycle(self, t31):
        assert D(t31, {}).radical().dim == 3


class TestAutAction:
    def test_identity(self, t21):
        theta = D(t21, {(1, 2, 1): 3, (1, 2, 2): -2})
        eye = [[1, 0], [0, 1]]
        assert aut_action(eye, theta) == theta

    def test_generic_formula_on_t21(self, t21):
        rng = ExactRandom(31)
        for _ in range(10):
            phi = rng.invertible(2, height=5)
            alpha, beta = rng.gaussian(4), rng.gaussian(4)
            theta = D(t21, {(1, 2, 1): alpha, (1, 2, 2): beta})
            moved = aut_action(phi, theta)
            det = phi[0][0] * phi[1][1] - phi[0][1] * phi[1][0]
            assert moved.value(1, 2, 1) == det * (phi[0][0] * alpha + phi[1][0] * beta)
            assert moved.value(1, 2, 2) == det * (phi[0][1] * alpha + phi[1][1] * beta)

    def test_line_normalization_reaches_delta121(self, t21):
        from lietriple.extension import normalize_line_2dim

        rng = ExactRandom(37)
        for _ in range(10):
            alpha = rng.nonzero_gaussian(4)
            beta = rng.gaussian(4)
            # row-normalization: (alpha beta) A = (1 0)
            A = normalize_line_2dim(alpha, beta)
            row = [alpha * A[0][0] + beta * A[1][0], alpha * A[0][1] + beta * A[1][1]]
            assert row == [1, 0]
            # with alpha != 0 the matrix has determinant one, so it also
            # normalizes the cocycle itself
            theta = D(t21, {(1, 2, 1): alpha, (1, 2, 2): beta})
            assert aut_action(A, theta) == D(t21, {(1, 2, 1): 1})

    def test_rejects_non_automorphism(self, t32):
        theta = D(t32, {(1, 2, 2): 1})
        swap = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]  # not in Aut(T3,2)
        with pytest.raises(NotAnAutomorphism):
            aut_action(swap, theta)

    def test_maps_z3_to_z3_and_b3_to_b3(self, t32):
        rng = ExactRandom(41)
        z3 = cocycle_space(t32)
        b3 = coboundary_space(t32)
        for _ in range(8):
            phi = _random_t32_automorphism(rng)
            assert is_automorphism(t32, phi)
            theta = rng.cocycle(z3)
            assert z3.contains(aut_action(phi, theta, check=False))
            delta = rng.cocycle(b3)
            assert b3.contains(aut_action(phi, delta, check=False))

    def test_radical_transforms_by_inverse(self, t32):
        rng = ExactRandom(43)
        z3 = cocycle_space(t32)
        for _ in range(6):
            phi = _random_t32_automorphism(rng)
            theta = rng.cocycle(z3)
            moved_rad = aut_action(phi, theta, check=False).radical()
            inv = mat_inverse(phi)
            expected = Subspace(3, [
                [sum((inv[a][b] * vec[b] for b in range(3)), start=QI_ZERO)
                 for a in range(3)]
                for vec in theta.radical().normalized_entries()])
            assert moved_rad == expected

    def test_gl_action_keeps_radical(self, t32):
        rng = ExactRandom(47)
        theta = rng.cocycle(cocycle_space(t32))
        scaled = gl_action(GaussianRational(5, 2), theta)
        assert scaled.radical() == theta.radical()


def _random_t32_automorphism(rng):
    """Invertible lower-triangular maps with the (3,3) entry a11^2 a22."""
    a11 = rng.nonzero_gaussian(3)
    a22 = rng.nonzero_gaussian(3)
    a21, a31, a32 = rng.gaussian(3), rng.gaussian(3), rng.gaussian(3)
    return [[a11, QI_ZERO, QI_ZERO],
            [a21, a22, QI_ZERO],
            [a31, a32, a11 * a11 * a22]]


class TestMatrixForm:
    def test_t21_blocks(self, t21):
        alpha = GaussianRational(Fraction(5, 3))
        theta = D(t21, {(1, 2, 1): alpha})
        blocks = matrix_form(theta)
        assert blocks[0] == [[QI_ZERO, alpha], [-alpha, QI_ZERO]]
        assert blocks[1] == [[QI_ZERO, QI_ZERO], [QI_ZERO, QI_ZERO]]

    def test_zero_cocycle(self, t31):
        blocks = matrix_form(D(t31, {}))
        assert all(x == 0 for block in blocks for row in block for x in row)

    def test_transform_rule(self, t31):
        rng = ExactRandom(53)
        for _ in range(6):
            phi = rng.invertible(3, height=4)
            theta = rng.cocycle(cocycle_space(t31))
            blocks = matrix_form(theta)
            moved = matrix_form(aut_action(phi, theta, check=False))
            phi_t = [[phi[j][i] for j in range(3)] for i in range(3)]
            for k in range(3):
                mixed = [[sum((phi[i2][k] * blocks[i2][a][b] for i2 in range(3)),
                              start=QI_ZERO) for b in range(3)] for a in range(3)]
                expected = mat_mul(mat_mul(phi_t, mixed), phi)
                assert moved[k] == expected


class TestATheta:
    def test_canonical_form_i(self, t31):
        theta = D(t31, {(2, 3, 2): 1, (1, 3, 3): -1})
        assert a_theta(theta) == [[0, 1, 0], [0, 0, 1], [0, 0, 0]]

    def test_diagonal_family_form(self, t31):
        lam = GaussianRational(Fraction(7, 2))
        theta = D(t31, {(2, 3, 1): lam, (1, 3, 2): -1, (1, 2, 3): -(lam + 1)})
        matrix = a_theta(theta)
        assert matrix == [[lam, 0, 0], [0, 1, 0], [0, 0, -(lam + 1)]]
        assert matrix[0][0] + matrix[1][1] + matrix[2][2] == 0

    def test_equivariance(self, t31):
        rng = ExactRandom(59)
        z3 = cocycle_space(t31)
        for _ in range(10):
            phi = rng.invertible(3, height=4)
            theta = rng.cocycle(z3)
            lhs = a_theta(aut_action(phi, theta, check=False))
            det = determinant([list(r) for r in phi])
            inv = mat_inverse(phi)
            rhs = mat_mul(mat_mul(inv, a_theta(theta)), phi)
            rhs = [[det * x for x in row] for row in rhs]
            assert lhs == rhs
            assert sum(lhs[k][k] for k in range(3)) == 0

    def test_requires_abelian_dim3(self, t32):
        with pytest.raises(NotAbelianDim3):
            a_theta(D(t32, {(1, 2, 2): 1}))

    def test_relation_violation(self, t31):
        with pytest.raises(RelationViolated):
            a_theta(D(t31, {(1, 2, 3): 1}))


class TestCocycleJson:
    def test_round_trip_with_embedded_system(self, t32):
        from lietriple.cohomology import cocycle_from_dict, cocycle_to_dict

        theta = D(t32, {(1, 2, 3): 1, (1, 3, 2): 1,
                        (1, 2, 2): GaussianRational(Fraction(-2, 3))})
        doc = cocycle_to_dict(theta)
        again = cocycle_from_dict(doc)
        assert again == theta and again.ambient == t32

    def test_catalog_reference(self, t31):
        from lietriple.cohomology import cocycle_from_dict

        doc = {"system": "T3,1", "coeffs": [{"ijk": [2, 3, 2], "value": "1"},
                                            {"ijk": [1, 3, 3], "value": "-1"}]}
        theta = cocycle_from_dict(doc)
        assert theta.ambient == t31 and theta.value(2, 3, 2) == 1

    def test_rejects_unordered_indices(self, t31):
        from lietriple.cohomology import cocycle_from_dict
        from lietriple.errors import MalformedInput

        doc = {"system": "T3,1", "coeffs": [{"ijk": [2, 1, 1], "value": "1"}]}
        with pytest.raises(MalformedInput):
            cocycle_from_dict(doc)


class TestCoboundaries:
    def test_delta_f_evaluates_products(self, t32):
        f = [GaussianRational(0), GaussianRational(0), GaussianRational(1)]
        delta = coboundary_of(t32, f)
        assert delta == D(t32, {(1, 2, 1): 1})

    def test_cohomologous_shift(self, t32):
        rng = ExactRandom(61)
        z3 = cocycle_space(t32)
        b3 = coboundary_space(t32)
        theta = rng.cocycle(z3)
        shifted = theta + rng.cocycle(b3)
        # same class: difference lies in B3
        diff = shifted - theta
        assert b3.contains(diff)
