from fractions import Fraction
from itertools import combinations

import pytest

from spinweave.bundles import (
    ExteriorElement,
    QuadricPoint,
    RationalSpherePoint,
    TangentPair,
    associated_tau_welldefined,
    exterior_tau,
    hermitean_h_value,
    hermitean_tau,
    projective_tau,
    quadric_example_check,
    quadric_tau,
    quadric_varpi,
    sample_quadric_points,
    sample_sphere_points,
    sample_tangent_pairs,
    sphere_representation,
    sphere_tau,
    spin_space_morphisms,
    stereographic,
)
from spinweave.clifford import Signature
from spinweave.linalg import ExactMatrix
from spinweave.reps import conjugate_spin_space, spin_space
from spinweave.scalars import ExactScalar, I, ONE, ZERO, sc

M = ExactMatrix
F = Fraction


def sig(k, l):
    return Signature(k, l)


class TestSampling:
    def test_north_pole(self):
        p = stereographic([F(0)])
        assert p.coords == (F(0), F(1))

    def test_unit_parameter(self):
        p = stereographic([F(1)])
        assert p.coords == (F(1), F(0))

    def test_exact_unit_norm(self):
        for p in sample_sphere_points(4, 25, seed=3):
            assert sum(c * c for c in p.coords) == 1

    def test_tangent_orthogonality(self):
        for pair in sample_tangent_pairs(3, 25, seed=5):
            assert sum(a * b for a, b in zip(pair.point.coords, pair.y)) == 0

    def test_deterministic_per_seed(self):
        a = sample_sphere_points(2, 10, seed=11)
        b = sample_sphere_points(2, 10, seed=11)
        assert a == b

    def test_invalid_point_rejected(self):
        with pytest.raises(ValueError):
            RationalSpherePoint((F(1), F(1)))
        with pytest.raises(ValueError):
            TangentPair(stereographic([F(0)]), (F(1), F(1)))

    def test_bad_dimension(self):
        with pytest.raises(ValueError):
            sample_sphere_points(0, 5, seed=1)


class TestSphereTau:
    def test_zero_tangent(self):
        rep = sphere_representation(2)
        x = stereographic([F(0), F(0)])
        pair = TangentPair(x, (F(0),) * 3)
        assert sphere_tau(2, pair, rep).is_zero()

    def test_clifford_property_base_point(self):
        rep = sphere_representation(2)
        pair = TangentPair(
            RationalSpherePoint((F(1), F(0), F(0))), (F(0), F(1), F(0))
        )
        t = sphere_tau(2, pair, rep)
        assert t * t == M.identity(rep.dim)

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_clifford_property_sampled(self, m):
        rep = sphere_representation(m)
        for pair in sample_tangent_pairs(m, 12, seed=m):
            t = sphere_tau(m, pair, rep)
            assert t * t == M.identity(rep.dim).scale(sc(pair.norm_squared()))

    def test_scaling_is_quadratic(self):
        rep = sphere_representation(2)
        pair = sample_tangent_pairs(2, 1, seed=9)[0]
        doubled = TangentPair(pair.point, tuple(2 * c for c in pair.y))
        t1, t2 = sphere_tau(2, pair, rep), sphere_tau(2, doubled, rep)
        assert t2 == t1.scale(sc(2))
        assert t2 * t2 == (t1 * t1).scale(sc(4))


class TestProjectiveTau:
    def test_antipodal_invariance(self):
        rep = sphere_representation(3)
        for pair in sample_tangent_pairs(3, 10, seed=2):
            plus = projective_tau(3, 1, pair, rep)
            assert projective_tau(3, 1, pair.antipode(), rep) == plus

    def test_minus_is_negation(self):
        rep = sphere_representation(2)
        pair = sample_tangent_pairs(2, 1, seed=4)[0]
        assert projective_tau(2, -1, pair, rep) == -projective_tau(2, 1, pair, rep)

    def test_clifford_property_both_signs(self):
        rep = sphere_representation(2)
        for pair in sample_tangent_pairs(2, 10, seed=6):
            for sign in (1, -1):
                t = projective_tau(2, sign, pair, rep)
                assert t * t == M.identity(rep.dim).scale(sc(pair.norm_squared()))

    def test_bad_sign(self):
        rep = sphere_representation(2)
        pair = sample_tangent_pairs(2, 1, seed=1)[0]
        with pytest.raises(ValueError):
            projective_tau(2, 0, pair, rep)


class TestExteriorModule:
    def test_wedge_on_scalars(self):
        s = sig(3, 0)
        one = ExteriorElement.basis_form(3, 0)
        out = exterior_tau([1, 0, 0], one, s)
        assert out == ExteriorElement.basis_form(3, 1 << 0)

    def test_metric_sign_in_wedge(self):
        s = sig(0, 3)
        one = ExteriorElement.basis_form(3, 0)
        out = exterior_tau([1, 0, 0], one, s)
        assert out == ExteriorElement.basis_form(3, 1).scale(sc(-1))

    @pytest.mark.parametrize("s", [sig(3, 0), sig(1, 2), sig(0, 4), sig(2, 2)])
    def test_squares_exhaustive(self, s):
        for i in range(s.m):
            v = [1 if j == i else 0 for j in range(s.m)]
            for mask in range(1 << s.m):
                omega = ExteriorElement.basis_form(s.m, mask)
                twice = exterior_tau(v, exterior_tau(v, omega, s), s)
                assert twice == omega.scale(sc(s.h(i)))

    def test_anticommutation_exhaustive(self):
        s = sig(2, 1)
        for i, j in combinations(range(s.m), 2):
            vi = [1 if t == i else 0 for t in range(s.m)]
            vj = [1 if t == j else 0 for t in range(s.m)]
            for mask in range(1 << s.m):
                omega = ExteriorElement.basis_form(s.m, mask)
                lhs = exterior_tau(vi, exterior_tau(vj, omega, s), s)
                rhs = exterior_tau(vj, exterior_tau(vi, omega, s), s)
                assert (lhs + rhs).is_zero()

    def test_general_vector_square(self):
        s = sig(2, 1)
        v = [F(1, 2), F(-2), F(3)]
        hv = sum(F(c) * F(c) * s.h(i) for i, c in enumerate(v))
        for mask in range(1 << s.m):
            omega = ExteriorElement.basis_form(s.m, mask)
            twice = exterior_tau(v, exterior_tau(v, omega, s), s)
            assert twice == omega.scale(sc(hv))


class TestHermiteanModule:
    def test_d1_square(self):
        n = [ONE]
        for mask in (0, 1):
            omega = ExteriorElement.basis_form(1, mask)
            twice = hermitean_tau(n, hermitean_tau(n, omega))
            assert twice == omega.scale(hermitean_h_value(n))
            assert hermitean_h_value(n) == sc(2)

    def test_zero_in_zero_out(self):
        assert hermitean_tau([ONE, ZERO], ExteriorElement.zero(2)).is_zero()

    def test_anticommutation_orthogonal_pairs(self):
        # n = e-slot 1, n' = e-slot 2, and also n' = i*n (the J-rotated mate)
        pairs = [
            ([ONE, ZERO], [ZERO, ONE]),
            ([ONE, ZERO], [I, ZERO]),
        ]
        for n, n2 in pairs:
            for mask in range(4):
                omega = ExteriorElement.basis_form(2, mask)
                lhs = hermitean_tau(n, hermitean_tau(n2, omega))
                rhs = hermitean_tau(n2, hermitean_tau(n, omega))
                assert (lhs + rhs).is_zero()

    def test_square_general_coefficients(self):
        n = [ExactScalar(1, 1), ExactScalar(0, -2)]
        hv = hermitean_h_value(n)
        assert hv == sc(12)  # 2 * (|1+i|^2 + |2i|^2) = 2 * (2 + 4)
        for mask in range(4):
            omega = ExteriorElement.basis_form(2, mask)
            twice = hermitean_tau(n, hermitean_tau(n, omega))
            assert twice == omega.scale(hv)

    def test_requires_gaussian(self):
        from spinweave.scalars import SQRT2

        with pytest.raises(ValueError):
            hermitean_tau([SQRT2], ExteriorElement.basis_form(1, 0))


class TestQuadric:
    def test_base_point_involution(self):
        base = QuadricPoint(
            TangentPair(RationalSpherePoint((F(1), F(0))), (F(0), F(1))),
            TangentPair(RationalSpherePoint((F(1), F(0), F(0))), (F(0), F(1), F(0))),
        )
        w = quadric_varpi(base)
        assert w * w == M.identity(4)

    def test_sampled_checks(self):
        report = quadric_example_check(sample_quadric_points(12, seed=20))
        assert report.ok, report.failures

    def test_varpi_antipodal(self):
        p = sample_quadric_points(1, seed=8)[0]
        assert quadric_varpi(p.antipode()) == quadric_varpi(p)
        assert quadric_tau(p.antipode()) == quadric_tau(p)


class TestAssociatedBundle:
    @pytest.mark.parametrize("s", [sig(1, 0), sig(2, 0), sig(3, 0), sig(1, 1)])
    def test_welldefinedness(self, s):
        report = associated_tau_welldefined(spin_space(s))
        assert report.ok, report.failures

    def test_gamma_needed_specific_case(self):
        from spinweave.groups import twisted_adjoint

        ss = spin_space(sig(3, 0))
        a = ss.frame[0]
        v = ss.frame[1]
        inv = a.inverse()
        with_gamma = ss.gamma * twisted_adjoint(ss, inv, v) * inv
        assert with_gamma == inv * ss.gamma * v
        without = twisted_adjoint(ss, inv, v) * inv
        assert without != inv * v


class TestSpinSpaceMorphisms:
    def test_identity(self):
        ss = spin_space(sig(2, 0))
        found = spin_space_morphisms(ss, ss)
        assert found is not None and found.is_identity()

    def test_identity_odd(self):
        ss = spin_space(sig(3, 0))
        found = spin_space_morphisms(ss, ss)
        assert found is not None and found.is_identity()

    def test_conjugated_target(self):
        ss = spin_space(sig(2, 0))
        a = M([[1, 1], [0, 1]])
        other = conjugate_spin_space(ss, a)
        found = spin_space_morphisms(ss, other)
        assert found is not None
        inv = found.inverse()
        for v in ss.frame:
            conj = found * v * inv
            from spinweave.groups import expand_in_frame

            assert expand_in_frame(other, conj) is not None

    def test_signature_mismatch_gives_none(self):
        assert spin_space_morphisms(spin_space(sig(2, 0)), spin_space(sig(0, 2))) is None

    def test_morphism_induces_isometry(self):
        ss = spin_space(sig(1, 1))
        found = spin_space_morphisms(ss, ss)
        assert found is not None
