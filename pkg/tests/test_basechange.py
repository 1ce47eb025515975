"""Base change: restriction of scalars, b1 and b, tensor identities."""

import random

from iwahorips.padic import PadicScalar, UnramifiedField, power_char
from iwahorips.group import OneParamFactor
from iwahorips.series import Role, TateSeries, Variable, VariableSet
from iwahorips.actions import Character
from iwahorips.basechange import (
    ResScalarsContext,
    TensorModel,
    full_bc,
    holomorphic_bc,
    restrict_scalars,
    tensor_slot_product,
)

P = 7
M = 12


def sc(x, prec=M):
    return PadicScalar.from_int(x, P, prec)


def x_vars(*names):
    return VariableSet(Variable(n, Role.COORD) for n in names)


def qp_series(vars, coeffs, trunc):
    return TateSeries.from_terms(vars, {e: sc(c) for e, c in coeffs.items()}, trunc)


class TestRestrictScalars:
    def test_degree_one_identity(self):
        field = UnramifiedField(P, 1, M)
        vars = x_vars("x")
        ctx = ResScalarsContext(field, vars)
        f = qp_series(vars, {(2,): 3}, 4)
        out = restrict_scalars(f.embed_coefficients(field), ctx)
        assert out.coeff((2,)).rational_part().agrees(sc(3))
        assert len(out.terms) == 1

    def test_linear_case_basis_expansion(self):
        field = UnramifiedField(P, 2, M)
        vars = x_vars("x")
        ctx = ResScalarsContext(field, vars)
        f = qp_series(vars, {(1,): 1}, 4)
        out = restrict_scalars(f.embed_coefficients(field), ctx)
        # x -> x@0 + w x@1
        c0 = out.coeff((1, 0))
        c1 = out.coeff((0, 1))
        assert c0.coords[0].agrees(sc(1)) and c0.coords[1].is_zero()
        assert c1.coords[0].is_zero() and c1.coords[1].agrees(sc(1))

    def test_square_matches_substitution_oracle(self):
        field = UnramifiedField(P, 2, M)
        vars = x_vars("x")
        ctx = ResScalarsContext(field, vars)
        f = qp_series(vars, {(2,): 1}, 4)
        out = restrict_scalars(f.embed_coefficients(field), ctx)
        # (x0 + w x1)^2 = x0^2 + 2 w x0 x1 + w^2 x1^2
        assert out.coeff((2, 0)).coords[0].agrees(sc(1))
        two_w = out.coeff((1, 1))
        assert two_w.coords[0].is_zero() and two_w.coords[1].agrees(sc(2))
        w2 = out.coeff((0, 2))
        omega_sq = field.generator() * field.generator()
        for a, b in zip(w2.coords, omega_sq.coords):
            assert a.agrees(b)

    def test_injective_on_random_series(self):
        rng = random.Random(90)
        field = UnramifiedField(P, 2, M)
        vars = x_vars("x", "z")
        ctx = ResScalarsContext(field, vars)
        for _ in range(6):
            coeffs = {}
            for _ in range(4):
                e = (rng.randint(0, 2), rng.randint(0, 2))
                coeffs[e] = rng.randrange(1, P**4)
            f = qp_series(vars, coeffs, 4)
            g = qp_series(vars, {(0, 0): 1}, 4)  # distinct series
            rf = restrict_scalars(f.embed_coefficients(field), ctx)
            rg = restrict_scalars(g.embed_coefficients(field), ctx)
            if f.agrees(g):
                continue
            assert not rf.agrees(rg)


class TestHolomorphicBC:
    def test_constant_unchanged(self):
        field = UnramifiedField(P, 2, M)
        vars = x_vars("x")
        ctx = ResScalarsContext(field, vars)
        f = qp_series(vars, {(0,): 5}, 4)
        out = holomorphic_bc(f, ctx)
        assert out.coeff((0, 0)).rational_part().agrees(sc(5))

    def test_ring_map(self):
        rng = random.Random(91)
        field = UnramifiedField(P, 2, M)
        vars = x_vars("x")
        ctx = ResScalarsContext(field, vars)
        for _ in range(8):
            f = qp_series(vars, {(rng.randint(0, 2),): rng.randrange(1, P**3)}, 4)
            g = qp_series(vars, {(rng.randint(0, 2),): rng.randrange(1, P**3)}, 4)
            lhs = holomorphic_bc(f * g, ctx)
            rhs = holomorphic_bc(f, ctx) * holomorphic_bc(g, ctx)
            assert lhs.agrees(rhs)


class TestFullBC:
    def test_degree_one_is_b1(self):
        field = UnramifiedField(P, 1, M)
        vars = x_vars("x")
        ctx = ResScalarsContext(field, vars)
        f = qp_series(vars, {(1,): 2, (0,): 1}, 4)
        assert full_bc(f, ctx).agrees(holomorphic_bc(f, ctx))

    def test_constant_becomes_norm_power(self):
        field = UnramifiedField(P, 2, M)
        vars = x_vars("x")
        ctx = ResScalarsContext(field, vars)
        f = qp_series(vars, {(0,): 3}, 4)
        out = full_bc(f, ctx)
        assert out.coeff((0, 0)).rational_part().agrees(sc(9))

    def test_matches_tensor_slot_identification(self):
        rng = random.Random(92)
        field = UnramifiedField(P, 2, M)
        vars = x_vars("x")
        ctx = ResScalarsContext(field, vars)
        for _ in range(8):
            coeffs = {(k,): rng.randrange(1, P**3) for k in range(rng.randint(1, 3))}
            f = qp_series(vars, coeffs, 4)
            lhs = full_bc(f, ctx)
            rhs = tensor_slot_product(f, ctx)
            assert lhs.agrees(rhs)

    def test_full_bc_lands_in_qp_for_symmetric_input(self):
        # b(f) is Galois-stable: its coefficients are norms/symmetric sums
        field = UnramifiedField(P, 2, M)
        vars = x_vars("x")
        ctx = ResScalarsContext(field, vars)
        f = qp_series(vars, {(1,): 1}, 4)
        out = full_bc(f, ctx)
        tw = out.frobenius_twist(1)
        assert out.agrees(tw)


class TestHolomorphicEquivariance:
    def test_diagonal_action_commutes_with_b1(self):
        # restriction of the L-action to Q_p-points is the original action:
        # b1(act_diag(k, t, f)) equals the all-slot diagonal action on b1(f)
        from iwahorips.actions import Character, PSVector, act_diag
        from iwahorips.series import unipotent_variables

        rng = random.Random(93)
        field = UnramifiedField(P, 2, M)
        chi = Character.from_ints([2, 1], P, M)
        vars = unipotent_variables(2)
        ctx = ResScalarsContext(field, vars)
        for _ in range(4):
            coeffs = {(m,): sc(rng.randrange(1, P**4)) for m in range(3)}
            f = PSVector(TateSeries.from_terms(vars, coeffs, 4), chi, 2)
            t = sc(1 + P * rng.randrange(1, P**3))
            k = rng.randint(1, 2)
            acted_then_bc = restrict_scalars(
                act_diag(k, t, f).series.embed_coefficients(field), ctx
            )
            bc = restrict_scalars(f.series.embed_coefficients(field), ctx)
            bc_then_acted = act_diag(k, t, PSVector(bc, chi, 2)).series
            assert acted_then_bc.agrees(bc_then_acted, abs_digits=M - 1)


class TestTensorModel:
    def test_degree_one_reduces_to_principal_series(self):
        chi = Character.from_ints([1, 2], P, M)
        model = TensorModel.build(chi, 2, 1, 4, M)
        assert len(model.variables) == 1
        t = sc(1 + P)
        lam = model.torus_eigenvalue_of_constant([t, sc(1)])
        assert lam.agrees(power_char(t, chi.component(1)))

    def test_constant_vector_eigenvalue_is_chi_of_norm(self):
        chi = Character.from_ints([3, 1], P, M)
        model = TensorModel.build(chi, 2, 2, 4, M)
        t = sc(1 + P)
        lam = model.torus_eigenvalue_of_constant([t, sc(1)])
        via_norm = model.norm_route_eigenvalue([t, sc(1)])
        assert lam.agrees(via_norm, abs_digits=M - 1)
        # chi_1(1+p)^2 explicitly
        single = power_char(t, chi.component(1))
        assert lam.agrees(single * single, abs_digits=M - 1)

    def test_slotwise_lower_action_leaves_other_slots_fixed(self):
        chi = Character.from_ints([0, 0], P, M)
        model = TensorModel.build(chi, 2, 2, 4, M)
        vars = model.variables
        f = TateSeries.from_terms(
            vars, {(1, 0): sc(1), (0, 1): sc(1)}, model.trunc
        )  # a[2,1]@0 + a[2,1]@1
        y = sc(5)
        out = model.act_factor(OneParamFactor("lower", 2, 1, y), f)
        # both slots see the translation, but a slot-0 monomial never mixes
        # into slot-1 variables
        assert out.coeff((1, 0)).agrees(sc(1))
        assert out.coeff((0, 1)).agrees(sc(1))
        assert out.coeff((0, 0)).agrees(sc(-10))  # -y from each slot

    def test_single_slot_monomial_action_is_local(self):
        chi = Character.from_ints([0, 0], P, M)
        model = TensorModel.build(chi, 2, 2, 4, M)
        vars = model.variables
        f = TateSeries.from_terms(vars, {(2, 0): sc(1)}, model.trunc)
        out = model.act_factor(OneParamFactor("lower", 2, 1, sc(3)), f)
        for exps in out.terms_dict():
            assert exps[1] == 0  # slot-1 exponent untouched

    def test_upper_action_slotwise(self):
        chi = Character.from_ints([1, 0], P, M)
        model = TensorModel.build(chi, 2, 2, 4, M)
        f = model.constant()
        out = model.act_factor(OneParamFactor("upper", 1, 2, sc(P)), f)
        assert not out.is_zero()
        assert out.min_val() >= 0
