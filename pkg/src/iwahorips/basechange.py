"""Restriction of scalars, holomorphic and full base change, and the
truncated Langlands tensor model.

For an unramified extension L/Q_p of degree N with integral basis
(1, w, ..., w^(N-1)), a series over L in variables x becomes a series over
Q_p in variables x@0, ..., x@(N-1) through x -> sum_i w^i x@i.  The full
base change multiplies the N Frobenius twists of the holomorphic image;
under the slot identification this is the tensor product over the Galois
embeddings, and the diagonal torus acts on the constant vector of the
tensor model through chi composed with the norm.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .padic import (
    DomainError,
    PadicScalar,
    UnramifiedField,
    UnramifiedScalar,
    norm_L,
    power_char,
)
from .group import OneParamFactor, require_odd_prime_gt
from .actions import Character, PSVector, act_diag, act_lower, act_upper
from .series import Role, TateSeries, Variable, VariableSet, unipotent_name

_MAX_TERMS = 500_000


class ResScalarsContext:
    """Restriction-of-scalars data: the field, the source variables over L,
    and the Q_p target variables x@slot."""

    def __init__(self, field: UnramifiedField, source_vars: VariableSet):
        self.field = field
        self.p = field.p
        self.degree = field.n
        self.source_vars = source_vars
        self.target_vars = VariableSet(
            Variable("%s@%d" % (v.name, s), v.role, v.scale)
            for v in source_vars.variables
            for s in range(field.n)
        )
        self.basis = [self._omega_power(i) for i in range(field.n)]
        mat = field.frobenius_matrix(field.prec)
        if field.n > 1 and all(x % field.p == 0 for x in mat[1][1:]) and mat[1][0] % field.p == 0:
            raise DomainError("degenerate Frobenius matrix")

    def _omega_power(self, i: int) -> UnramifiedScalar:
        coords = [0] * self.field.n
        coords[i] = 1
        return self.field.element(coords)

    def frobenius_matrix(self):
        return self.field.frobenius_matrix(self.field.prec)

    def check_size(self, trunc: int):
        est = comb(len(self.target_vars) + trunc, trunc)
        if est > _MAX_TERMS:
            raise DomainError(
                "truncation-insufficient: ~%d candidate terms exceed the configured bound" % est
            )

    def to_json(self):
        return {
            "p": self.p,
            "N": self.degree,
            "basis_poly": list(self.field.modulus),
            "frobenius_matrix": [list(col) for col in self.frobenius_matrix()],
        }


def restrict_scalars(f: TateSeries, ctx: ResScalarsContext, twist: int = 0) -> TateSeries:
    """g(x@0, ..., x@(N-1)) = f(sum_i w^i x@i), coefficients in L.

    ``twist`` applies a Frobenius power to the basis images (used by the
    independent tensor-slot route)."""
    ctx.check_size(f.trunc)
    if f.vars != ctx.source_vars:
        raise DomainError("series is not over the context's source variables")
    field = ctx.field
    lifted = f if f.ring is not None else f.embed_coefficients(field)
    images = {}
    for v in ctx.source_vars.variables:
        coeffs = {}
        for s in range(field.n):
            exps = [0] * len(ctx.target_vars)
            exps[ctx.target_vars.index["%s@%d" % (v.name, s)]] = 1
            e_i = ctx.basis[s]
            if twist:
                e_i = e_i.frobenius(twist)
            coeffs[tuple(exps)] = e_i
        images[v.name] = TateSeries.from_terms(ctx.target_vars, coeffs, f.trunc, ring=field)
    # reinterpret the source series over a disjoint-name copy so substitute
    # can target the slot variables
    return lifted.substitute(images)


def holomorphic_bc(f: TateSeries, ctx: ResScalarsContext) -> TateSeries:
    """b1: coefficients embedded Q_p -> L, then the restriction substitution."""
    if f.ring is not None:
        raise DomainError("holomorphic base change starts from a Q_p series")
    return restrict_scalars(f.embed_coefficients(ctx.field), ctx)


def full_bc(f: TateSeries, ctx: ResScalarsContext) -> TateSeries:
    """b(f) = prod_sigma b1(f)^sigma (Frobenius acting on coefficients)."""
    b1 = holomorphic_bc(f, ctx)
    out = b1
    for s in range(1, ctx.degree):
        out = out * b1.frobenius_twist(s)
    return out


def tensor_slot_product(f: TateSeries, ctx: ResScalarsContext) -> TateSeries:
    """The slot-identified tensor form: prod_s (sigma^s f)(sum_i sigma^s(w^i) x@i).

    Computed independently of full_bc (the substitution is re-done with
    twisted basis vectors rather than twisting the finished image)."""
    out = None
    for s in range(ctx.degree):
        twisted = f.embed_coefficients(ctx.field).frobenius_twist(s)
        img = restrict_scalars(twisted, ctx, twist=s)
        out = img if out is None else out * img
    return out


# -- the Langlands tensor model ----------------------------------------------


@dataclass
class TensorModel:
    """Truncated model of the N-fold completed tensor product of the
    principal series, with the diagonal G(Q_p) action applied slotwise
    with Frobenius-twisted characters."""

    chi: Character
    n: int
    degree: int
    trunc: int
    prec: int
    field: UnramifiedField

    @classmethod
    def build(cls, chi: Character, n: int, degree: int, trunc: int, prec: int) -> "TensorModel":
        require_odd_prime_gt(chi.p, n)
        field = UnramifiedField(chi.p, degree, prec)
        model = cls(chi, n, degree, trunc, prec, field)
        est = comb(len(model.variables) + trunc, trunc)
        if est > _MAX_TERMS:
            raise DomainError("size limit: ~%d candidate terms" % est)
        return model

    @property
    def variables(self) -> VariableSet:
        return VariableSet(
            Variable(unipotent_name(i, j, s), Role.UNIPOTENT)
            for s in range(self.degree)
            for i in range(2, self.n + 1)
            for j in range(1, i)
        )

    def slot_character(self, s: int) -> Character:
        return self.chi.frobenius_twist(s)

    def constant(self) -> TateSeries:
        return TateSeries.constant(self.variables, PadicScalar.one(self.chi.p, self.prec), self.trunc)

    def act_factor(self, factor: OneParamFactor, series: TateSeries) -> TateSeries:
        """Diagonal action of a one-parameter factor of G(Q_p): the
        sigma-twisted principal-series action applied slot by slot."""
        out = series
        for s in range(self.degree):
            chi_s = self.slot_character(s)
            holder = PSVector(out, chi_s, self.n)
            if factor.kind == "diag":
                holder = act_diag(factor.i, factor.param, holder, slot=s, chi=chi_s)
            elif factor.kind == "lower":
                holder = act_lower(factor.i, factor.j, factor.param, holder, slot=s)
            else:
                holder = act_upper(factor.i, factor.j, factor.param, holder, slot=s, chi=chi_s)
            out = holder.series
            if factor.kind == "upper" and "y" in out.vars:
                # concrete uppers specialize y away; restrict back
                out = out.restrict_vars(self.variables)
        return out

    def torus_eigenvalue_of_constant(self, ts):
        """Eigenvalue of the constant vector under Diag(t_1, ..., t_n) with
        Q_p entries: prod_s chi^(sigma^s)(t) = chi(N_{L/Q_p}(t))."""
        series = self.constant()
        for k, t in enumerate(ts, start=1):
            factor = OneParamFactor("diag", k, k, t)
            series = self.act_factor(factor, series)
        const = series.coeff((0,) * len(self.variables))
        rest = series - TateSeries.constant(self.variables, const, self.trunc)
        if not rest.is_zero():
            raise DomainError("constant vector was not an eigenvector")
        return const

    def norm_route_eigenvalue(self, ts):
        """The chi-of-norm route: prod_k power_char(N(t_k), c_k)."""
        out = None
        for k, t in enumerate(ts, start=1):
            nt = norm_L(self.field.embed(t))
            f = power_char(nt, self.chi.component(k), self.chi.e)
            out = f if out is None else out * f
        return out


def tensor_rep(chi: Character, n: int, degree: int, trunc: int, prec: int) -> TensorModel:
    """Truncated model of the degree-fold tensor product with the diagonal
    slotwise action."""
    return TensorModel.build(chi, n, degree, trunc, prec)
