"""The globally analytic principal series and its pro-p Iwahori action.

Vectors are Tate series in the d = n(n-1)/2 lower-unipotent coordinates
a[i,j].  The left action h.f = f(h^{-1} .) of a one-parameter factor is:

  diagonal t at slot k:  a[k,j] -> t^{-1} a[k,j], a[i,k] -> t a[i,k],
                         then multiply by chi_k(t);
  lower (i,j), y in Z_p: a[i,v] -> a[i,v] - y a[j,v] for v < j and
                         a[i,j] -> a[i,j] - y;
  upper (i,j), y in pZ_p: factor (1 - y E_{i,j}) A = X Z with X lower
                         unipotent and Z upper triangular, compose f with
                         the X entries and multiply by
                         prod_r chi_r(z_{r,r}^{-1}).

Group parameters are concrete scalars or Symbolic markers; symbolic
diagonal parameters enter as t = 1 + p*xi with xi a fresh Z_p variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .padic import (
    INF,
    DivergenceError,
    DomainError,
    PadicScalar,
    UnramifiedScalar,
    analyticity_bound,
    power_char,
)
from .group import IwahoriMatrix, OneParamFactor, factorize
from .series import Role, TateSeries, Variable, VariableSet, unipotent_name, unipotent_variables


@dataclass(frozen=True)
class Symbolic:
    """Marker for a symbolic group parameter; name overrides the default."""

    name: str | None = None


SYMBOLIC = Symbolic()


@dataclass(frozen=True)
class Character:
    """Locally analytic character of the diagonal torus: chi_i(t) = t^(c_i)."""

    c: tuple
    p: int
    e: int = 1

    @property
    def n(self) -> int:
        return len(self.c)

    @classmethod
    def from_ints(cls, values, p, prec, e=1):
        return cls(tuple(PadicScalar.from_int(v, p, prec) for v in values), p, e)

    @classmethod
    def trivial(cls, n, p, prec, e=1):
        return cls.from_ints([0] * n, p, prec, e)

    def margins(self):
        bound = analyticity_bound(self.p, self.e)
        return [INF if c.is_zero() else Fraction(int(c.val())) - bound for c in self.c]

    def is_analytic(self) -> bool:
        return all(m > 0 for m in self.margins())

    def is_integral(self) -> bool:
        return all(c.is_zero() or c.val() >= 0 for c in self.c)

    def component(self, k: int):
        """c_k, 1-based."""
        return self.c[k - 1]

    def value_on_diag(self, ts):
        """chi(t_1, ..., t_n) for t_i in 1 + pZ_p."""
        out = None
        for t, c in zip(ts, self.c):
            f = power_char(t, c, self.e)
            out = f if out is None else out * f
        return out

    def value_on_q0_inverse(self, q: IwahoriMatrix):
        """chi(q^{-1}) for q in Q0; chi sees only the diagonal."""
        out = None
        for r in range(q.n):
            f = power_char(q.entries[r][r].invert(), self.c[r], self.e)
            out = f if out is None else out * f
        return out

    def frobenius_twist(self, s: int) -> "Character":
        out = tuple(c.frobenius(s) if isinstance(c, UnramifiedScalar) else c for c in self.c)
        return Character(out, self.p, self.e)

    def to_json(self):
        return {"p": self.p, "e": self.e, "c": [c.to_json() for c in self.c]}


def check_analytic(chi: Character) -> dict:
    """Analyticity verdict with per-component margins over the bound."""
    margins = chi.margins()
    return {
        "analytic": all(m > 0 for m in margins),
        "bound": analyticity_bound(chi.p, chi.e),
        "margins": margins,
    }


def _require_analytic(chi: Character):
    if not chi.is_analytic():
        raise DivergenceError("character is not analytic: margins %s" % (check_analytic(chi)["margins"],))


@dataclass
class PSVector:
    """A principal-series vector: series in the unipotent coordinates."""

    series: TateSeries
    character: Character
    n: int

    @classmethod
    def constant(cls, chi: Character, n: int, trunc: int, prec: int) -> "PSVector":
        vars = unipotent_variables(n)
        one = TateSeries.constant(vars, PadicScalar.one(chi.p, prec), trunc)
        return cls(one, chi, n)

    @classmethod
    def from_series(cls, series: TateSeries, chi: Character, n: int) -> "PSVector":
        return cls(series, chi, n)

    def with_series(self, series: TateSeries) -> "PSVector":
        return PSVector(series, self.character, self.n)

    def evaluate_at_matrix(self, u: IwahoriMatrix):
        """Evaluate at the lower-unipotent coordinates of u (tag U)."""
        point = {}
        for name in self.series.vars.names:
            if name.startswith("a[") and "@" not in name:
                i, j = parse_unipotent_name(name)
                point[name] = u.entries[i - 1][j - 1]
            else:
                raise DomainError("series has non-unipotent variable %r" % name)
        return self.series.evaluate(point)


def parse_unipotent_name(name: str):
    body = name[name.index("[") + 1 : name.index("]")]
    i, j = body.split(",")
    return int(i), int(j)


# -- diagonal action ---------------------------------------------------------


def act_diag(k: int, t, f: PSVector, slot: int | None = None, chi: Character | None = None) -> PSVector:
    """Action of the one-parameter diagonal element with t at slot k."""
    chi = chi or f.character
    _require_analytic(chi)
    n = f.n
    s = f.series
    if isinstance(t, Symbolic):
        return _act_diag_symbolic(k, t, f, slot, chi)
    offset = t - PadicScalar.one(chi.p, t.prec)
    if not offset.is_zero() and offset.val() < 1:
        raise DomainError("diagonal parameter must lie in 1 + pZ_p")
    # monomials are torus eigenvectors: coefficient times t^(col - row count)
    out = {}
    for exps, c in s.terms_dict().items():
        up = down = 0
        for idx, e in enumerate(exps):
            if not e:
                continue
            name = s.vars.names[idx]
            if "@" in name and slot is not None and not name.endswith("@%d" % slot):
                continue
            if not name.startswith("a["):
                continue
            i, j = parse_unipotent_name(name)
            if i == k:
                down += e
            if j == k:
                up += e
        scale = t ** (up - down)
        out[exps] = c * scale
    acted = TateSeries.from_terms(s.vars, out, s.trunc, ring=s.ring) if out else s
    acted = acted._flag(s.truncated)
    factor = power_char(t, chi.component(k), chi.e)
    return f.with_series(acted.scale(factor))


def _act_diag_symbolic(k, sym, f, slot, chi):
    n, s = f.n, f.series
    name = sym.name or ("xi[%d]" % k if slot is None else "xi[%d]@%d" % (k, slot))
    if name in s.vars:
        vars = s.vars
        lifted = s
    else:
        vars = s.vars.extended([Variable(name, Role.DIAG_PARAM)])
        lifted = s.lift(vars)
    p, prec, trunc = s.p, s.prec, s.trunc
    xi = TateSeries.variable(vars, name, p, trunc, prec, ring=s.ring)
    p_xi = xi.scale(PadicScalar.from_int(p, p, prec))
    one = TateSeries.constant(vars, PadicScalar.one(p, prec), trunc)
    if s.ring is not None:
        one = one.embed_coefficients(s.ring)
    t_series = one + p_xi
    t_inv = (-p_xi).invert_one_minus()  # (1 + p xi)^{-1}
    images = {}
    for i, j in _root_positions(n):
        vname = unipotent_name(i, j, slot)
        if vname not in vars:
            continue
        base = TateSeries.variable(vars, vname, p, trunc, prec, ring=s.ring)
        if i == k:
            images[vname] = t_inv * base
        elif j == k:
            images[vname] = t_series * base
    acted = lifted.substitute(images) if images else lifted
    chi_factor = p_xi.char_power(chi.component(k), chi.e)
    return f.with_series(acted * chi_factor)


def _root_positions(n):
    return [(i, j) for i in range(2, n + 1) for j in range(1, i)]


# -- lower unipotent action --------------------------------------------------


def act_lower(i: int, j: int, y, f: PSVector, slot: int | None = None) -> PSVector:
    """Action of 1 + y E_{i,j} for i > j, y in Z_p (or symbolic)."""
    if not i > j:
        raise DomainError("lower factor needs i > j")
    s = f.series
    p, prec, trunc = s.p, s.prec, s.trunc
    if isinstance(y, Symbolic):
        name = y.name or "y"
        if name in s.vars:
            vars, lifted = s.vars, s
        else:
            vars = s.vars.extended([Variable(name, Role.LOWER_PARAM)])
            lifted = s.lift(vars)
        y_series = TateSeries.variable(vars, name, p, trunc, prec, ring=s.ring)
    else:
        if not y.is_zero() and y.val() < 0:
            raise DomainError("lower parameter must lie in Z_p")
        vars, lifted = s.vars, s
        y_series = TateSeries.constant(vars, y, trunc)
        if s.ring is not None:
            y_series = y_series.embed_coefficients(s.ring)
    images = {}
    for v in range(1, j + 1):
        target = unipotent_name(i, v, slot)
        if target not in vars:
            continue
        base = TateSeries.variable(vars, target, p, trunc, prec, ring=lifted.ring)
        if v == j:
            images[target] = base - y_series
        else:
            src = TateSeries.variable(vars, unipotent_name(j, v, slot), p, trunc, prec, ring=lifted.ring)
            images[target] = base - y_series * src
    return f.with_series(lifted.substitute(images))


# -- upper unipotent action and the XZ factorization -------------------------

_XZ_CACHE: dict = {}


def xz_decompose(
    i: int,
    j: int,
    n: int,
    p: int,
    trunc: int,
    prec: int,
    slot: int | None = None,
    y_name: str = "y",
    vars: VariableSet | None = None,
    y_role: Role = Role.UPPER_PARAM,
):
    """Unique symbolic factorization (1 - y E_{i,j}) A = X Z.

    A is the generic lower unipotent matrix in the coordinates a[k,l];
    X is lower unipotent with integral series entries, Z upper triangular
    with diagonal entries of constant term 1 and y-divisible off-diagonal
    entries; rational entries are expanded eagerly through truncated
    geometric series.  Returns (X, Z, vars) with entries over the
    unipotent variables extended by the upper parameter y.
    """
    if not i < j:
        raise DomainError("upper factor needs i < j")
    if trunc < 1:
        raise DomainError("truncation-insufficient: need D >= 1")
    key = (i, j, n, p, trunc, prec, slot, y_name, vars, y_role)
    if key in _XZ_CACHE:
        return _XZ_CACHE[key]
    if vars is None:
        base_vars = unipotent_variables(n) if slot is None else VariableSet(
            Variable(unipotent_name(a, b, slot), Role.UNIPOTENT) for a, b in _root_positions(n)
        )
        vars = base_vars.extended([Variable(y_name, y_role)])
    elif y_name not in vars:
        vars = vars.extended([Variable(y_name, y_role)])
    zero = TateSeries.zero(vars, p, trunc, prec)
    one = TateSeries.constant(vars, PadicScalar.one(p, prec), trunc)
    y = TateSeries.variable(vars, y_name, p, trunc, prec)

    def avar(k, l):
        if k == l:
            return one
        if k < l:
            return zero
        return TateSeries.variable(vars, unipotent_name(k, l, slot), p, trunc, prec)

    # C = (1 - y E_{i,j}) A: row i minus y * row j
    C = [[avar(k + 1, l + 1) for l in range(n)] for k in range(n)]
    for l in range(n):
        C[i - 1][l] = C[i - 1][l] - y * avar(j, l + 1)

    X = [[one if k == l else zero for l in range(n)] for k in range(n)]
    Z = [[zero for _ in range(n)] for _ in range(n)]
    for m in range(n):
        for s_ in range(m, n):
            acc = C[m][s_]
            for r in range(m):
                acc = acc - X[m][r] * Z[r][s_]
            Z[m][s_] = acc
        z_inv = (one - Z[m][m]).invert_one_minus()
        for u in range(m + 1, n):
            acc = C[u][m]
            for r in range(m):
                acc = acc - X[u][r] * Z[r][m]
            X[u][m] = acc * z_inv
    _XZ_CACHE[key] = (X, Z, vars)
    return X, Z, vars


def act_upper(
    i: int,
    j: int,
    y,
    f: PSVector,
    slot: int | None = None,
    chi: Character | None = None,
    domain_checked: bool = True,
    param_role: Role = Role.UPPER_PARAM,
) -> PSVector:
    """Action of 1 + y E_{i,j} for i < j, y in pZ_p (or symbolic).

    ``domain_checked=False`` with ``param_role`` admits parameters from a
    larger domain; the Weyl transport uses this when the congruences of the
    rescaled orbit coordinates make the factorization sound.
    """
    chi = chi or f.character
    _require_analytic(chi)
    if not i < j:
        raise DomainError("upper factor needs i < j")
    concrete = not isinstance(y, Symbolic)
    if concrete and domain_checked and not y.is_zero() and y.val() < 1:
        raise DomainError("upper parameter must lie in pZ_p")
    s = f.series
    y_name = (y.name if not concrete and y.name else None) or "y"
    expected = {unipotent_name(a, b, slot) for a, b in _root_positions(f.n)}
    custom = set(s.vars.names) != expected
    X, Z, xz_vars = xz_decompose(
        i, j, f.n, s.p, s.trunc, s.prec, slot=slot, y_name=y_name,
        vars=s.vars if custom else None, y_role=param_role,
    )
    if s.ring is not None:
        X = [[x.embed_coefficients(s.ring) for x in row] for row in X]
        Z = [[z.embed_coefficients(s.ring) for z in row] for row in Z]
    # lift f over the xz variable set (y appended after the unipotent block)
    lifted = _lift_over(s, xz_vars)
    images = {}
    for k in range(2, f.n + 1):
        for l in range(1, k):
            name = unipotent_name(k, l, slot)
            if name in s.vars:
                images[name] = X[k - 1][l - 1]
    acted = lifted.substitute(images)
    cocycle = _chi_cocycle(Z, xz_vars, chi, f.n, s.p, s.trunc, s.prec, slot, y_name, (i, j))
    if acted.ring is not None and cocycle.ring is None:
        cocycle = cocycle.embed_coefficients(acted.ring)
    acted = acted * cocycle
    if concrete:
        acted = acted.specialize(y_name, y)
        acted = acted.restrict_vars(s.vars) if _support_within(acted, s.vars) else acted
    return f.with_series(acted)


_COCYCLE_CACHE: dict = {}


def _chi_signature(chi: Character):
    out = []
    for c in chi.c:
        if isinstance(c, UnramifiedScalar):
            out.append(tuple((x.v, x.unit, x.prec) for x in c.coords))
        else:
            out.append((c.v, c.unit, c.prec))
    return (tuple(out), chi.p, chi.e)


def _chi_cocycle(Z, xz_vars, chi, n, p, trunc, prec, slot, y_name, root):
    """prod_r chi_r(z_{r,r}^{-1}), cached per factorization root and character."""
    key = (_chi_signature(chi), xz_vars, n, p, trunc, prec, slot, y_name, root)
    got = _COCYCLE_CACHE.get(key)
    if got is not None:
        return got
    one = TateSeries.constant(xz_vars, PadicScalar.one(p, prec), trunc)
    ring = Z[0][0].ring
    if ring is not None:
        one = one.embed_coefficients(ring)
    acc = one
    for r in range(n):
        z_inv = (one - Z[r][r]).invert_one_minus()
        u = z_inv - one
        acc = acc * u.char_power(chi.component(r + 1), chi.e)
    _COCYCLE_CACHE[key] = acc
    return acc


def _lift_over(s: TateSeries, target: VariableSet) -> TateSeries:
    if s.vars == target:
        return s
    if target.variables[: len(s.vars)] == s.vars.variables:
        return s.lift(target)
    return s.reindex(target)


def _support_within(s: TateSeries, vars: VariableSet) -> bool:
    for k in s.terms:
        exps = s.vars.unpack(k)
        for idx, e in enumerate(exps):
            if e and s.vars.names[idx] not in vars:
                return False
    return True


# -- whole-group action ------------------------------------------------------


def act_factor(factor: OneParamFactor, f: PSVector, slot: int | None = None, chi: Character | None = None) -> PSVector:
    if factor.kind == "lower":
        return act_lower(factor.i, factor.j, factor.param, f, slot=slot)
    if factor.kind == "diag":
        return act_diag(factor.i, factor.param, f, slot=slot, chi=chi)
    return act_upper(factor.i, factor.j, factor.param, f, slot=slot, chi=chi)


def act_group(g: IwahoriMatrix, f: PSVector, working_trunc: int | None = None) -> PSVector:
    """Action of an arbitrary g in G: one-parameter factors applied in
    reverse Lazard order (left actions compose contravariantly).

    ``working_trunc`` raises the truncation degree for the whole composite;
    coefficients of total degree <= the original D are exact either way,
    but a longer tail tightens the remainder seen by pointwise evaluation.
    """
    _require_analytic(f.character)
    if working_trunc is not None and working_trunc != f.series.trunc:
        f = f.with_series(f.series.retruncate(working_trunc))
    for factor in reversed(factorize(g)):
        if factor.kind == "diag" and (factor.param - PadicScalar.one(f.character.p, factor.param.prec)).is_zero():
            continue
        if factor.kind != "diag" and factor.param.is_zero():
            continue
        f = act_factor(factor, f)
    return f


def decay_report(f: PSVector, var: str) -> dict:
    """Per-degree minimum coefficient valuation along ``var``."""
    profile = f.series.decay_profile(var)
    return {
        "variable": var,
        "per_degree_min_valuation": {int(k): int(v) for k, v in sorted(profile.items())},
        "all_integral": all(v >= 0 for v in profile.values()),
    }
