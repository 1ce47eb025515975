"""Weyl group transport: conjugation of one-parameter subgroups, twisted
characters, and the Bruhat direct-sum container.

For a permutation matrix w (stored through w^{-1} = sum_r E_{r, j_r}) the
identity (1 - y E_{i,j}) w = w (1 - y E_{k,l}) holds for the unique (k,l)
with j_k = i and j_l = j, so the action of a one-parameter factor on
functions over w U w^{-1} cap B reduces to the standard action at the
conjugated root on relabeled coordinates.  Coordinates landing above the
diagonal range over pZ_p and are stored rescaled (b = a / p) so every
series variable runs over Z_p.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .padic import DomainError, PadicScalar
from .group import IwahoriMatrix, OneParamFactor, require_odd_prime_gt
from .actions import Character, PSVector, act_diag, act_lower, act_upper
from .series import Role, TateSeries, Variable, VariableSet, unipotent_name


class WeylElement:
    """Permutation matrix; ``jr`` lists j_r with w^{-1} = sum_r E_{r, j_r}."""

    def __init__(self, jr):
        self.jr = tuple(jr)
        n = len(self.jr)
        if sorted(self.jr) != list(range(1, n + 1)):
            raise DomainError("not a permutation of 1..%d" % n)
        self.n = n
        self._inv = [0] * n
        for r, j in enumerate(self.jr, start=1):
            self._inv[j - 1] = r

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def all_elements(cls, n):
        return [cls(p) for p in permutations(range(1, n + 1))]

    def jinv(self, m: int) -> int:
        """The r with j_r = m."""
        return self._inv[m - 1]

    def is_identity(self) -> bool:
        return all(j == r for r, j in enumerate(self.jr, start=1))

    def inverse_matrix_rows(self):
        """Integer rows of w^{-1}."""
        return [[1 if self.jr[r] == c + 1 else 0 for c in range(self.n)] for r in range(self.n)]

    def matrix_rows(self):
        """Integer rows of w (the transpose of w^{-1})."""
        inv = self.inverse_matrix_rows()
        return [[inv[c][r] for c in range(self.n)] for r in range(self.n)]

    def matrix(self, p, prec) -> IwahoriMatrix:
        return IwahoriMatrix.from_ints(self.matrix_rows(), p, prec)

    def inverse(self) -> "WeylElement":
        return WeylElement(self._inv)

    def compose(self, other: "WeylElement") -> "WeylElement":
        """Matrix product w * w': (w w')(e_r) = e_{j_{j'_r}}."""
        return WeylElement(tuple(self.jr[other.jr[r] - 1] for r in range(self.n)))

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.jr == other.jr

    def __hash__(self):
        return hash(self.jr)

    def __repr__(self):
        return "WeylElement(j_r=%s)" % (self.jr,)

    def to_json(self):
        return {"n": self.n, "one_line_inverse": list(self.jr)}


def conjugate_root(w: WeylElement, i: int, j: int):
    """The unique (k, l) with (1 - y E_{i,j}) w = w (1 - y E_{k,l})."""
    if i == j:
        raise DomainError("need i != j")
    return w.jinv(i), w.jinv(j)


def chi_w(chi: Character, w: WeylElement) -> Character:
    """chi^w(h) = chi(w^{-1} h w): the parameter vector permuted."""
    c = tuple(chi.c[w.jinv(m) - 1] for m in range(1, w.n + 1))
    return Character(c, chi.p, chi.e)


# -- orbit coordinates --------------------------------------------------------


def orbit_positions(w: WeylElement):
    """For each negative root (r, s) the target position (j_r, j_s) in
    w U w^{-1} cap B, with the recorded p-scaling (1 when the position
    lands above the diagonal)."""
    out = []
    for r in range(2, w.n + 1):
        for s in range(1, r):
            tr, ts = w.jr[r - 1], w.jr[s - 1]
            scale = 1 if tr < ts else 0
            out.append(((r, s), (tr, ts), scale))
    return out


def orbit_variables(w: WeylElement) -> VariableSet:
    """Rescaled coordinates b[t_r, t_s] of w U w^{-1} cap B, all over Z_p."""
    return VariableSet(
        Variable("b[%d,%d]" % tgt, Role.UNIPOTENT, scale=scale) for _, tgt, scale in orbit_positions(w)
    )


def orbit_constant(chi: Character, w: WeylElement, trunc: int, prec: int) -> PSVector:
    vars = orbit_variables(w)
    return PSVector(TateSeries.constant(vars, PadicScalar.one(chi.p, prec), trunc), chi, w.n)


def _relabel_in(series: TateSeries, w: WeylElement) -> TateSeries:
    """Orbit series -> standard coordinates: b[j_r,j_s] becomes a[r,s] with
    the stored value relation a = p^scale * b folded into the coefficients
    (so coefficients may pick up negative valuations, held by the shift)."""
    from .series import unipotent_variables

    target = unipotent_variables(w.n)
    extras = [v for v in series.vars.variables if not v.name.startswith("b[")]
    target = target.extended(extras) if extras else target
    name_map = {}
    scaled = series
    for (r, s), tgt, scale in orbit_positions(w):
        bname = "b[%d,%d]" % tgt
        name_map[bname] = unipotent_name(r, s)
        if scale and bname in series.vars:
            scaled = scaled.rescale_variable(bname, -scale)
    return scaled.reindex(target, name_map)


def _relabel_out(series: TateSeries, w: WeylElement) -> TateSeries:
    """Standard coordinates back to the rescaled orbit coordinates."""
    extras = [v for v in series.vars.variables if not v.name.startswith("a[")]
    target = orbit_variables(w)
    if extras:
        target = target.extended(extras)
    name_map = {}
    scaled = series
    for (r, s), tgt, scale in orbit_positions(w):
        aname = unipotent_name(r, s)
        name_map[aname] = "b[%d,%d]" % tgt
        if scale and aname in series.vars:
            scaled = scaled.rescale_variable(aname, scale)
    out = scaled.reindex(target, name_map)
    if out.shift > 0:
        raise DomainError(
            "transported action left coefficients of negative valuation; "
            "the factor is outside the orbit's congruence domain"
        )
    return out


def act_weyl(w: WeylElement, factor: OneParamFactor, f: PSVector) -> PSVector:
    """Action of a one-parameter factor of G on a series over the rescaled
    coordinates of w U w^{-1} cap B.

    ``f.character`` is the component's character chi^w; the cocycle on the
    relabeled standard side pulls back to the untwisted chi = (chi^w)^(w^-1)
    because chi^w(w z w^{-1}) = chi(z) for z in Q0."""
    base_chi = f.character if w.is_identity() else chi_w(f.character, w.inverse())
    series = _relabel_in(f.series, w)
    std = PSVector(series, base_chi, f.n)
    if factor.kind == "diag":
        k = w.jinv(factor.i)
        out = act_diag(k, factor.param, std)
    else:
        k, l = conjugate_root(w, factor.i, factor.j)
        if k > l:
            out = act_lower(k, l, factor.param, std)
        else:
            role = Role.LOWER_PARAM if factor.kind == "lower" else Role.UPPER_PARAM
            out = act_upper(k, l, factor.param, std, domain_checked=factor.kind == "upper", param_role=role)
    return f.with_series(_relabel_out(out.series, w))


def orbit_split(m: IwahoriMatrix, w: WeylElement):
    """Split m = c q with c in w U w^{-1} cap B and q in P_w^+, through the
    standard LU split of w^{-1} m w.  Unit pivots are required (they exist
    exactly on the big cell, in particular for m in G * (w U w^{-1} cap B))."""
    n, p, prec = m.n, m.p, m.prec
    wm = w.matrix(p, prec)
    wmi = IwahoriMatrix.from_ints(w.inverse_matrix_rows(), p, prec)
    a = wmi @ m @ wm
    lower = [[PadicScalar.one(p, prec) if i == j else PadicScalar.zero(p, prec) for j in range(n)] for i in range(n)]
    upper = [[PadicScalar.zero(p, prec) for _ in range(n)] for _ in range(n)]
    for r in range(n):
        for s in range(r, n):
            acc = a.entries[r][s]
            for k in range(r):
                acc = acc - lower[r][k] * upper[k][s]
            upper[r][s] = acc
        piv = upper[r][r]
        if piv.is_zero() or piv.val() != 0:
            raise DomainError("matrix is outside the big cell of the w-decomposition")
        inv = piv.invert()
        for i in range(r + 1, n):
            acc = a.entries[i][r]
            for k in range(r):
                acc = acc - lower[i][k] * upper[k][r]
            lower[i][r] = acc * inv
    lw = IwahoriMatrix(n, lower, p=p, prec=prec)
    up = IwahoriMatrix(n, upper, p=p, prec=prec)
    c = wm @ lw @ wmi
    q = wm @ up @ wmi
    return c, q


def orbit_point_coordinates(c: IwahoriMatrix, w: WeylElement) -> dict:
    """Rescaled b-coordinates of a concrete element of w U w^{-1} cap B."""
    point = {}
    for (r, s), (tr, ts), scale in orbit_positions(w):
        entry = c.entries[tr - 1][ts - 1]
        if scale:
            entry = entry * PadicScalar(c.p, -scale, 1, entry.prec + scale)
        if not entry.is_zero() and entry.val() < 0:
            raise DomainError("point is outside the orbit congruence domain")
        point["b[%d,%d]" % (tr, ts)] = entry
    return point


def validate_pw_plus(m: IwahoriMatrix, w: WeylElement):
    """Membership in P_w^+ = B cap w P^+ w^{-1}: zero at the positions
    (j_r, j_s) with r > s, Iwahori congruences elsewhere."""
    one = PadicScalar.one(m.p, m.prec)
    for r in range(1, m.n + 1):
        for s in range(1, m.n + 1):
            e = m.entries[r - 1][s - 1]
            rr, ss = w.jinv(r), w.jinv(s)
            if rr > ss:
                if not e.is_zero():
                    raise DomainError("nonzero entry in the w-lower block at (%d,%d)" % (r, s))
            if r > s and (e.is_zero() is False) and e.val() < 0:
                raise DomainError("entry outside Z_p")
            if r < s and not e.is_zero() and e.val() < 1:
                raise DomainError("above-diagonal entry outside pZ_p")
            if r == s and (e - one).is_zero() is False and e.val() != 0:
                raise DomainError("diagonal entry not a unit")
    return m


@dataclass
class BruhatComponent:
    """One summand ind_{P_w^+}^B(chi^w) of the Bruhat decomposition."""

    w: WeylElement
    chi_w: Character
    variables: VariableSet

    def act(self, factor: OneParamFactor, f: PSVector) -> PSVector:
        return act_weyl(self.w, factor, f)

    def constant(self, trunc: int, prec: int) -> PSVector:
        base = Character(self.chi_w.c, self.chi_w.p, self.chi_w.e)
        return PSVector(
            TateSeries.constant(self.variables, PadicScalar.one(base.p, prec), trunc),
            base,
            self.w.n,
        )

    def to_json(self):
        return {
            "w": list(self.w.jr),
            "chi_w": [c.to_json() for c in self.chi_w.c],
            "relabeling": [
                {"source": list(src), "target": list(tgt), "scale": scale}
                for src, tgt, scale in orbit_positions(self.w)
            ],
        }


def bruhat_components(n: int, chi: Character | None = None, p: int | None = None, prec: int = 8):
    """All n! components (w, chi^w, coordinates) of the Bruhat sum."""
    if n > 5:
        raise DomainError("size limit: n <= 5 (the sum has n! components)")
    if chi is None:
        chi = Character.trivial(n, p or 7, prec)
    require_odd_prime_gt(chi.p, n)
    out = []
    for w in WeylElement.all_elements(n):
        out.append(BruhatComponent(w, chi_w(chi, w), orbit_variables(w)))
    return out
