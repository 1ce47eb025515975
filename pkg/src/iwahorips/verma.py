"""Root data for gl(n), Lie-algebra derivations of the principal series,
Kostant multiplicities, and the Bernstein-Gelfand irreducibility criterion.

Monomials a^r are eigenvectors of the torus Lie algebra with eigenvalue
c_k + sum_{(i,k)} r - sum_{(k,j)} r at the k-th basis element; the module
generated by the constant function realizes the Verma module with highest
weight -mu, mu = (-c_1, ..., -c_n), and the representation is irreducible
iff c_i - c_j + (i - j) is never a positive rational integer over the
negative roots (i, j).
"""

from __future__ import annotations

from dataclasses import dataclass
from .padic import DomainError, PadicScalar, vp_int
from .actions import Character, PSVector, Symbolic, act_upper, _require_analytic
from .series import TateSeries, VariableSet, unipotent_variables, unipotent_name


@dataclass(frozen=True)
class RootDatum:
    """Negative roots of gl(n) as pairs (i, j), i > j, in lexicographic order."""

    n: int

    @property
    def negative_roots(self):
        return [(i, j) for i in range(2, self.n + 1) for j in range(1, i)]

    @property
    def rank(self) -> int:
        return self.n * (self.n - 1) // 2

    def alpha(self, i, j):
        """Coordinate vector of the root e_i - e_j on the torus basis."""
        out = [0] * self.n
        out[i - 1] = 1
        out[j - 1] = -1
        return tuple(out)

    def coroot_diagonal(self, i, j):
        """Diagonal of H_{(i,j)} = E_{i,i} - E_{j,j}."""
        return self.alpha(i, j)

    def rho_minus_value(self, i, j) -> int:
        """rho^- evaluated on the coroot: i - j."""
        return i - j


@dataclass(frozen=True)
class Weight:
    """Linear form on the diagonal torus Lie algebra: values on T_1..T_n.

    ``offset`` is the integer displacement from -mu when the weight arose
    from monomials: weight = -mu - sum r_alpha alpha has
    offset_k = sum_{delta=(i,k)} r_delta - sum_{beta=(k,j)} r_beta.
    """

    values: tuple
    offset: tuple | None = None

    @property
    def n(self):
        return len(self.values)

    def to_json(self):
        return {
            "values": [c.to_json() for c in self.values],
            "offset": list(self.offset) if self.offset is not None else None,
        }


def mu_of(chi: Character) -> Weight:
    """mu = (-c_1, ..., -c_n)."""
    return Weight(tuple(-c for c in chi.c))


def minus_mu_shifted(chi: Character, offset) -> Weight:
    """The weight -mu + offset (offsets are integer vectors summing to 0)."""
    vals = tuple(
        c + PadicScalar.from_int(o, chi.p, c.prec if not c.is_exact_zero() else 8)
        for c, o in zip(chi.c, offset)
    )
    return Weight(vals, tuple(offset))


def monomial_offset(exps, n: int) -> tuple:
    """Integer offset of the monomial a^exps from -mu."""
    roots = RootDatum(n).negative_roots
    out = [0] * n
    for (i, j), e in zip(roots, exps):
        if e:
            out[j - 1] += e
            out[i - 1] -= e
    return tuple(out)


def offset_of_weight(xi: Weight, chi: Character, bound: int = 10**6):
    """Recover the integer offset of xi from -mu, or None."""
    if xi.offset is not None:
        return tuple(xi.offset)
    out = []
    for v, c in zip(xi.values, chi.c):
        m = (v - c).as_integer(bound)
        if m is None:
            return None
        out.append(m)
    return tuple(out)


def torus_eigenvalue(r, k: int, chi: Character):
    """c_k + sum_{delta=(i,k)} r_delta - sum_{beta=(k,j)} r_beta.

    ``r`` is an exponent tuple over the negative roots in lexicographic
    order (or a dict keyed by root pairs)."""
    n = chi.n
    roots = RootDatum(n).negative_roots
    if isinstance(r, dict):
        r = tuple(r.get(root, 0) for root in roots)
    shift = 0
    for (i, j), e in zip(roots, r):
        if not e:
            continue
        if j == k:
            shift += e
        if i == k:
            shift -= e
    return chi.component(k) + PadicScalar.from_int(shift, chi.p, chi.component(k).prec or 8)


# -- Lie algebra derivations -------------------------------------------------


def lie_lower(i: int, j: int, f: PSVector) -> PSVector:
    """Y_{(i,j)}: derivative at y = 0 of the lower one-parameter action.

    Direct derivation on exponents: -sum_{v<j} a[j,v] d/da[i,v] - d/da[i,j];
    the l = j slot lowers total degree by one, the others preserve it.
    """
    if not i > j:
        raise DomainError("lower derivation needs i > j")
    s = f.series
    vars = s.vars
    n = f.n
    out = {}

    def bump(exps, c):
        prev = out.get(exps)
        out[exps] = c if prev is None else prev + c

    for exps, c in s.terms_dict().items():
        for v in range(1, j + 1):
            idx = vars.index[unipotent_name(i, v)]
            e = exps[idx]
            if not e:
                continue
            new = list(exps)
            new[idx] = e - 1
            if v < j:
                src = vars.index[unipotent_name(j, v)]
                new[src] += 1
            bump(tuple(new), c * (-e))
    if not out:
        return f.with_series(TateSeries.zero(vars, s.p, s.trunc, s.prec, ring=s.ring))
    return f.with_series(TateSeries.from_terms(vars, out, s.trunc, ring=s.ring)._flag(s.truncated))


def lie_diag(k: int, f: PSVector) -> PSVector:
    """T_k: acts on the monomial a^r by the torus eigenvalue."""
    s = f.series
    out = {}
    for exps, c in s.terms_dict().items():
        lam = torus_eigenvalue(_unipotent_exps(exps, s.vars, f.n), k, f.character)
        scaled = c * lam
        if not scaled.is_zero():
            out[exps] = scaled
    if not out:
        return f.with_series(TateSeries.zero(s.vars, s.p, s.trunc, s.prec, ring=s.ring))
    return f.with_series(TateSeries.from_terms(s.vars, out, s.trunc, ring=s.ring)._flag(s.truncated))


def _unipotent_exps(exps, vars, n):
    roots = RootDatum(n).negative_roots
    return tuple(exps[vars.index[unipotent_name(i, j)]] for (i, j) in roots)


def lie_upper(i: int, j: int, f: PSVector) -> PSVector:
    """X_{(i,j)}: symbolic y-derivative at 0 of the upper action.

    Computed at truncation D+1 so that every y-linear coefficient of
    a-degree <= D is exact, then the y^1 slice is extracted.
    """
    _require_analytic(f.character)
    s = f.series
    lifted = f.with_series(s.retruncate(s.trunc + 1))
    acted = act_upper(i, j, Symbolic(name="_dy"), lifted)
    a = acted.series
    out = {}
    idx = a.vars.index["_dy"]
    for exps, c in a.terms_dict().items():
        if exps[idx] != 1:
            continue
        new = list(exps)
        new[idx] = 0
        if sum(new) > s.trunc:
            continue
        out[tuple(new)] = c
    if not out:
        return f.with_series(TateSeries.zero(s.vars, s.p, s.trunc, s.prec, ring=s.ring))
    slim = TateSeries.from_terms(a.vars, out, s.trunc + 1, ring=a.ring)
    slim = slim.restrict_vars(s.vars).retruncate(s.trunc)
    return f.with_series(slim)


# -- multiplicities and the criterion ----------------------------------------


def kostant_multiplicity(xi, chi: Character, n: int) -> int:
    """Number of families r in N^d with xi = -mu - sum r_alpha alpha.

    ``xi`` may be a Weight or a bare integer offset tuple.  Computed by
    dynamic programming over the roots; the potential sum r_(i,j) (i-j) is
    pinned by the offset, which bounds every exponent.
    """
    offset = xi if isinstance(xi, tuple) else offset_of_weight(xi, chi)
    if offset is None:
        return 0
    if len(offset) != n or sum(offset) != 0:
        return 0
    height = -sum(k * o for k, o in enumerate(offset, start=1))
    if height < 0:
        return 0
    roots = RootDatum(n).negative_roots
    states = {(0,) * n: 1}
    for (i, j) in roots:
        step = i - j
        nxt = {}
        for state, count in states.items():
            used = -sum(k * s for k, s in enumerate(state, start=1))
            for m in range(0, (height - used) // step + 1):
                new = list(state)
                new[j - 1] += m
                new[i - 1] -= m
                key = tuple(new)
                nxt[key] = nxt.get(key, 0) + count
        states = nxt
    return states.get(tuple(offset), 0)


@dataclass
class IrreducibilityVerdict:
    irreducible: bool
    violations: list  # (root, value scalar, recognized positive integer)

    def to_json(self):
        return {
            "irreducible": self.irreducible,
            "violations": [
                {
                    "root": list(root),
                    "value": value.to_json(),
                    "integer_to_precision": m,
                }
                for root, value, m in self.violations
            ],
        }


def is_irreducible(chi: Character, n: int, bound: int = 10**6) -> IrreducibilityVerdict:
    """Bernstein-Gelfand test: irreducible iff for every negative root
    alpha = (i,j) the value -mu(H_alpha) + (i-j) = c_i - c_j + (i-j) is not
    a positive rational integer.

    Membership is decided at full working precision via the balanced lift
    (reported as "integer to working precision" in the violations).
    """
    violations = []
    for (i, j) in RootDatum(n).negative_roots:
        value = chi.component(i) - chi.component(j) + PadicScalar.from_int(
            i - j, chi.p, _prec_of(chi)
        )
        m = value.as_integer(bound)
        if m is not None and m >= 1:
            violations.append(((i, j), value, m))
    return IrreducibilityVerdict(not violations, violations)


def _prec_of(chi):
    for c in chi.c:
        if not c.is_exact_zero():
            return c.prec
    return 8


# -- the Verma-image rank oracle ---------------------------------------------


def _matrix_rank(vectors, p, window):
    """Rank of a family of sparse vectors over K at fixed absolute window,
    by valuation-pivoted elimination (global minimal-valuation pivot keeps
    every elimination factor integral).  Returns (rank, certified_digits)."""
    m = p**window
    work = []
    for v in vectors:
        row = {e: r % m for e, r in v.items() if r % m}
        if row:
            work.append(row)
    rank = 0
    certified = window
    active = list(range(len(work)))
    while True:
        best = None
        for idx in active:
            for e, r in work[idx].items():
                v = vp_int(r, p)
                if best is None or v < best[2] or (v == best[2] and (e, idx) < (best[1], best[0])):
                    best = (idx, e, v)
        if best is None:
            break
        idx, piv, pv = best
        rank += 1
        certified = min(certified, window - pv)
        row = work[idx]
        inv = pow(row[piv] // p**pv, -1, m)
        active.remove(idx)
        for other in active:
            r = work[other].get(piv)
            if not r:
                continue
            factor = (r // p**pv) * inv % m
            work[other] = {
                e: (work[other].get(e, 0) - factor * row.get(e, 0)) % m
                for e in set(work[other]) | set(row)
            }
            work[other] = {e: r2 for e, r2 in work[other].items() if r2}
        active = [i for i in active if work[i]]
    return rank, certified


class _WeightSpace:
    """Reached vectors inside one weight space, rank-pruned."""

    def __init__(self, p):
        self.p = p
        self.vectors = []
        self.window = None
        self.rank = 0
        self.certified = None

    def try_add(self, vec, window):
        """Keep the vector only if it grows the rank.  Returns True if it did."""
        self.window = window if self.window is None else min(self.window, window)
        rank, certified = _matrix_rank(self.vectors + [vec], self.p, self.window)
        if rank > self.rank:
            self.vectors.append(vec)
            self.rank = rank
            self.certified = certified
            return True
        return False


def _vector_to_int_rows(series: TateSeries):
    window = series.prec + series.shift
    assert series.shift == 0 or True
    out = {}
    for key, rep in series.terms.items():
        out[series.vars.unpack(key)] = rep
    return out, series.prec


def phi_weight_rank(
    chi: Character, n: int, trunc: int, max_levels: int | None = None, degree_budget: int | None = None
) -> dict:
    """Per-weight comparison of the reached span of U(g).1 against the
    monomial count and the Kostant multiplicity.

    Vectors are generated breadth-first over {Y_alpha, T_k, X_alpha}; a
    produced vector is kept only when it grows the rank of its weight
    space, and the walk stops when a whole level adds nothing (or at the
    hard level cap).  A weight space is ``complete`` when every Kostant
    solution is visible at degree <= trunc.

    Every vector is an exact polynomial: a raising generator adds up to
    n - 1 to the total degree, and is applied only when the output still
    fits under the degree budget (default 2*trunc + 2).  Without this,
    clipped high-degree terms fold back through the lowering operators and
    manufacture spurious weight-space vectors.
    """
    _require_analytic(chi)
    p = chi.p
    prec = _prec_of(chi)
    rd = RootDatum(n)
    roots = rd.negative_roots
    vars = unipotent_variables(n)
    budget = degree_budget if degree_budget is not None else 2 * trunc + 2
    raise_bound = n - 1

    monomials_by_offset: dict = {}
    for exps in _monomials_up_to(len(roots), trunc):
        off = monomial_offset(exps, n)
        monomials_by_offset.setdefault(off, []).append(exps)

    spaces = {off: _WeightSpace(p) for off in monomials_by_offset}

    start = PSVector(TateSeries.constant(vars, PadicScalar.one(p, prec), budget), chi, n)
    frontier = [(start, (0,) * n, 0)]
    zero_off = (0,) * n
    vec0, w0 = _vector_to_int_rows(start.series)
    spaces[zero_off].try_add(vec0, w0)

    generators = (
        [("Y", i, j) for (i, j) in roots]
        + [("T", k, k) for k in range(1, n + 1)]
        + [("X", j, i) for (i, j) in roots]  # positive root (j, i) with j < i
    )
    cap = max_levels if max_levels is not None else 2 * trunc + 6
    for _ in range(cap):
        new_frontier = []
        for vec, off, deg in frontier:
            for kind, i, j in generators:
                if kind == "Y":
                    img = lie_lower(i, j, vec)
                    new_off = _offset_plus_alpha(off, i, j)
                elif kind == "T":
                    img = lie_diag(i, vec)
                    new_off = off
                else:
                    if deg + raise_bound > budget:
                        continue
                    img = lie_upper(i, j, vec)
                    new_off = _offset_plus_alpha(off, i, j)
                if img.series.is_zero():
                    continue
                new_deg = max(VariableSet.degree_of(k) for k in img.series.terms)
                if kind == "X" and new_deg > deg + raise_bound:
                    raise DomainError("raising operator exceeded its degree bound")
                if new_off not in spaces:
                    if max(abs(x) for x in new_off) > budget * n:
                        continue
                    spaces[new_off] = _WeightSpace(p)
                rows, window = _vector_to_int_rows(img.series)
                if spaces[new_off].try_add(rows, window):
                    new_frontier.append((img, new_off, new_deg))
        if not new_frontier:
            break
        frontier = new_frontier

    weights = []
    for off, monos in sorted(monomials_by_offset.items()):
        dim_k = kostant_multiplicity(off, chi, n)
        space = spaces[off]
        weights.append(
            {
                "offset": off,
                "weight": minus_mu_shifted(chi, off),
                "dim_kostant": dim_k,
                "monomial_count": len(monos),
                "reached_rank": space.rank,
                "complete": dim_k == len(monos),
                "certified_digits": space.certified,
            }
        )
    deficient = [
        w for w in weights if w["complete"] and w["reached_rank"] < w["monomial_count"]
    ]
    return {
        "n": n,
        "truncation": trunc,
        "weights": weights,
        "saturated": not deficient,
        "deficient_offsets": [w["offset"] for w in deficient],
    }


def _offset_plus_alpha(off, i, j):
    """Offset change for a generator in the root direction e_i - e_j: both
    Y_(i,j) (i > j, which lowers the exponent at (i,j)) and lie_upper(i,j)
    (i < j, which raises degree along e_i - e_j) move the offset by
    +1 at i, -1 at j."""
    out = list(off)
    out[i - 1] += 1
    out[j - 1] -= 1
    return tuple(out)


def _monomials_up_to(nvars, maxdeg):
    if nvars == 0:
        yield ()
        return
    for head in range(maxdeg + 1):
        for rest in _monomials_up_to(nvars - 1, maxdeg - head):
            yield (head,) + rest


def congruence_filter(f: PSVector, k: int, s: int) -> PSVector:
    """Keep the terms whose exponent r satisfies
    p^s | sum_{delta=(i,k)} r_delta - sum_{beta=(k,j)} r_beta.

    This is the limit of the iterated averaging operators used to isolate
    the constant term; it is an exact linear projection here."""
    if s < 1:
        raise DomainError("need s >= 1")
    series = f.series
    n = f.n
    modulus = series.p**s
    out = {}
    for exps, c in series.terms_dict().items():
        r = _unipotent_exps(exps, series.vars, n)
        total = 0
        roots = RootDatum(n).negative_roots
        for (i, j), e in zip(roots, r):
            if j == k:
                total += e
            if i == k:
                total -= e
        if total % modulus == 0:
            out[exps] = c
    if not out:
        return f.with_series(TateSeries.zero(series.vars, series.p, series.trunc, series.prec, ring=series.ring))
    return f.with_series(TateSeries.from_terms(series.vars, out, series.trunc, ring=series.ring)._flag(series.truncated))
