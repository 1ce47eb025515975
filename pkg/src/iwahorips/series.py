"""Truncated multivariate Tate algebra over exact p-adic coefficients.

A TateSeries is a polynomial truncated by *joint* total degree D across all
variables, with coefficients known modulo a tracked power of p.  Exponent
vectors are packed into single integers (8 bits per variable, total degree
in the top field) so that multiplication is integer convolution with an
overflow-free degree check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .padic import (
    INF,
    DivergenceError,
    DomainError,
    PadicScalar,
    PrecisionExhausted,
    UnramifiedField,
    UnramifiedScalar,
    analyticity_bound,
    vp_int,
)

_BITS = 8
_MAXVARS = 24
_DEG_SHIFT = _BITS * _MAXVARS
_MAX_EXP = (1 << _BITS) // 2 - 1  # exponent sums must not carry between fields


class UnsoundSubstitution(DomainError):
    """An image series violates the domain constraint of the variable."""


class NotInvertible(DomainError):
    """invert_one_minus called outside its nilpotence domain."""


class Role(enum.Enum):
    """Congruence domain tags for variables.

    UNIPOTENT   coordinates a[i,j] of the lower unipotent part, over Z_p;
    LOWER_PARAM parameter of a lower one-parameter factor, over Z_p;
    UPPER_PARAM parameter of an upper factor, over pZ_p;
    DIAG_PARAM  xi in t = 1 + p*xi for a diagonal factor, over Z_p;
    COORD       restriction-of-scalars coordinate, over Z_p.
    """

    UNIPOTENT = "a"
    LOWER_PARAM = "y"
    UPPER_PARAM = "y+"
    DIAG_PARAM = "xi"
    COORD = "x"

    @property
    def min_val(self) -> int:
        return 1 if self is Role.UPPER_PARAM else 0


@dataclass(frozen=True)
class Variable:
    name: str
    role: Role
    scale: int = 0  # recorded p-power for rescaled Weyl-orbit coordinates

    def to_json(self):
        d = {"name": self.name, "role": self.role.name.lower()}
        if self.scale:
            d["scale"] = self.scale
        return d

    @classmethod
    def from_json(cls, obj):
        return cls(obj["name"], Role[obj["role"].upper()], obj.get("scale", 0))


class VariableSet:
    """Ordered, named variable list with packed-exponent helpers."""

    def __init__(self, variables):
        self.variables = tuple(variables)
        if len(self.variables) > _MAXVARS:
            raise DomainError("at most %d variables are supported" % _MAXVARS)
        self.names = tuple(v.name for v in self.variables)
        if len(set(self.names)) != len(self.names):
            raise DomainError("variable names must be unique")
        self.index = {v.name: i for i, v in enumerate(self.variables)}

    def __len__(self):
        return len(self.variables)

    def __eq__(self, other):
        return isinstance(other, VariableSet) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __contains__(self, name):
        return name in self.index

    def role(self, name) -> Role:
        return self.variables[self.index[name]].role

    def pack(self, exps) -> int:
        key = 0
        deg = 0
        for i, e in enumerate(exps):
            if e:
                if e > _MAX_EXP:
                    raise DomainError("exponent %d exceeds packing capacity" % e)
                key |= e << (_BITS * i)
                deg += e
        return key | (deg << _DEG_SHIFT)

    def unpack(self, key) -> tuple:
        return tuple((key >> (_BITS * i)) & ((1 << _BITS) - 1) for i in range(len(self.variables)))

    @staticmethod
    def degree_of(key) -> int:
        return key >> _DEG_SHIFT

    def unit_key(self, name) -> int:
        return (1 << (_BITS * self.index[name])) | (1 << _DEG_SHIFT)

    def exponent_in(self, key, name) -> int:
        return (key >> (_BITS * self.index[name])) & ((1 << _BITS) - 1)

    def extended(self, extra) -> "VariableSet":
        """Variables appended at the end keep existing packed keys valid."""
        return VariableSet(self.variables + tuple(extra))

    def to_json(self):
        return [v.to_json() for v in self.variables]

    @classmethod
    def from_json(cls, obj):
        return cls(Variable.from_json(v) for v in obj)

    def __repr__(self):
        return "VariableSet(%s)" % (", ".join(self.names),)


def unipotent_variables(n: int) -> VariableSet:
    """The d = n(n-1)/2 coordinates a[i,j], i > j, in lexicographic order."""
    return VariableSet(
        Variable("a[%d,%d]" % (i, j), Role.UNIPOTENT) for i in range(2, n + 1) for j in range(1, i)
    )


def unipotent_name(i: int, j: int, slot=None) -> str:
    base = "a[%d,%d]" % (i, j)
    return base if slot is None else base + "@%d" % slot


class SeriesValue:
    """Result of evaluate(): the exact value of the stored polynomial plus
    the valuation beyond which the discarded tail can contribute."""

    __slots__ = ("value", "tail_valuation")

    def __init__(self, value, tail_valuation):
        self.value = value
        self.tail_valuation = tail_valuation

    def __iter__(self):
        return iter((self.value, self.tail_valuation))


class TateSeries:
    """Sparse truncated power series with p-adic coefficients.

    ``prec`` is the absolute certification: every coefficient is known
    modulo p^prec.  ``shift`` >= 0 supports coefficients of negative
    valuation: stored representatives are value * p^shift modulo
    p^(prec + shift).  ``ring`` is None for Q_p coefficients or an
    UnramifiedField; representatives are ints resp. int tuples.
    """

    __slots__ = ("vars", "p", "trunc", "prec", "shift", "terms", "truncated", "ring")

    def __init__(self, vars, p, trunc, prec, terms=None, shift=0, truncated=False, ring=None):
        self.vars = vars
        self.p = p
        self.trunc = trunc
        self.prec = prec
        self.shift = shift
        self.terms = terms if terms is not None else {}
        self.truncated = truncated
        self.ring = ring

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, vars, p, trunc, prec, ring=None):
        return cls(vars, p, trunc, prec, {}, ring=ring)

    @classmethod
    def constant(cls, vars, scalar, trunc, prec=None):
        return cls.from_terms(vars, {(0,) * len(vars): scalar}, trunc, prec)

    @classmethod
    def variable(cls, vars, name, p, trunc, prec, ring=None):
        one = (1,) if ring is None else tuple([1] + [0] * (ring.n - 1))
        return cls(vars, p, trunc, prec, {vars.unit_key(name): one if ring else 1}, ring=ring)

    @classmethod
    def from_terms(cls, vars, coeffs, trunc, prec=None, ring=None):
        """Build from a map exponent-tuple -> scalar (PadicScalar or
        UnramifiedScalar); precision defaults to the weakest coefficient."""
        items = [(e, c) for e, c in coeffs.items() if not c.is_zero()]
        if not items:
            p = next(iter(coeffs.values())).p if coeffs else None
            if p is None:
                raise DomainError("cannot infer p from an empty term map")
            return cls.zero(vars, p, trunc, prec if prec is not None else 0, ring=ring)
        p = items[0][1].p
        if ring is None and any(isinstance(c, UnramifiedScalar) for _, c in items):
            ring = next(c.field for _, c in items if isinstance(c, UnramifiedScalar))
        minv = min(0, min(int(c.val()) for _, c in items))
        shift = -minv
        window = min(int(c.abs_prec()) for _, c in items)
        if prec is not None:
            window = min(window, prec)
        terms = {}
        for e, c in items:
            if sum(e) > trunc:
                raise DomainError("term of degree %d exceeds truncation %d" % (sum(e), trunc))
            key = vars.pack(e)
            if ring is None:
                rep = c.unit * p ** (c.v + shift) % p ** (window + shift)
            else:
                cc = c if isinstance(c, UnramifiedScalar) else ring.embed(c)
                rep = cc.to_window(window + shift, shift)
            terms[key] = rep
        out = cls(vars, p, trunc, window, terms, shift=shift, ring=ring)
        out._normalize()
        return out

    # -- bookkeeping ------------------------------------------------------

    def _rep_is_zero(self, rep):
        return rep == 0 if self.ring is None else all(x == 0 for x in rep)

    def _rep_val(self, rep):
        if self.ring is None:
            return vp_int(rep, self.p)
        return min(vp_int(x, self.p) for x in rep if x)

    def _normalize(self):
        dead = [k for k, r in self.terms.items() if self._rep_is_zero(r)]
        for k in dead:
            del self.terms[k]
        if self.shift > 0 and self.terms:
            k = min(self._rep_val(r) for r in self.terms.values())
            k = min(k, self.shift)
            if k > 0:
                q = self.p**k
                if self.ring is None:
                    self.terms = {key: r // q for key, r in self.terms.items()}
                else:
                    self.terms = {key: tuple(x // q for x in r) for key, r in self.terms.items()}
                self.shift -= k
        if self.shift == 0 and not self.terms:
            self.shift = 0
        return self

    def is_zero(self) -> bool:
        return not self.terms

    def min_val(self):
        """Minimum coefficient valuation (the Gauss-norm exponent)."""
        if not self.terms:
            return INF
        return min(self._rep_val(r) for r in self.terms.values()) - self.shift

    def min_degree(self):
        if not self.terms:
            return INF
        return min(VariableSet.degree_of(k) for k in self.terms)

    def coeff(self, exps):
        """Coefficient at an exponent tuple, as a scalar object."""
        key = self.vars.pack(exps)
        rep = self.terms.get(key)
        window = self.prec + self.shift
        if rep is None or self._rep_is_zero(rep):
            if self.ring is None:
                return PadicScalar.inexact_zero(self.p, self.prec)
            return UnramifiedScalar.from_window(self.ring, (0,) * self.ring.n, window, self.shift)
        if self.ring is None:
            v = vp_int(rep, self.p)
            return PadicScalar(self.p, v - self.shift, (rep // self.p**v) % self.p ** (window - v), window - v)
        return UnramifiedScalar.from_window(self.ring, rep, window, self.shift)

    def terms_dict(self):
        return {self.vars.unpack(k): self.coeff(self.vars.unpack(k)) for k in self.terms}

    def support(self):
        return sorted(self.vars.unpack(k) for k in self.terms)

    # -- ring operations ---------------------------------------------------

    def _check_compatible(self, other):
        if self.p != other.p:
            raise DomainError("mixed primes")
        if self.vars != other.vars:
            raise DomainError("variable-set mismatch: %r vs %r" % (self.vars, other.vars))
        if self.trunc != other.trunc:
            raise DomainError("mixed truncation degrees %d and %d" % (self.trunc, other.trunc))
        if (self.ring is None) != (other.ring is None):
            raise DomainError("mixed coefficient rings")

    def __add__(self, other):
        if not isinstance(other, TateSeries):
            return NotImplemented
        self._check_compatible(other)
        prec = min(self.prec, other.prec)
        shift = max(self.shift, other.shift)
        m = self.p ** (prec + shift)
        qa = self.p ** (shift - self.shift)
        qb = self.p ** (shift - other.shift)
        out = {}
        if self.ring is None:
            for k, r in self.terms.items():
                out[k] = r * qa % m
            for k, r in other.terms.items():
                out[k] = (out.get(k, 0) + r * qb) % m
        else:
            for k, r in self.terms.items():
                out[k] = tuple(x * qa % m for x in r)
            for k, r in other.terms.items():
                prev = out.get(k)
                scaled = tuple(x * qb for x in r)
                out[k] = tuple((a + b) % m for a, b in zip(prev, scaled)) if prev else tuple(x % m for x in scaled)
        res = TateSeries(
            self.vars, self.p, self.trunc, prec, out, shift=shift,
            truncated=self.truncated or other.truncated, ring=self.ring,
        )
        return res._normalize()

    def __neg__(self):
        m = self.p ** (self.prec + self.shift)
        if self.ring is None:
            terms = {k: (-r) % m for k, r in self.terms.items()}
        else:
            terms = {k: tuple((-x) % m for x in r) for k, r in self.terms.items()}
        return TateSeries(self.vars, self.p, self.trunc, self.prec, terms, self.shift, self.truncated, self.ring)

    def __sub__(self, other):
        if not isinstance(other, TateSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (PadicScalar, UnramifiedScalar, int)):
            return self.scale(other)
        if not isinstance(other, TateSeries):
            return NotImplemented
        self._check_compatible(other)
        if not self.terms or not other.terms:
            return TateSeries.zero(
                self.vars, self.p, self.trunc, min(self.prec, other.prec), ring=self.ring
            )._flag(self.truncated or other.truncated)
        vmin_s = self.min_val()
        vmin_o = other.min_val()
        prec = min(self.prec + vmin_o, other.prec + vmin_s)
        if prec <= 0:
            raise PrecisionExhausted("series product lost all certified digits")
        shift = self.shift + other.shift
        m = self.p ** (prec + shift)
        cap = (self.trunc + 1) << _DEG_SHIFT
        out = {}
        truncated = self.truncated or other.truncated
        if self.ring is None:
            for k1, r1 in self.terms.items():
                for k2, r2 in other.terms.items():
                    k = k1 + k2
                    if k >= cap:
                        truncated = True
                        continue
                    out[k] = (out.get(k, 0) + r1 * r2) % m
        else:
            mul_t = self.ring.mul_t
            window = prec + shift
            for k1, r1 in self.terms.items():
                for k2, r2 in other.terms.items():
                    k = k1 + k2
                    if k >= cap:
                        truncated = True
                        continue
                    prod = mul_t(r1, r2, window)
                    prev = out.get(k)
                    out[k] = tuple((a + b) % m for a, b in zip(prev, prod)) if prev else prod
        res = TateSeries(self.vars, self.p, self.trunc, prec, out, shift=shift, truncated=truncated, ring=self.ring)
        return res._normalize()

    def _flag(self, truncated):
        self.truncated = self.truncated or truncated
        return self

    def scale(self, c):
        """Multiply by a scalar."""
        if isinstance(c, int):
            c = PadicScalar.from_int(c, self.p, self.prec + max(0, -self.min_val() if self.terms else 0) + 1)
        if c.is_zero():
            # an inexact zero only certifies O(p^bound) times each coefficient
            prec = self.prec
            if not c.is_exact_zero() and self.terms:
                prec = min(prec, int(c.v) + max(0, int(self.min_val())))
            return TateSeries.zero(self.vars, self.p, self.trunc, prec, ring=self.ring)._flag(self.truncated)
        if self.ring is not None and isinstance(c, PadicScalar):
            c = self.ring.embed(c)
        if self.ring is None and isinstance(c, UnramifiedScalar):
            return self.embed_coefficients(c.field).scale(c)
        cv = int(c.val())
        prec = min(self.prec + cv, int(c.abs_prec()) + (self.min_val() if self.terms else 0))
        if self.terms and prec <= 0:
            raise PrecisionExhausted("scalar multiple lost all certified digits")
        shift = self.shift + max(0, -cv)
        window = prec + shift
        m = self.p**window
        if self.ring is None:
            crep = c.unit * self.p ** (c.v + max(0, -cv)) % m
            terms = {k: r * self.p ** (shift - self.shift - max(0, -cv)) * crep % m for k, r in self.terms.items()}
        else:
            crep = c.to_window(window, max(0, -cv))
            q = self.p ** (shift - self.shift - max(0, -cv))
            terms = {
                k: self.ring.mul_t(tuple(x * q for x in r), crep, window) for k, r in self.terms.items()
            }
        res = TateSeries(self.vars, self.p, self.trunc, prec, terms, shift=shift, truncated=self.truncated, ring=self.ring)
        return res._normalize()

    def __pow__(self, e: int):
        if e < 0:
            raise DomainError("negative series powers are not defined")
        out = TateSeries.constant(self.vars, PadicScalar.one(self.p, self.prec), self.trunc)
        if self.ring is not None:
            out = out.embed_coefficients(self.ring)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    # -- reshaping ---------------------------------------------------------

    def lift(self, new_vars: VariableSet) -> "TateSeries":
        """Reinterpret over an extended variable set (existing vars must be a prefix)."""
        if new_vars.variables[: len(self.vars)] != self.vars.variables:
            raise DomainError("lift target must extend the current variables")
        return TateSeries(new_vars, self.p, self.trunc, self.prec, dict(self.terms), self.shift, self.truncated, self.ring)

    def reindex(self, target_vars: VariableSet, name_map=None) -> "TateSeries":
        """Relabel variables (name_map: old name -> new name) into target_vars."""
        name_map = name_map or {}
        out = {}
        for k in self.terms:
            exps = self.vars.unpack(k)
            new = [0] * len(target_vars)
            for i, e in enumerate(exps):
                if e:
                    name = name_map.get(self.vars.names[i], self.vars.names[i])
                    new[target_vars.index[name]] = e
            out[target_vars.pack(tuple(new))] = self.terms[k]
        return TateSeries(target_vars, self.p, self.trunc, self.prec, out, self.shift, self.truncated, self.ring)

    def restrict_vars(self, target_vars: VariableSet) -> "TateSeries":
        """Forget unused variables (all absent from the support)."""
        return self.reindex(target_vars)

    def map_coefficients(self, fn) -> "TateSeries":
        if self.is_zero():
            return self
        return TateSeries.from_terms(
            self.vars, {e: fn(c) for e, c in self.terms_dict().items()}, self.trunc, ring=self.ring
        )._flag(self.truncated)

    def embed_coefficients(self, field: UnramifiedField) -> "TateSeries":
        """Q_p coefficients embedded into the unramified field."""
        if self.ring is not None:
            if self.ring.modulus != field.modulus:
                raise DomainError("cannot embed into a different field")
            return self
        window = self.prec + self.shift
        terms = {k: tuple([r] + [0] * (field.n - 1)) for k, r in self.terms.items()}
        return TateSeries(self.vars, self.p, self.trunc, self.prec, terms, self.shift, self.truncated, field)

    def frobenius_twist(self, power: int = 1) -> "TateSeries":
        """Frobenius on coefficients only, variables fixed."""
        if self.ring is None:
            return self
        window = self.prec + self.shift
        terms = {k: self.ring.frobenius_t(r, window, power) for k, r in self.terms.items()}
        return TateSeries(self.vars, self.p, self.trunc, self.prec, terms, self.shift, self.truncated, self.ring)

    def rescale_variable(self, name: str, k: int = 1) -> "TateSeries":
        """The substitution v -> p^k v: coefficient of v^e gains p^(k e).

        With k = 1 this realizes the normalized view y = p*eta of an upper
        parameter; k = -1 undoes it.  Negative k may push coefficients to
        negative valuation (tracked by the series shift).
        """
        if self.is_zero():
            return self
        out = {}
        for e, c in self.terms_dict().items():
            ev = self.vars.exponent_in(self.vars.pack(e), name)
            out[e] = c * PadicScalar(self.p, k * ev, 1, max(1, self.prec + abs(k * ev))) if ev else c
        return TateSeries.from_terms(self.vars, out, self.trunc, ring=self.ring)._flag(self.truncated)

    # -- spec operations ----------------------------------------------------

    def gauss_norm(self) -> Fraction:
        """sup |c_nu| as p^(-min valuation); 0 for the zero series."""
        if not self.terms:
            return Fraction(0)
        m = self.min_val()
        return Fraction(self.p) ** (-m)

    def truncate_deg(self, n: int) -> "TateSeries":
        if not 0 <= n <= self.trunc:
            raise DomainError("truncation degree %d outside [0, %d]" % (n, self.trunc))
        cap = (n + 1) << _DEG_SHIFT
        terms = {k: r for k, r in self.terms.items() if k < cap}
        return TateSeries(self.vars, self.p, self.trunc, self.prec, terms, self.shift, self.truncated, self.ring)

    def retruncate(self, n: int) -> "TateSeries":
        """Change the truncation cap; dropped terms flag the result."""
        cap = (n + 1) << _DEG_SHIFT
        terms = {k: r for k, r in self.terms.items() if k < cap}
        dropped = len(terms) < len(self.terms)
        return TateSeries(self.vars, self.p, n, self.prec, terms, self.shift, self.truncated or dropped, self.ring)

    def substitute(self, images: dict) -> "TateSeries":
        """Truncated formal composition: variables not in ``images`` must
        exist (same name) in the common target variable set."""
        if not images:
            raise DomainError("substitute needs at least one image")
        target = next(iter(images.values())).vars
        ring = next(iter(images.values())).ring
        for name, img in images.items():
            if name not in self.vars:
                raise DomainError("unknown variable %r" % name)
            if img.vars != target:
                raise DomainError("images disagree on the target variable set")
            self._check_image_domain(name, img)
        base = TateSeries.zero(target, self.p, self.trunc, self.prec, ring=ring if ring else self.ring)
        pow_cache = {}

        def image_power(name, e):
            got = pow_cache.get((name, e))
            if got is not None:
                return got
            if e == 1:
                out = images[name] if name in images else TateSeries.variable(
                    target, name, self.p, self.trunc, self.prec, ring=base.ring
                )
            else:
                half = image_power(name, e // 2)
                out = half * half
                if e % 2:
                    out = out * image_power(name, 1)
            pow_cache[(name, e)] = out
            return out

        acc = base
        for exps, c in self.terms_dict().items():
            term = None
            for i, e in enumerate(exps):
                if e:
                    factor = image_power(self.vars.names[i], e)
                    term = factor if term is None else term * factor
            if term is None:
                term = TateSeries.constant(target, PadicScalar.one(self.p, self.prec), self.trunc)
                if base.ring is not None:
                    term = term.embed_coefficients(base.ring)
            acc = acc + term.scale(c)
        return acc._flag(self.truncated)

    def _check_image_domain(self, name, img):
        """The image's constant term must sit in the variable's domain:
        val >= 1 for upper parameters, Z_p otherwise (zero always passes)."""
        role = self.vars.role(name)
        const = img.coeff((0,) * len(img.vars))
        if const.is_zero():
            return
        if const.val() >= role.min_val:
            return
        raise UnsoundSubstitution(
            "image for %r (role %s) has constant term of valuation %s" % (name, role.name, const.val())
        )

    def specialize(self, name: str, value) -> "TateSeries":
        """Partial evaluation of one variable at a scalar in its domain."""
        role = self.vars.role(name)
        if not value.is_zero() and value.val() < role.min_val:
            raise DomainError("value of valuation %s outside the %s domain" % (value.val(), role.name))
        powers = {0: None}
        out = {}
        for exps, c in self.terms_dict().items():
            e = exps[self.vars.index[name]]
            rest = list(exps)
            rest[self.vars.index[name]] = 0
            rest = tuple(rest)
            if e:
                if e not in powers:
                    powers[e] = value**e
                c = c * powers[e]
            prev = out.get(rest)
            out[rest] = c if prev is None else prev + c
        res = TateSeries.from_terms(self.vars, out, self.trunc, ring=self.ring) if out else TateSeries.zero(
            self.vars, self.p, self.trunc, self.prec, ring=self.ring
        )
        return res._flag(self.truncated)

    def evaluate(self, point: dict) -> SeriesValue:
        """Exact evaluation of the stored polynomial at scalar coordinates.

        Raises DomainError when a coordinate violates its role's congruence
        domain.  The reported tail valuation bounds the contribution of the
        discarded (degree > D) terms: (D+1) * min input valuation when all
        inputs have valuation >= 1, infinity when nothing was truncated.
        """
        minval = INF
        for name in self.vars.names:
            if name not in point:
                raise DomainError("missing coordinate %r" % name)
            v = point[name]
            role = self.vars.role(name)
            if not v.is_zero() and v.val() < role.min_val:
                raise DomainError("coordinate %r of valuation %s outside its domain" % (name, v.val()))
            minval = min(minval, v.val())
        acc = None
        for exps, c in self.terms_dict().items():
            term = c
            for i, e in enumerate(exps):
                if e:
                    term = term * point[self.vars.names[i]] ** e
            acc = term if acc is None else acc + term
        if acc is None:
            acc = PadicScalar.zero(self.p, self.prec)
            if self.ring is not None:
                acc = self.ring.embed(acc)
        if not self.truncated:
            tail = INF
        elif minval >= 1:
            tail = (self.trunc + 1) * minval
        else:
            tail = 0
        return SeriesValue(acc, tail)

    def invert_one_minus(self) -> "TateSeries":
        """(1 - u)^(-1) as the truncated geometric series, u = self."""
        const = self.coeff((0,) * len(self.vars))
        if not const.is_zero() and self.min_val() < 1:
            raise NotInvertible(
                "needs zero constant term or topologically nilpotent coefficients"
            )
        one = TateSeries.constant(self.vars, PadicScalar.one(self.p, self.prec), self.trunc)
        if self.ring is not None:
            one = one.embed_coefficients(self.ring)
        acc = one
        power = one
        guard = 2 * (self.trunc + self.prec + self.shift) + 4
        for q in range(1, guard + 1):
            power = power * self
            if power.is_zero():
                break
            acc = acc + power
        else:
            raise PrecisionExhausted("geometric series failed to terminate")
        return acc

    def char_power(self, c, e: int = 1) -> "TateSeries":
        """(1 + u)^c = sum binom(c, q) u^q, u = self, truncated.

        Requires the analyticity bound on c, and u in the unit-series
        domain: every coefficient of valuation >= 1, or zero constant term
        whose linear part is p-divisible (by coefficient valuation or by
        the variable's congruence role).
        """
        if c.val() <= analyticity_bound(self.p, e):
            raise DivergenceError("exponent valuation %s below the analytic bound" % c.val())
        self._check_unit_series()
        one = TateSeries.constant(self.vars, PadicScalar.one(self.p, self.prec), self.trunc)
        if self.ring is not None:
            one = one.embed_coefficients(self.ring)
        elif isinstance(c, UnramifiedScalar):
            one = one.embed_coefficients(c.field)
        acc = one
        power = one
        binom = c.ring_one() if hasattr(c, "ring_one") else PadicScalar.one(self.p, max(c.prec, self.prec))
        guard = 2 * (self.trunc + self.prec + self.shift) + 4
        for q in range(1, guard + 1):
            power = power * self
            if power.is_zero():
                break
            binom = binom * (c - (q - 1) * (binom.ring_one() if hasattr(binom, "ring_one") else PadicScalar.one(self.p, c.prec))) / q
            term = power.scale(binom)
            acc = acc + term
        else:
            raise PrecisionExhausted("binomial series failed to terminate")
        return acc

    def _check_unit_series(self):
        if self.is_zero():
            return
        if self.min_val() >= 1:
            return
        const = self.coeff((0,) * len(self.vars))
        if not const.is_zero():
            raise DivergenceError("unit-series precondition: nonzero unit constant term")
        one_deg = 1 << _DEG_SHIFT
        two_deg = 2 << _DEG_SHIFT
        for k in self.terms:
            if one_deg <= k < two_deg:
                v = self._rep_val(self.terms[k]) - self.shift
                if v >= 1:
                    continue
                i = next(i for i in range(len(self.vars)) if (k >> (_BITS * i)) & 255)
                var = self.vars.variables[i]
                if var.role.min_val + var.scale >= 1:
                    continue
                raise DivergenceError(
                    "unit-series precondition: linear term in %r is not p-divisible" % var.name
                )

    def decay_profile(self, name: str):
        """Per-degree minimum coefficient valuation along one variable."""
        if name not in self.vars:
            raise DomainError("unknown grading variable %r" % name)
        rows = {}
        for k, r in self.terms.items():
            e = self.vars.exponent_in(k, name)
            v = self._rep_val(r) - self.shift
            if e not in rows or v < rows[e]:
                rows[e] = v
        return rows

    # -- comparison, display, serialization -------------------------------

    def agrees(self, other, abs_digits=None) -> bool:
        d = self - other
        if not d.terms:
            return True
        if abs_digits is None:
            return False
        return d.min_val() >= abs_digits

    def __repr__(self):
        if not self.terms:
            return "TateSeries(0; D=%d)" % self.trunc
        bits = []
        for exps in self.support()[:12]:
            c = self.coeff(exps)
            mono = "*".join(
                "%s^%d" % (n, e) if e > 1 else n for n, e in zip(self.vars.names, exps) if e
            )
            bits.append("(%r)%s" % (c, "*" + mono if mono else ""))
        more = "" if len(self.terms) <= 12 else " + ... (%d terms)" % len(self.terms)
        return " + ".join(bits) + more

    def to_json(self) -> dict:
        terms = []
        for exps in self.support():
            c = self.coeff(exps)
            if isinstance(c, UnramifiedScalar):
                cj = c.to_json()
            else:
                cj = {"valuation": None if c.v == INF else c.v, "unit": str(c.unit)}
            terms.append({"exp": list(exps), "coeff": cj})
        return {
            "p": self.p,
            "precision": self.prec,
            "truncation": self.trunc,
            "variables": self.vars.to_json(),
            "terms": terms,
            "truncated": self.truncated,
        }

    @classmethod
    def from_json(cls, obj, ring=None) -> "TateSeries":
        vars = VariableSet.from_json(obj["variables"])
        p = int(obj["p"])
        prec = int(obj["precision"])
        coeffs = {}
        for t in obj["terms"]:
            cj = t["coeff"]
            if "coords" in cj:
                if ring is None:
                    ring = UnramifiedField(p, int(cj["degree"]), prec)
                c = UnramifiedScalar(ring, tuple(PadicScalar.from_json(x) for x in cj["coords"]))
            else:
                v = cj["valuation"]
                c = PadicScalar(p, INF if v is None else int(v), int(cj["unit"]), prec)
            coeffs[tuple(t["exp"])] = c
        if not coeffs:
            return cls.zero(vars, p, int(obj["truncation"]), prec, ring=ring)
        out = cls.from_terms(vars, coeffs, int(obj["truncation"]), prec=prec, ring=ring)
        out.truncated = bool(obj.get("truncated", False))
        return out


# -- module-level spec operation names ---------------------------------------


def gauss_norm(f: TateSeries) -> Fraction:
    return f.gauss_norm()


def substitute(f: TateSeries, images: dict) -> TateSeries:
    return f.substitute(images)


def invert_one_minus(u: TateSeries) -> TateSeries:
    return u.invert_one_minus()


def char_power(u: TateSeries, c, e: int = 1) -> TateSeries:
    return u.char_power(c, e)


def truncate_deg(f: TateSeries, n: int) -> TateSeries:
    return f.truncate_deg(n)


def evaluate(f: TateSeries, point: dict) -> SeriesValue:
    return f.evaluate(point)
