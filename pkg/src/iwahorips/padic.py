"""Exact p-adic scalar arithmetic at fixed precision.

Scalars are elements of Q_p, or of an unramified extension L of degree N,
represented exactly modulo a tracked power of p.  A nonzero scalar is
p^v * u where u is a unit known modulo p^prec; every operation reports the
guaranteed-correct digits of its result.  Exact zero is a distinguished
marker with infinite valuation; a cancellation that eats the whole tracked
window produces an *inexact* zero carrying only a valuation lower bound.
"""

from __future__ import annotations

import math
from fractions import Fraction

INF = math.inf


class PadicError(ArithmeticError):
    """Base class for p-adic arithmetic failures."""


class PrecisionExhausted(PadicError):
    """No guaranteed digits remain."""


class DivergenceError(PadicError):
    """A series was requested outside its convergence domain."""


class DomainError(ValueError):
    """A value violates the congruence domain required by an operation."""


def vp_int(x: int, p: int) -> int:
    """Valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("vp_int(0) is infinite")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def vp_fraction(x: Fraction, p: int):
    if x == 0:
        return INF
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


class PadicScalar:
    """Element of Q_p known modulo p^(v + prec).

    Fields: prime p, valuation v (int, or +inf for exact zero), unit part
    ``unit`` (an integer in [1, p^prec) coprime to p; 0 for zeros), and
    ``prec``, the number of guaranteed unit digits.  An inexact zero has
    unit == 0 with finite v: it means O(p^v), value of valuation >= v.
    """

    __slots__ = ("p", "v", "unit", "prec")

    def __init__(self, p, v, unit, prec):
        self.p = p
        self.v = v
        self.unit = unit
        self.prec = prec

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p: int, prec: int) -> "PadicScalar":
        return cls(p, INF, 0, prec)

    @classmethod
    def inexact_zero(cls, p: int, bound, prec: int = 0) -> "PadicScalar":
        """O(p^bound): a value only known to have valuation >= bound."""
        return cls(p, bound, 0, prec)

    @classmethod
    def one(cls, p: int, prec: int) -> "PadicScalar":
        return cls(p, 0, 1, prec)

    @classmethod
    def from_int(cls, x: int, p: int, prec: int) -> "PadicScalar":
        if x == 0:
            return cls.zero(p, prec)
        v = vp_int(x, p)
        return cls(p, v, (x // p**v) % p**prec, prec)

    @classmethod
    def from_fraction(cls, x, p: int, prec: int) -> "PadicScalar":
        x = Fraction(x)
        if x == 0:
            return cls.zero(p, prec)
        vn = vp_int(x.numerator, p)
        vd = vp_int(x.denominator, p)
        num = x.numerator // p**vn
        den = x.denominator // p**vd
        m = p**prec
        return cls(p, vn - vd, num * pow(den, -1, m) % m, prec)

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.unit == 0

    def is_exact_zero(self) -> bool:
        return self.unit == 0 and self.v == INF

    def val(self):
        """Valuation; +inf for exact zero, a lower bound for inexact zero."""
        return self.v

    def abs_prec(self):
        """Absolute precision: the value is known modulo p^abs_prec."""
        if self.unit == 0:
            return self.v
        return self.v + self.prec

    # -- arithmetic ---------------------------------------------------

    def __neg__(self):
        if self.unit == 0:
            return self
        m = self.p**self.prec
        return PadicScalar(self.p, self.v, (m - self.unit) % m, self.prec)

    def __add__(self, other):
        if not isinstance(other, PadicScalar):
            return NotImplemented
        p = self.p
        if other.p != p:
            raise DomainError("mixed primes %d and %d" % (p, other.p))
        if self.is_exact_zero():
            return other
        if other.is_exact_zero():
            return self
        if self.unit == 0 or other.unit == 0:
            # one side is only a bound O(p^k)
            if self.unit == 0 and other.unit == 0:
                return PadicScalar.inexact_zero(p, min(self.v, other.v))
            known, bound = (other, self.v) if self.unit == 0 else (self, other.v)
            if known.v >= bound:
                return PadicScalar.inexact_zero(p, min(bound, known.v))
            newprec = min(known.prec, bound - known.v)
            return PadicScalar(p, known.v, known.unit % p**newprec, newprec)
        a, b = (self, other) if self.v <= other.v else (other, self)
        shift = b.v - a.v
        window = min(a.prec, b.prec + shift)
        m = p**window
        s = (a.unit + b.unit * p**shift) % m
        if s == 0:
            return PadicScalar.inexact_zero(p, a.v + window)
        w = vp_int(s, p)
        return PadicScalar(p, a.v + w, (s // p**w) % p ** (window - w), window - w)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return PadicScalar.zero(self.p, max(self.prec, 1))
            if self.unit == 0:
                if self.is_exact_zero():
                    return self
                return PadicScalar.inexact_zero(self.p, self.v + vp_int(other, self.p))
            other = PadicScalar.from_int(other, self.p, self.prec)
        if not isinstance(other, PadicScalar):
            return NotImplemented
        p = self.p
        if other.p != p:
            raise DomainError("mixed primes %d and %d" % (p, other.p))
        if self.is_exact_zero() or other.is_exact_zero():
            return PadicScalar.zero(p, min(self.prec, other.prec) or self.prec)
        if self.unit == 0 or other.unit == 0:
            return PadicScalar.inexact_zero(p, self.v + other.v)
        prec = min(self.prec, other.prec)
        return PadicScalar(p, self.v + other.v, self.unit * other.unit % p**prec, prec)

    __rmul__ = __mul__

    def invert(self) -> "PadicScalar":
        if self.unit == 0:
            if self.is_exact_zero():
                raise ZeroDivisionError("inverse of p-adic zero")
            raise PrecisionExhausted("inverse of a value with no known digits")
        m = self.p**self.prec
        return PadicScalar(self.p, -self.v, pow(self.unit, -1, m), self.prec)

    def __truediv__(self, other):
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by integer zero")
            if self.unit == 0:
                if self.is_exact_zero():
                    return self
                return PadicScalar.inexact_zero(self.p, self.v - vp_int(other, self.p))
            other = PadicScalar.from_int(other, self.p, self.prec)
        if not isinstance(other, PadicScalar):
            return NotImplemented
        return self * other.invert()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.invert() ** (-e)
        if self.unit == 0:
            if e == 0:
                return PadicScalar.one(self.p, self.prec)
            if self.is_exact_zero():
                return self
            return PadicScalar.inexact_zero(self.p, self.v * e)
        m = self.p**self.prec
        return PadicScalar(self.p, self.v * e, pow(self.unit, e, m), self.prec)

    # -- comparisons and views -----------------------------------------

    def agrees(self, other, abs_digits=None) -> bool:
        """True if val(self - other) >= abs_digits (default: full window)."""
        d = self - other
        if abs_digits is None:
            abs_digits = min(self.abs_prec(), other.abs_prec())
        return d.v >= abs_digits

    def residue(self, abs_digits: int) -> int:
        """Integer representative of the value modulo p^abs_digits (v >= 0)."""
        if self.unit == 0:
            if self.v >= abs_digits:
                return 0
            raise PrecisionExhausted("zero only known to O(p^%s)" % self.v)
        if self.v < 0:
            raise DomainError("residue of a non-integral scalar")
        if self.abs_prec() < abs_digits:
            raise PrecisionExhausted(
                "known mod p^%s, requested mod p^%d" % (self.abs_prec(), abs_digits)
            )
        return self.unit * self.p**self.v % self.p**abs_digits

    def as_integer(self, bound: int | None = None):
        """Recognize the value as a small rational integer, balanced lift.

        Returns the unique integer m with |m| <= bound congruent to the
        value at full working precision, or None.  Only meaningful against
        the caller's promise that interesting integers are small; this is
        how "integer to working precision" membership is decided.
        """
        if self.unit == 0:
            return 0 if self.v > 0 or self.v == INF else None
        if self.v < 0:
            return None
        window = self.abs_prec()
        m = self.unit * self.p**self.v % self.p**window
        half = self.p**window // 2
        if m > half:
            m -= self.p**window
        if bound is None:
            bound = int(math.isqrt(self.p**window))
        return m if abs(m) <= bound else None

    def __eq__(self, other):
        if not isinstance(other, PadicScalar):
            return NotImplemented
        if self.unit == 0 and other.unit == 0:
            return self.v == other.v
        return self.agrees(other)

    def __hash__(self):
        raise TypeError("PadicScalar is not hashable; compare via agrees()")

    def __repr__(self):
        if self.is_exact_zero():
            return "0 (p=%d)" % self.p
        if self.unit == 0:
            return "O(%d^%s)" % (self.p, self.v)
        return "%d^%s * %d + O(%d^%s)" % (self.p, self.v, self.unit, self.p, self.abs_prec())

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "valuation": None if self.v == INF else self.v,
            "unit": str(self.unit),
            "precision": self.prec,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PadicScalar":
        v = obj["valuation"]
        return cls(int(obj["p"]), INF if v is None else int(v), int(obj["unit"]), int(obj["precision"]))


def val(x):
    """Normalized valuation, v_p(p) = 1; infinity marker for exact zero."""
    return x.val()


# -- analytic power functions ---------------------------------------------


def analyticity_bound(p: int, e: int = 1) -> Fraction:
    """The open lower bound e/(p-1) - 1 for v_p(c) in t -> t^c."""
    return Fraction(e, p - 1) - 1


def check_power_domain(t: PadicScalar) -> PadicScalar:
    """Validate t = 1 mod p and return t - 1."""
    x = t - PadicScalar.one(t.p, t.prec)
    if not x.is_zero() and x.v < 1:
        raise DomainError("power_char needs t = 1 mod p, got t-1 of valuation %s" % x.v)
    return x


def _check_exponent(c, p: int, e: int = 1):
    if c.val() <= analyticity_bound(p, e):
        raise DivergenceError(
            "v_p(c) = %s does not satisfy the strict bound > %s" % (c.val(), analyticity_bound(p, e))
        )


def padic_log(t: PadicScalar) -> PadicScalar:
    """log t for t = 1 mod p, by the truncated alternating series."""
    x = check_power_domain(t)
    p = t.p
    if x.is_zero():
        return PadicScalar.zero(p, t.prec)
    target = t.prec + 1  # absolute digits carried by the terms
    acc = PadicScalar.zero(p, t.prec)
    power = PadicScalar.one(p, t.prec)
    m = 1
    while m * x.v - _ilog(m, p) <= target:
        power = power * x
        term = power / m
        acc = acc + (term if m % 2 == 1 else -term)
        m += 1
    return acc


def padic_exp(z):
    """exp z for v_p(z) > e/(p-1); works for PadicScalar and UnramifiedScalar."""
    p = z.p
    e = 1
    if z.val() <= Fraction(e, p - 1):
        raise DivergenceError("exp diverges at v_p(z) = %s" % z.val())
    target = z.abs_prec()
    one = z.ring_one() if hasattr(z, "ring_one") else PadicScalar.one(p, target)
    acc = one
    term = one
    m = 1
    vz = z.val()
    while m * vz - _vp_factorial(m, p) <= target:
        term = term * z / m
        if term.is_zero():
            break
        acc = acc + term
        m += 1
    return acc


def _ilog(m: int, p: int) -> int:
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def _vp_factorial(m: int, p: int) -> int:
    v = 0
    q = p
    while q <= m:
        v += m // q
        q *= p
    return v


def power_char(t: PadicScalar, c, e: int = 1):
    """t^c = exp(c log t) for t = 1 mod p, c in the analytic range.

    c may be a PadicScalar or an UnramifiedScalar; the result lives in the
    ring of c.  For nonnegative integer c this agrees with repeated
    multiplication exactly.
    """
    _check_exponent(c, t.p, e)
    lg = padic_log(t)
    if lg.is_zero() or c.is_zero():
        one = c.ring_one() if hasattr(c, "ring_one") else PadicScalar.one(t.p, t.prec)
        return one
    z = c * lg
    out = padic_exp(z)
    if out.is_zero() or out.abs_prec() <= 0:
        raise PrecisionExhausted("power_char lost all digits")
    return out


# -- unramified extensions --------------------------------------------------


def _poly_mul_mod(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _poly_rem(a, mod, p):
    a = [x % p for x in a]
    n = len(mod) - 1
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i]
        if c:
            for j in range(n + 1):
                a[i - n + j] = (a[i - n + j] - c * mod[j]) % p
    out = a[:n]
    while len(out) < n:
        out.append(0)
    return out


def _poly_pow_x(e, mod, p):
    """x^e modulo (mod, p), little-endian coefficients."""
    result = [1]
    base = [0, 1]
    while e:
        if e & 1:
            result = _poly_rem(_poly_mul_mod(result, base, p), mod, p)
        base = _poly_rem(_poly_mul_mod(base, base, p), mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a = [x % p for x in a]
    b = [x % p for x in b]

    def trim(c):
        while c and c[-1] == 0:
            c.pop()
        return c

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], -1, p)
        r = a[:]
        while len(r) >= len(b) and trim(r):
            c = r[-1] * inv % p
            off = len(r) - len(b)
            for j in range(len(b)):
                r[off + j] = (r[off + j] - c * b[j]) % p
            trim(r)
        a, b = b, r
    return a


def _is_irreducible(mod, p):
    n = len(mod) - 1
    xpn = _poly_pow_x(p**n, mod, p)
    if xpn != [0, 1] + [0] * (n - 2) and not (n == 1 and xpn == [0]):
        # x^(p^n) must reduce to x
        base = [0, 1][:n] + [0] * max(0, n - 2)
        target = ([0, 1] + [0] * (n - 2))[:n]
        if xpn != target:
            return False
    for q in set(_prime_divisors(n)):
        xq = _poly_pow_x(p ** (n // q), mod, p)
        diff = [(xq[i] - (1 if i == 1 else 0)) % p for i in range(len(xq))]
        g = _poly_gcd(mod, diff + [0], p)
        if len(g) - 1 > 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class UnramifiedField:
    """Unramified extension L of Q_p of degree N.

    Represented as Z_p[x]/(m(x)) for the deterministic choice of m: the
    monic degree-N lift with smallest base-p encoding that is irreducible
    over F_p.  The integral basis is (1, w, ..., w^(N-1)) for w = x mod m.
    """

    def __init__(self, p: int, degree: int, prec: int):
        if degree < 1:
            raise DomainError("degree must be >= 1")
        self.p = p
        self.n = degree
        self.prec = prec
        self.modulus = self._find_modulus(p, degree)
        self._frob_matrix_cache = {}

    @staticmethod
    def _find_modulus(p, n):
        if n == 1:
            return [0, 1]
        k = 0
        while True:
            coeffs = []
            kk = k
            for _ in range(n):
                coeffs.append(kk % p)
                kk //= p
            mod = coeffs + [1]
            if _is_irreducible(mod, p):
                return mod
            k += 1

    # -- integer-tuple coordinate core (values mod p^window) ---------------

    def mul_t(self, a, b, window):
        p, n = self.p, self.n
        m = p**window
        if n == 1:
            return (a[0] * b[0] % m,)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % m
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(n):
                    if self.modulus[j]:
                        prod[i - n + j] = (prod[i - n + j] - c * self.modulus[j]) % m
        return tuple(prod[:n])

    def add_t(self, a, b, window):
        m = self.p**window
        return tuple((x + y) % m for x, y in zip(a, b))

    def neg_t(self, a, window):
        m = self.p**window
        return tuple((-x) % m for x in a)

    def inv_t(self, a, window):
        """Inverse by lifting the F_(p^N) inverse with Newton iteration."""
        p = self.p
        a1 = tuple(x % p for x in a)
        if all(x == 0 for x in a1):
            raise ZeroDivisionError("inverse of a non-unit in O_L")
        w = self._inv_mod_p(a1)
        k = 1
        while k < window:
            k = min(2 * k, window)
            aw = self.mul_t(a, w, k)
            two = tuple((2 if i == 0 else 0) for i in range(self.n))
            w = self.mul_t(w, self.add_t(two, self.neg_t(aw, k), k), k)
        return w

    def _inv_mod_p(self, a):
        # extended Euclid in F_p[x] against the modulus
        p = self.p
        if self.n == 1:
            return (pow(a[0], -1, p),)
        r0, r1 = [x % p for x in self.modulus], list(a)
        s0, s1 = [0], [1]

        def trim(c):
            while c and c[-1] == 0:
                c.pop()
            return c

        r0, r1 = trim(r0), trim(r1)
        while len(r1) > 1 or (r1 and r1 != [0]):
            if len(r1) == 1:
                break
            inv = pow(r1[-1], -1, p)
            q = [0] * (len(r0) - len(r1) + 1)
            r = r0[:]
            while len(r) >= len(r1) and trim(r):
                c = r[-1] * inv % p
                off = len(r) - len(r1)
                q[off] = c
                for j in range(len(r1)):
                    r[off + j] = (r[off + j] - c * r1[j]) % p
                trim(r)
            s = [(x - y) % p for x, y in _zip_pad(s0, _poly_mul_mod(q, s1, p), p)]
            r0, r1 = r1, trim(r) or [0]
            s0, s1 = s1, trim(s) or [0]
            if r1 == [0]:
                r1 = []
        lead = pow(r1[0] if r1 else r0[0], -1, p)
        s = s1 if r1 else s0
        out = [x * lead % p for x in s]
        out = out + [0] * (self.n - len(out))
        return tuple(out[: self.n])

    def frobenius_t(self, a, window, power=1):
        mat = self.frobenius_matrix(window)
        out = [0] * self.n
        m = self.p**window
        for _ in range(power % self.n):
            out = [0] * self.n
            for j, x in enumerate(a):
                if x:
                    col = mat[j]
                    for i in range(self.n):
                        out[i] = (out[i] + x * col[i]) % m
            a = tuple(out)
        return tuple(a)

    def frobenius_matrix(self, window):
        """Columns are the basis images: column j holds coords of frob(w^j)."""
        if window in self._frob_matrix_cache:
            return self._frob_matrix_cache[window]
        p, n = self.p, self.n
        if n == 1:
            mat = [[1]]
            self._frob_matrix_cache[window] = mat
            return mat
        # Hensel-lift the root: r = w^p mod p, then Newton against m(X)
        r = self._x_power_t(p, window)
        k = 1
        while k < window:
            k = min(2 * k, window)
            fr = self._eval_modulus(r, k)
            dfr = self._eval_modulus_derivative(r, k)
            corr = self.mul_t(fr, self.inv_t(dfr, k), k)
            r = self.add_t(tuple(x % p**k for x in r), self.neg_t(corr, k), k)
        cols = []
        img = tuple((1 if i == 0 else 0) for i in range(n))
        for j in range(n):
            cols.append(list(img))
            img = self.mul_t(img, r, window)
        self._frob_matrix_cache[window] = cols
        return cols

    def _x_power_t(self, e, window):
        out = tuple((1 if i == 0 else 0) for i in range(self.n))
        base = tuple((1 if i == 1 else 0) for i in range(self.n))
        while e:
            if e & 1:
                out = self.mul_t(out, base, window)
            base = self.mul_t(base, base, window)
            e >>= 1
        return out

    def _eval_modulus(self, r, window):
        acc = tuple(0 for _ in range(self.n))
        power = tuple((1 if i == 0 else 0) for i in range(self.n))
        m = self.p**window
        for c in self.modulus:
            if c:
                acc = self.add_t(acc, tuple(c * x % m for x in power), window)
            power = self.mul_t(power, r, window)
        return acc

    def _eval_modulus_derivative(self, r, window):
        acc = tuple(0 for _ in range(self.n))
        power = tuple((1 if i == 0 else 0) for i in range(self.n))
        m = self.p**window
        for k in range(1, len(self.modulus)):
            c = self.modulus[k] * k
            if c:
                acc = self.add_t(acc, tuple(c * x % m for x in power), window)
            power = self.mul_t(power, r, window)
        return acc

    # -- element constructors ----------------------------------------------

    def element(self, coords) -> "UnramifiedScalar":
        out = []
        for c in coords:
            if isinstance(c, PadicScalar):
                out.append(c)
            elif isinstance(c, Fraction):
                out.append(PadicScalar.from_fraction(c, self.p, self.prec))
            else:
                out.append(PadicScalar.from_int(int(c), self.p, self.prec))
        if len(out) != self.n:
            raise DomainError("expected %d coordinates" % self.n)
        return UnramifiedScalar(self, tuple(out))

    def embed(self, x) -> "UnramifiedScalar":
        """Q_p -> L along the first basis vector."""
        if not isinstance(x, PadicScalar):
            x = PadicScalar.from_int(int(x), self.p, self.prec)
        zero = PadicScalar.zero(self.p, x.prec)
        return UnramifiedScalar(self, (x,) + (zero,) * (self.n - 1))

    def generator(self) -> "UnramifiedScalar":
        coords = [0] * self.n
        if self.n > 1:
            coords[1] = 1
        else:
            coords[0] = 0
        return self.element(coords)

    def zero(self) -> "UnramifiedScalar":
        return self.element([0] * self.n)

    def one(self) -> "UnramifiedScalar":
        return self.element([1] + [0] * (self.n - 1))

    def to_json(self):
        return {"p": self.p, "N": self.n, "basis_poly": list(self.modulus), "precision": self.prec}


def _zip_pad(a, b, p):
    la, lb = len(a), len(b)
    n = max(la, lb)
    return zip(a + [0] * (n - la), b + [0] * (n - lb))


class UnramifiedScalar:
    """Element of the unramified field, coordinates over (1, w, ..., w^(N-1))."""

    __slots__ = ("field", "coords")

    def __init__(self, field: UnramifiedField, coords):
        self.field = field
        self.coords = tuple(coords)

    @property
    def p(self):
        return self.field.p

    @property
    def prec(self):
        live = [c.prec for c in self.coords if not c.is_exact_zero()]
        return min(live) if live else self.field.prec

    def abs_prec(self):
        live = [c.abs_prec() for c in self.coords if not c.is_exact_zero()]
        return min(live) if live else INF

    def val(self):
        return min(c.val() for c in self.coords)

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def is_exact_zero(self):
        return all(c.is_exact_zero() for c in self.coords)

    def ring_one(self):
        return self.field.one()

    # window codec: integer tuple for value * p^shift mod p^window
    def to_window(self, window, shift=0):
        out = []
        for c in self.coords:
            if c.unit == 0:
                out.append(0)
            else:
                if c.v + shift < 0:
                    raise DomainError("coordinate valuation %s below window shift" % c.v)
                out.append(c.unit * self.p ** (c.v + shift) % self.p**window)
        return tuple(out)

    @classmethod
    def from_window(cls, field, t, window, shift=0):
        coords = []
        for x in t:
            x %= field.p**window
            if x == 0:
                coords.append(PadicScalar.inexact_zero(field.p, window - shift))
            else:
                v = vp_int(x, field.p)
                coords.append(
                    PadicScalar(field.p, v - shift, (x // field.p**v) % field.p ** (window - v), window - v)
                )
        return cls(field, tuple(coords))

    def _coerce(self, other):
        if isinstance(other, UnramifiedScalar):
            if other.field is not self.field and other.field.modulus != self.field.modulus:
                raise DomainError("elements of different unramified fields")
            return other
        if isinstance(other, PadicScalar):
            return self.field.embed(other)
        if isinstance(other, int):
            return self.field.embed(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return UnramifiedScalar(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return UnramifiedScalar(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_exact_zero() or o.is_exact_zero():
            return self.field.zero()
        vs = min(0, self.val())
        vo = min(0, o.val())
        # the product is certified modulo p^window (absolute)
        window = min(self.abs_prec() + vo, o.abs_prec() + vs)
        if window <= -(vs + vo):
            raise PrecisionExhausted("product of unramified scalars lost all digits")
        shift = -(vs + vo)
        a = self.to_window(window + shift, -vs)
        b = o.to_window(window + shift, -vo)
        prod = self.field.mul_t(a, b, window + shift)
        return UnramifiedScalar.from_window(self.field, prod, window + shift, shift)

    __rmul__ = __mul__

    def invert(self):
        v = self.val()
        if v == INF:
            raise ZeroDivisionError("inverse of zero in L")
        window = self.abs_prec() - max(0, v)
        a = self.to_window(window, -v)  # unit tuple
        inv = self.field.inv_t(a, window)
        out = UnramifiedScalar.from_window(self.field, inv, window, 0)
        if v:
            scale = PadicScalar(self.p, -v, 1, window)
            out = UnramifiedScalar(self.field, tuple(scale * c for c in out.coords))
        return out

    def __truediv__(self, other):
        if isinstance(other, int):
            other = PadicScalar.from_int(other, self.p, self.field.prec)
        if isinstance(other, PadicScalar):
            inv = other.invert()
            return UnramifiedScalar(self.field, tuple(c * inv for c in self.coords))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.invert()

    def frobenius(self, power: int = 1) -> "UnramifiedScalar":
        """The ring automorphism lifting x -> x^p; N-torsion."""
        if self.is_exact_zero():
            return self
        window = self.abs_prec()
        v = min(0, self.val())
        t = self.to_window(window - v, -v)
        out = self.field.frobenius_t(t, window - v, power)
        return UnramifiedScalar.from_window(self.field, out, window - v, -v)

    def is_rational(self) -> bool:
        """All coordinates beyond the first vanish at working precision."""
        return all(c.is_zero() for c in self.coords[1:])

    def rational_part(self) -> PadicScalar:
        if not self.is_rational():
            raise DomainError("scalar has nonzero higher coordinates")
        return self.coords[0]

    def __repr__(self):
        return "UnramifiedScalar(%s)" % (list(self.coords),)

    def to_json(self):
        live = [c.val() for c in self.coords if not c.is_exact_zero()]
        return {
            "p": self.p,
            "valuation": None if not live else min(live),
            "unit": None,
            "precision": self.prec,
            "degree": self.field.n,
            "coords": [c.to_json() for c in self.coords],
        }


def norm_L(x: UnramifiedScalar) -> PadicScalar:
    """Product of all N Frobenius conjugates; lands in Q_p."""
    acc = x
    for s in range(1, x.field.n):
        acc = acc * x.frobenius(s)
        if not acc.is_zero() and acc.abs_prec() < 1:
            raise PrecisionExhausted("norm lost all digits")
    return acc.rational_part()


def trace_L(x: UnramifiedScalar) -> PadicScalar:
    acc = x
    for s in range(1, x.field.n):
        acc = acc + x.frobenius(s)
    return acc.rational_part()
