"""Congruence-constrained matrix groups over Z_p and the ordered Lazard basis.

G is the pro-p Iwahori subgroup of GL_n(Z_p): lower unipotent modulo p
(diagonal = 1 mod p, above-diagonal entries in pZ_p).  Elements factor
uniquely as an ordered product of one-parameter subgroups: the lower
unipotent factors in lexicographic (i,j) order, the diagonal factors top
left to bottom right, then the upper factors from the bottom-right extreme
filling rows right-to-left going up.
"""

from __future__ import annotations

from dataclasses import dataclass

from .padic import DomainError, PadicScalar, PrecisionExhausted


class NotInGroup(DomainError):
    """Matrix fails the congruence validation of its claimed subgroup."""


def _is_probable_prime(m: int) -> bool:
    if m < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % q == 0:
            return m == q
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def require_odd_prime_gt(p: int, n: int):
    """Standing hypothesis p > n+1 (and p prime), checked at construction."""
    if not _is_probable_prime(p):
        raise DomainError("p = %d is not prime" % p)
    if p <= n + 1:
        raise DomainError("need p > n+1; got p=%d, n=%d" % (p, n))


_TAGS = ("G", "B", "U", "Q0", "P0")


class IwahoriMatrix:
    """n x n matrix of PadicScalar with a validated membership tag.

    Tags: G (pro-p Iwahori), B (Iwahori), U (lower unipotent), Q0 (upper
    triangular, diagonal = 1 mod p, above-diagonal in pZ_p), P0 (upper
    triangular in B).  A Pw+ tag carries the Weyl element: use
    weyl.validate_pw_plus.  Products of two like-tagged matrices revalidate.
    """

    def __init__(self, n, entries, tag=None, p=None, prec=None):
        self.n = n
        self.entries = tuple(tuple(row) for row in entries)
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise DomainError("expected a %d x %d matrix" % (n, n))
        self.p = p if p is not None else self.entries[0][0].p
        self.prec = prec if prec is not None else max(
            (e.prec for row in self.entries for e in row if not e.is_zero()), default=1
        )
        self.tag = tag
        if tag is not None:
            require_odd_prime_gt(self.p, n)
            self.validate(tag)

    @classmethod
    def from_ints(cls, rows, p, prec, tag=None):
        n = len(rows)
        entries = [[PadicScalar.from_int(x, p, prec) for x in row] for row in rows]
        return cls(n, entries, tag=tag, p=p, prec=prec)

    @classmethod
    def identity(cls, n, p, prec, tag="G"):
        return cls.from_ints([[1 if i == j else 0 for j in range(n)] for i in range(n)], p, prec, tag=tag)

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    # -- validation ------------------------------------------------------

    def _check(self, cond, msg):
        if not cond:
            raise NotInGroup(msg)

    def validate(self, tag):
        e = self.entries
        n = self.n

        def vge(x, k):
            return x.val() >= k

        if tag == "G":
            for i in range(n):
                self._check(vge(e[i][i] - PadicScalar.one(self.p, self.prec), 1), "diagonal not 1 mod p")
                for j in range(n):
                    if i < j:
                        self._check(vge(e[i][j], 1), "above-diagonal entry not in pZ_p")
                    elif i > j:
                        self._check(vge(e[i][j], 0), "entry outside Z_p")
        elif tag == "B":
            for i in range(n):
                self._check(vge(e[i][i], 0) and e[i][i].val() == 0, "diagonal not a unit")
                for j in range(n):
                    if i < j:
                        self._check(vge(e[i][j], 1), "above-diagonal entry not in pZ_p")
                    elif i > j:
                        self._check(vge(e[i][j], 0), "entry outside Z_p")
        elif tag == "U":
            for i in range(n):
                self._check((e[i][i] - PadicScalar.one(self.p, self.prec)).is_zero(), "diagonal not 1")
                for j in range(i + 1, n):
                    self._check(e[i][j].is_zero(), "above-diagonal entry not 0")
                for j in range(i):
                    self._check(vge(e[i][j], 0), "entry outside Z_p")
        elif tag == "Q0":
            for i in range(n):
                self._check(vge(e[i][i] - PadicScalar.one(self.p, self.prec), 1), "diagonal not 1 mod p")
                for j in range(i):
                    self._check(e[i][j].is_zero(), "below-diagonal entry not 0")
                for j in range(i + 1, n):
                    self._check(vge(e[i][j], 1), "above-diagonal entry not in pZ_p")
        elif tag == "P0":
            for i in range(n):
                self._check(e[i][i].val() == 0, "diagonal not a unit")
                for j in range(i):
                    self._check(e[i][j].is_zero(), "below-diagonal entry not 0")
                for j in range(i + 1, n):
                    self._check(vge(e[i][j], 1), "above-diagonal entry not in pZ_p")
        else:
            raise DomainError("unknown tag %r" % tag)
        return self

    def with_tag(self, tag):
        return IwahoriMatrix(self.n, self.entries, tag=tag, p=self.p, prec=self.prec)

    # -- arithmetic --------------------------------------------------------

    def __matmul__(self, other):
        if not isinstance(other, IwahoriMatrix) or other.n != self.n:
            return NotImplemented
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = PadicScalar.zero(self.p, self.prec)
                for k in range(n):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        tag = self.tag if self.tag is not None and self.tag == other.tag else None
        return IwahoriMatrix(n, out, tag=tag, p=self.p, prec=self.prec)

    def inverse(self):
        """Gauss-Jordan inverse; pivots are units for every supported tag."""
        n = self.n
        a = [list(row) for row in self.entries]
        b = [
            [PadicScalar.one(self.p, self.prec) if i == j else PadicScalar.zero(self.p, self.prec) for j in range(n)]
            for i in range(n)
        ]
        for col in range(n):
            piv = a[col][col]
            if piv.is_zero() or piv.val() != 0:
                raise PrecisionExhausted("non-unit pivot in inverse; matrix outside the Iwahori chart")
            inv = piv.invert()
            a[col] = [x * inv for x in a[col]]
            b[col] = [x * inv for x in b[col]]
            for r in range(n):
                if r != col and not a[r][col].is_zero():
                    c = a[r][col]
                    a[r] = [x - c * y for x, y in zip(a[r], a[col])]
                    b[r] = [x - c * y for x, y in zip(b[r], b[col])]
        return IwahoriMatrix(n, b, tag=self.tag, p=self.p, prec=self.prec)

    def agrees(self, other, abs_digits=None) -> bool:
        for i in range(self.n):
            for j in range(self.n):
                if not self.entries[i][j].agrees(other.entries[i][j], abs_digits):
                    return False
        return True

    def __repr__(self):
        return "IwahoriMatrix(n=%d, tag=%s)" % (self.n, self.tag)

    def to_json(self):
        return {
            "n": self.n,
            "tag": self.tag,
            "entries": [c.to_json() for row in self.entries for c in row],
        }

    @classmethod
    def from_json(cls, obj):
        n = int(obj["n"])
        flat = [PadicScalar.from_json(c) for c in obj["entries"]]
        rows = [flat[i * n : (i + 1) * n] for i in range(n)]
        return cls(n, rows, tag=obj.get("tag"))


@dataclass(frozen=True)
class OneParamFactor:
    """One-parameter subgroup element: lower(i,j) and upper(i,j) are
    1 + param*E_{i,j}; diag(k) has param at the (k,k) slot.

    Domains: lower params in Z_p, diag params in 1 + pZ_p, upper in pZ_p.
    Indices are 1-based as in the matrix entries a[i,j].
    """

    kind: str  # "lower" | "diag" | "upper"
    i: int
    j: int  # for diag factors j == i
    param: object = None

    def descriptor(self):
        return (self.kind, self.i, self.j)

    def with_param(self, param):
        return OneParamFactor(self.kind, self.i, self.j, param)

    def validate_param(self):
        v = self.param.val()
        if self.kind == "lower":
            ok = v >= 0
        elif self.kind == "upper":
            ok = v >= 1
        else:
            ok = (self.param - PadicScalar.one(self.param.p, self.param.prec)).val() >= 1
        if not ok:
            raise DomainError("parameter outside the %s domain" % self.kind)
        return self

    def to_matrix(self, n, p, prec) -> IwahoriMatrix:
        self.validate_param()
        rows = [
            [PadicScalar.one(p, prec) if a == b else PadicScalar.zero(p, prec) for b in range(n)]
            for a in range(n)
        ]
        if self.kind == "diag":
            rows[self.i - 1][self.i - 1] = self.param
        else:
            rows[self.i - 1][self.j - 1] = self.param
        return IwahoriMatrix(n, rows, tag="G", p=p, prec=prec)

    def to_json(self):
        return {"kind": self.kind, "i": self.i, "j": self.j, "param": self.param.to_json() if self.param else None}

    @classmethod
    def from_json(cls, obj):
        param = obj.get("param")
        return cls(obj["kind"], int(obj["i"]), int(obj["j"]), PadicScalar.from_json(param) if param else None)


def lazard_order(n: int):
    """Descriptors of the n^2 one-parameter factors in the ordered-product
    order: lower (i,j) lexicographic, diag 1..n, upper rows bottom-up filled
    right-to-left."""
    if n < 2:
        raise DomainError("need n >= 2")
    out = [OneParamFactor("lower", i, j) for i in range(2, n + 1) for j in range(1, i)]
    out += [OneParamFactor("diag", k, k) for k in range(1, n + 1)]
    out += [OneParamFactor("upper", i, j) for i in range(n - 1, 0, -1) for j in range(n, i, -1)]
    return out


def split_uq0(g: IwahoriMatrix):
    """G = U Q0: unique exact splitting by Doolittle elimination."""
    if g.tag != "G":
        g = g.with_tag("G")  # raises NotInGroup on failure
    n, p, prec = g.n, g.p, g.prec
    u = [[PadicScalar.one(p, prec) if i == j else PadicScalar.zero(p, prec) for j in range(n)] for i in range(n)]
    q = [[PadicScalar.zero(p, prec) for _ in range(n)] for _ in range(n)]
    for r in range(n):
        for s in range(r, n):
            acc = g.entries[r][s]
            for k in range(r):
                acc = acc - u[r][k] * q[k][s]
            q[r][s] = acc
        piv = q[r][r]
        if piv.is_zero() or piv.val() != 0:
            raise PrecisionExhausted("pivot lost its unit digits during elimination")
        inv = piv.invert()
        for i in range(r + 1, n):
            acc = g.entries[i][r]
            for k in range(r):
                acc = acc - u[i][k] * q[k][r]
            u[i][r] = acc * inv
    return (
        IwahoriMatrix(n, u, tag="U", p=p, prec=prec),
        IwahoriMatrix(n, q, tag="Q0", p=p, prec=prec),
    )


def factorize(g: IwahoriMatrix):
    """Ordered one-parameter factors of g in the Lazard order.

    The ordered product of to_matrix over the result equals g exactly
    modulo p^prec; lower rows are peeled left factor first, the diagonal is
    read off Q0, and the upper rows are peeled bottom-up.
    """
    u, q = split_uq0(g)
    n, p, prec = g.n, g.p, g.prec
    factors = []
    # lower part: u = B_2 B_3 ... B_n with B_i = 1 + sum_j y_{i,j} E_{i,j}
    cur = u
    for i in range(2, n + 1):
        params = [cur.entries[i - 1][j - 1] for j in range(1, i)]
        for j, y in zip(range(1, i), params):
            factors.append(OneParamFactor("lower", i, j, y).validate_param())
        rows = [[PadicScalar.one(p, prec) if a == b else PadicScalar.zero(p, prec) for b in range(n)] for a in range(n)]
        for j, y in zip(range(1, i), params):
            rows[i - 1][j - 1] = -y
        cur = IwahoriMatrix(n, rows, p=p, prec=prec) @ cur
    # diagonal part
    diag = [q.entries[k][k] for k in range(n)]
    for k in range(1, n + 1):
        factors.append(OneParamFactor("diag", k, k, diag[k - 1]).validate_param())
    # upper part: V = D^{-1} q, peeled from the bottom row up
    v = [[q.entries[i][j] * diag[i].invert() for j in range(n)] for i in range(n)]
    cur = IwahoriMatrix(n, v, p=p, prec=prec)
    for i in range(n - 1, 0, -1):
        params = {j: cur.entries[i - 1][j - 1] for j in range(n, i, -1)}
        for j in range(n, i, -1):
            factors.append(OneParamFactor("upper", i, j, params[j]).validate_param())
        rows = [[PadicScalar.one(p, prec) if a == b else PadicScalar.zero(p, prec) for b in range(n)] for a in range(n)]
        for j in range(n, i, -1):
            rows[i - 1][j - 1] = -params[j]
        cur = IwahoriMatrix(n, rows, p=p, prec=prec) @ cur
    return factors


def ordered_product(factors, n, p, prec) -> IwahoriMatrix:
    acc = IwahoriMatrix.identity(n, p, prec, tag=None)
    for f in factors:
        acc = acc @ f.to_matrix(n, p, prec)
    return acc.with_tag("G")
