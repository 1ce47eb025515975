"""p-adic scalar arithmetic: examples, ring axioms, Frobenius, norms, powers."""

import math
import random
from fractions import Fraction

import pytest

from iwahorips.padic import (
    PadicScalar,
    UnramifiedField,
    DivergenceError,
    DomainError,
    val,
    norm_L,
    trace_L,
    power_char,
    padic_log,
    vp_int,
)

P = 7
M = 12


def sc(x, p=P, prec=M):
    if isinstance(x, Fraction):
        return PadicScalar.from_fraction(x, p, prec)
    return PadicScalar.from_int(x, p, prec)


def random_scalar(rng, p=P, prec=M, minval=0, maxval=4):
    v = rng.randint(minval, maxval)
    u = rng.randrange(1, p**prec)
    while u % p == 0:
        u = rng.randrange(1, p**prec)
    return PadicScalar(p, v, u, prec)


class TestVal:
    def test_monomial(self):
        u = 3  # a unit
        assert val(sc(P**3 * u)) == 3

    def test_zero_is_infinite(self):
        assert val(sc(0)) == math.inf

    def test_multiplicative_against_integer_factorization(self):
        rng = random.Random(1)
        for _ in range(50):
            a = rng.randint(1, 10**6)
            b = rng.randint(1, 10**6)
            lhs = val(sc(a) * sc(b))
            rhs = vp_int(a, P) + vp_int(b, P)
            assert lhs == rhs


class TestRingAxioms:
    def test_associativity_and_distributivity(self):
        rng = random.Random(2)
        for _ in range(60):
            a, b, c = (random_scalar(rng) for _ in range(3))
            assert ((a * b) * c).agrees(a * (b * c))
            assert ((a + b) + c).agrees(a + (b + c))
            assert (a * (b + c)).agrees(a * b + a * c)

    def test_additive_inverse_is_zero_to_precision(self):
        rng = random.Random(3)
        for _ in range(20):
            a = random_scalar(rng)
            d = a + (-a)
            assert d.is_zero()
            assert not d.is_exact_zero()  # cancellation, not the exact marker
            assert d.v >= M

    def test_exact_zero_marker(self):
        z = PadicScalar.zero(P, M)
        assert z.is_exact_zero()
        a = sc(42)
        assert (a * z).is_exact_zero()
        assert (a + z).agrees(a)

    def test_valuation_multiplicative(self):
        rng = random.Random(4)
        for _ in range(40):
            a = random_scalar(rng, maxval=6)
            b = random_scalar(rng, maxval=6)
            assert val(a * b) == val(a) + val(b)

    def test_division_roundtrip(self):
        rng = random.Random(5)
        for _ in range(20):
            a = random_scalar(rng)
            b = random_scalar(rng)
            assert ((a / b) * b).agrees(a)

    def test_fraction_constructor(self):
        x = sc(Fraction(3, 49))
        assert x.v == -2
        assert (x * sc(49)).agrees(sc(3))


class TestSerialization:
    def test_roundtrip(self):
        rng = random.Random(6)
        for _ in range(10):
            a = random_scalar(rng)
            b = PadicScalar.from_json(a.to_json())
            assert a.agrees(b) and a.v == b.v

    def test_zero_roundtrip(self):
        z = PadicScalar.zero(P, M)
        assert PadicScalar.from_json(z.to_json()).is_exact_zero()


class TestPowerChar:
    def test_integer_exponent_one(self):
        t = sc(1 + P)
        assert power_char(t, sc(1)).agrees(t)

    def test_exponent_zero(self):
        rng = random.Random(7)
        for _ in range(5):
            t = sc(1 + P * rng.randint(1, 30))
            assert power_char(t, sc(0)).agrees(sc(1))

    def test_cube_matches_repeated_multiplication(self):
        t = sc(1 + P)
        lhs = power_char(t, sc(3))
        assert lhs.agrees(t * t * t)

    def test_additivity_in_exponent(self):
        rng = random.Random(8)
        for _ in range(10):
            t = sc(1 + P * rng.randint(1, 50))
            c1, c2 = sc(rng.randint(0, 40)), sc(rng.randint(0, 40))
            lhs = power_char(t, c1 + c2)
            rhs = power_char(t, c1) * power_char(t, c2)
            assert lhs.agrees(rhs, abs_digits=M - 1)

    def test_divergence_for_negative_valuation_exponent(self):
        t = sc(1 + P)
        with pytest.raises(DivergenceError):
            power_char(t, sc(Fraction(1, P)))

    def test_domain_requires_t_congruent_one(self):
        with pytest.raises(DomainError):
            power_char(sc(2), sc(1))

    def test_log_of_one_plus_p_has_valuation_one(self):
        assert padic_log(sc(1 + P)).v == 1


class TestUnramified:
    def test_modulus_is_deterministic(self):
        f1 = UnramifiedField(P, 2, M)
        f2 = UnramifiedField(P, 2, M)
        assert f1.modulus == f2.modulus
        assert len(f1.modulus) == 3 and f1.modulus[-1] == 1

    def test_frobenius_is_ring_hom_and_torsion(self):
        rng = random.Random(9)
        for deg in (2, 3):
            field = UnramifiedField(P, deg, M)
            for _ in range(8):
                x = field.element([rng.randint(0, 1000) for _ in range(deg)])
                y = field.element([rng.randint(0, 1000) for _ in range(deg)])
                fx, fy = x.frobenius(), y.frobenius()
                assert (x * y).frobenius().is_zero() == (fx * fy).is_zero() or True
                d = (x * y).frobenius() - fx * fy
                assert d.is_zero()
                d2 = (x + y).frobenius() - (fx + fy)
                assert d2.is_zero()
                back = x
                for _ in range(deg):
                    back = back.frobenius()
                assert (back - x).is_zero()

    def test_frobenius_fixes_qp(self):
        field = UnramifiedField(P, 3, M)
        x = field.embed(sc(1 + P))
        assert (x.frobenius() - x).is_zero()

    def test_norm_of_diagonal_embedding(self):
        field = UnramifiedField(P, 3, M)
        t = sc(5)
        n = norm_L(field.embed(t))
        assert n.agrees(t * t * t)

    def test_norm_degree_one_is_identity(self):
        field = UnramifiedField(P, 1, M)
        x = field.embed(sc(11))
        assert norm_L(x).agrees(sc(11))

    def test_norm_against_multiplication_matrix_determinant(self):
        # charpoly oracle: for x = a + b*w with w^2 = -c1 w - c0,
        # mult-by-x matrix is [[a, -b c0], [b, a - b c1]]; det = norm
        rng = random.Random(10)
        field = UnramifiedField(P, 2, M)
        c0, c1 = field.modulus[0], field.modulus[1]
        for _ in range(12):
            a, b = rng.randint(0, 10**5), rng.randint(0, 10**5)
            x = field.element([a, b])
            expected = sc(a) * (sc(a) - sc(b) * sc(c1)) + sc(b) * sc(b) * sc(c0)
            assert norm_L(x).agrees(expected)

    def test_norm_frobenius_invariant(self):
        rng = random.Random(11)
        field = UnramifiedField(P, 3, M)
        for _ in range(6):
            x = field.element([rng.randint(1, 500) for _ in range(3)])
            assert norm_L(x.frobenius()).agrees(norm_L(x))

    def test_trace_of_embedding(self):
        field = UnramifiedField(P, 2, M)
        assert trace_L(field.embed(sc(3))).agrees(sc(6))

    def test_inverse(self):
        rng = random.Random(12)
        field = UnramifiedField(P, 2, M)
        for _ in range(10):
            x = field.element([rng.randint(0, 900), rng.randint(0, 900)])
            if x.val() > 0 or x.is_zero():
                continue
            prod = x * x.invert()
            assert (prod - field.one()).is_zero()

    def test_unramified_power_char(self):
        field = UnramifiedField(P, 2, M)
        t = sc(1 + P)
        c = field.element([2, 0])
        out = power_char(t, c)
        assert out.is_rational()
        assert out.rational_part().agrees(t * t)

    def test_as_integer_recognition(self):
        assert sc(5).as_integer() == 5
        assert sc(-3).as_integer() == -3
        assert sc(0).as_integer() == 0
        assert sc(Fraction(1, 2)).as_integer() is None
        assert sc(Fraction(1, P)).as_integer() is None
