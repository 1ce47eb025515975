"""Principal-series actions: analyticity, the three one-parameter families,
the XZ factorization, the whole-group action, and decay reports."""

import math
import random
from fractions import Fraction
import pytest

from iwahorips.padic import PadicScalar, DivergenceError, DomainError
from iwahorips.group import IwahoriMatrix, OneParamFactor, split_uq0
from iwahorips.series import Role, TateSeries, Variable, unipotent_variables
from iwahorips.actions import (
    SYMBOLIC,
    Character,
    PSVector,
    Symbolic,
    act_diag,
    act_group,
    act_lower,
    act_upper,
    check_analytic,
    decay_report,
    xz_decompose,
)

P = 7
M = 12
D = 6


def sc(x, prec=M):
    if isinstance(x, Fraction):
        return PadicScalar.from_fraction(x, P, prec)
    return PadicScalar.from_int(x, P, prec)


def trivial_chi(n):
    return Character.trivial(n, P, M)


def chi_of(*cs):
    return Character.from_ints(cs, P, M)


def ps_vector(coeffs, chi, n, trunc=D):
    vars = unipotent_variables(n)
    return PSVector(TateSeries.from_terms(vars, {e: sc(c) for e, c in coeffs.items()}, trunc), chi, n)


def random_g(rng, n, p=P, prec=M):
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(1 + p * rng.randrange(p ** (prec - 2)))
            elif i > j:
                row.append(rng.randrange(p ** (prec - 1)))
            else:
                row.append(p * rng.randrange(p ** (prec - 2)))
        rows.append(row)
    return IwahoriMatrix.from_ints(rows, p, prec, tag="G")


def random_ps(rng, chi, n, trunc=D, nterms=4, maxdeg=None):
    vars = unipotent_variables(n)
    maxdeg = maxdeg if maxdeg is not None else trunc
    coeffs = {}
    for _ in range(nterms):
        exps = [0] * len(vars)
        for _ in range(rng.randint(0, maxdeg)):
            exps[rng.randrange(len(vars))] += 1
        coeffs[tuple(exps)] = sc(rng.randrange(1, P**5))
    return PSVector(TateSeries.from_terms(vars, coeffs, trunc), chi, n)


class TestCheckAnalytic:
    def test_trivial_character(self):
        out = check_analytic(trivial_chi(3))
        assert out["analytic"] and all(m == math.inf for m in out["margins"])

    def test_negative_valuation_not_analytic(self):
        # p = 5, e = 1: bound is -3/4; v_p(c) = -1 fails
        chi = Character((PadicScalar.from_fraction(Fraction(1, 5), 5, M),), 5, 1)
        out = check_analytic(chi)
        assert not out["analytic"]
        assert out["margins"][0] == Fraction(-1) - (Fraction(1, 4) - 1)

    def test_margin_for_c_p(self):
        chi = Character.from_ints([P, P], P, M)
        out = check_analytic(chi)
        assert all(m == 1 - (Fraction(1, P - 1) - 1) for m in out["margins"])


class TestActDiag:
    def test_single_substitution_n2(self):
        # action of Diag(t1, 1) on f = a with trivial chi gives t1 * a
        f = ps_vector({(1,): 1}, trivial_chi(2), 2)
        t1 = sc(1 + P)
        out = act_diag(1, t1, f)
        assert out.series.coeff((1,)).agrees(t1)
        assert len(out.series.terms) == 1

    def test_constant_fixed_by_trivial_chi(self):
        f = ps_vector({(0,): 1}, trivial_chi(2), 2)
        out = act_diag(2, sc(1 + 3 * P), f)
        assert out.series.agrees(f.series)

    def test_row_gets_inverse(self):
        f = ps_vector({(1,): 1}, trivial_chi(2), 2)
        t = sc(1 + P)
        out = act_diag(2, t, f)  # a[2,1]: i = 2 row slot
        assert out.series.coeff((1,)).agrees(t.invert())

    def test_monomials_are_torus_eigenvectors(self):
        rng = random.Random(50)
        chi = chi_of(2, 3, 1)
        for _ in range(6):
            exps = tuple(rng.randint(0, 2) for _ in range(3))
            f = ps_vector({exps: 1}, chi, 3)
            t = sc(1 + P * rng.randrange(1, P**4))
            out = act_diag(2, t, f)
            assert len(out.series.terms) <= 1
            if out.series.terms:
                assert list(out.series.terms_dict()) == [exps]

    def test_symbolic_matches_substitute_mul_oracle(self):
        # n=2, trivial chi, f = a: coefficients of xi^m match the hand
        # expansion of (1 + p xi) a
        f = ps_vector({(1,): 1}, trivial_chi(2), 2)
        out = act_diag(1, SYMBOLIC, f, chi=None)
        s = out.series
        assert s.coeff((1, 0)).agrees(sc(1))
        assert s.coeff((1, 1)).agrees(sc(P))
        assert all(sum(e) <= 2 for e in s.terms_dict())

    def test_symbolic_row_inverse_expansion(self):
        # k = 2 acts on a[2,1] by (1 + p xi)^{-1}: alternating p-powers
        f = ps_vector({(1,): 1}, trivial_chi(2), 2, trunc=4)
        out = act_diag(2, SYMBOLIC, f)
        s = out.series
        for m in range(0, 4):
            expected = sc((-P) ** m)
            assert s.coeff((1, m)).agrees(expected)

    def test_fN_gM_paper_coefficients(self):
        # one-parameter diagonal action on a monomial: the xi^m coefficient
        # equals sum_{N+M=m} f_N g_M with
        #   f_N = sum_{|q|=N} prod_j binom(nu_{k,j}+q-1, q) (-p)^q
        #   g_M = sum_{|u|=M} prod_i binom(nu_{i,k}, u) p^u
        for n, k, exps in [
            (2, 1, (2,)),
            (2, 2, (3,)),
            (3, 2, (1, 0, 2)),  # a[2,1]^1 a[3,2]^2, k = 2 touches both
            (3, 1, (2, 1, 0)),
        ]:
            f = ps_vector({exps: 1}, trivial_chi(n), n, trunc=8)
            out = act_diag(k, SYMBOLIC, f)
            roots = [(i, j) for i in range(2, n + 1) for j in range(1, i)]
            nu = dict(zip(roots, exps))
            row = [nu[(k, j)] for j in range(1, k)]  # exponents with i = k
            col = [nu[(i, k)] for i in range(k + 1, n + 1)]
            for m in range(0, 8 - sum(exps) + 1):
                total = Fraction(0)
                for N in range(m + 1):
                    MM = m - N
                    fN = Fraction(0)
                    for qs in _compositions(N, len(row)):
                        term = Fraction(1)
                        for nu_kj, q in zip(row, qs):
                            term *= math.comb(nu_kj + q - 1, q) * (-P) ** q
                        fN += term
                    gM = Fraction(0)
                    for us in _compositions(MM, len(col)):
                        term = Fraction(1)
                        for nu_ik, u in zip(col, us):
                            if u > nu_ik:
                                term = Fraction(0)
                                break
                            term *= math.comb(nu_ik, u) * P**u
                        gM += term
                    if not row and N > 0:
                        fN = Fraction(0)
                    if not col and MM > 0:
                        gM = Fraction(0)
                    total += fN * gM
                got = out.series.coeff(exps + (m,)) if n == 2 else out.series.coeff(tuple(exps) + (m,))
                assert got.agrees(sc(Fraction(total))), (n, k, exps, m)

    def test_divergent_character_rejected(self):
        chi = Character((sc(Fraction(1, P)), sc(0)), P, 1)
        f = ps_vector({(1,): 1}, chi, 2)
        with pytest.raises(DivergenceError):
            act_diag(1, sc(1 + P), f)


def _compositions(total, parts):
    if parts == 0:
        yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class TestActLower:
    def test_n2_concrete(self):
        f = ps_vector({(1,): 1}, trivial_chi(2), 2)
        y = sc(4)
        out = act_lower(2, 1, y, f)
        assert out.series.coeff((1,)).agrees(sc(1))
        assert out.series.coeff((0,)).agrees(-y)

    def test_zero_parameter_fixes(self):
        rng = random.Random(51)
        f = random_ps(rng, trivial_chi(3), 3)
        out = act_lower(3, 1, sc(0), f)
        assert out.series.agrees(f.series)

    def test_paper_substitution_rule_n3(self):
        # (i,j) = (3,2) acting on a[3,1]: a[3,1] -> a[3,1] - y a[2,1]
        f = ps_vector({(0, 1, 0): 1}, trivial_chi(3), 3)
        out = act_lower(3, 2, Symbolic(), f)
        s = out.series
        assert s.coeff((0, 1, 0, 0)).agrees(sc(1))
        assert s.coeff((1, 0, 0, 1)).agrees(sc(-1))
        assert len(s.terms) == 2

    def test_degree_preserved(self):
        rng = random.Random(52)
        f = random_ps(rng, trivial_chi(3), 3)
        out = act_lower(3, 2, Symbolic(), f)
        assert not out.series.truncated

    def test_yN_coefficients_match_multinomial_formula(self):
        # the y^N coefficient of the symbolic lower action on a monomial is
        #   sum_{|m|=N} prod_{k<=j} binom(nu_{i,k}, m_k) (-a[j,k])^(m_k) a[i,k]^(nu-m_k)
        # with a[j,j] = 1; checked for n = 3 against direct enumeration
        n = 3
        roots = [(2, 1), (3, 1), (3, 2)]
        for i, j, exps in [(3, 2, (1, 2, 2)), (3, 1, (0, 2, 1)), (2, 1, (2, 0, 1))]:
            f = ps_vector({exps: 1}, trivial_chi(n), n, trunc=8)
            out = act_lower(i, j, Symbolic(), f)
            vars = out.series.vars
            nu = dict(zip(roots, exps))
            row = [(k, nu.get((i, k), 0)) for k in range(1, j + 1)]
            got_by_yN = {}
            for e, c in out.series.terms_dict().items():
                N = e[vars.index["y"]]
                stripped = tuple(x for idx, x in enumerate(e) if vars.names[idx] != "y")
                got_by_yN.setdefault(N, {})[stripped] = c
            total_deg = sum(exps)
            for N in range(0, total_deg + 1):
                expected = {}
                for ms in _compositions(N, len(row)):
                    coef = 1
                    mono = {r: nu[r] for r in roots}
                    ok = True
                    for (k, nu_ik), m in zip(row, ms):
                        if m > nu_ik:
                            ok = False
                            break
                        coef *= math.comb(nu_ik, m) * (-1) ** m
                        mono[(i, k)] = nu_ik - m
                        if k < j:
                            mono[(j, k)] = mono.get((j, k), 0) + m
                    if not ok or coef == 0:
                        continue
                    key = tuple(mono[r] for r in roots)
                    expected[key] = expected.get(key, 0) + coef
                got = got_by_yN.get(N, {})
                live = {k: v for k, v in expected.items() if v}
                assert set(got) == set(live), (i, j, exps, N)
                for key, coef in live.items():
                    assert got[key].agrees(sc(coef))


class TestXZDecompose:
    def test_gl2_closed_forms(self):
        X, Z, vars = xz_decompose(1, 2, 2, P, D, M)
        # x_{2,1} = a (1 - y a)^{-1} = a + y a^2 + y^2 a^3 (joint degree <= 6 keeps q <= 2)
        x21 = X[1][0]
        assert x21.coeff((1, 0)).agrees(sc(1))
        assert x21.coeff((2, 1)).agrees(sc(1))
        assert x21.coeff((3, 2)).agrees(sc(1))
        assert len(x21.terms) == 3
        # z_{1,1} = 1 - y a
        z11 = Z[0][0]
        assert z11.coeff((0, 0)).agrees(sc(1)) and z11.coeff((1, 1)).agrees(sc(-1))
        assert len(z11.terms) == 2
        # z_{1,2} = -y
        z12 = Z[0][1]
        assert z12.coeff((0, 1)).agrees(sc(-1)) and len(z12.terms) == 1
        # z_{2,2} = (1 - y a)^{-1} = 1 + ya + y^2 a^2 + y^3 a^3
        z22 = Z[1][1]
        for q in range(4):
            assert z22.coeff((q, q)).agrees(sc(1))
        assert len(z22.terms) == 4

    def test_y_zero_specialization(self):
        X, Z, vars = xz_decompose(1, 3, 3, P, D, M)
        for k in range(3):
            for l in range(3):
                x_spec = X[k][l].specialize("y", sc(0))
                z_spec = Z[k][l].specialize("y", sc(0))
                if k == l:
                    assert z_spec.coeff((0, 0, 0, 0)).agrees(sc(1)) and len(z_spec.terms) == 1
                if k > l:
                    assert len(x_spec.terms) <= 1  # equals a[k,l]
                if k < l:
                    assert z_spec.is_zero()

    def test_structural_forms(self):
        for (i, j) in [(1, 2), (1, 3), (2, 3)]:
            X, Z, vars = xz_decompose(i, j, 3, P, D, M)
            for r in range(3):
                zr = Z[r][r]
                assert zr.coeff((0, 0, 0, 0)).agrees(sc(1))
                ydeg = zr.decay_profile("y")
                assert set(ydeg) <= set(range(D + 1)) and 0 in ydeg
                # all non-constant terms carry y
                for exps in zr.terms_dict():
                    if sum(exps):
                        assert exps[-1] >= 1
                for s in range(r + 1, 3):
                    for exps in Z[r][s].terms_dict():
                        assert exps[-1] >= 1  # divisible by y
                for l in range(r):
                    assert X[r][l].min_val() >= 0  # integral

    def test_reconstruction_numeric_oracle_n3(self):
        # numeric triangular factorization of the specialized matrix agrees
        rng = random.Random(53)
        for (i, j) in [(1, 2), (1, 3), (2, 3)]:
            X, Z, vars = xz_decompose(i, j, 3, P, D, M)
            for _ in range(4):
                point = {
                    "a[2,1]": sc(P * rng.randrange(1, P**3)),
                    "a[3,1]": sc(P * rng.randrange(1, P**3)),
                    "a[3,2]": sc(P * rng.randrange(1, P**3)),
                    "y": sc(P * rng.randrange(1, P**3)),
                }
                A = IwahoriMatrix.from_ints([[1, 0, 0], [0, 1, 0], [0, 0, 1]], P, M)
                rows = [[sc(1) if a == b else sc(0) for b in range(3)] for a in range(3)]
                rows[1][0] = point["a[2,1]"]
                rows[2][0] = point["a[3,1]"]
                rows[2][1] = point["a[3,2]"]
                A = IwahoriMatrix(3, rows, p=P, prec=M)
                E = [[sc(1) if a == b else sc(0) for b in range(3)] for a in range(3)]
                E[i - 1][j - 1] = -point["y"]
                C = IwahoriMatrix(3, E, p=P, prec=M) @ A
                u_num, q_num = split_uq0(C.with_tag("G"))
                for k in range(3):
                    for l in range(3):
                        xv = X[k][l].evaluate(point).value
                        zv = Z[k][l].evaluate(point).value
                        assert xv.agrees(u_num.entries[k][l], abs_digits=M - D)
                        assert zv.agrees(q_num.entries[k][l], abs_digits=M - D)


class TestActUpper:
    def test_constant_with_trivial_chi(self):
        f = ps_vector({(0,): 1}, trivial_chi(2), 2)
        out = act_upper(1, 2, Symbolic(), f)
        assert out.series.coeff((0, 0)).agrees(sc(1))
        assert len(out.series.terms) == 1

    def test_n2_character_gives_binomial_series(self):
        # f = 1, chi = (c1, c2): result is (1 - y a)^(c2 - c1)
        c1, c2 = 2, 5
        chi = chi_of(c1, c2)
        f = ps_vector({(0,): 1}, chi, 2)
        out = act_upper(1, 2, Symbolic(), f)
        vars = out.series.vars
        u = TateSeries.from_terms(vars, {(1, 1): sc(-1)}, D)  # -y a
        expected = u.char_power(sc(c2 - c1))
        assert out.series.agrees(expected, abs_digits=M - 2)

    def test_n2_f_a_trivial_chi(self):
        # paper base case: f = a maps to a (1 - y a)^{-1}
        f = ps_vector({(1,): 1}, trivial_chi(2), 2)
        out = act_upper(1, 2, Symbolic(), f)
        X, Z, vars = xz_decompose(1, 2, 2, P, D, M)
        assert out.series.agrees(X[1][0])

    def test_concrete_parameter_requires_pzp(self):
        f = ps_vector({(1,): 1}, trivial_chi(2), 2)
        with pytest.raises(DomainError):
            act_upper(1, 2, sc(3), f)

    def test_concrete_specialization_matches_symbolic(self):
        rng = random.Random(54)
        chi = chi_of(1, 0, 2)
        for _ in range(3):
            f = random_ps(rng, chi, 3, maxdeg=2)
            y0 = sc(P * rng.randrange(1, P**3))
            sym = act_upper(1, 3, Symbolic(), f)
            con = act_upper(1, 3, y0, f)
            specialized = sym.series.specialize("y", y0).restrict_vars(con.series.vars)
            assert con.series.agrees(specialized, abs_digits=M - 2)


class TestActGroup:
    def test_identity(self):
        rng = random.Random(55)
        f = random_ps(rng, chi_of(1, 2), 2)
        out = act_group(IwahoriMatrix.identity(2, P, M), f)
        assert out.series.agrees(f.series)

    def test_single_lower_factor_agrees(self):
        f = ps_vector({(1,): 1}, trivial_chi(2), 2)
        y = sc(5)
        g = OneParamFactor("lower", 2, 1, y).to_matrix(2, P, M)
        out = act_group(g, f)
        ref = act_lower(2, 1, y, f)
        assert out.series.agrees(ref.series)

    def test_homomorphism_exact_for_polynomial_cocycle(self):
        # c2 - c1 a nonnegative integer <= D/2 keeps every expansion finite;
        # the two routes then agree exactly
        rng = random.Random(56)
        chi = chi_of(0, 3)
        for _ in range(8):
            f = random_ps(rng, chi, 2, maxdeg=3)
            g = random_g(rng, 2)
            h = random_g(rng, 2)
            lhs = act_group(g, act_group(h, f))
            rhs = act_group(g @ h, f)
            assert (lhs.series - rhs.series).is_zero()

    def test_homomorphism_generic_character_up_to_remainder(self):
        rng = random.Random(65)
        working = 2 * (M - D) + 2
        for _ in range(6):
            chi = chi_of(rng.randint(-6, 6), rng.randint(-6, 6))
            f = random_ps(rng, chi, 2, maxdeg=3)
            g = random_g(rng, 2)
            h = random_g(rng, 2)
            lhs = act_group(g, act_group(h, f, working_trunc=working), working_trunc=working)
            rhs = act_group(g @ h, f, working_trunc=working)
            diff = lhs.series.truncate_deg(D) - rhs.series.truncate_deg(D)
            assert diff.is_zero() or diff.min_val() >= M - D

    def test_defining_relation_oracle(self):
        # evaluate(act(h,f), u) = chi(q^{-1}) f(u') with h^{-1} u = u' q.
        # Linear test vectors, evaluation points in pZ_p (where the evaluate
        # tail bound applies), and the elevated working truncation keep every
        # remainder beyond p^(M-D).
        rng = random.Random(57)
        chi = chi_of(2, 1)
        for _ in range(6):
            f = random_ps(rng, chi, 2, maxdeg=1, nterms=2)
            h = random_g(rng, 2)
            u_rows = [[1, 0], [P * rng.randrange(1, P**4), 1]]
            u = IwahoriMatrix.from_ints(u_rows, P, M, tag="U")
            acted = act_group(h, f, working_trunc=2 * (M - D))
            lhs = acted.evaluate_at_matrix(u).value
            hu = h.inverse() @ u.with_tag("G")
            u2, q = split_uq0(hu)
            rhs = f.evaluate_at_matrix(u2).value * chi.value_on_q0_inverse(q)
            assert lhs.agrees(rhs, abs_digits=M - D)


class TestIntegrality:
    def test_integral_actions_stay_integral(self):
        rng = random.Random(58)
        chi = chi_of(3, 0, 1)
        for _ in range(10):
            f = random_ps(rng, chi, 3, maxdeg=3)
            assert f.series.min_val() >= 0
            t = sc(1 + P * rng.randrange(1, P**3))
            y_low = sc(rng.randrange(1, P**4))
            y_up = sc(P * rng.randrange(1, P**3))
            for out in (
                act_diag(rng.randint(1, 3), t, f),
                act_lower(3, 1, y_low, f),
                act_upper(1, 2, y_up, f),
            ):
                assert out.series.is_zero() or out.series.min_val() >= 0


class TestDecayReport:
    def test_integral_coefficients(self):
        rng = random.Random(59)
        f = random_ps(rng, trivial_chi(2), 2)
        out = act_upper(1, 2, Symbolic(), f)
        rep = decay_report(out, "y")
        assert rep["all_integral"]
        assert all(v >= 0 for v in rep["per_degree_min_valuation"].values())

    def test_scaled_powers(self):
        vars = unipotent_variables(2).extended([Variable("y", Role.UPPER_PARAM)])
        coeffs = {(0, m): sc(P**m) for m in range(4)}
        f = PSVector(TateSeries.from_terms(vars, coeffs, D), trivial_chi(2), 2)
        rep = decay_report(f, "y")
        assert rep["per_degree_min_valuation"] == {m: m for m in range(4)}

    def test_rescaled_upper_action_gains_valuation(self):
        chi = chi_of(1, 2)
        f = ps_vector({(1,): 1}, chi, 2)
        out = act_upper(1, 2, Symbolic(), f)
        scaled = out.series.rescale_variable("y", 1)  # y = p eta view
        rep = scaled.decay_profile("y")
        for m, v in rep.items():
            assert v >= m
