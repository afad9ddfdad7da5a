"""Pochhammer symbols, infinite products, Jacobi triple product, Appell-Lerch."""

import random
from fractions import Fraction
from math import gcd

import pytest
from mpmath import mp, workdps

from mockradial import (BigComplex, DivisionByZero, DomainError, NearSingular,
                        appell_lerch, euler_infinite, jacobi_theta,
                        jacobi_triple, periodic_pochhammer_closed_form,
                        pochhammer, pochhammer_infinite, pochhammer_negative,
                        root_of_unity)
from mockradial.exact import CyclotomicNumber, embed_complex


class TestPochhammer:
    def test_empty_product(self):
        assert pochhammer(Fraction(3, 7), Fraction(1, 2), 0) == 1
        v = pochhammer(BigComplex(0.3, 0.1, digits=30), BigComplex(0.5, digits=30), 0)
        assert abs(v - 1) == 0

    def test_first_factor_zero(self):
        assert pochhammer(1, Fraction(1, 3), 3).is_zero()

    def test_zeta2_zeta2_two(self):
        z2 = root_of_unity(1, 2)
        assert pochhammer(z2, z2, 2).is_zero()
        # intermediate factors are (1 - z2) = 2 and (1 - z2^2) = 0
        assert pochhammer(z2, z2, 1) == 2

    def test_cocycle_exact(self):
        rng = random.Random(5)
        for _ in range(30):
            n = rng.randint(1, 20)
            a = root_of_unity(rng.randint(0, n - 1), n) * Fraction(rng.randint(1, 3), 2)
            q = root_of_unity(rng.randint(0, n - 1), n)
            m1, n1 = rng.randint(0, 4), rng.randint(0, 4)
            lhs = pochhammer(a, q, m1 + n1)
            rhs = pochhammer(a, q, m1) * pochhammer(a * q ** m1, q, n1)
            assert lhs == rhs

    def test_cocycle_numeric(self):
        rng = random.Random(6)
        digits = 40
        with workdps(digits + 10):
            for _ in range(20):
                a = mp.mpc(rng.uniform(-1, 1), rng.uniform(-1, 1))
                q = mp.mpc(rng.uniform(-0.6, 0.6), rng.uniform(-0.4, 0.4))
                av = BigComplex.from_mpc(a, digits)
                qv = BigComplex.from_mpc(q, digits)
                m1, n1 = rng.randint(0, 5), rng.randint(0, 5)
                lhs = pochhammer(av, qv, m1 + n1)
                aq = BigComplex.from_mpc(a * q ** m1, digits)
                rhs = pochhammer(av, qv, m1) * pochhammer(aq, qv, n1)
                assert abs(lhs - rhs) < mp.mpf(10) ** (-(digits - 5))

    def test_exact_numeric_agreement(self):
        digits = 40
        a = root_of_unity(1, 5)
        q = root_of_unity(1, 7) * Fraction(1, 2)
        exact = pochhammer(a, q, 4)
        with workdps(digits + 10):
            an = embed_complex(a, digits)
            qn = embed_complex(root_of_unity(1, 7), digits) * Fraction(1, 2)
            numeric = pochhammer(an, qn, 4, digits=digits)
            assert abs(embed_complex(exact, digits) - numeric) < mp.mpf(10) ** (-(digits - 5))


class TestPochhammerNegative:
    def test_n1_form(self):
        # (a; q)_{-1} = -q / (a (1 - q/a))
        a, q = Fraction(3), Fraction(1, 4)
        expected = -q / (a * (1 - q / a))
        assert pochhammer_negative(a, q, 1).as_rational() == expected

    def test_minus_one_substitution(self):
        # (-1; q)_{-1} = q / (1 + q)
        q = Fraction(2, 5)
        assert pochhammer_negative(Fraction(-1), q, 1).as_rational() == q / (1 + q)

    def test_backward_recurrence_oracle(self):
        # extend (a;q)_m backwards: (a;q)_{m-1} = (a;q)_m / (1 - a q^{m-1})
        a, q = Fraction(2), Fraction(1, 2)
        value = Fraction(1)
        for m in (0, -1):   # produce (a;q)_{-1}, then (a;q)_{-2}
            value = value / (1 - a * q ** (m - 1))
        assert pochhammer_negative(a, q, 2).as_rational() == value
        assert value == Fraction(1, 21)

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            pochhammer_negative(CyclotomicNumber.zero(1), Fraction(1, 2), 1)


class TestPochhammerInfinite:
    def test_zero_argument(self):
        v, rep = pochhammer_infinite(0, 0.5, 30)
        assert abs(v - 1) == 0
        assert rep.tail_bound == 0.0

    def test_against_long_product(self):
        digits = 30
        with workdps(80):
            q = mp.mpf("0.5")
            direct = mp.fprod([1 - q * q ** j for j in range(200)])
            v, rep = pochhammer_infinite(q, q, digits)
            assert abs(v.to_mpc() - direct) < mp.mpf(10) ** (-digits)
            assert rep.tail_bound < 10.0 ** (-digits)

    def test_exact_zero_factor(self):
        v, rep = pochhammer_infinite(1, 0.3, 30)
        assert abs(v) == 0
        assert rep.tail_bound == 0.0

    def test_domain_error(self):
        with pytest.raises(DomainError):
            pochhammer_infinite(0.5, 1.001, 30)
        with pytest.raises(DomainError):
            pochhammer_infinite(0.5, 1 - 1e-12, 30)

    def test_near_singular(self):
        with workdps(80):
            a = 1 + mp.mpf(10) ** -40
            with pytest.raises(NearSingular):
                pochhammer_infinite(a, 0.5, 30)

    def test_term_cap_override(self):
        v, rep = pochhammer_infinite(0.5, 1 - 1e-10, 20, max_terms=500)
        assert rep.terms_used == 500


class TestJacobiTriple:
    def test_x_equals_q_is_zero(self):
        assert abs(jacobi_triple(0.4, 0.4, 30)) == 0

    def test_against_theta_series(self):
        rng = random.Random(12)
        digits = 30
        for _ in range(25):
            with workdps(digits + 15):
                x = mp.mpc(rng.uniform(0.1, 3), rng.uniform(-1, 1))
                q = mp.mpf(rng.uniform(0.05, 0.8))
                prod = jacobi_triple(x, q, digits)
                series = jacobi_theta(x, q, digits)
                assert abs(prod.to_mpc() - series.to_mpc()) < mp.mpf(10) ** (-(digits - 5))

    def test_x_to_q_over_x_symmetry(self):
        digits = 30
        with workdps(digits + 10):
            x = mp.mpc("0.7", "0.1")
            q = mp.mpf("0.4")
            a = jacobi_triple(x, q, digits)
            b = jacobi_triple(q / x, q, digits)
            assert abs(a.to_mpc() - b.to_mpc()) < mp.mpf(10) ** (-(digits - 5))

    def test_zero_x_rejected(self):
        with pytest.raises(DomainError):
            jacobi_triple(0, 0.5, 30)


class TestAppellLerch:
    def test_shift_property_spec_point(self):
        digits = 40
        with workdps(digits + 10):
            x, q, z, w = (mp.mpf("0.3"), mp.mpf("0.35"), mp.mpf("0.8"),
                          mp.mpf("1.3"))
            lhs = appell_lerch(x, q, z, digits).to_mpc() - appell_lerch(x, q, w, digits).to_mpc()
            e3 = euler_infinite(q, digits).to_mpc() ** 3
            rhs = (w * e3 * jacobi_theta(z / w, q, digits).to_mpc()
                   * jacobi_theta(x * z * w, q, digits).to_mpc()
                   / (jacobi_theta(z, q, digits).to_mpc()
                      * jacobi_theta(w, q, digits).to_mpc()
                      * jacobi_theta(x * z, q, digits).to_mpc()
                      * jacobi_theta(x * w, q, digits).to_mpc()))
            assert abs(lhs - rhs) < mp.mpf(10) ** (-(digits - 8))

    def test_against_partial_sum(self):
        digits = 30
        with workdps(digits + 20):
            q = mp.mpf("0.3")
            x, z = q, mp.mpf("0.8")
            direct = mp.mpc(0)
            for n in range(-60, 61):
                direct += (-z) ** n * q ** (n * (n - 1) // 2) / (1 - x * z * q ** (n - 1))
            direct /= jacobi_triple(z, q, digits + 10).to_mpc()
            v = appell_lerch(x, q, z, digits)
            assert abs(v.to_mpc() - direct) < mp.mpf(10) ** (-(digits - 8))

    def test_truncation_stability(self):
        digits = 30
        with workdps(digits + 25):
            x, q, z = mp.mpf("0.3"), mp.mpf("0.4"), mp.mpf("0.9")
            a = appell_lerch(x, q, z, digits).to_mpc()
            b = appell_lerch(x, q, z, digits + 12).to_mpc()
            assert abs(a - b) < mp.mpf(10) ** (-digits) * max(1, abs(a))

    def test_near_pole_rejected(self):
        with pytest.raises((NearSingular, DomainError)):
            # x z = 1 puts the n = 1 denominator at exactly zero
            appell_lerch(2.0, 0.4, 0.5, 30)


class TestPeriodicPochhammerClosedForm:
    def test_examples(self):
        assert periodic_pochhammer_closed_form(root_of_unity(1, 2), 1) == 4
        assert periodic_pochhammer_closed_form(root_of_unity(1, 6), 1) == 1
        z7 = root_of_unity(1, 7)
        expected = 2 - z7 - z7.inverse()
        assert periodic_pochhammer_closed_form(z7, 1) == expected
        # equals (x; q)_1 (q/x; q)_1 at q = 1
        direct = (1 - z7) * (1 - z7.inverse())
        assert periodic_pochhammer_closed_form(z7, 1) == direct

    def test_equals_literal_product_exhaustive(self):
        # (x, q/x; q)_{k'} for q a primitive k'-th root equals the closed form,
        # for every root of unity x of order <= 24 and k' <= 12
        for m in range(1, 25):
            for kp in range(1, 13):
                N = m * kp // gcd(m, kp)
                for e in ([1] if m == 1 else [e for e in range(1, m) if gcd(e, m) == 1][:2]):
                    x = root_of_unity(e * (N // m), N)
                    q = root_of_unity(N // kp, N)
                    prod = pochhammer(x, q, kp) * pochhammer(q / x, q, kp)
                    assert prod == periodic_pochhammer_closed_form(x, kp), (m, kp, e)

    def test_zero_rejected(self):
        with pytest.raises(DivisionByZero):
            periodic_pochhammer_closed_form(CyclotomicNumber.zero(4), 3)
