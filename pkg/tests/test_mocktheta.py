"""g3 family: series evaluation, transports, and the structural identities."""

import random
from fractions import Fraction

import pytest
from mpmath import mp, workdps

from mockradial import (AffineRelation, BigComplex, affine_transport,
                        eta_quotient_formal_zero, g3_eval, g_tilde_eval,
                        g_tilde_tail, kang_rhs, lost_notebook_sides, mtc73_rhs,
                        root_of_unity, tailid2_rhs, tailid_rhs)
from mockradial.errors import DomainError


def brute_g3(x, q, terms):
    s = mp.mpc(0)
    for n in range(1, terms + 1):
        d1 = mp.fprod([1 - x * q ** j for j in range(n)])
        d2 = mp.fprod([1 - (q / x) * q ** j for j in range(n)])
        s += q ** (n * (n - 1)) / (d1 * d2)
    return s


def brute_g_tilde(x, q, terms):
    s = mp.mpc(0)
    for n in range(terms):
        d1 = mp.fprod([1 - x * q ** j for j in range(n + 1)])
        d2 = mp.fprod([1 - (q / x) * q ** j for j in range(n)])
        s += q ** (n * n) / (d1 * d2)
    return -x * s


class TestG3:
    def test_against_direct_oracle(self):
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpf(-1), mp.mpf("0.5")
            direct = brute_g3(x, q, 100)
            v = g3_eval(x, q, digits)
            assert abs(v.to_mpc() - direct) < mp.mpf(10) ** (-(digits - 5))

    def test_l2_relation(self):
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpf("0.3"), mp.mpf("0.2")
            g3v = g3_eval(x, q, digits).to_mpc()
            gt = g_tilde_eval(x, q, digits).to_mpc()
            assert abs(g3v + (1 + gt / x) / x) < mp.mpf(10) ** (-(digits - 6))

    def test_functional_equation(self):
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpc("0.4", "0.2"), mp.mpf("0.3")
            resid = (g3_eval(x * q, q, digits).to_mpc()
                     + x ** 3 * g3_eval(x, q, digits).to_mpc() + x ** 2 + x)
            assert abs(resid) < mp.mpf(10) ** (-(digits - 6))

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            g3_eval(0.5, 1.2, 30)
        with pytest.raises(DomainError):
            g3_eval(0, 0.5, 30)


class TestGTilde:
    def test_against_direct_oracle(self):
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpf("0.5"), mp.mpf("0.25")
            direct = brute_g_tilde(x, q, 80)
            v = g_tilde_eval(x, q, digits)
            assert abs(v.to_mpc() - direct) < mp.mpf(10) ** (-(digits - 5))

    def test_bilateral_identity_p1(self):
        from mockradial import appell_lerch, euler_infinite, jacobi_theta
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpf("0.7"), mp.mpf("0.3")
            lhs = (g_tilde_eval(x, q, digits).to_mpc()
                   + g_tilde_tail(BigComplex.from_mpc(x, digits),
                                  BigComplex.from_mpc(q, digits),
                                  digits=digits).to_mpc())
            rhs = (-jacobi_theta(x, q, digits).to_mpc()
                   / (x * euler_infinite(q, digits).to_mpc())
                   * appell_lerch(x ** -2, q, x, digits).to_mpc())
            assert abs(lhs - rhs) < mp.mpf(10) ** (-(digits - 8))


class TestGTildeTail:
    def test_exact_minus_one(self):
        z2 = root_of_unity(1, 2)
        # n=1 term: (x)_1 q = (1 - (-1)) (-1) = -2; n=2 term vanishes
        assert g_tilde_tail(z2, z2, terms=2) == -2
        assert g_tilde_tail(z2, z2, terms=1) == -2

    def test_x_equals_q_first_term(self):
        q = root_of_unity(1, 5)
        assert g_tilde_tail(q, q, terms=1) == (1 - q) * q

    def test_numeric_adaptive_matches_oracle(self):
        digits = 28   # the 60-term oracle's own tail is ~ q^61 ~ 3e-25
        with workdps(digits + 20):
            x, q = mp.mpf("0.6"), mp.mpf("0.4")
            direct = mp.mpc(0)
            for n in range(1, 61):
                p1 = mp.fprod([1 - (q / x) * q ** j for j in range(n - 1)])
                p2 = mp.fprod([1 - x * q ** j for j in range(n)])
                direct += p1 * p2 * q ** n
            v = g_tilde_tail(BigComplex.from_mpc(x, digits),
                             BigComplex.from_mpc(q, digits), digits=digits)
            assert abs(v.to_mpc() - direct) < mp.mpf(10) ** (-(digits - 6))

    def test_pole_case_termination(self):
        # exact root-of-unity inputs in the pole case: terms beyond k' vanish
        z2 = root_of_unity(1, 2)
        assert g_tilde_tail(z2, z2, terms=2) == g_tilde_tail(z2, z2, terms=12)


class TestAffineTransport:
    def test_shift_then_invert_is_identity(self):
        x = root_of_unity(1, 5)
        q = root_of_unity(1, 7)
        rel, new_x = affine_transport(x, q, "shift_feq")
        assert new_x == x * q
        roundtrip = rel.compose(rel.inverted())
        assert roundtrip.scale == 1
        assert roundtrip.offset == 0

    def test_exact_coefficients_at_zeta6(self):
        # q = 1 is only a formal placeholder here; the coefficients depend on x
        x = root_of_unity(1, 6)
        rel, _ = affine_transport(x, root_of_unity(0, 1), "shift_feq")
        assert rel.scale == 1                      # -zeta_6^{-3} = 1
        assert rel.offset == x ** 2 + x            # -zeta_6^{-3}(x^2 + x)

    def test_numeric_consistency(self):
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpf("0.5"), mp.mpf("0.3")
            rel, new_x = affine_transport(BigComplex.from_mpc(x, digits),
                                          BigComplex.from_mpc(q, digits),
                                          "shift_feq")
            lhs = g3_eval(x, q, digits).to_mpc()
            rhs = rel.apply(g3_eval(new_x.to_mpc(), q, digits)).to_mpc()
            assert abs(lhs - rhs) < mp.mpf(10) ** (-(digits - 6))

    def test_invert_kind(self):
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpf("0.6"), mp.mpf("0.3")
            rel, new_x = affine_transport(BigComplex.from_mpc(x, digits),
                                          BigComplex.from_mpc(q, digits),
                                          "invert")
            assert abs(new_x.to_mpc() - 1 / x) < mp.mpf(10) ** (-(digits - 2))
            lhs = g3_eval(x, q, digits).to_mpc()
            rhs = rel.apply(g3_eval(1 / x, q, digits)).to_mpc()
            assert abs(lhs - rhs) < mp.mpf(10) ** (-(digits - 6))

    def test_composition_matches_direct(self):
        # the composed scale grows like prod x_i^{-3}; evaluate with headroom
        digits = 35
        inner = digits + 25
        with workdps(inner + 20):
            x, q = mp.mpf("0.9"), mp.mpf("0.8")
            rel = AffineRelation.identity()
            cur = x
            for _ in range(10):
                step, nxt = affine_transport(BigComplex.from_mpc(cur, inner),
                                             BigComplex.from_mpc(q, inner),
                                             "shift_feq")
                rel = rel.compose(step)
                cur = nxt.to_mpc()
            lhs = g3_eval(x, q, inner).to_mpc()
            rhs = rel.apply(g3_eval(cur, q, inner)).to_mpc()
            assert abs(lhs - rhs) < mp.mpf(10) ** (-(digits - 8))


class TestKang:
    def test_identity_real_point(self):
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpf("0.55"), mp.mpf("0.35")
            w3 = mp.expjpi(mp.mpf(2) / 3)
            lhs = (g3_eval(x, q, digits).to_mpc()
                   + g3_eval(w3 * x, q, digits).to_mpc()
                   + g3_eval(w3 ** 2 * x, q, digits).to_mpc())
            rhs = kang_rhs(x, q, digits).to_mpc()
            assert abs(lhs - rhs) < mp.mpf(10) ** (-(digits - 8))

    def test_identity_complex_point(self):
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpc("0.2", "0.4"), mp.mpc(0, "0.5")
            w3 = mp.expjpi(mp.mpf(2) / 3)
            lhs = (g3_eval(x, q, digits).to_mpc()
                   + g3_eval(w3 * x, q, digits).to_mpc()
                   + g3_eval(w3 ** 2 * x, q, digits).to_mpc())
            rhs = kang_rhs(x, q, digits).to_mpc()
            assert abs(lhs - rhs) < mp.mpf(10) ** (-(digits - 8))

    def test_cube_root_scaling_invariance(self):
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpf("0.5"), mp.mpf("0.3")
            w3 = mp.expjpi(mp.mpf(2) / 3)
            a = kang_rhs(x, q, digits).to_mpc()
            b = kang_rhs(w3 * x, q, digits).to_mpc()
            assert abs(a - b) < mp.mpf(10) ** (-(digits - 5))


class TestTailIdentity:
    def test_equals_g3(self):
        digits = 40
        with workdps(digits + 20):
            x, q, z = mp.mpf("0.6"), mp.mpf("0.3"), mp.mpf("1.1")
            lhs = g3_eval(x, q, digits).to_mpc()
            rhs = tailid_rhs(x, q, z, digits).to_mpc()
            assert abs(lhs - rhs) < mp.mpf(10) ** (-(digits - 8))

    def test_z_independence(self):
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpf("0.55"), mp.mpf("0.28")
            vals = [tailid_rhs(x, q, z, digits).to_mpc()
                    for z in (mp.mpf("0.9"), mp.mpf("1.2"), mp.mpc("0.8", "0.3"))]
            for v in vals[1:]:
                assert abs(v - vals[0]) < mp.mpf(10) ** (-(digits - 8))

    def test_sqrt_q_specialization(self):
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpf("0.6"), mp.mpf("0.3")
            r = mp.sqrt(q)
            a = tailid_rhs(x, q, x * r, digits).to_mpc()
            b = tailid2_rhs(x, q, r, digits).to_mpc()
            assert abs(a - b) < mp.mpf(10) ** (-(digits - 8))
            # the other square-root branch gives the same value
            c = tailid2_rhs(x, q, -r, digits).to_mpc()
            assert abs(c - b) < mp.mpf(10) ** (-(digits - 8))


class TestLostNotebook:
    def test_p1_reduction_point(self):
        digits = 40
        with workdps(digits + 20):
            x, q = mp.mpf("0.7"), mp.mpf("0.3")
            lhs, rhs = lost_notebook_sides(-1 / x, -x, q, digits)
            assert abs(lhs.to_mpc() - rhs.to_mpc()) < mp.mpf(10) ** (-(digits - 8))

    def test_generic_point(self):
        digits = 40
        with workdps(digits + 20):
            lhs, rhs = lost_notebook_sides(mp.mpf("1.3"), mp.mpf("0.8"),
                                           mp.mpf("0.25"), digits)
            assert abs(lhs.to_mpc() - rhs.to_mpc()) < mp.mpf(10) ** (-(digits - 8))

    def test_a_b_equal_one(self):
        digits = 40
        with workdps(digits + 20):
            lhs, rhs = lost_notebook_sides(1, 1, mp.mpf("0.5"), digits)
            assert abs(lhs.to_mpc() - rhs.to_mpc()) < mp.mpf(10) ** (-(digits - 8))


class TestMtc73:
    def test_real_point(self):
        digits = 40
        with workdps(digits + 20):
            x = mp.mpf("0.5")
            lhs = g3_eval(x, x ** 6, digits).to_mpc()
            rhs = mtc73_rhs(x, digits).to_mpc()
            assert abs(lhs - rhs) < mp.mpf(10) ** (-(digits - 8))

    def test_complex_point(self):
        digits = 40
        with workdps(digits + 20):
            x = mp.mpc("0.3", "0.2")
            lhs = g3_eval(x, x ** 6, digits).to_mpc()
            rhs = mtc73_rhs(x, digits).to_mpc()
            assert abs(lhs - rhs) < mp.mpf(10) ** (-(digits - 8))

    def test_rewritten_vs_original_eta_forms(self):
        digits = 40
        with workdps(digits + 20):
            x = mp.mpf("0.6")
            a = mtc73_rhs(x, digits, rewritten=True).to_mpc()
            b = mtc73_rhs(x, digits, rewritten=False).to_mpc()
            assert abs(a - b) < mp.mpf(10) ** (-(digits - 8))

    def test_eta_quotient_formal_zero_at_sixth_roots(self):
        for kp in (1, 2, 3, 5):
            z = root_of_unity(1, 6 * kp)
            assert eta_quotient_formal_zero(z, 6 * kp)
