"""Certification harness: numeric radial convergence checks, residual suites
for the structural identities, and exact cyclotomic checks for the fifth-order
corollary and the roots-of-unity conjecture."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from mpmath import mp, mpf, workdps

from .bigcomplex import BigComplex, as_mpc
from .errors import (DomainError, HypothesisViolated, NearSingular,
                     PrecisionExhausted, UnsupportedCase)
from .exact import CyclotomicNumber, _zeta_power, embed_complex
from .mocktheta import (g3_eval, g_tilde_eval, g_tilde_tail, kang_rhs,
                        lost_notebook_sides, mtc73_rhs, tailid2_rhs,
                        tailid_rhs)
from .qseries import (appell_lerch, appell_lerch_sum, euler_cubed_infinite,
                      euler_infinite, guard_digits, jacobi_theta,
                      jacobi_triple, pochhammer_infinite)
from .radial import (CaseLabel, CuspData, ModularCompanion, RadialLimitResult,
                     SpecializationParams, SUPPORTED_LABELS, companion_value,
                     cusp_data, pole_branch_sign, radial_limit)

IDENTITY_IDS = ("kang", "shift", "p1", "tailid", "tailid2", "lost_notebook",
                "jtp_series", "l2", "feq", "inv", "mtc73", "lim0")


@dataclass(frozen=True)
class RadialSchedule:
    """Decreasing radial offsets t_i; default 0.2 * 2^{-i}, i = 0..8."""

    t_values: tuple = tuple(Fraction(1, 5 * 2 ** i) for i in range(9))
    digits: int = 50

    def __post_init__(self):
        ts = tuple(Fraction(t) for t in self.t_values)
        if not ts or any(t <= 0 for t in ts):
            raise ValueError("t values must be positive")
        if any(ts[i + 1] >= ts[i] for i in range(len(ts) - 1)):
            raise ValueError("t values must be strictly decreasing")
        object.__setattr__(self, "t_values", ts)

    @classmethod
    def from_start(cls, t_start, steps: int, digits: int = 50) -> "RadialSchedule":
        t0 = Fraction(t_start).limit_denominator(10 ** 9)
        return cls(tuple(t0 / 2 ** i for i in range(steps)), digits)


@dataclass
class ConvergenceReport:
    params: SpecializationParams
    h: int
    k: int
    label: CaseLabel
    residuals: list          # [(t as float, residual as float), ...]
    monotone_tail: bool
    final_residual: float
    passed: bool
    limit_str: str = ""


@dataclass
class IdentityReport:
    identity_id: str
    sample_points: int
    max_residual: float
    tolerance: float
    passed: bool


def _log_q_builder(h: int, k: int, t: Fraction):
    def logq():
        return 2 * mp.pi * mp.j * mp.mpf(h) / k - mp.mpf(t.numerator) / t.denominator
    return logq


def _path_point(params: SpecializationParams, h: int, k: int, t: Fraction):
    """Zero-arg builders for x_t = zeta_b^a q^A and Q_t = q^B at q = e^{2 pi i h/k - t},
    evaluated at whatever precision is current when called."""
    logq = _log_q_builder(h, k, t)

    def xf():
        return mp.expjpi(mp.mpf(2 * params.a) / params.b) * mp.e ** (logq() * params.A)

    def qf():
        return mp.e ** (logq() * params.B)

    return xf, qf


def radial_check(params: SpecializationParams, h: int, k: int,
                 schedule: Optional[RadialSchedule] = None,
                 tolerance: float = 1e-3) -> ConvergenceReport:
    """Evaluate |F - M - Q| along the schedule, F = g3(zeta_b^a q^A, q^B) at
    q = e^{2 pi i h/k - t}, M the modular companion, Q the exact limit."""
    schedule = schedule or RadialSchedule()
    result = radial_limit(params, h, k, digits=schedule.digits)
    if result.label not in SUPPORTED_LABELS or result.exact is None:
        raise UnsupportedCase(f"no supported limit for label {result.label.value}")
    digits = schedule.digits
    residuals = []
    for t in schedule.t_values:
        xf, qf = _path_point(params, result.cusp.h, result.cusp.k, t)
        d = digits
        while True:
            # F and M can grow like exp(c/t) at the cusp; their *absolute*
            # accuracy must resolve the O(1) residual, so the significant-digit
            # request is raised until it clears the magnitudes involved.
            F = g3_eval(xf, qf, d)
            M = companion_value(result.companion, t, d)
            with workdps(d + 20):
                q_limit = embed_complex(result.exact, d).to_mpc()
                r = abs(F.to_mpc() - M.to_mpc() - q_limit)
                magnitude = max(abs(F.to_mpc()), abs(M.to_mpc()), mpf(1))
                needed = int(mp.log10(magnitude)) + 25
            if d >= needed:
                break
            d = needed
        residuals.append((float(t), float(r)))
    tail = [r for _, r in residuals[-4:]]
    monotone = all(tail[i + 1] < tail[i] for i in range(len(tail) - 1))
    final = residuals[-1][1]
    passed = monotone and final < tolerance
    return ConvergenceReport(params, result.cusp.h, result.cusp.k, result.label,
                             residuals, monotone, final, passed,
                             limit_str=str([str(c) for c in result.exact.coeffs]))


# ---------------------------------------------------------------------------
# identity suites
# ---------------------------------------------------------------------------

def _rand_modarg(rng: random.Random, lo: float, hi: float):
    m = lo + (hi - lo) * rng.random()
    ph = 2 * rng.random()
    return m, ph


def _mpc_polar(m: float, ph: float):
    return mp.mpf(m) * mp.expjpi(mp.mpf(ph))


def _sample_q(rng, lo=0.1, hi=0.8):
    return _mpc_polar(*_rand_modarg(rng, lo, hi))


def _sample_x(rng, lo=0.15, hi=2.5):
    return _mpc_polar(*_rand_modarg(rng, lo, hi))


_POLE_TUPLES_FOR_LIM0 = (
    (1, 2, 0, 1, 1, 2), (0, 1, 2, 10, 1, 2), (0, 1, 1, 2, 1, 1),
    (1, 3, 0, 1, 1, 3), (1, 2, 0, 1, 1, 4), (0, 1, 1, 2, 1, 3),
    (2, 3, 0, 1, 1, 3), (0, 1, 2, 10, 1, 4), (1, 2, 1, 3, 1, 2),
    (0, 1, 1, 3, 1, 2), (1, 2, 0, 1, 3, 4), (0, 1, 3, 4, 1, 2),
)


def lim0_quotient(params: SpecializationParams, h: int, k: int, t: Fraction,
                  digits: int = 40) -> BigComplex:
    """The Appell-Lerch part of the bilateral decomposition at the radial point:
    j(x,Q) / ((Q;Q)_inf j(x q^{B/2}, Q)) * sum_n (-x)^n Q^{n^2/2} / (1 - x^{-1} Q^{n-1/2}),
    which tends to 0 at pole cusps."""
    g = guard_digits(digits)
    w = digits + g
    logq = _log_q_builder(h, k, t)
    sigma = pole_branch_sign(params, h, k)

    def xf():
        return mp.expjpi(mp.mpf(2 * params.a) / params.b) * mp.e ** (logq() * params.A)

    def Qf():
        return mp.e ** (logq() * params.B)

    def Rf():
        return sigma * mp.e ** (logq() * mp.mpf(params.B) / 2)

    def xRf():
        return xf() * Rf()

    def x2invf():
        return xf() ** -2

    jx = jacobi_theta(xf, Qf, w)
    jxR = jacobi_theta(xRf, Qf, w)
    eQ = euler_infinite(Qf, w)
    alsum = appell_lerch_sum(x2invf, Qf, xRf, w)
    with workdps(w + 10):
        value = jx.to_mpc() * alsum.to_mpc() / (eQ.to_mpc() * jxR.to_mpc())
    return BigComplex.from_mpc(value, digits)


def _identity_residual(identity_id: str, rng: random.Random, digits: int) -> float:
    """One admissible random sample's |lhs - rhs|; resamples on near-singular."""
    for _ in range(60):
        try:
            with workdps(digits + guard_digits(digits) + 10):
                q = _sample_q(rng)
                if identity_id == "kang":
                    x = _sample_x(rng, 0.15, 1.8)
                    w3 = mp.expjpi(mp.mpf(2) / 3)
                    lhs = (g3_eval(x, q, digits).to_mpc()
                           + g3_eval(w3 * x, q, digits).to_mpc()
                           + g3_eval(w3 ** 2 * x, q, digits).to_mpc())
                    rhs = kang_rhs(x, q, digits).to_mpc()
                    return float(abs(lhs - rhs))
                if identity_id == "shift":
                    x = _sample_x(rng, 0.15, 1.5)
                    z = _sample_x(rng, 0.3, 1.6)
                    wz = _sample_x(rng, 0.3, 1.6)
                    lhs = (appell_lerch(x, q, z, digits).to_mpc()
                           - appell_lerch(x, q, wz, digits).to_mpc())
                    e3 = euler_cubed_infinite(q, digits).to_mpc()
                    rhs = (wz * e3 * jacobi_theta(z / wz, q, digits).to_mpc()
                           * jacobi_theta(x * z * wz, q, digits).to_mpc()
                           / (jacobi_theta(z, q, digits).to_mpc()
                              * jacobi_theta(wz, q, digits).to_mpc()
                              * jacobi_theta(x * z, q, digits).to_mpc()
                              * jacobi_theta(x * wz, q, digits).to_mpc()))
                    return float(abs(lhs - rhs))
                if identity_id == "p1":
                    x = _sample_x(rng, 0.2, 1.6)
                    lhs = (g_tilde_eval(x, q, digits).to_mpc()
                           + g_tilde_tail(BigComplex.from_mpc(x, digits),
                                          BigComplex.from_mpc(q, digits),
                                          digits=digits).to_mpc())
                    rhs = (-jacobi_theta(x, q, digits).to_mpc()
                           / (x * euler_infinite(q, digits).to_mpc())
                           * appell_lerch(x ** -2, q, x, digits).to_mpc())
                    return float(abs(lhs - rhs))
                if identity_id == "tailid":
                    x = _sample_x(rng, 0.25, 1.4)
                    z = _sample_x(rng, 0.4, 1.5)
                    lhs = g3_eval(x, q, digits).to_mpc()
                    rhs = tailid_rhs(x, q, z, digits).to_mpc()
                    return float(abs(lhs - rhs))
                if identity_id == "tailid2":
                    x = _sample_x(rng, 0.25, 1.4)
                    lhs = g3_eval(x, q, digits).to_mpc()
                    rhs = tailid2_rhs(x, q, mp.sqrt(q), digits).to_mpc()
                    return float(abs(lhs - rhs))
                if identity_id == "lost_notebook":
                    a = _sample_x(rng, 0.3, 1.6)
                    b = _sample_x(rng, 0.3, 1.6)
                    lhs, rhs = lost_notebook_sides(a, b, q, digits)
                    return float(abs(lhs.to_mpc() - rhs.to_mpc()))
                if identity_id == "jtp_series":
                    x = _sample_x(rng, 0.1, 3.0)
                    lhs = jacobi_triple(x, q, digits).to_mpc()
                    rhs = jacobi_theta(x, q, digits).to_mpc()
                    return float(abs(lhs - rhs))
                if identity_id == "l2":
                    x = _sample_x(rng, 0.2, 1.6)
                    g3v = g3_eval(x, q, digits).to_mpc()
                    gt = g_tilde_eval(x, q, digits).to_mpc()
                    return float(abs(g3v + (1 + gt / x) / x))
                if identity_id == "feq":
                    x = _sample_x(rng, 0.2, 1.6)
                    lhs = g3_eval(x * q, q, digits).to_mpc()
                    rhs = -x ** 3 * g3_eval(x, q, digits).to_mpc() - x ** 2 - x
                    return float(abs(lhs - rhs))
                if identity_id == "inv":
                    x = _sample_x(rng, 0.3, 1.5)
                    lhs = g3_eval(1 / x, q, digits).to_mpc()
                    rhs = -x ** 3 * g3_eval(x, q, digits).to_mpc() - x ** 2 - x
                    return float(abs(lhs - rhs))
                if identity_id == "mtc73":
                    m, ph = _rand_modarg(rng, 0.3, 0.85)
                    x = _mpc_polar(m, ph)
                    lhs = g3_eval(x, x ** 6, digits).to_mpc()
                    rhs = mtc73_rhs(x, digits).to_mpc()
                    return float(abs(lhs - rhs))
        except (NearSingular, DomainError):
            continue
    raise PrecisionExhausted(f"could not find an admissible sample for {identity_id}")


def identity_check(identity_id: str, samples: int = 25, seed: int = 0,
                   digits: int = 40) -> IdentityReport:
    """Residual suite for one identity; `lim0` instead checks radial decay of
    the Appell-Lerch quotient over pole-case tuples."""
    if identity_id not in IDENTITY_IDS:
        raise ValueError(f"unknown identity {identity_id!r}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if identity_id == "lim0":
        tol = 1e-2
        worst = 0.0
        count = 0
        schedule = [Fraction(1, 5 * 2 ** i) for i in range(0, 9, 2)]
        for tup in _POLE_TUPLES_FOR_LIM0[:samples]:
            a, b, A, B, h, k = tup
            params = SpecializationParams(a, b, A, B)
            vals = [float(abs(lim0_quotient(params, h, k, t, digits=30)))
                    for t in schedule]
            decaying = all(vals[i + 1] < vals[i] or vals[i + 1] < 1e-12
                           for i in range(len(vals) - 1))
            worst = max(worst, vals[-1] if decaying else float("inf"))
            count += 1
        return IdentityReport("lim0", count, worst, tol, worst < tol)
    tol = 10.0 ** (-(digits - 12))
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        worst = max(worst, _identity_residual(identity_id, rng, digits))
    if identity_id == "jtp_series":
        # degenerate sample: x = q makes both routes exactly zero
        with workdps(digits + 10):
            q = mp.mpf("0.4")
            worst = max(worst, float(abs(jacobi_triple(q, q, digits).to_mpc()
                                         - jacobi_theta(q, q, digits).to_mpc())))
    return IdentityReport(identity_id, samples, worst, tol, worst < tol)


# ---------------------------------------------------------------------------
# exact checks: the fifth-order corollary and the conjecture
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorollaryRecord:
    k: int
    h: int
    passed: bool


def corollary_sides(k: int, h: int):
    """Both sides of the fifth-order identity at zeta = zeta_k^h, exactly:
    2 - 2 zeta^{-2} sum_{n=1}^{k/2} (zeta^8; zeta^10)_{n-1} (zeta^2; zeta^10)_n zeta^{10 n}
    = -2 sum_{n=0}^{k-1} zeta^{(n+1)(n+2)/2} (-zeta; zeta)_n."""
    one = CyclotomicNumber.one(k)
    z = lambda e: _zeta_power(k, e % k)
    p1 = one
    p2 = one
    s = CyclotomicNumber.zero(1)
    for n in range(1, k // 2 + 1):
        if n > 1:
            p1 = p1 * (one - z(8 + 10 * (n - 2)))
        p2 = p2 * (one - z(2 + 10 * (n - 1)))
        s = s + p1 * p2 * z(10 * n)
    lhs = CyclotomicNumber.from_rational(2, 1) - 2 * (z(-2) * s)
    prod = one
    rhs = CyclotomicNumber.zero(1)
    for n in range(0, k):
        if n > 0:
            prod = prod * (one + z(n))      # factor (1 + zeta^n) = (1 - (-zeta) zeta^{n-1})
        rhs = rhs + z(((n + 1) * (n + 2) // 2)) * prod
    rhs = -2 * rhs
    return lhs, rhs


def corollary_check(k_max: int):
    """Exact equality for every k <= k_max with gcd(k,10) = 2 and every
    primitive k-th root; returns [(k, passed)] plus per-root records."""
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    summary = []
    records = []
    for k in range(2, k_max + 1):
        if gcd(k, 10) != 2:
            continue
        ok = True
        for h in range(1, k + 1):
            if gcd(h, k) != 1:
                continue
            lhs, rhs = corollary_sides(k, h)
            good = (lhs == rhs)
            records.append(CorollaryRecord(k, h, good))
            ok = ok and good
        summary.append((k, ok))
    return summary, records


@dataclass(frozen=True)
class ConjectureRecord:
    k: int
    q_exponent: int           # q = zeta_{3k}^r
    x_descriptor: str         # "q^e"
    hypothesis_ok: bool
    passed: Optional[bool]    # None when the hypothesis fails
    lhs: Optional[CyclotomicNumber]
    rhs: Optional[CyclotomicNumber]


def conjecture_sides(k: int, r: int, e: int):
    """Exact sides of the roots-of-unity identity for q = zeta_{3k}^r, x = q^e."""
    N = 3 * k
    z = lambda exp: _zeta_power(N, exp % N)
    x_e = (r * e) % N
    one = CyclotomicNumber.one(N)
    x = z(x_e)
    x3k = x ** (3 * k)
    pref = (one - x3k + x3k * x3k).inverse()
    total = CyclotomicNumber.zero(1)
    for j in range(1, k + 1):
        sgn = -1 if j % 2 else 1
        xq_part = z(x_e * (3 * j - 2) - r * ((3 * j + 1) * j // 2))
        core = (z(r) * (one + x3k * z(r * k))
                + x * (one + x3k * z(2 * r * k)))
        total = total + sgn * (xq_part * core)
    lhs = pref * total
    tail = g_tilde_tail(x, z(r), terms=N)
    xinv = z(-x_e)
    rhs = -xinv + xinv * xinv * tail
    return lhs, rhs


def conjecture_check(k_max: int):
    """Evaluate the conjectured identity exactly for every k <= k_max, every
    primitive root q of order 3k, and every x in <q>.  Failures are reported
    as counterexample records, never asserted away."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    records = []
    for k in range(1, k_max + 1):
        N = 3 * k
        for r in range(1, N):
            if gcd(r, N) != 1:
                continue
            for e in range(N):
                lhs, rhs = conjecture_sides(k, r, e)
                records.append(ConjectureRecord(k, r, f"q^{e}", True,
                                                lhs == rhs, lhs, rhs))
    return records


def conjecture_hypothesis_ok(k: int, r: int, x: CyclotomicNumber) -> bool:
    """(x, q/x; q)_inf = 0 for roots of unity forces x in <q>; callers passing
    arbitrary x get a HypothesisViolated-style gate instead of a bogus check."""
    N = 3 * k
    q = _zeta_power(N, r % N)
    power = CyclotomicNumber.one(N)
    for _ in range(N):
        if x == power:
            return True
        power = power * q
    return False
