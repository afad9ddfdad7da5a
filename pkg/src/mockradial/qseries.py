"""q-series primitives: Pochhammer symbols, the Jacobi triple product j(x,q),
and the Appell-Lerch sum m(x,q,z).

Finite objects work over both the exact cyclotomic domain and the numeric
domain; infinite objects are numeric with certified truncation.  Everything
near the unit circle goes through theta-type series (pentagonal numbers for
(q;q)_inf, the bilateral triple-product series for j) with automatic
precision raising, because the raw infinite products need O(1/t) factors at
q = zeta e^{-t} while the series need only O(t^{-1/2}) terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf, workdps

from .bigcomplex import BigComplex, as_mpc
from .errors import DivisionByZero, DomainError, NearSingular, PrecisionExhausted

_MAX_WDPS = 60000


def guard_digits(digits: int) -> int:
    return max(10, digits // 5)


@dataclass(frozen=True)
class TruncationReport:
    terms_used: int
    tail_bound: float


def _is_exact(value) -> bool:
    from .exact import CyclotomicNumber
    return isinstance(value, (CyclotomicNumber, int, Fraction))


def _to_exact(value):
    from .exact import CyclotomicNumber
    if isinstance(value, CyclotomicNumber):
        return value
    return CyclotomicNumber.from_rational(Fraction(value), 1)


def _digits_of(*values, default: int = 50) -> int:
    ds = [v.digits for v in values if isinstance(v, BigComplex)]
    return min(ds) if ds else default


def _resolve(value):
    """Scalar coercion that also accepts zero-arg callables producing the value
    at the *current* working precision (needed on radial paths, where inputs
    must be rebuilt whenever the precision ladder climbs)."""
    return as_mpc(value()) if callable(value) else as_mpc(value)


# ---------------------------------------------------------------------------
# finite Pochhammer symbols
# ---------------------------------------------------------------------------

def pochhammer(a, q, n: int, digits: int | None = None):
    """(a; q)_n = prod_{j=0}^{n-1} (1 - a q^j); exact or numeric by argument type."""
    if n < 0:
        raise ValueError("use pochhammer_negative for negative n")
    if _is_exact(a) and _is_exact(q):
        a = _to_exact(a)
        q = _to_exact(q)
        prod = _to_exact(1)
        qj = _to_exact(1)
        for _ in range(n):
            prod = prod * (_to_exact(1) - a * qj)
            qj = qj * q
        return prod
    digits = digits or _digits_of(a, q)
    with workdps(digits + guard_digits(digits)):
        av, qv = as_mpc(a), as_mpc(q)
        prod = mp.mpc(1)
        qj = mp.mpc(1)
        for _ in range(n):
            prod *= 1 - av * qj
            qj *= qv
        return BigComplex.from_mpc(prod, digits)


def pochhammer_negative(a, q, n: int, digits: int | None = None):
    """(a; q)_{-n} = (-1)^n q^{n(n+1)/2} / (a^n (q/a; q)_n).

    Equivalent to extending (a;q)_m backwards through the recurrence
    (a;q)_{m-1} = (a;q)_m / (1 - a q^{m-1}).
    """
    if n < 1:
        raise ValueError("n must be positive")
    sign = -1 if n % 2 else 1
    if _is_exact(a) and _is_exact(q):
        a = _to_exact(a)
        q = _to_exact(q)
        if a.is_zero():
            raise DivisionByZero("a = 0")
        den = pochhammer(q / a, q, n)
        if den.is_zero():
            raise DivisionByZero("(q/a; q)_n = 0")
        return _to_exact(sign) * q ** (n * (n + 1) // 2) / (a ** n * den)
    digits = digits or _digits_of(a, q)
    with workdps(digits + guard_digits(digits)):
        av, qv = as_mpc(a), as_mpc(q)
        if av == 0:
            raise DivisionByZero("a = 0")
        den = mp.mpc(1)
        qa = qv / av
        qj = mp.mpc(1)
        for _ in range(n):
            den *= 1 - qa * qj
            qj *= qv
        if den == 0:
            raise DivisionByZero("(q/a; q)_n = 0")
        value = sign * qv ** (n * (n + 1) // 2) / (av ** n * den)
        return BigComplex.from_mpc(value, digits)


def periodic_pochhammer_closed_form(x, kprime: int):
    """(x, q/x; q)_{k'} for q a primitive k'-th root of unity:
    equals (1 - x^{k'})(1 - x^{-k'})."""
    x = _to_exact(x)
    if x.is_zero():
        raise DivisionByZero("x = 0")
    xk = x ** kprime
    one = _to_exact(1)
    return (one - xk) * (one - xk.inverse())


# ---------------------------------------------------------------------------
# certified infinite products
# ---------------------------------------------------------------------------

def pochhammer_infinite(a, q, digits: int, max_terms: int | None = None):
    """(a; q)_inf with a certified multiplicative tail bound.

    Truncates at N with 2|a||q|^N / (1-|q|) < 10^{-(digits+guard)} using
    |log(1-u)| <= 2|u| for |u| <= 1/2; factors with |a q^j| > 1/2 are always
    multiplied out.  Enforces |q| <= 1 - 1e-8 unless `max_terms` lifts the cap.
    """
    g = guard_digits(digits)
    with workdps(digits + g + 10):
        av, qv = as_mpc(a), as_mpc(q)
        qabs = abs(qv)
        if qabs >= 1:
            raise DomainError("|q| must be < 1")
        if qabs > 1 - mpf(10) ** -8 and max_terms is None:
            raise DomainError("|q| within 1e-8 of the unit circle; "
                              "pass max_terms or use the theta-series forms")
        if av == 0:
            return BigComplex.from_value(1, digits), TruncationReport(0, 0.0)
        aabs = abs(av)
        target = mpf(10) ** (-(digits + g))
        # smallest N with 2|a||q|^N/(1-|q|) < target, and |a q^N| <= 1/2
        N = int(mp.ceil((mp.log(2 * aabs / ((1 - qabs) * target))) / (-mp.log(qabs)))) + 1
        if aabs > 0.5:
            N = max(N, int(mp.ceil(mp.log(2 * aabs) / (-mp.log(qabs)))) + 1)
        N = max(N, 1)
        if max_terms is not None:
            N = min(N, max_terms)
        prod = mp.mpc(1)
        qj = mp.mpc(1)
        floor = mpf(10) ** (-digits)
        for j in range(N):
            f = 1 - av * qj
            if f == 0:
                return BigComplex.from_value(0, digits), TruncationReport(j + 1, 0.0)
            if abs(f) < floor:
                raise NearSingular(f"factor 1 - a q^{j} has modulus below 1e-{digits}")
            prod *= f
            qj *= qv
        tail = 2 * aabs * qabs ** N / (1 - qabs)
        return BigComplex.from_mpc(prod, digits), TruncationReport(N, float(tail))


def jacobi_triple(x, q, digits: int):
    """j(x,q) = (x, q/x, q; q)_inf as a product of certified infinite products."""
    with workdps(digits + guard_digits(digits) + 10):
        xv, qv = as_mpc(x), as_mpc(q)
        if xv == 0:
            raise DomainError("x must be nonzero")
        p1, _ = pochhammer_infinite(xv, qv, digits + 5)
        p2, _ = pochhammer_infinite(qv / xv, qv, digits + 5)
        p3, _ = pochhammer_infinite(qv, qv, digits + 5)
        return BigComplex.from_mpc(p1.to_mpc() * p2.to_mpc() * p3.to_mpc(), digits)


# ---------------------------------------------------------------------------
# theta-type series (cusp-capable) with automatic precision raising
# ---------------------------------------------------------------------------

def _stable_sum(make_terms, digits: int, start_wdps: int | None = None):
    """Evaluate a series with unknown cancellation.  `make_terms()` runs at the
    current context and returns (value, max_term_modulus).  The working
    precision is raised until the surviving value retains `digits` digits.
    Returns (mpc value, wdps used)."""
    wdps = start_wdps or (digits + guard_digits(digits) + 10)
    while True:
        with workdps(wdps):
            value, maxterm = make_terms()
            if maxterm == 0:
                return mp.mpc(0), wdps
            if value != 0:
                lost = float(mp.log10(maxterm / abs(value)))
                if lost < wdps - digits - 5:
                    return +value, wdps
            else:
                lost = wdps
        wdps = int(wdps + max(lost + 30, wdps // 2))
        if wdps > _MAX_WDPS:
            raise PrecisionExhausted(f"needed more than {_MAX_WDPS} working digits")


def euler_infinite(q, digits: int, start_wdps: int | None = None) -> BigComplex:
    """(q;q)_inf via the pentagonal number series; usable arbitrarily close to
    the unit circle (cancellation is detected and precision raised)."""
    if abs(_resolve(q)) >= 1:
        raise DomainError("|q| must be < 1")

    def make_terms():
        qv = _resolve(q)
        tol = mpf(10) ** (-mp.dps + 3)
        s = mp.mpc(1)
        mx = mpf(1)
        n = 1
        while True:
            t = (-1) ** n * (qv ** (n * (3 * n - 1) // 2) + qv ** (n * (3 * n + 1) // 2))
            s += t
            mx = max(mx, abs(t))
            if abs(t) < tol * mx:
                return s, mx
            n += 1

    v, _ = _stable_sum(make_terms, digits, start_wdps)
    return BigComplex.from_mpc(v, digits)


def euler_cubed_infinite(q, digits: int, start_wdps: int | None = None) -> BigComplex:
    """(q;q)_inf^3 via Jacobi's series sum (-1)^n (2n+1) q^{n(n+1)/2}."""
    if abs(_resolve(q)) >= 1:
        raise DomainError("|q| must be < 1")

    def make_terms():
        qv = _resolve(q)
        tol = mpf(10) ** (-mp.dps + 3)
        s = mp.mpc(0)
        mx = mpf(0)
        n = 0
        while True:
            t = (-1) ** n * (2 * n + 1) * qv ** (n * (n + 1) // 2)
            s += t
            mx = max(mx, abs(t))
            if abs(t) < tol * max(mx, mpf(1)):
                return s, max(mx, mpf(1))
            n += 1

    v, _ = _stable_sum(make_terms, digits, start_wdps)
    return BigComplex.from_mpc(v, digits)


def jacobi_theta(x, q, digits: int, start_wdps: int | None = None) -> BigComplex:
    """j(x,q) via the bilateral series sum_n (-1)^n q^{n(n-1)/2} x^n.

    Identical to jacobi_triple by the triple product identity, but usable at
    radial points arbitrarily close to roots of unity.
    """
    if _resolve(x) == 0:
        raise DomainError("x must be nonzero")
    if abs(_resolve(q)) >= 1:
        raise DomainError("|q| must be < 1")

    def make_terms():
        xv, qv = _resolve(x), _resolve(q)
        tol = mpf(10) ** (-mp.dps + 3)
        xinv = 1 / xv
        s = mp.mpc(1)       # n = 0 term
        mx = mpf(1)
        n = 1
        while True:
            tp = (-1) ** n * qv ** (n * (n - 1) // 2) * xv ** n
            tm = (-1) ** n * qv ** (n * (n + 1) // 2) * xinv ** n
            s += tp + tm
            mx = max(mx, abs(tp), abs(tm))
            if abs(tp) < tol * mx and abs(tm) < tol * mx and n > 3:
                return s, mx
            n += 1

    v, _ = _stable_sum(make_terms, digits, start_wdps)
    return BigComplex.from_mpc(v, digits)


# ---------------------------------------------------------------------------
# Appell-Lerch sums
# ---------------------------------------------------------------------------

def appell_lerch_sum(x, q, z, digits: int, start_wdps: int | None = None) -> BigComplex:
    """The bilateral sum sum_n (-z)^n q^{n(n-1)/2} / (1 - x z q^{n-1}) alone,
    without the 1/j(z,q) prefactor.  All powers are integral, so radial branch
    choices stay with the caller."""
    g = guard_digits(digits)

    def make_terms():
        xv, qv, zv = _resolve(x), _resolve(q), _resolve(z)
        tol = mpf(10) ** (-mp.dps + 3)
        floor = mpf(10) ** (-mpf(digits) / 2)
        xz = xv * zv
        qinv = 1 / qv

        def denom(n):
            d = 1 - xz * qv ** (n - 1)
            if abs(d) < floor:
                raise NearSingular(f"Appell-Lerch denominator at n={n} below 1e-{digits // 2}")
            return d

        s = 1 / denom(0) + (-zv) / denom(1)
        mx = max(abs(s), mpf(1))
        n = 2
        while True:
            tp = (-zv) ** n * qv ** (n * (n - 1) // 2) / denom(n)
            tm = (-zv) ** (-n + 1) * qv ** ((n - 1) * n // 2) / denom(-n + 1)
            s += tp + tm
            mx = max(mx, abs(tp), abs(tm))
            if abs(tp) < tol * mx and abs(tm) < tol * mx and n > 4:
                return s, mx
            n += 1

    v, _ = _stable_sum(make_terms, digits, start_wdps)
    return BigComplex.from_mpc(v, digits)


def appell_lerch(x, q, z, digits: int) -> BigComplex:
    """m(x,q,z) = (1/j(z,q)) sum_n (-z)^n q^{n(n-1)/2} / (1 - x z q^{n-1})."""
    g = guard_digits(digits)
    with workdps(digits + g + 10):
        qv = as_mpc(q)
        if abs(qv) >= 1:
            raise DomainError("|q| must be < 1")
        jz = jacobi_theta(z, q, digits + g)
        if abs(jz) < mpf(10) ** (-mpf(digits) / 2):
            raise DomainError("j(z,q) too close to zero")
        s = appell_lerch_sum(x, q, z, digits + g)
        return BigComplex.from_mpc(s.to_mpc() / jz.to_mpc(), digits)
