"""The g3 family: numeric evaluation of g3, g-tilde and its tail, affine
transports along the functional equation, and the closed right-hand sides of
the structural identities (Kang's cube identity, the bilateral tail identity
and its z = x sqrt(q) specialization, the Lost Notebook entry, and the
mock-theta-conjecture-style identity for g3(x, x^6))."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf, workdps

from .bigcomplex import BigComplex, as_mpc
from .errors import (DivisionByZero, DomainError, NearSingular,
                     PrecisionExhausted)
from .qseries import (appell_lerch, appell_lerch_sum, euler_cubed_infinite,
                      euler_infinite, guard_digits, jacobi_theta,
                      pochhammer, pochhammer_infinite, _MAX_WDPS,
                      _is_exact, _to_exact)


def _validate_xq(xv, qv):
    if xv == 0:
        raise DomainError("x must be nonzero")
    aq = abs(qv)
    if aq == 0 or aq >= 1:
        raise DomainError("need 0 < |q| < 1")


def _adaptive_eval(series_once, x, q, digits: int, start_wdps: int | None = None):
    """Run `series_once(xv, qv, floor, tol)` at doubling working precision until
    two successive evaluations agree to `digits` digits.  `tol` is the absolute
    tail threshold 10^{-(digits+guard)}; accuracy is absolute for values below
    1 in modulus and relative above."""
    wdps = start_wdps or (digits + guard_digits(digits) + 10)
    tol = mpf(10) ** (-(digits + guard_digits(digits)))
    prev = None
    while True:
        with workdps(wdps):
            xv = as_mpc(x()) if callable(x) else as_mpc(x)
            qv = as_mpc(q()) if callable(q) else as_mpc(q)
            _validate_xq(xv, qv)
            floor = mpf(10) ** (-mpf(digits) / 2)
            value, maxterm = series_once(xv, qv, floor, tol)
            scale = max(mpf(1), abs(value))
            if maxterm == 0:
                lost = 0.0
            else:
                lost = float(mp.log10(maxterm / scale))
            if prev is not None and lost < wdps - digits - 5:
                if abs(value - prev) <= scale * mpf(10) ** (-digits):
                    return BigComplex.from_mpc(value, digits)
            prev = value
        wdps = int(max(wdps * 2, wdps + lost + 30))
        if wdps > _MAX_WDPS:
            raise PrecisionExhausted(f"no stable value within {_MAX_WDPS} digits")


def _g3_terms(xv, qv, floor, tol):
    d1 = mp.mpc(1)
    d2 = mp.mpc(1)
    qx = qv / xv
    qj = mp.mpc(1)          # q^{n-1}
    num = mp.mpc(1)         # q^{n(n-1)}
    q2 = qv * qv
    s = mp.mpc(0)
    mx = mpf(0)
    small = 0
    n = 1
    while True:
        f1 = 1 - xv * qj
        f2 = 1 - qx * qj
        if abs(f1) < floor or abs(f2) < floor:
            raise NearSingular(f"g3 denominator factor at n={n} below threshold")
        d1 *= f1
        d2 *= f2
        t = num / (d1 * d2)
        s += t
        mx = max(mx, abs(t))
        if abs(t) < tol:
            small += 1
            if small >= 10:
                return s, mx
        else:
            small = 0
        num *= qj * qj * q2
        qj *= qv
        n += 1


def g3_eval(x, q, digits: int = 50, start_wdps: int | None = None) -> BigComplex:
    """g3(x,q) = sum_{n>=1} q^{n(n-1)} / ((x;q)_n (q/x;q)_n), adaptively summed."""
    return _adaptive_eval(_g3_terms, x, q, digits, start_wdps)


def _g_tilde_terms(xv, qv, floor, tol):
    qx = qv / xv
    d1 = mp.mpc(1)          # (x;q)_{n+1}, gains factor at each step
    d2 = mp.mpc(1)          # (q/x;q)_n
    qj = mp.mpc(1)          # q^n
    num = mp.mpc(1)         # q^{n^2}
    s = mp.mpc(0)
    mx = mpf(0)
    small = 0
    n = 0
    while True:
        f1 = 1 - xv * qj    # extends (x;q)_{n} -> (x;q)_{n+1}
        if abs(f1) < floor:
            raise NearSingular(f"g-tilde denominator factor at n={n} below threshold")
        d1 *= f1
        if n > 0:
            f2 = 1 - qx * qj / qv
            if abs(f2) < floor:
                raise NearSingular(f"g-tilde denominator factor at n={n} below threshold")
            d2 *= f2
        t = num / (d1 * d2)
        s += t
        mx = max(mx, abs(t))
        if abs(t) < tol:
            small += 1
            if small >= 10:
                return -xv * s, mx
        else:
            small = 0
        num *= qj * qj * qv
        qj *= qv
        n += 1


def g_tilde_eval(x, q, digits: int = 50, start_wdps: int | None = None) -> BigComplex:
    """g-tilde(x,q) = -x sum_{n>=0} q^{n^2} / ((x;q)_{n+1} (q/x;q)_n)."""
    return _adaptive_eval(_g_tilde_terms, x, q, digits, start_wdps)


def g_tilde_tail(x, q, terms: int | None = None, digits: int | None = None):
    """Tail sum g~_t(x,q) = sum_{n>=1} (q/x;q)_{n-1} (x;q)_n q^n.

    Exact arguments take a finite `terms` count (in the pole case all terms
    with n > k' vanish); numeric arguments default to adaptive summation.
    """
    if _is_exact(x) and _is_exact(q):
        if terms is None:
            raise ValueError("exact evaluation needs an explicit term count")
        xe, qe = _to_exact(x), _to_exact(q)
        one = _to_exact(1)
        p1 = one            # (q/x;q)_{n-1}
        p2 = one            # (x;q)_n
        qn = one
        qpow = one          # q^{n-1}
        total = _to_exact(0)
        for n in range(1, terms + 1):
            if n > 1:
                p1 = p1 * (one - (qe / xe) * qpow / qe)  # factor (1 - (q/x) q^{n-2})
            p2 = p2 * (one - xe * qpow)
            qn = qn * qe
            total = total + p1 * p2 * qn
            qpow = qpow * qe
        return total

    digits = digits or (x.digits if isinstance(x, BigComplex) else 50)

    def series_once(xv, qv, floor, tol):
        qx = qv / xv
        p1 = mp.mpc(1)
        p2 = mp.mpc(1)
        qj = mp.mpc(1)      # q^{n-1}
        qn = mp.mpc(1)
        s = mp.mpc(0)
        mx = mpf(0)
        small = 0
        n = 1
        nmax = terms
        while True:
            if n > 1:
                p1 *= 1 - qx * (qj / qv)
            p2 *= 1 - xv * qj
            qn *= qv
            t = p1 * p2 * qn
            s += t
            mx = max(mx, abs(t))
            if nmax is not None and n >= nmax:
                return s, max(mx, mpf(1))
            if abs(t) < tol:
                small += 1
                if small >= 10:
                    return s, max(mx, mpf(1))
            else:
                small = 0
            qj *= qv
            n += 1

    return _adaptive_eval(series_once, x, q, digits)


# ---------------------------------------------------------------------------
# affine transports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AffineRelation:
    """target = scale * source + offset."""

    scale: object
    offset: object

    def apply(self, value):
        return self.scale * value + self.offset

    def compose(self, inner: "AffineRelation") -> "AffineRelation":
        """Relation mapping inner's source to self's target."""
        return AffineRelation(self.scale * inner.scale,
                              self.scale * inner.offset + self.offset)

    def inverted(self) -> "AffineRelation":
        inv = _invert_scalar(self.scale)
        return AffineRelation(inv, -(inv * self.offset))

    @staticmethod
    def identity() -> "AffineRelation":
        return AffineRelation(1, 0)


def _invert_scalar(v):
    from .exact import CyclotomicNumber
    if isinstance(v, CyclotomicNumber):
        return v.inverse()
    if isinstance(v, BigComplex):
        return BigComplex.from_value(1, v.digits) / v
    return 1 / v


def affine_transport(x, q, kind: str):
    """Exact transport of g3 values through the functional equation.

    shift_feq: g3(x,q) = scale * g3(xq,q) + offset with scale = -x^{-3},
    offset = -x^{-1} - x^{-2}; new point xq.
    invert:    g3(x,q) = scale * g3(x^{-1},q) + offset, same coefficients,
    new point x^{-1} (uses g3(x^{-1},q) = g3(xq,q)).
    """
    if _is_exact(x):
        xe = _to_exact(x)
        if xe.is_zero():
            raise DivisionByZero("x = 0")
        xinv = xe.inverse()
        scale = -(xinv ** 3)
        offset = -(xinv + xinv ** 2)
        if kind == "shift_feq":
            return AffineRelation(scale, offset), xe * _to_exact(q)
        if kind == "invert":
            return AffineRelation(scale, offset), xinv
        raise ValueError(f"unknown kind {kind!r}")
    xv = as_mpc(x)
    if xv == 0:
        raise DivisionByZero("x = 0")
    digits = x.digits if isinstance(x, BigComplex) else 50
    with workdps(digits + 10):
        xinv = 1 / xv
        scale = BigComplex.from_mpc(-xinv ** 3, digits)
        offset = BigComplex.from_mpc(-(xinv + xinv ** 2), digits)
        if kind == "shift_feq":
            new_x = BigComplex.from_mpc(xv * as_mpc(q), digits)
        elif kind == "invert":
            new_x = BigComplex.from_mpc(xinv, digits)
        else:
            raise ValueError(f"unknown kind {kind!r}")
    return AffineRelation(scale, offset), new_x


# ---------------------------------------------------------------------------
# closed right-hand sides
# ---------------------------------------------------------------------------

def kang_rhs(x, q, digits: int = 50) -> BigComplex:
    """Right side of the cube-dissection identity:
    g3(x,q) + g3(w x,q) + g3(w^2 x,q) = 3 (q^3;q^3)_inf^3 / ((q;q)_inf j(x^3,q^3))
    for w a primitive cube root of unity."""
    g = guard_digits(digits)
    with workdps(digits + g + 10):
        xv, qv = as_mpc(x), as_mpc(q)
        _validate_xq(xv, qv)
        num = euler_cubed_infinite(qv ** 3, digits + g)
        e1 = euler_infinite(qv, digits + g)
        jx = jacobi_theta(xv ** 3, qv ** 3, digits + g)
        if abs(jx) < mpf(10) ** (-mpf(digits) / 2):
            raise NearSingular("j(x^3, q^3) too close to zero")
        value = 3 * num.to_mpc() / (e1.to_mpc() * jx.to_mpc())
        return BigComplex.from_mpc(value, digits)


def tailid_rhs(x, q, z, digits: int = 50) -> BigComplex:
    """Four-term closed form equal to g3(x,q) for any z with j(z,q) != 0:
    -x^{-1} + x^{-2} g~_t(x,q)
    + (j(x,q) / (x^3 (q)_inf j(z,q))) sum_n (-z)^n q^{n(n-1)/2} / (1 - x^{-2} z q^{n-1})
    + z (q)_inf^2 j(x/z,q) j(z/x,q) / (x^3 j(z,q) j(x^{-1},q) j(x^{-2} z,q))."""
    g = guard_digits(digits)
    w = digits + g
    with workdps(w + 10):
        xv, qv, zv = as_mpc(x), as_mpc(q), as_mpc(z)
        _validate_xq(xv, qv)
        jz = jacobi_theta(zv, qv, w).to_mpc()
        if abs(jz) < mpf(10) ** (-mpf(digits) / 2):
            raise NearSingular("j(z,q) too close to zero")
        eul = euler_infinite(qv, w).to_mpc()
        jx = jacobi_theta(xv, qv, w).to_mpc()
        tail = g_tilde_tail(BigComplex.from_mpc(xv, w), BigComplex.from_mpc(qv, w),
                            digits=w).to_mpc()
        alsum = appell_lerch_sum(xv ** -2, qv, zv, w).to_mpc()
        t1 = -1 / xv
        t2 = tail / xv ** 2
        t3 = jx * alsum / (xv ** 3 * eul * jz)
        t4 = (zv * eul ** 2 * jacobi_theta(xv / zv, qv, w).to_mpc()
              * jacobi_theta(zv / xv, qv, w).to_mpc()
              / (xv ** 3 * jz * jacobi_theta(1 / xv, qv, w).to_mpc()
                 * jacobi_theta(zv / xv ** 2, qv, w).to_mpc()))
        return BigComplex.from_mpc(t1 + t2 + t3 + t4, digits)


def tailid2_rhs(x, q, sqrt_q, digits: int = 50) -> BigComplex:
    """The z = x sqrt(q) specialization of tailid_rhs; the square root branch is
    supplied by the caller (radial parameterizations pass e^{log(q)/2}):
    -x^{-1} + x^{-2} g~_t + (j(x,q)/(x^3 (q)_inf j(x sqrt(q),q))) * S
    + (q)_inf^2 j(sqrt(q),q)^2 / (x j(x sqrt(q),q)^2 j(x,q))."""
    g = guard_digits(digits)
    w = digits + g
    with workdps(w + 10):
        xv, qv, rv = as_mpc(x), as_mpc(q), as_mpc(sqrt_q)
        _validate_xq(xv, qv)
        zv = xv * rv
        jz = jacobi_theta(zv, qv, w).to_mpc()
        eul = euler_infinite(qv, w).to_mpc()
        jx = jacobi_theta(xv, qv, w).to_mpc()
        jr = jacobi_theta(rv, qv, w).to_mpc()
        tail = g_tilde_tail(BigComplex.from_mpc(xv, w), BigComplex.from_mpc(qv, w),
                            digits=w).to_mpc()
        alsum = appell_lerch_sum(xv ** -2, qv, zv, w).to_mpc()
        t3 = jx * alsum / (xv ** 3 * eul * jz)
        t4 = eul ** 2 * jr ** 2 / (xv * jz ** 2 * jx)
        return BigComplex.from_mpc(-1 / xv + tail / xv ** 2 + t3 + t4, digits)


def lost_notebook_sides(a, b, q, digits: int = 50):
    """Both sides of the Lost Notebook entry
    sum_{n>=0} a^{-n-1} b^{-n} q^{n^2} / ((-1/a)_{n+1} (-q/b)_n)
      + sum_{n>=1} (-aq)_{n-1} (-b)_n q^n
    = (-aq)_inf j(-b,q) / (b (q, -q/b; q)_inf) * m(a/b, q, -b).
    Returns (lhs, rhs)."""
    g = guard_digits(digits)
    w = digits + g
    with workdps(w + 10):
        av, bv, qv = as_mpc(a), as_mpc(b), as_mpc(q)
        if av == 0 or bv == 0:
            raise DomainError("a, b must be nonzero")
        if not 0 < abs(qv) < 1:
            raise DomainError("need 0 < |q| < 1")
        tol = mpf(10) ** (-w)
        # first sum
        s1 = mp.mpc(0)
        d1 = mp.mpc(1)      # (-1/a; q)_{n+1}
        d2 = mp.mpc(1)      # (-q/b; q)_n
        qj = mp.mpc(1)      # q^n
        num = mp.mpc(1)     # q^{n^2} incrementally
        apow = 1 / av
        bpow = mp.mpc(1)
        mx = mpf(0)
        n = 0
        while True:
            f1 = 1 + qj / av
            if abs(f1) < tol:
                raise NearSingular("(-1/a;q) factor vanished")
            d1 *= f1
            if n > 0:
                d2 *= 1 + qv * (qj / qv) / bv
            t = apow * bpow * num / (d1 * d2)
            s1 += t
            mx = max(mx, abs(t))
            if abs(t) < tol * max(mx, mpf(1)) and n > 5:
                break
            num *= qj * qj * qv
            qj *= qv
            apow /= av
            bpow /= bv
            n += 1
        # second sum: tail-type with a -> -aq, b -> -b
        s2 = mp.mpc(0)
        p1 = mp.mpc(1)      # (-aq; q)_{n-1}
        p2 = mp.mpc(1)      # (-b; q)_n
        qj = mp.mpc(1)
        qn = mp.mpc(1)
        mx2 = mpf(0)
        n = 1
        while True:
            if n > 1:
                p1 *= 1 + av * qv * (qj / qv)
            p2 *= 1 + bv * qj
            qn *= qv
            t = p1 * p2 * qn
            s2 += t
            mx2 = max(mx2, abs(t))
            if abs(t) < tol * max(mx2, mpf(1)) and n > 5:
                break
            qj *= qv
            n += 1
        lhs = s1 + s2
        paq, _ = pochhammer_infinite(-av * qv, qv, w)
        jb = jacobi_theta(-bv, qv, w).to_mpc()
        peul = euler_infinite(qv, w).to_mpc()
        pqb, _ = pochhammer_infinite(-qv / bv, qv, w)
        m_val = appell_lerch(av / bv, qv, -bv, w).to_mpc()
        rhs = paq.to_mpc() * jb / (bv * peul * pqb.to_mpc()) * m_val
        return BigComplex.from_mpc(lhs, digits), BigComplex.from_mpc(rhs, digits)


def mtc73_rhs(x, digits: int = 50, rewritten: bool = True) -> BigComplex:
    """Right side of g3(x, x^6) = -1/(2x) + (x/2) g3(x^3, x^6) + H(x) where the
    final eta-quotient term H(x) = (x^2;x^2)_inf^4 / (2x (x;x)_inf^2 (x^6;x^6)_inf)
    is computed from the rewritten product
    (-x;x)_inf^4 (x;x)_inf (x,x^2,x^3,x^4,x^5;x^6)_inf / (2x) by default."""
    g = guard_digits(digits)
    w = digits + g
    with workdps(w + 10):
        xv = as_mpc(x)
        if not 0 < abs(xv) < 1:
            raise DomainError("need 0 < |x| < 1")
        q6 = xv ** 6
        middle = g3_eval(BigComplex.from_mpc(xv ** 3, w), BigComplex.from_mpc(q6, w),
                         w).to_mpc()
        if rewritten:
            pm, _ = pochhammer_infinite(-xv, xv, w)
            pe, _ = pochhammer_infinite(xv, xv, w)
            eta = pm.to_mpc() ** 4 * pe.to_mpc()
            for i in range(1, 6):
                pi_, _ = pochhammer_infinite(xv ** i, q6, w)
                eta *= pi_.to_mpc()
        else:
            p2, _ = pochhammer_infinite(xv ** 2, xv ** 2, w)
            p1, _ = pochhammer_infinite(xv, xv, w)
            p6, _ = pochhammer_infinite(q6, q6, w)
            eta = p2.to_mpc() ** 4 / (p1.to_mpc() ** 2 * p6.to_mpc())
        value = -1 / (2 * xv) + xv / 2 * middle + eta / (2 * xv)
        return BigComplex.from_mpc(value, digits)


def edge_eta_companion(u, digits: int = 50, start_wdps: int | None = None) -> BigComplex:
    """H(u) = (u^2;u^2)_inf^4 / (2u (u;u)_inf^2 (u^6;u^6)_inf) through the
    pentagonal series, usable on radial paths into roots of unity (the modular
    term that keeps the sixth-root edge case bounded).  `u` may be a zero-arg
    callable rebuilding the path point at the current precision."""
    g = guard_digits(digits)
    w = digits + g

    def up(e):
        if callable(u):
            return lambda: u() ** e
        return lambda: as_mpc(u) ** e

    with workdps(w + 10):
        uv = up(1)()
        if not 0 < abs(uv) < 1:
            raise DomainError("need 0 < |u| < 1")
    e2 = euler_infinite(up(2), w, start_wdps)
    e1 = euler_infinite(up(1), w, start_wdps)
    e6 = euler_infinite(up(6), w, start_wdps)
    with workdps(w + 10):
        value = e2.to_mpc() ** 4 / (2 * up(1)() * e1.to_mpc() ** 2 * e6.to_mpc())
    return BigComplex.from_mpc(value, digits)


def eta_quotient_formal_zero(x_exact, order: int) -> bool:
    """Exact-field statement behind the closed edge formula: the rewritten
    product form of the mtc73 eta term contains a factor that is exactly zero
    at a root of unity x of the given order (the factor 1 - x^order)."""
    one = _to_exact(1)
    x_exact = _to_exact(x_exact)
    factor = one - x_exact ** order
    return factor.is_zero()
