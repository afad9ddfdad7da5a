"""Cusp classification and exact radial limits for g3(zeta_b^a q^A, q^B).

Every limit formula is evaluated in a single cyclotomic field Q(zeta_N),
N = lcm(6, b, k), using integer exponent arithmetic for the roots of unity
and closed-form inverses for the (1 - root) factors, so the whole pipeline
stays exact and fast at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Optional

from mpmath import mp, workdps

from .bigcomplex import BigComplex
from .errors import CaseMismatch, InvalidParams, MockRadialError
from .exact import (CyclotomicNumber, _inverse_one_minus_root, _zeta_power,
                    embed_complex)
from .mocktheta import (AffineRelation, edge_eta_companion, g_tilde_tail,
                        guard_digits)
from .qseries import euler_cubed_infinite, euler_infinite, jacobi_theta


class CaseLabel(str, Enum):
    POLE = "Pole"
    CONVERGENT = "Convergent"
    KANG_SHIFT = "KangShift"
    EDGE_SIXTH_CLOSED = "EdgeSixthClosed"
    EDGE_SIXTH_UNSUPPORTED = "EdgeSixthUnsupported"
    DIVERGENT_THREE_UNSUPPORTED = "DivergentThreeUnsupported"


SUPPORTED_LABELS = (CaseLabel.POLE, CaseLabel.CONVERGENT, CaseLabel.KANG_SHIFT,
                    CaseLabel.EDGE_SIXTH_CLOSED)


@dataclass(frozen=True)
class SpecializationParams:
    """The tuple (a, b, A, B) selecting g3(zeta_b^a q^A, q^B)."""

    a: int
    b: int
    A: int
    B: int

    def __post_init__(self):
        if self.b < 1 or self.B < 1 or self.a < 0 or self.A < 0:
            raise InvalidParams("need b, B >= 1 and a, A >= 0")
        if not 0 <= self.a < self.b and not (self.a == 0 and self.b == 1):
            raise InvalidParams("need 0 <= a < b")
        if gcd(self.a, self.b) != 1 and not (self.a == 0 and self.b == 1):
            raise InvalidParams("need gcd(a, b) = 1")
        if self.b == 1 and self.A % self.B == 0:
            raise InvalidParams("b = 1 requires B not dividing A "
                                "(otherwise the specialization has fixed zeros)")


@dataclass(frozen=True)
class CuspData:
    h: int
    k: int
    kprime: int
    Bprime: int
    mu: Fraction
    in_Q: bool
    label: CaseLabel


def _normalize_h(h: int, k: int) -> int:
    h = h % k
    return k if h == 0 else h


def cusp_data(params: SpecializationParams, h: int, k: int) -> CuspData:
    """Reduced cusp data: k' = k/(k,B), B' = B/(k,B), the fractional invariant
    mu = {k'(a/b + Ah/k)}, and membership in the pole set (checked both via
    mu = 0 and via the direct divisibility definition)."""
    if k < 1:
        raise InvalidParams("k must be positive")
    if gcd(h, k) != 1:
        raise InvalidParams("need gcd(h, k) = 1")
    h = _normalize_h(h, k)
    g = gcd(k, params.B)
    kp = k // g
    Bp = params.B // g
    raw = Fraction(kp * params.a, params.b) + Fraction(kp * params.A * h, k)
    mu = raw - int(raw) if raw >= 0 else raw - (int(raw) - 1)
    mu = raw % 1
    in_q_mu = (mu == 0)
    in_q_direct = (k % params.b == 0) and ((params.a * k // params.b + params.A * h) % g == 0)
    if in_q_mu != in_q_direct:
        raise MockRadialError("pole criteria disagree (internal error)")
    label = _classify(params, kp, Bp, mu, h)
    return CuspData(h=h, k=k, kprime=kp, Bprime=Bp, mu=mu, in_Q=in_q_direct,
                    label=label)


def _classify(params: SpecializationParams, kp: int, Bp: int, mu: Fraction,
              h: int) -> CaseLabel:
    if mu == 0:
        return CaseLabel.POLE
    if Fraction(1, 6) < mu < Fraction(5, 6):
        return CaseLabel.CONVERGENT
    if mu in (Fraction(1, 6), Fraction(5, 6)):
        if (h * Bp) % kp == 1 % kp:
            return CaseLabel.EDGE_SIXTH_CLOSED
        return CaseLabel.EDGE_SIXTH_UNSUPPORTED
    if kp % 3 != 0:
        return CaseLabel.KANG_SHIFT
    return CaseLabel.DIVERGENT_THREE_UNSUPPORTED


def classify(params: SpecializationParams, cusp: CuspData) -> CaseLabel:
    return cusp.label


# ---------------------------------------------------------------------------
# exact field plumbing
# ---------------------------------------------------------------------------

def _field_order(params: SpecializationParams, k: int) -> int:
    n = 6
    for m in (params.b, k):
        n = n * m // gcd(n, m)
    return n


def _exponents(params: SpecializationParams, cusp: CuspData, N: int):
    """Integer exponents mod N of x0 = zeta_b^a zeta_k^{hA} and q0 = zeta_k^{hB}."""
    ex = (params.a * (N // params.b) + cusp.h * params.A * (N // cusp.k)) % N
    eq = (cusp.h * params.B * (N // cusp.k)) % N
    return ex, eq


def _one(N: int) -> CyclotomicNumber:
    return CyclotomicNumber.one(N)


def _geometric_prefactor_inverse(N: int, e_y: int) -> CyclotomicNumber:
    """1 / (D - 1) for D = (1 - y)(1 - 1/y), y = zeta_N^{e_y} != 1 and
    y not a primitive sixth root of unity.

    D - 1 = 1 - y - y^{-1} = -y (1 + y) / (1 + y^3) after clearing, so the
    inverse reduces to closed (1 - root) forms; y = -1 is the special value
    D - 1 = 3.
    """
    y = _zeta_power(N, e_y)
    if (2 * e_y) % N == 0 and e_y % N != 0:   # y = -1
        return CyclotomicNumber.from_rational(Fraction(1, 3), 1).promoted(1)
    inv_1py3 = _inverse_one_minus_root(N, (3 * e_y) % N, True)   # 1/(1 + y^3)
    one_py = _one(N) + y
    return -(y * one_py * inv_1py3)


def _inner_sum(N: int, e_u1: int, e_u2: int, e_q: int, kp: int):
    """Horner form of sum_{j=1}^{k'} q^{j(j-1)} * prod_{i=j+1}^{k'} f_i, where
    f_i = (1 - u1 q^{i-1})(1 - u2 q^{i-1}).  Returns the numerator; the caller
    divides by prod_{i=1}^{k'} f_i in closed form."""
    one = _one(N)
    acc = _one(N)                      # n_1 = q^0
    for j in range(2, kp + 1):
        f1 = one - _zeta_power(N, (e_u1 + e_q * (j - 1)) % N)
        f2 = one - _zeta_power(N, (e_u2 + e_q * (j - 1)) % N)
        acc = acc * f1 * f2
        acc = acc + _zeta_power(N, (e_q * j * (j - 1)) % N)
    return acc


def limit_pole(params: SpecializationParams, cusp: CuspData) -> CyclotomicNumber:
    """Exact radial limit in the pole case:
    -x0^{-1} + x0^{-2} sum_{n=1}^{k'} (q0/x0; q0)_{n-1} (x0; q0)_n q0^n."""
    if cusp.label is not CaseLabel.POLE:
        raise CaseMismatch(f"label is {cusp.label.value}, not Pole")
    N = _field_order(params, cusp.k)
    ex, eq = _exponents(params, cusp, N)
    x0 = _zeta_power(N, ex)
    q0 = _zeta_power(N, eq)
    tail = g_tilde_tail(x0, q0, terms=cusp.kprime)
    xinv = _zeta_power(N, (-ex) % N)
    return -xinv + xinv * xinv * tail


def limit_convergent(params: SpecializationParams, cusp: CuspData) -> CyclotomicNumber:
    """Exact radial limit in the absolutely convergent case:
    [1 / (1 - 1/D)] sum_{j=1}^{k'} q0^{j(j-1)} / ((x0, q0/x0; q0)_j)
    with D = (1 - x0^{k'})(1 - x0^{-k'})."""
    if cusp.label is not CaseLabel.CONVERGENT:
        raise CaseMismatch(f"label is {cusp.label.value}, not Convergent")
    N = _field_order(params, cusp.k)
    ex, eq = _exponents(params, cusp, N)
    numerator = _inner_sum(N, ex, (eq - ex) % N, eq, cusp.kprime)
    # prefactor/D telescoping: [D/(D-1)] * numerator / D = numerator / (D-1)
    return numerator * _geometric_prefactor_inverse(N, (cusp.kprime * ex) % N)


def limit_kang(params: SpecializationParams, cusp: CuspData) -> CyclotomicNumber:
    """Exact limit of F minus the Kang companion:
    -sum_{l=1,2} [1/(1 - 1/D_l)] sum_{j=1}^{k'} q0^{j(j-1)} /
        ((zeta_3^l x0, zeta_3^{2l} q0/x0; q0)_j)."""
    if cusp.label is not CaseLabel.KANG_SHIFT:
        raise CaseMismatch(f"label is {cusp.label.value}, not KangShift")
    N = _field_order(params, cusp.k)
    ex, eq = _exponents(params, cusp, N)
    e3 = N // 3
    total = CyclotomicNumber.zero(1)
    for ell in (1, 2):
        exl = (ex + ell * e3) % N
        equ1 = (eq - ex + 2 * ell * e3) % N
        numerator = _inner_sum(N, exl, equ1, eq, cusp.kprime)
        total = total + numerator * _geometric_prefactor_inverse(
            N, (cusp.kprime * exl) % N)
    return -total


# ---------------------------------------------------------------------------
# modular companions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModularCompanion:
    """Descriptor of the weakly holomorphic form subtracted before the limit."""

    form: str                     # Zero | PoleForm | KangForm | EdgeForm
    params: SpecializationParams
    h: int
    k: int
    edge_u: Optional[tuple] = None   # (a', b', A') for the EdgeForm path argument


def _as_fraction(t) -> Fraction:
    return t if isinstance(t, Fraction) else Fraction(t).limit_denominator(10 ** 12)


def pole_branch_sign(p: SpecializationParams, h: int, k: int) -> int:
    """Square-root branch for the pole companion's q^{B/2} powers.

    The bilateral decomposition needs j(x q^{B/2}, q^B) bounded away from zero
    at the cusp, i.e. the root x0 * (sqrt q0 branch) must avoid the cyclic
    group generated by q0.  The principal branch can land inside it (only
    possible for odd k'); the sign flip then always escapes, since -1 is not
    in a cyclic group of odd order.
    """
    g = gcd(k, p.B)
    kp = k // g
    e_u = Fraction(p.a, p.b) + Fraction(h * (2 * p.A + p.B), 2 * k)
    if (e_u * kp) % 1 == 0:
        if ((e_u + Fraction(1, 2)) * kp) % 1 == 0:
            raise MockRadialError("both square-root branches degenerate (impossible)")
        return -1
    return 1


def companion_value(companion: ModularCompanion, t, digits: int = 50) -> BigComplex:
    """Numeric companion value at q = e^{2 pi i h/k - t}.  All fractional powers
    use the principal radial branch q^beta = e^{(2 pi i h/k - t) beta}; the path
    points are rebuilt at whatever working precision the series ladders reach."""
    tf = _as_fraction(t)
    if tf <= 0:
        raise ValueError("t must be positive")
    if companion.form == "Zero":
        return BigComplex.from_value(0, digits)
    g = guard_digits(digits)
    w = digits + g
    p = companion.params
    h, k = companion.h, companion.k

    def logq():
        return (2 * mp.pi * mp.j * mp.mpf(h) / k
                - mp.mpf(tf.numerator) / tf.denominator)

    def qpow(num: int, den: int = 1):
        return lambda: mp.e ** (logq() * num / den)

    def xpath(root_num: int, root_den: int, exp: int):
        return lambda: (mp.expjpi(mp.mpf(2 * root_num) / root_den)
                        * mp.e ** (logq() * exp))

    if companion.form == "PoleForm":
        sigma = pole_branch_sign(p, h, k)
        Q = qpow(p.B)
        R = lambda: sigma * mp.e ** (logq() * p.B / 2)
        x = xpath(p.a, p.b, p.A)
        xR = lambda: x() * R()
        eQ = euler_infinite(Q, w)
        jR = jacobi_theta(R, Q, w)
        jxR = jacobi_theta(xR, Q, w)
        jx = jacobi_theta(x, Q, w)
        with workdps(w + 20):
            value = (eQ.to_mpc() ** 2 * jR.to_mpc() ** 2
                     / (x() * jxR.to_mpc() ** 2 * jx.to_mpc()))
        return BigComplex.from_mpc(value, digits)
    if companion.form == "KangForm":
        Q = qpow(p.B)
        Q3 = qpow(3 * p.B)
        x3 = xpath(3 * p.a % p.b, p.b, 3 * p.A)
        num = euler_cubed_infinite(Q3, w)
        den1 = euler_infinite(Q, w)
        den2 = jacobi_theta(x3, Q3, w)
        with workdps(w + 20):
            value = 3 * num.to_mpc() / (den1.to_mpc() * den2.to_mpc())
        return BigComplex.from_mpc(value, digits)
    if companion.form == "EdgeForm":
        ua, ub, uA = companion.edge_u
        u = xpath(ua, ub, uA)
        return edge_eta_companion(u, digits)
    raise ValueError(f"unknown companion form {companion.form!r}")


# ---------------------------------------------------------------------------
# edge case reduction
# ---------------------------------------------------------------------------

@dataclass
class RadialLimitResult:
    label: CaseLabel
    params: SpecializationParams
    cusp: CuspData
    exact: Optional[CyclotomicNumber]
    numeric: Optional[BigComplex]
    companion: ModularCompanion
    reduction_trace: Optional[list] = None
    trace_notes: Optional[list] = None
    direction_supported: Optional[bool] = None


def _edge_base_value(N: int, kp: int) -> CyclotomicNumber:
    """Closed form at the reduced point x = zeta_{6k'}, q = zeta_{k'}:
    -1/(2 zeta_{6k'}) + (2 zeta_{6k'}/3) sum_{j=1}^{k'} zeta_{k'}^{j(j-1)} /
    (zeta_{2k'}; zeta_{k'})_j^2."""
    e6 = N // (6 * kp)     # exponent of zeta_{6k'}
    e2 = N // (2 * kp)     # exponent of zeta_{2k'}
    ek = N // kp           # exponent of zeta_{k'}
    one = _one(N)
    acc = _one(N)
    for j in range(2, kp + 1):
        f = one - _zeta_power(N, (e2 + ek * (j - 1)) % N)
        acc = acc * f * f
        acc = acc + _zeta_power(N, (ek * j * (j - 1)) % N)
    # full product (zeta_{2k'}; zeta_{k'})_{k'} = 1 - zeta_{2k'}^{k'} = 2
    inner = acc * Fraction(1, 4)
    x = _zeta_power(N, e6)
    xinv = _zeta_power(N, (-e6) % N)
    return -(xinv * Fraction(1, 2)) + x * Fraction(2, 3) * inner


def limit_edge(params: SpecializationParams, cusp: CuspData,
               digits: int = 50) -> RadialLimitResult:
    """Sixth-root edge case: reduce x0 to zeta_{6k'} with the q/x symmetry and
    iterated functional-equation shifts, apply the closed base formula when
    h B' == 1 (mod k'), and transport the exact value back through the chain.

    `direction_supported` records whether the reduced tuple's radial direction
    rides the curve q = x^6 on which the base formula is provably the limit of
    F minus the eta-quotient companion; only those tuples are expected to pass
    the numeric harness.
    """
    if cusp.label not in (CaseLabel.EDGE_SIXTH_CLOSED,
                          CaseLabel.EDGE_SIXTH_UNSUPPORTED):
        raise CaseMismatch(f"label is {cusp.label.value}, not an edge case")
    N = _field_order(params, cusp.k)
    kp = cusp.kprime
    ex, eq = _exponents(params, cusp, N)
    trace: list[AffineRelation] = []
    notes: list[str] = []
    plus_branch = cusp.mu == Fraction(1, 6)

    if not plus_branch:
        # g3(x, q) = g3(q/x, q): move to the mu = 1/6 branch for free
        ex = (eq - ex) % N
        trace.append(AffineRelation.identity())
        notes.append("symmetry x -> q/x")

    # x0 = zeta_{6k'}^{1 + 6 ell}
    step = N // (6 * kp)
    if ex % step != 0:
        raise MockRadialError("edge point is not a 6k'-th root of unity (internal)")
    j_exp = ex // step
    if j_exp % 6 != 1:
        raise MockRadialError("edge exponent not 1 mod 6 after branch reduction")
    ell = ((j_exp - 1) // 6) % kp

    hBp = (cusp.h * cusp.Bprime) % kp
    n_shifts = 0
    if ell:
        n_shifts = (-ell * pow(hBp, -1, kp)) % kp
    cur = ex
    for _ in range(n_shifts):
        x_cur = _zeta_power(N, cur)
        xinv = _zeta_power(N, (-cur) % N)
        rel = AffineRelation(-(xinv ** 3), -(xinv + xinv * xinv))
        trace.append(rel)
        notes.append(f"shift x -> xq at exponent {cur}/{N}")
        cur = (cur + eq) % N

    if cur != step:
        raise MockRadialError("reduction did not reach zeta_{6k'} (internal)")

    closed = (hBp == 1 % kp)
    # direction of the reduced tuple
    if plus_branch:
        A_red = params.A + n_shifts * params.B
    else:
        A_red = (params.B - params.A) + n_shifts * params.B
    aligned = closed and n_shifts == 0 and A_red > 0 and params.B == 6 * A_red

    if aligned:
        if plus_branch:
            edge_u = (params.a, params.b, params.A)
        else:
            edge_u = ((-params.a) % params.b, params.b, params.B - params.A)
        companion = ModularCompanion("EdgeForm", params, cusp.h, cusp.k,
                                     edge_u=edge_u)
    else:
        companion = ModularCompanion("Zero", params, cusp.h, cusp.k)

    if not closed:
        notes.append(f"h B' = {hBp} != 1 (mod k'): closed form not applicable")
        return RadialLimitResult(CaseLabel.EDGE_SIXTH_UNSUPPORTED, params, cusp,
                                 None, None, companion, trace, notes, aligned)

    base = _edge_base_value(N, kp)
    value = base
    for rel in reversed(trace):
        value = rel.apply(value)
    notes.append("closed form applied at zeta_{6k'}")
    return RadialLimitResult(CaseLabel.EDGE_SIXTH_CLOSED, params, cusp, value,
                             embed_complex(value, digits), companion, trace,
                             notes, aligned)


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------

def radial_limit(params: SpecializationParams, h: int, k: int,
                 digits: int = 50) -> RadialLimitResult:
    """Classify the cusp and dispatch to the matching exact limit formula."""
    cusp = cusp_data(params, h, k)
    label = cusp.label
    if label is CaseLabel.POLE:
        exact = limit_pole(params, cusp)
        companion = ModularCompanion("PoleForm", params, cusp.h, cusp.k)
        return RadialLimitResult(label, params, cusp, exact,
                                 embed_complex(exact, digits), companion,
                                 direction_supported=True)
    if label is CaseLabel.CONVERGENT:
        exact = limit_convergent(params, cusp)
        companion = ModularCompanion("Zero", params, cusp.h, cusp.k)
        return RadialLimitResult(label, params, cusp, exact,
                                 embed_complex(exact, digits), companion,
                                 direction_supported=True)
    if label is CaseLabel.KANG_SHIFT:
        exact = limit_kang(params, cusp)
        companion = ModularCompanion("KangForm", params, cusp.h, cusp.k)
        return RadialLimitResult(label, params, cusp, exact,
                                 embed_complex(exact, digits), companion,
                                 direction_supported=True)
    if label in (CaseLabel.EDGE_SIXTH_CLOSED, CaseLabel.EDGE_SIXTH_UNSUPPORTED):
        return limit_edge(params, cusp, digits)
    companion = ModularCompanion("Zero", params, cusp.h, cusp.k)
    return RadialLimitResult(label, params, cusp, None, None, companion,
                             trace_notes=["no formula for 3 | k' divergent case"],
                             direction_supported=False)
