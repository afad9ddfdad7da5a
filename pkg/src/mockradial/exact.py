"""Exact arithmetic in cyclotomic fields Q(zeta_n) over arbitrary-precision rationals.

Elements are represented on the power basis zeta_n^0 .. zeta_n^{phi(n)-1},
reduced modulo the n-th cyclotomic polynomial, so the structure is a genuine
field and every nonzero element is invertible.  Coefficient vectors are kept
as integer tuples with a single positive denominator in lowest terms, which
keeps the hot paths (convolutions, root-of-unity products) in fast integer
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

from mpmath import mp, workdps

from .bigcomplex import BigComplex
from .errors import DivisionByZero, OrderCapExceeded, OrderMismatch

Rational = Fraction

_DEFAULT_ORDER_CAP = 600
_order_cap = _DEFAULT_ORDER_CAP


def get_order_cap() -> int:
    return _order_cap


def set_order_cap(cap: int) -> None:
    """Raise or lower the largest permitted cyclotomic order (default 600)."""
    global _order_cap
    if cap < 1:
        raise ValueError("order cap must be positive")
    _order_cap = cap


def _check_order(n: int) -> None:
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    if n > _order_cap:
        raise OrderCapExceeded(f"order {n} exceeds cap {_order_cap}")


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# ---------------------------------------------------------------------------
# Integer polynomials (lowest degree first)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, coefficients listed lowest degree first."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        if self.coeffs == (0,):
            return -1
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(tuple(out))


def poly_divmod_exact(num: Sequence[int], den: Sequence[int]):
    """Long division of integer polynomials; requires the division to be exact
    at every step (monic-or-divisible leading coefficients)."""
    num = list(num)
    dden = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - dden)
    for i in range(len(num) - 1, dden - 1, -1):
        c = num[i]
        if c == 0:
            continue
        if c % lead != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // lead
        quot[i - dden] = q
        for j, dj in enumerate(den):
            num[i - dden + j] -= q * dj
    rem = num[:dden] if dden > 0 else [0]
    return quot, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> IntPolynomial:
    """Phi_n, computed by dividing x^n - 1 by Phi_d over the proper divisors d | n."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return IntPolynomial((-1, 1))
    num = [0] * (n + 1)
    num[0] = -1
    num[n] = 1
    den = IntPolynomial((1,))
    for d in range(1, n):
        if n % d == 0:
            den = den * cyclotomic_polynomial(d)
    quot, rem = poly_divmod_exact(num, den.coeffs)
    if any(rem):
        raise ArithmeticError(f"cyclotomic division left a remainder for n={n}")
    return IntPolynomial(tuple(quot))


@lru_cache(maxsize=None)
def _reduction_table(n: int):
    """Rows t -> coefficient vector of zeta_n^t on the power basis, for
    t = phi(n) .. max(n - 1, 2 phi(n) - 2)."""
    phi = euler_phi(n)
    cyc = cyclotomic_polynomial(n).coeffs  # monic, degree phi
    top = [-c for c in cyc[:phi]]          # zeta^phi = top . basis
    tmax = max(n - 1, 2 * phi - 2)
    rows = {phi: tuple(top)} if tmax >= phi else {}
    prev = list(top)
    for t in range(phi + 1, tmax + 1):
        cur = [0] * phi
        for i in range(phi - 1):
            cur[i + 1] = prev[i]
        lead = prev[phi - 1]
        if lead:
            for i in range(phi):
                cur[i] += lead * top[i]
        rows[t] = tuple(cur)
        prev = cur
    return rows


def _reduce_vec(vec, n: int):
    """Fold exponents >= phi(n) back onto the power basis. `vec` may be longer
    than phi(n); returns a list of length phi(n)."""
    phi = euler_phi(n)
    if len(vec) <= phi:
        out = list(vec) + [0] * (phi - len(vec))
        return out
    rows = _reduction_table(n)
    out = list(vec[:phi])
    for t in range(phi, len(vec)):
        c = vec[t]
        if c:
            row = rows[t]
            for i in range(phi):
                if row[i]:
                    out[i] += c * row[i]
    return out


def _normalize(nums, den: int):
    if den < 0:
        nums = [-v for v in nums]
        den = -den
    g = den
    for v in nums:
        if v:
            g = gcd(g, v)
            if g == 1:
                break
    if g > 1:
        nums = [v // g for v in nums]
        den //= g
    return tuple(nums), den


class CyclotomicNumber:
    """Element of Q(zeta_n) on the canonical power basis."""

    __slots__ = ("order", "_nums", "_den")

    def __init__(self, order: int, nums: Iterable[int], den: int = 1, _normalized=False):
        _check_order(order)
        self.order = order
        if _normalized:
            self._nums = tuple(nums)
            self._den = den
        else:
            vec = _reduce_vec(list(nums), order)
            self._nums, self._den = _normalize(vec, den)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, value, order: int = 1) -> "CyclotomicNumber":
        value = Fraction(value)
        phi = euler_phi(order)
        nums = [0] * phi
        nums[0] = value.numerator
        return cls(order, nums, value.denominator)

    @classmethod
    def zero(cls, order: int = 1) -> "CyclotomicNumber":
        return cls(order, [0] * euler_phi(order), 1, _normalized=False)

    @classmethod
    def one(cls, order: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(1, order)

    # -- basic structure ----------------------------------------------------

    @property
    def coeffs(self):
        """Coefficient vector as Fractions (lowest power first)."""
        return tuple(Fraction(v, self._den) for v in self._nums)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self._nums)

    def is_rational(self) -> bool:
        return all(v == 0 for v in self._nums[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return Fraction(self._nums[0], self._den)

    def __repr__(self):
        return f"CyclotomicNumber(order={self.order}, coeffs={list(self.coeffs)})"

    def __hash__(self):
        return hash((self.order, self._nums, self._den))

    # -- order management ---------------------------------------------------

    def promoted(self, n: int) -> "CyclotomicNumber":
        """Same value in Q(zeta_n); requires order | n."""
        if n == self.order:
            return self
        if n % self.order != 0:
            raise OrderMismatch(f"cannot promote order {self.order} into {n}")
        _check_order(n)
        step = n // self.order
        vec = [0] * n
        for i, c in enumerate(self._nums):
            if c:
                vec[i * step] += c
        return CyclotomicNumber(n, vec, self._den)

    @staticmethod
    def _common(a: "CyclotomicNumber", b: "CyclotomicNumber"):
        if a.order == b.order:
            return a, b
        n = a.order * b.order // gcd(a.order, b.order)
        return a.promoted(n), b.promoted(n)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(other, 1)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(self, other)
        da, db = a._den, b._den
        nums = [va * db + vb * da for va, vb in zip(a._nums, b._nums)]
        return CyclotomicNumber(a.order, nums, da * db)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, [-v for v in self._nums], self._den,
                                _normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _nnz(self):
        return sum(1 for v in self._nums if v)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(self, other)
        phi = euler_phi(a.order)
        if b._nnz() < a._nnz():
            a, b = b, a
        out = [0] * (2 * phi - 1)
        bn = b._nums
        for i, ai in enumerate(a._nums):
            if ai:
                for j, bj in enumerate(bn):
                    if bj:
                        out[i + j] += ai * bj
        return CyclotomicNumber(a.order, out, a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        inv = self._inverse_fast()
        if inv is None:
            inv = self._inverse_norm()
        return inv

    def _monomial_parts(self):
        """(exponent, coefficient) pairs for nonzero entries."""
        return [(i, c) for i, c in enumerate(self._nums) if c]

    def _inverse_fast(self):
        """Closed forms: c zeta^e, and c zeta^{e1} (1 -/+ zeta^{e2-e1})."""
        parts = self._monomial_parts()
        if len(parts) == 1:
            e, c = parts[0]
            mono = _zeta_power(self.order, (-e) % self.order)
            return mono * Fraction(self._den, c)
        if len(parts) == 2:
            (e1, c1), (e2, c2) = parts
            if abs(c1) == abs(c2):
                # self = c1 zeta^{e1} (1 - s zeta^{e2-e1}), s = -c2/c1 = +/-1
                s = -1 if c2 // c1 == 1 else 1  # sign of -c2/c1
                inv_unit = _inverse_one_minus_root(self.order, (e2 - e1) % self.order,
                                                   s == -1)
                mono = _zeta_power(self.order, (-e1) % self.order)
                return inv_unit * mono * Fraction(self._den, c1)
        return None

    def _conjugate_by(self, j: int) -> "CyclotomicNumber":
        """Galois automorphism zeta -> zeta^j (gcd(j, order) = 1)."""
        n = self.order
        vec = [0] * n
        for i, c in enumerate(self._nums):
            if c:
                vec[(i * j) % n] += c
        return CyclotomicNumber(n, vec, self._den)

    def _inverse_norm(self):
        """General inverse via the product of all nontrivial Galois conjugates:
        A * prod_{j != 1} sigma_j(A) = Norm(A) is rational, so the inverse is
        an integer-arithmetic product divided by the norm."""
        n = self.order
        scaled = CyclotomicNumber(n, self._nums, 1, _normalized=True)
        prod = CyclotomicNumber.one(n)
        for j in range(2, n + 1):
            if gcd(j, n) == 1 and j % n != 1:
                prod = prod * scaled._conjugate_by(j)
        check = prod * scaled
        if not check.is_rational():
            raise DivisionByZero("norm computation failed (unexpected)")
        norm = check.as_rational()
        if norm == 0:
            raise DivisionByZero("element is not invertible (unexpected)")
        return prod * (Fraction(self._den) / norm)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, CyclotomicNumber) and other.is_zero():
            raise DivisionByZero("division by zero")
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = CyclotomicNumber.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(self, other)
        return a._nums == b._nums and a._den == b._den

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def conjugate(self) -> "CyclotomicNumber":
        """Complex conjugation zeta -> zeta^{-1}."""
        n = self.order
        vec = [0] * n
        for i, c in enumerate(self._nums):
            if c:
                vec[(-i) % n] += c
        return CyclotomicNumber(n, vec, self._den)

    # -- numeric embedding ---------------------------------------------------

    def embed(self, digits: int = 50) -> BigComplex:
        return embed_complex(self, digits)


@lru_cache(maxsize=None)
def _zeta_power(n: int, e: int) -> CyclotomicNumber:
    e %= n
    phi = euler_phi(n)
    if e < phi:
        nums = [0] * phi
        nums[e] = 1
        return CyclotomicNumber(n, nums, 1, _normalized=True)
    vec = [0] * (e + 1)
    vec[e] = 1
    return CyclotomicNumber(n, vec, 1)


@lru_cache(maxsize=None)
def _inverse_one_minus_root(n: int, e: int, negated: bool) -> CyclotomicNumber:
    """1 / (1 - z) with z = zeta_n^e (negated=False) or z = -zeta_n^e (negated=True),
    via 1/(1-z) = -(1/m) sum_{j=1}^{m-1} j z^j for any m with z^m = 1."""
    if not negated and e % n == 0:
        raise DivisionByZero("1 - 1 is not invertible")
    m = n if not negated else (2 * n if n % 2 else n)
    # accumulate sum j * z^j on exponents of zeta_n, tracking the sign of z^j
    vec = [0] * n
    for j in range(1, m):
        if negated:
            sign = -1 if j % 2 else 1
            exp = (j * e) % n
            vec[exp] += -j * sign
        else:
            vec[(j * e) % n] += -j
    return CyclotomicNumber(n, vec, m)


# ---------------------------------------------------------------------------
# Spec operation surface
# ---------------------------------------------------------------------------

def root_of_unity(h: int, k: int) -> CyclotomicNumber:
    """zeta_k^h as an element of Q(zeta_k)."""
    if k < 1:
        raise ValueError("k must be positive")
    _check_order(k)   # cached constructions bypass the per-instance check
    return _zeta_power(k, h % k)


def field_arithmetic(x: CyclotomicNumber, y: CyclotomicNumber, op: str) -> CyclotomicNumber:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def promote(x: CyclotomicNumber, n: int) -> CyclotomicNumber:
    return x.promoted(n)


def embed_complex(x: CyclotomicNumber, digits: int = 50) -> BigComplex:
    """Numeric value sum c_i e^{2 pi i i/n}, accurate to `digits` significant digits."""
    if digits < 1:
        raise ValueError("digits must be positive")
    size = sum(abs(v) for v in x._nums)
    extra = len(str(max(size, 1))) + 12
    n = x.order
    with workdps(digits + extra):
        total = mp.mpc(0)
        for i, c in enumerate(x._nums):
            if c:
                total += c * mp.expjpi(mp.mpf(2 * i) / n)
        total /= x._den
    return BigComplex.from_mpc(total, digits)


ScalarLike = Union[CyclotomicNumber, int, Fraction]
