"""Arbitrary-precision complex values with an explicit precision tag.

BigComplex wraps a pair of mpmath floats together with the number of
significant decimal digits the value is trusted to.  Arithmetic rounds to the
minimum of the operand precisions; the heavy numeric kernels work in raw
mpmath at a guarded working precision and round back on exit.
"""

from __future__ import annotations

from fractions import Fraction

from mpmath import mp, mpf, mpc, workdps

MIN_DIGITS = 10


def as_mpc(value) -> mpc:
    """Coerce supported scalar types to an mpmath complex at the current context."""
    if isinstance(value, BigComplex):
        return value.to_mpc()
    if isinstance(value, (mpc, mpf)):
        return mp.mpc(value)
    if isinstance(value, Fraction):
        return mp.mpc(mp.mpf(value.numerator) / value.denominator)
    if isinstance(value, (int, float, complex)):
        return mp.mpc(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to complex")


class BigComplex:
    __slots__ = ("real", "imag", "digits")

    def __init__(self, real, imag=0, digits: int = 50):
        if digits < MIN_DIGITS:
            raise ValueError(f"digits must be >= {MIN_DIGITS}")
        with workdps(digits):
            self.real = +mp.mpf(real)
            self.imag = +mp.mpf(imag)
        self.digits = digits

    @classmethod
    def from_mpc(cls, z, digits: int) -> "BigComplex":
        obj = object.__new__(cls)
        if digits < MIN_DIGITS:
            raise ValueError(f"digits must be >= {MIN_DIGITS}")
        # component access on an existing mpc/mpf is exact; conversion and
        # rounding happen once, at the requested precision
        with workdps(digits):
            if isinstance(z, mpc):
                obj.real = +z.real
                obj.imag = +z.imag
            elif isinstance(z, mpf):
                obj.real = +z
                obj.imag = mp.mpf(0)
            else:
                zz = as_mpc(z)
                obj.real = +zz.real
                obj.imag = +zz.imag
        obj.digits = digits
        return obj

    @classmethod
    def from_value(cls, value, digits: int) -> "BigComplex":
        with workdps(digits + 10):
            return cls.from_mpc(as_mpc(value), digits)

    def to_mpc(self) -> mpc:
        """Exact copy of the stored components (independent of the ambient
        precision; safe to call outside a workdps block)."""
        with workdps(self.digits + 10):
            return mp.mpc(self.real, self.imag)

    # -- arithmetic (min-precision propagation) -----------------------------

    def _binary(self, other, op):
        if isinstance(other, BigComplex):
            digits = min(self.digits, other.digits)
        else:
            digits = self.digits
        with workdps(digits):
            if isinstance(other, BigComplex):
                rhs = other.to_mpc()
            else:
                try:
                    rhs = as_mpc(other)
                except TypeError:
                    return NotImplemented
            return BigComplex.from_mpc(op(self.to_mpc(), rhs), digits)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __pow__(self, e):
        return self._binary(e, lambda a, b: a ** b)

    def __neg__(self):
        return BigComplex.from_mpc(-self.to_mpc(), self.digits)

    def __abs__(self):
        with workdps(self.digits):
            return abs(self.to_mpc())

    def conjugate(self) -> "BigComplex":
        return BigComplex.from_mpc(self.to_mpc().conjugate(), self.digits)

    def __eq__(self, other):
        if isinstance(other, BigComplex):
            return self.real == other.real and self.imag == other.imag
        try:
            z = as_mpc(other)
        except TypeError:
            return NotImplemented
        return self.to_mpc() == z

    def __hash__(self):
        return hash((self.real, self.imag))

    def __repr__(self):
        return f"BigComplex({self.to_str(min(self.digits, 20))}, digits={self.digits})"

    def to_str(self, n: int | None = None) -> str:
        with workdps(self.digits + 10):
            return mp.nstr(self.to_mpc(), n or self.digits)
