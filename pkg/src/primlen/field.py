"""Exact scalar arithmetic over Q and over prime fields GF(p).

All coefficients in the package are ``FieldScalar`` values: an exact
rational (arbitrary precision, always in lowest terms) or a residue in
[0, p).  Scalars are immutable; every operation returns a fresh value in
canonical form, so equality is structural.
"""

from __future__ import annotations

from .errors import FieldMismatchError, UnsupportedInputError

try:
    from gmpy2 import mpq as _RAT, mpz as _INT
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _RAT

    _INT = int

#: Integer constructor of the big-integer backend (gmpy2.mpz when available).
big_int = _INT


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FieldDescriptor:
    """The coefficient field: Q (``p is None``) or GF(p) for a prime p.

    Descriptors double as element factories: ``F(3)``, ``F(3, 4)``.
    """

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None:
            if p >= 1 << 63:
                raise UnsupportedInputError(f"modulus {p} does not fit a machine word")
            if not _is_prime(p):
                raise UnsupportedInputError(f"modulus {p} is not prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("FieldDescriptor is immutable")

    @property
    def is_rationals(self):
        return self.p is None

    def characteristic(self):
        return 0 if self.p is None else self.p

    def has_more_than_two_elements(self):
        return self.p != 2

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def __call__(self, num, den=None):
        """Build the scalar num (or num/den over Q)."""
        if isinstance(num, FieldScalar):
            if num.field != self:
                raise FieldMismatchError(f"scalar of {num.field} given to {self}")
            return num
        if self.p is None:
            value = _RAT(num) if den is None else _RAT(num, den)
            return FieldScalar(self, value)
        if den not in (None, 1):
            return FieldScalar(self, num % self.p) / self(den)
        return FieldScalar(self, num % self.p)

    def __eq__(self, other):
        return isinstance(other, FieldDescriptor) and self.p == other.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F{self.p}"

    def flag(self):
        """The textual field flag used on the command line ("Q", "F2", ...)."""
        return repr(self)


QQ = FieldDescriptor()

_gf_cache = {}


def GF(p):
    """The prime field GF(p); descriptors are cached so identity checks work."""
    if p not in _gf_cache:
        _gf_cache[p] = FieldDescriptor(p)
    return _gf_cache[p]


def field_from_flag(flag):
    """Parse "Q" or "F<p>" into a descriptor."""
    if flag == "Q":
        return QQ
    if flag.startswith("F") and flag[1:].isdigit():
        return GF(int(flag[1:]))
    raise UnsupportedInputError(f"unknown field flag {flag!r}")


class FieldScalar:
    """An element of Q or GF(p), stored in canonical form."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldScalar is immutable")

    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            if other.field is self.field or other.field == self.field:
                return other
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.field.p is None:
            return FieldScalar(self.field, self.value + other.value)
        return FieldScalar(self.field, (self.value + other.value) % self.field.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.field.p is None:
            return FieldScalar(self.field, self.value - other.value)
        return FieldScalar(self.field, (self.value - other.value) % self.field.p)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.field.p is None:
            return FieldScalar(self.field, self.value * other.value)
        return FieldScalar(self.field, (self.value * other.value) % self.field.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __neg__(self):
        if self.field.p is None:
            return FieldScalar(self.field, -self.value)
        return FieldScalar(self.field, (-self.value) % self.field.p)

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("exponent must be an integer")
        if k < 0:
            return self.inverse() ** (-k)
        if self.field.p is None:
            return FieldScalar(self.field, self.value**k)
        return FieldScalar(self.field, pow(self.value, k, self.field.p))

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.field.p is None:
            return FieldScalar(self.field, 1 / self.value)
        return FieldScalar(self.field, pow(self.value, -1, self.field.p))

    def is_zero(self):
        return self.value == 0

    def is_one(self):
        return self.value == 1

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"FieldScalar({self.field!r}, {self.value})"

    @property
    def numerator(self):
        if self.field.p is None:
            return int(self.value.numerator)
        return int(self.value)

    @property
    def denominator(self):
        if self.field.p is None:
            return int(self.value.denominator)
        return 1


def parse_scalar(field, text):
    """Parse the textual form: "a/b" or "a" over Q, a decimal residue over GF(p)."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return field(int(num), int(den))
    return field(int(text))
