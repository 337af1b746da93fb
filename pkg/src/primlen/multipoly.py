"""Sparse multivariate polynomial arithmetic over a FieldScalar coefficient field.

A polynomial in d variables is a map from exponent vectors (length-d tuples
of nonnegative integers) to nonzero coefficients.  All operations are exact
and return canonical values: zero coefficients are pruned eagerly, so two
equal polynomials compare equal structurally.
"""

from __future__ import annotations

from math import comb

from .errors import ArityMismatchError, FieldMismatchError
from .field import FieldScalar


def total_degree_of(mono):
    return sum(mono)


def multinomial(mono):
    """(a_1+...+a_d)! / (a_1! ... a_d!), computed as a product of binomials.

    Iterating ``comb(partial_sum, a_i)`` avoids building the full factorials.
    """
    total = 0
    result = 1
    for e in mono:
        total += e
        result *= comb(total, e)
    return result


def monomials_of_degree(d, p):
    """All exponent vectors of length d with total degree exactly p."""
    if d == 1:
        yield (p,)
        return
    for first in range(p, -1, -1):
        for rest in monomials_of_degree(d - 1, p - first):
            yield (first,) + rest


def grlex_key(mono):
    """Graded lexicographic sort key (degree first, then lex)."""
    return (sum(mono), mono)


class Polynomial:
    """Immutable sparse polynomial in ``arity`` variables over ``field``."""

    __slots__ = ("arity", "field", "terms")

    def __init__(self, arity, field, terms=None):
        if arity < 1:
            raise ArityMismatchError("arity must be at least 1")
        clean = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != arity:
                raise ArityMismatchError(f"monomial {mono} has wrong length for arity {arity}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            if not isinstance(coeff, FieldScalar):
                coeff = field(coeff)
            elif coeff.field != field:
                raise FieldMismatchError("coefficient field mismatch")
            if not coeff.is_zero():
                clean[mono] = coeff
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, arity, field):
        return cls(arity, field, {})

    @classmethod
    def constant(cls, arity, field, c):
        return cls(arity, field, {(0,) * arity: c})

    @classmethod
    def variable(cls, arity, field, index):
        """The generator x_index (1-based)."""
        if not 1 <= index <= arity:
            raise ArityMismatchError(f"variable x{index} out of range for arity {arity}")
        mono = tuple(1 if i == index - 1 else 0 for i in range(arity))
        return cls(arity, field, {mono: field.one()})

    # -- helpers -----------------------------------------------------------

    def _check_compatible(self, other):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.arity != self.arity:
            raise ArityMismatchError(f"arity {self.arity} vs {other.arity}")
        if other.field != self.field:
            raise FieldMismatchError("polynomials over different fields")

    def is_zero(self):
        return not self.terms

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), self.field.zero())

    def constant_term(self):
        return self.coefficient((0,) * self.arity)

    def iter_sorted(self):
        """Terms in canonical order: graded lexicographic, highest first."""
        for mono in sorted(self.terms, key=grlex_key, reverse=True):
            yield mono, self.terms[mono]

    def total_degree(self):
        """Maximal total degree, or None (the "minus infinity" marker) for 0."""
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def homogeneous_component(self, p):
        return Polynomial(
            self.arity,
            self.field,
            {m: c for m, c in self.terms.items() if sum(m) == p},
        )

    def linear_coefficients(self):
        """Coefficients (c_1, ..., c_d) of the degree-1 component."""
        coeffs = []
        for i in range(self.arity):
            mono = tuple(1 if j == i else 0 for j in range(self.arity))
            coeffs.append(self.terms.get(mono, self.field.zero()))
        return coeffs

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono)
            s = coeff if acc is None else acc + coeff
            if s.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = s
        return self._wrap(terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._wrap({m: -c for m, c in self.terms.items()})

    def scale(self, c):
        """Multiply every coefficient by the scalar c."""
        if not isinstance(c, FieldScalar):
            c = self.field(c)
        if c.is_zero():
            return Polynomial.zero(self.arity, self.field)
        return self._wrap({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (FieldScalar, int)):
            return self.scale(other)
        self._check_compatible(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                prod = c1 * c2
                acc = terms.get(mono)
                s = prod if acc is None else acc + prod
                if s.is_zero():
                    terms.pop(mono, None)
                else:
                    terms[mono] = s
        return self._wrap(terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(self.arity, self.field, self.field.one())
        for _ in range(k):
            result = result * self
        return result

    def substitute(self, images):
        """Apply the ring endomorphism x_i -> images[i].

        ``images`` must be ``arity`` polynomials over the same field (their
        common arity may differ from ``self.arity``).  Powers of each image
        are cached, so repeated exponents cost one multiplication each.
        """
        if len(images) != self.arity:
            raise ArityMismatchError(f"expected {self.arity} images, got {len(images)}")
        if not images:
            raise ArityMismatchError("empty image list")
        target_arity = images[0].arity
        for g in images:
            if g.arity != target_arity:
                raise ArityMismatchError("images have mixed arities")
            if g.field != self.field:
                raise FieldMismatchError("image field mismatch")
        one = Polynomial.constant(target_arity, self.field, self.field.one())
        power_cache = [{0: one} for _ in images]

        def img_power(i, e):
            cache = power_cache[i]
            if e not in cache:
                best = max(k for k in cache if k <= e)
                acc = cache[best]
                for k in range(best + 1, e + 1):
                    acc = acc * images[i]
                    cache[k] = acc
            return cache[e]

        result = Polynomial.zero(target_arity, self.field)
        for mono, coeff in self.terms.items():
            piece = one
            for i, e in enumerate(mono):
                if e:
                    piece = piece * img_power(i, e)
            result = result + piece.scale(coeff)
        return result

    def _wrap(self, terms):
        out = Polynomial.__new__(Polynomial)
        object.__setattr__(out, "arity", self.arity)
        object.__setattr__(out, "field", self.field)
        object.__setattr__(out, "terms", terms)
        return out

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.field == other.field
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self):
        from .parsing import poly_to_str

        return f"Polynomial({self.arity}, {self.field!r}, {poly_to_str(self)!r})"
