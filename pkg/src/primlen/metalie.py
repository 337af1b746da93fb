"""Free metabelian Lie algebra arithmetic with normal-form rewriting.

The commutator ideal of the free metabelian Lie algebra on x_1..x_d has a
vector-space basis of left-normed words

    [x_{i1}, x_{i2}, x_{i3}, ..., x_{in}],   i1 > i2 <= i3 <= ... <= i_n,

so an element is stored as a map from generators and normal words to
nonzero coefficients.  Brackets are rewritten into this basis with:

* alternation [a, a] = 0 and anti-symmetry on the inner pair;
* commuting ad-operators on the ideal (the tail may be sorted), because
  [[u, a], b] - [[u, b], a] = [u, [a, b]] = 0 for u in the ideal;
* the Jacobi rewrite [[a, b], c] = [[a, c], b] - [[b, c], a] whenever the
  second index is not minimal;
* [u, v] = 0 for u, v both in the ideal (the metabelian law).

Since the second index of a normal word is its minimum, bracketing a
normal word with a generator produces one normal word (tail insertion) or
two (one Jacobi step), so rewriting terminates immediately.

Results never exceed the configurable degree cap (default 12, overridden
by the PRIMLEN_DEGREE_CAP environment variable); a bracket that would is
reported as an error instead of silently exploding.
"""

from __future__ import annotations

import os
from bisect import insort

from .errors import ArityMismatchError, DegreeCapError, FieldMismatchError
from .field import FieldScalar

DEFAULT_DEGREE_CAP = 12


def degree_cap():
    raw = os.environ.get("PRIMLEN_DEGREE_CAP")
    if raw is None:
        return DEFAULT_DEGREE_CAP
    return int(raw)


def is_normal_word(word):
    if len(word) == 1:
        return True
    if word[0] <= word[1]:
        return False
    return all(a <= b for a, b in zip(word[1:], word[2:]))


def _ad_normal(word, j):
    """[word, x_j] for a normal word of length >= 2, as (normal word, sign) pairs."""
    i1, i2 = word[0], word[1]
    tail = list(word[2:])
    if j >= i2:
        insort(tail, j)
        return (((i1, i2) + tuple(tail), 1),)
    first = list(tail)
    insort(first, i2)
    second = list(tail)
    insort(second, i1)
    return (
        ((i1, j) + tuple(first), 1),
        ((i2, j) + tuple(second), -1),
    )


class LieElement:
    """Immutable element of the free metabelian Lie algebra on d generators."""

    __slots__ = ("arity", "field", "terms")

    def __init__(self, arity, field, terms=None):
        if arity < 1:
            raise ArityMismatchError("arity must be at least 1")
        clean = {}
        for word, coeff in (terms or {}).items():
            word = tuple(word)
            if not word or any(not 1 <= i <= arity for i in word):
                raise ArityMismatchError(f"word {word} has an index outside 1..{arity}")
            if not is_normal_word(word):
                raise ValueError(f"word {word} is not in normal form")
            if not isinstance(coeff, FieldScalar):
                coeff = field(coeff)
            elif coeff.field != field:
                raise FieldMismatchError("coefficient field mismatch")
            if not coeff.is_zero():
                clean[word] = coeff
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LieElement is immutable")

    @classmethod
    def zero(cls, arity, field):
        return cls(arity, field, {})

    @classmethod
    def generator(cls, arity, field, index):
        if not 1 <= index <= arity:
            raise ArityMismatchError(f"generator x{index} out of range for arity {arity}")
        return cls(arity, field, {(index,): field.one()})

    def _check_compatible(self, other):
        if not isinstance(other, LieElement):
            raise TypeError(f"expected LieElement, got {type(other).__name__}")
        if other.arity != self.arity:
            raise ArityMismatchError(f"arity {self.arity} vs {other.arity}")
        if other.field != self.field:
            raise FieldMismatchError("elements over different fields")

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Maximal word length, or None for the zero element."""
        if not self.terms:
            return None
        return max(len(w) for w in self.terms)

    def homogeneous_component(self, m):
        return self._wrap({w: c for w, c in self.terms.items() if len(w) == m})

    def linear_coefficients(self):
        coeffs = []
        for i in range(1, self.arity + 1):
            coeffs.append(self.terms.get((i,), self.field.zero()))
        return coeffs

    def has_linear_part(self):
        return any(len(w) == 1 for w in self.terms)

    def mentions(self, index):
        """Whether the generator x_index occurs in any stored word."""
        return any(index in w for w in self.terms)

    def iter_sorted(self):
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            yield word, self.terms[word]

    def __add__(self, other):
        self._check_compatible(other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = terms.get(word)
            s = coeff if acc is None else acc + coeff
            if s.is_zero():
                terms.pop(word, None)
            else:
                terms[word] = s
        return self._wrap(terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._wrap({w: -c for w, c in self.terms.items()})

    def scale(self, c):
        if not isinstance(c, FieldScalar):
            c = self.field(c)
        if c.is_zero():
            return LieElement.zero(self.arity, self.field)
        return self._wrap({w: c * v for w, v in self.terms.items()})

    def _wrap(self, terms):
        out = LieElement.__new__(LieElement)
        object.__setattr__(out, "arity", self.arity)
        object.__setattr__(out, "field", self.field)
        object.__setattr__(out, "terms", terms)
        return out

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.field == other.field
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self):
        from .parsing import lie_to_str

        return f"LieElement({self.arity}, {self.field!r}, {lie_to_str(self)!r})"


def bracket(u, v, cap=None):
    """The Lie bracket [u, v], rewritten into the normal-word basis."""
    u._check_compatible(v)
    if cap is None:
        cap = degree_cap()
    terms = {}

    def put(word, coeff):
        acc = terms.get(word)
        s = coeff if acc is None else acc + coeff
        if s.is_zero():
            terms.pop(word, None)
        else:
            terms[word] = s

    for wu, cu in u.terms.items():
        for wv, cv in v.terms.items():
            nu, nv = len(wu), len(wv)
            if nu >= 2 and nv >= 2:
                continue
            if nu + nv > cap:
                raise DegreeCapError(
                    f"bracket would reach degree {nu + nv} beyond the cap {cap}"
                )
            coeff = cu * cv
            if nu == 1 and nv == 1:
                a, b = wu[0], wv[0]
                if a == b:
                    continue
                if a > b:
                    put((a, b), coeff)
                else:
                    put((b, a), -coeff)
            elif nv == 1:
                for word, sign in _ad_normal(wu, wv[0]):
                    put(word, coeff if sign > 0 else -coeff)
            else:
                for word, sign in _ad_normal(wv, wu[0]):
                    put(word, -coeff if sign > 0 else coeff)
    return u._wrap(terms)


def normalize_word(indices, arity, field, cap=None):
    """The left-normed bracket [x_{i1}, ..., x_{in}] as a normal-form element."""
    indices = tuple(indices)
    if not indices:
        raise ValueError("empty bracket word")
    if cap is None:
        cap = degree_cap()
    if len(indices) > cap:
        raise DegreeCapError(f"word length {len(indices)} beyond the cap {cap}")
    result = LieElement.generator(arity, field, indices[0])
    for idx in indices[1:]:
        result = bracket(result, LieElement.generator(arity, field, idx), cap)
    return result


class LieEndomorphism:
    """Generator-image description of an endomorphism."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = list(images)
        if not images:
            raise ArityMismatchError("endomorphism needs at least one image")
        d = images[0].arity
        field = images[0].field
        if len(images) != d:
            raise ArityMismatchError(f"expected {d} images, got {len(images)}")
        for g in images:
            if g.arity != d or g.field != field:
                raise ArityMismatchError("inconsistent images")
        self.images = images

    @property
    def arity(self):
        return len(self.images)

    @property
    def field(self):
        return self.images[0].field

    @classmethod
    def identity(cls, arity, field):
        return cls([LieElement.generator(arity, field, i) for i in range(1, arity + 1)])


def apply_endo(endo, u, cap=None):
    """Homomorphic image of u: brackets are rebuilt from the generator images."""
    if endo.arity != u.arity:
        raise ArityMismatchError("endomorphism arity mismatch")
    if cap is None:
        cap = degree_cap()
    images = endo.images
    result = LieElement.zero(u.arity, u.field)
    for word, coeff in u.terms.items():
        if len(word) == 1:
            piece = images[word[0] - 1]
        else:
            piece = bracket(images[word[0] - 1], images[word[1] - 1], cap)
            for idx in word[2:]:
                piece = bracket(piece, images[idx - 1], cap)
        result = result + piece.scale(coeff)
    return result


def inner_auto(v):
    """exp(ad v): x_j -> x_j + [x_j, v], for v in the commutator ideal.

    In the metabelian quotient (ad v)^2 vanishes on the whole algebra, so
    the exponential series is exactly 1 + ad v and composing with
    inner_auto(-v) restores every generator.
    """
    if v.has_linear_part():
        raise ValueError("inner automorphisms need an element of the commutator ideal")
    d, field = v.arity, v.field
    images = []
    for j in range(1, d + 1):
        xj = LieElement.generator(d, field, j)
        images.append(xj + bracket(xj, v))
    return LieEndomorphism(images)


def split_parts(u):
    """Split u into (linear, words containing x_1, words avoiding x_1).

    A normal word contains x_1 exactly when its second index is 1, because
    the second index of a normal word is the minimum of all its indices.
    """
    linear, with_x1, without_x1 = {}, {}, {}
    for word, coeff in u.terms.items():
        if len(word) == 1:
            linear[word] = coeff
        elif word[1] == 1:
            with_x1[word] = coeff
        else:
            without_x1[word] = coeff
    return u._wrap(linear), u._wrap(with_x1), u._wrap(without_x1)
