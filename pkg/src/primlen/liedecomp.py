"""Decomposition in free metabelian Lie algebras, d >= 3, over Q or GF(p).

Every element is a sum of at most 5 certified primitive elements for d = 3
(6 when the field has only two elements) and at most 6 for d > 3 (7 over
GF(2)).  Three certificate shapes cover all summands:

* gamma x_j + v, v in the other generators: one triangular automorphism
  with respect to an ordering that puts x_j first;
* gamma x_j + [w, x_j], w in the commutator ideal: the diagonal linear map
  gamma followed by the inner automorphism exp(-(1/gamma) ad w);
* y_1 + [y_2, y_3] for linearly independent linear forms y_1, y_2, y_3: a
  triangular automorphism followed by the basis change x_i -> y_i.

The pipeline normalizes the linear part to delta x1, splits off the
commutator words containing x1, buckets them by a trailing generator that
can be stripped, solves a tiny linear system for the remaining linear
coefficients, and maps everything back.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import UnsupportedInputError
from .field import FieldScalar
from .linalg import DenseMatrix, bareiss_determinant, matrix_inverse
from .metalie import LieElement, LieEndomorphism, apply_endo, bracket, inner_auto, split_parts
from .polydecomp import ZERO_NOTE, VerifyResult


# -- elementary automorphisms ------------------------------------------------


class LinearLieAuto:
    """x_j -> sum_i matrix[j][i] x_i with an invertible matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, check=True):
        self.matrix = matrix
        if check:
            problems = self.validate()
            if problems:
                raise ValueError("; ".join(problems))

    @property
    def arity(self):
        return self.matrix.rows

    def validate(self):
        if self.matrix.rows != self.matrix.cols:
            return ["linear matrix is not square"]
        det, _ = bareiss_determinant(self.matrix)
        if det.is_zero():
            return ["linear matrix is singular"]
        return []

    def to_endo(self, field):
        d = self.arity
        images = []
        for j in range(d):
            terms = {}
            for i in range(d):
                c = self.matrix.get(j, i)
                if not c.is_zero():
                    terms[(i + 1,)] = c
            images.append(LieElement(d, field, terms))
        return LieEndomorphism(images)


class TriangularLieAuto:
    """Triangular with respect to a generator ordering.

    ``ordering`` is a permutation of 1..d; the generator ordering[j] maps to
    gammas[j] * x_{ordering[j]} + tails[j], and tails[j] may only mention
    the generators ordering[j+1:].
    """

    __slots__ = ("gammas", "tails", "ordering")

    def __init__(self, gammas, tails, ordering, check=True):
        self.gammas = list(gammas)
        self.tails = list(tails)
        self.ordering = tuple(ordering)
        if check:
            problems = self.validate()
            if problems:
                raise ValueError("; ".join(problems))

    @property
    def arity(self):
        return len(self.ordering)

    def validate(self):
        problems = []
        d = len(self.ordering)
        if sorted(self.ordering) != list(range(1, d + 1)):
            return [f"ordering {self.ordering} is not a permutation of 1..{d}"]
        if len(self.gammas) != d or len(self.tails) != d:
            return ["triangular gamma/tail count mismatch"]
        for j, g in enumerate(self.gammas):
            if g.is_zero():
                problems.append(f"triangular gamma at position {j + 1} is zero")
        for j, tail in enumerate(self.tails):
            if tail.arity != d:
                problems.append(f"tail at position {j + 1} has wrong arity")
                continue
            allowed = set(self.ordering[j + 1 :])
            for gen in range(1, d + 1):
                if gen not in allowed and tail.mentions(gen):
                    problems.append(
                        f"tail at position {j + 1} mentions forbidden generator x{gen}"
                    )
                    break
        return problems

    def to_endo(self, field):
        d = self.arity
        images = [None] * d
        for j, gen in enumerate(self.ordering):
            base = LieElement.generator(d, field, gen).scale(self.gammas[j])
            images[gen - 1] = base + self.tails[j]
        return LieEndomorphism(images)


class InnerLieAuto:
    """exp(ad v) for v in the commutator ideal."""

    __slots__ = ("element",)

    def __init__(self, element, check=True):
        self.element = element
        if check:
            problems = self.validate()
            if problems:
                raise ValueError("; ".join(problems))

    @property
    def arity(self):
        return self.element.arity

    def validate(self):
        if self.element.has_linear_part():
            return ["inner automorphism element has a linear part"]
        return []

    def to_endo(self, field):
        return inner_auto(self.element)


class LieCertificate:
    """Chain of elementary Lie automorphisms, innermost first."""

    __slots__ = ("chain", "generator_index")

    def __init__(self, chain, generator_index):
        self.chain = list(chain)
        self.generator_index = generator_index


def lie_certify_apply(cert, arity, field):
    u = LieElement.generator(arity, field, cert.generator_index)
    for auto in cert.chain:
        u = apply_endo(auto.to_endo(field), u)
    return u


def validate_lie_certificate(cert, arity):
    problems = []
    if not 1 <= cert.generator_index <= arity:
        problems.append("generator index out of range")
    for pos, auto in enumerate(cert.chain):
        if auto.arity != arity:
            problems.append(f"factor {pos + 1} has wrong arity")
            continue
        for msg in auto.validate():
            problems.append(f"factor {pos + 1}: {msg}")
    return problems


@dataclass
class LieDecomposition:
    input: LieElement
    summands: list  # of (LieElement, LieCertificate)
    bound: int
    notes: list = dc_field(default_factory=list)

    @property
    def count(self):
        return len(self.summands)


def lie_bound(d, field):
    """The summand-count bound: 5/6 for d = 3, 6/7 for d > 3 (two-element fields)."""
    if d < 3:
        raise UnsupportedInputError("the Lie pipeline needs at least three generators")
    if d == 3:
        return 5 if field.has_more_than_two_elements() else 6
    return 6 if field.has_more_than_two_elements() else 7


# -- bucketing ---------------------------------------------------------------


def _check_bucket_input(t):
    for word in t.terms:
        if len(word) < 3 or word[1] != 1:
            raise ValueError(f"bucket input must have words of length >= 3 containing x1, got {word}")


def bucket_d3(t):
    """Split t into (w1, w2, w3) with [w1,x1] + [w2,x2] + [w3,x3] = t.

    Each word ends in its largest tail index, so stripping that index leaves
    a normal word and re-bracketing restores the original exactly.
    """
    _check_bucket_input(t)
    buckets = [dict(), dict(), dict()]
    for word, coeff in t.terms.items():
        buckets[word[-1] - 1][word[:-1]] = coeff
    return tuple(t._wrap(b) for b in buckets)


def bucket_dgt3(t, d):
    """Split t into (w1, w2, w3, w4) with [w1,x_d] + [w2,x_{d-1}] + w3 + w4 = t.

    Words ending in x_d or x_{d-1} are stripped; of the rest, those leading
    with x_d form w3 (they cannot mention x_{d-1}) and the others w4 (they
    cannot mention x_d).
    """
    if d <= 3:
        raise ValueError("bucket_dgt3 needs d > 3")
    _check_bucket_input(t)
    w1, w2, w3, w4 = {}, {}, {}, {}
    for word, coeff in t.terms.items():
        if word[-1] == d:
            w1[word[:-1]] = coeff
        elif word[-1] == d - 1:
            w2[word[:-1]] = coeff
        elif word[0] == d:
            w3[word] = coeff
        else:
            w4[word] = coeff
    return t._wrap(w1), t._wrap(w2), t._wrap(w3), t._wrap(w4)


# -- coefficient selection ---------------------------------------------------


@dataclass
class D3Coefficients:
    xi: FieldScalar
    xi_by_gen: tuple  # (xi_1, xi_2, xi_3), all nonzero
    zeta: tuple  # (zeta_1, zeta_2, zeta_3)
    split: tuple | None = None  # ((z2', z3'), (z2'', z3'')) over two-element fields


@dataclass
class HighDCoefficients:
    xi: FieldScalar
    eta_pair: tuple  # (eta_{d-1}, eta_d), nonzero
    xi_pair: tuple  # (xi_{d-1}, xi_d), nonzero
    zeta: tuple  # (zeta_1, zeta_{d-1}, zeta_d)
    extra: tuple | None = None  # (z'_{d-1}, z'_d) when one more linear summand is needed


def _independent_from_beta(pair, beta, slots):
    """Is the vector with `pair` in the two `slots` independent from beta?

    beta lists the coefficients on x_2..x_d.  A pair supported on two
    coordinates is dependent on beta exactly when beta is proportional to
    it, which needs beta supported on the same coordinates and a vanishing
    2x2 determinant.
    """
    z1, z2 = pair
    if z1.is_zero() and z2.is_zero():
        return False
    if all(c.is_zero() for c in beta):
        return True
    a, b = slots
    if any(not c.is_zero() and j not in (a, b) for j, c in enumerate(beta, start=2)):
        return True
    b1, b2 = beta[a - 2], beta[b - 2]
    return not (z1 * b2 - z2 * b1).is_zero()


def _nonzero_sum_pair(target, field):
    """Two nonzero scalars summing to target, or None when impossible (GF(2))."""
    one = field.one()
    second = target - one
    if not second.is_zero():
        return one, second
    two = field(2)
    if two.is_zero():
        return None
    second = target - two
    if second.is_zero():
        return None
    return two, second


def choose_lie_coeffs(d, delta, beta, field):
    """Pick the free coefficients of the summand system deterministically.

    Candidates are drawn from a fixed small list; the first pair passing
    the nonzero and independence requirements wins.  Over a two-element
    field the requirements may be unsatisfiable, in which case the split
    (d = 3) or extra-linear-summand (d > 3) fallback is returned; one of
    the two always exists.
    """
    if d < 3:
        raise UnsupportedInputError("coefficients are defined for d >= 3")
    one = field.one()
    delta = field(delta)
    beta = [field(b) if not isinstance(b, FieldScalar) else b for b in beta]
    beta_zero = all(b.is_zero() for b in beta)

    if d == 3:
        xi = one
        xi_1 = one
        zeta_1 = delta - xi - xi_1
        candidates = [(one, one), (one, field(2)), (field(2), one)]
        for xi_2, xi_3 in candidates:
            if xi_2.is_zero() or xi_3.is_zero():
                continue
            pair = (-xi_2, -xi_3)
            if beta_zero or _independent_from_beta(pair, beta, (2, 3)):
                return D3Coefficients(xi, (xi_1, xi_2, xi_3), (zeta_1,) + pair)
        # two-element field with beta matching the only available pair
        xi_2 = xi_3 = one
        zeta = (-one, -one)
        for prime in [(one, field.zero()), (field.zero(), one)]:
            if _independent_from_beta(prime, beta, (2, 3)):
                rest = (zeta[0] - prime[0], zeta[1] - prime[1])
                return D3Coefficients(
                    xi, (xi_1, xi_2, xi_3), (zeta_1,) + zeta, split=(prime, rest)
                )
        raise UnsupportedInputError("no admissible coefficient choice found")  # unreachable

    xi = one
    zeta_1 = delta - xi
    slots = (d - 1, d)
    if beta_zero:
        z = -(one + one)
        return HighDCoefficients(xi, (one, one), (one, one), (zeta_1, z, z))
    candidates = [
        (one, one),
        (one, field(2)),
        (field(2), one),
        (one, field.zero()),
        (field.zero(), one),
    ]
    for z_pair in candidates:
        if not _independent_from_beta(z_pair, beta, slots):
            continue
        first = _nonzero_sum_pair(-z_pair[0], field)
        second = _nonzero_sum_pair(-z_pair[1], field)
        if first is None or second is None:
            continue
        return HighDCoefficients(
            xi,
            (first[0], second[0]),
            (first[1], second[1]),
            (zeta_1,) + z_pair,
        )
    # two-element field: eta + xi forces zeta = 0, so add one linear summand
    z = -(one + one)
    for prime in [(one, field.zero()), (field.zero(), one), (one, one)]:
        if _independent_from_beta(prime, beta, slots):
            return HighDCoefficients(
                xi, (one, one), (one, one), (zeta_1, z, z), extra=prime
            )
    raise UnsupportedInputError("no admissible coefficient choice found")  # unreachable


# -- certificates for the three summand shapes --------------------------------


def _row_rank(rows, field):
    work = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(work)):
            if not work[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = work[rank][col].inverse()
        for r in range(rank + 1, len(work)):
            if not work[r][col].is_zero():
                factor = work[r][col] * inv
                for c in range(col, cols):
                    work[r][c] = work[r][c] - factor * work[rank][c]
        rank += 1
    return rank


def _complete_to_matrix(rows, d, field):
    """Extend independent rows with standard basis vectors to an invertible matrix."""
    rows = [list(r) for r in rows]
    if _row_rank(rows, field) != len(rows):
        raise ValueError("rows to extend are not linearly independent")
    for m in range(d):
        if len(rows) == d:
            break
        candidate = [field.one() if i == m else field.zero() for i in range(d)]
        if _row_rank(rows + [candidate], field) > len(rows):
            rows.append(candidate)
    return DenseMatrix.from_rows(field, rows)


def _linear_cert_for(element):
    """A Linear certificate for a nonzero linear element (image of x1)."""
    d, field = element.arity, element.field
    matrix = _complete_to_matrix([element.linear_coefficients()], d, field)
    return LieCertificate([LinearLieAuto(matrix)], 1)


def _triangular_cert(gen, gamma, tail):
    """Certificate for gamma x_gen + tail, tail avoiding x_gen."""
    d, field = tail.arity, tail.field
    ordering = (gen,) + tuple(i for i in range(1, d + 1) if i != gen)
    gammas = [gamma] + [field.one()] * (d - 1)
    tails = [tail] + [LieElement.zero(d, field)] * (d - 1)
    return LieCertificate([TriangularLieAuto(gammas, tails, ordering)], gen)


def _inner_cert(gen, gamma, w):
    """Certificate for gamma x_gen + [w, x_gen]: diagonal linear then inner."""
    d, field = w.arity, w.field
    diag = DenseMatrix.from_rows(
        field,
        [[gamma if i == j else field.zero() for i in range(d)] for j in range(d)],
    )
    inner = InnerLieAuto(w.scale(-gamma.inverse()))
    return LieCertificate([LinearLieAuto(diag), inner], gen)


def _quadratic_cert(zeta_coeffs, beta, d, field):
    """Certificate for y_1 + [y_2, y_3]: triangular then basis change.

    y_1 has coefficients zeta_coeffs, y_2 = sum beta_j x_j (j >= 2),
    y_3 = x_1; the three must be linearly independent.
    """
    y1 = list(zeta_coeffs)
    y2 = [field.zero()] + list(beta)
    y3 = [field.one()] + [field.zero()] * (d - 1)
    basis_change = LinearLieAuto(_complete_to_matrix([y1, y2, y3], d, field))
    tail = bracket(
        LieElement.generator(d, field, 2), LieElement.generator(d, field, 3)
    )
    gammas = [field.one()] * d
    tails = [tail] + [LieElement.zero(d, field)] * (d - 1)
    triangular = TriangularLieAuto(gammas, tails, tuple(range(1, d + 1)))
    return LieCertificate([triangular, basis_change], 1)


# -- the pipeline --------------------------------------------------------------


def _linear_normalization(f):
    """A linear automorphism sending the linear part of f to x1 (or None)."""
    d, field = f.arity, f.field
    coeffs = f.linear_coefficients()
    if all(c.is_zero() for c in coeffs):
        return None
    pivot = next(i for i, c in enumerate(coeffs) if not c.is_zero())
    rows = [coeffs]
    for m in range(d):
        if m != pivot:
            rows.append([field.one() if i == m else field.zero() for i in range(d)])
    matrix = matrix_inverse(DenseMatrix.from_rows(field, rows))
    return LinearLieAuto(matrix)


def decompose_lie(f):
    """Decompose f into certified primitive summands within the table bound."""
    d, field = f.arity, f.field
    if d < 3:
        raise UnsupportedInputError(
            "Lie decomposition is implemented for d >= 3 (d = 2 follows a different theory)"
        )
    bound = lie_bound(d, field)
    if f.is_zero():
        return LieDecomposition(f, [], bound, notes=[ZERO_NOTE])
    if f.degree() == 1:
        return LieDecomposition(f, [(f, _linear_cert_for(f))], bound)

    rho = _linear_normalization(f)
    if rho is None:
        g = f
        delta = 0
    else:
        g = apply_endo(rho.to_endo(field), f)
        delta = 1
    _, with_x1, v = split_parts(g)
    quad = with_x1.homogeneous_component(2)
    beta = [quad.terms.get((j, 1), field.zero()) for j in range(2, d + 1)]
    t = with_x1 - quad

    gen = lambda i: LieElement.generator(d, field, i)
    summands = []

    if d == 3:
        w1, w2, w3 = bucket_d3(t)
        coeffs = choose_lie_coeffs(d, delta, beta, field)
        xi_1, xi_2, xi_3 = coeffs.xi_by_gen
        u1 = gen(1).scale(coeffs.xi) + v
        summands.append((u1, _triangular_cert(1, coeffs.xi, v)))
        for k, (xi_k, w_k) in enumerate(zip((xi_1, xi_2, xi_3), (w1, w2, w3)), start=1):
            u2k = gen(k).scale(xi_k) + bracket(w_k, gen(k))
            summands.append((u2k, _inner_cert(k, xi_k, w_k)))
        zeta_1, zeta_2, zeta_3 = coeffs.zeta
        beta_part = LieElement(
            d, field, {(j, 1): b for j, b in zip(range(2, d + 1), beta)}
        )
        if coeffs.split is None:
            zeta_vec = [zeta_1, zeta_2, zeta_3]
            linear3 = LieElement(d, field, {(i + 1,): c for i, c in enumerate(zeta_vec)})
            u3 = linear3 + beta_part
            if beta_part.is_zero():
                if not u3.is_zero():
                    summands.append((u3, _linear_cert_for(u3)))
            else:
                summands.append((u3, _quadratic_cert(zeta_vec, beta, d, field)))
        else:
            prime, rest = coeffs.split
            zeta_vec = [zeta_1, prime[0], prime[1]]
            u3a = LieElement(d, field, {(i + 1,): c for i, c in enumerate(zeta_vec)}) + beta_part
            summands.append((u3a, _quadratic_cert(zeta_vec, beta, d, field)))
            u3b = LieElement(d, field, {(2,): rest[0], (3,): rest[1]})
            if not u3b.is_zero():
                summands.append((u3b, _linear_cert_for(u3b)))
    else:
        w1, w2, w3, w4 = bucket_dgt3(t, d)
        coeffs = choose_lie_coeffs(d, delta, beta, field)
        eta_dm1, eta_d = coeffs.eta_pair
        xi_dm1, xi_d = coeffs.xi_pair
        u1 = gen(1).scale(coeffs.xi) + v
        summands.append((u1, _triangular_cert(1, coeffs.xi, v)))
        u12 = gen(d - 1).scale(eta_dm1) + w3
        summands.append((u12, _triangular_cert(d - 1, eta_dm1, w3)))
        u13 = gen(d).scale(eta_d) + w4
        summands.append((u13, _triangular_cert(d, eta_d, w4)))
        u21 = gen(d).scale(xi_d) + bracket(w1, gen(d))
        summands.append((u21, _inner_cert(d, xi_d, w1)))
        u22 = gen(d - 1).scale(xi_dm1) + bracket(w2, gen(d - 1))
        summands.append((u22, _inner_cert(d - 1, xi_dm1, w2)))
        zeta_1, zeta_dm1, zeta_d = coeffs.zeta
        beta_part = LieElement(
            d, field, {(j, 1): b for j, b in zip(range(2, d + 1), beta)}
        )

        def linear_from(z1, z_dm1, z_d):
            terms = {(1,): z1, (d - 1,): z_dm1, (d,): z_d}
            return LieElement(d, field, terms)

        if coeffs.extra is None:
            zeta_vec = [zeta_1] + [field.zero()] * (d - 3) + [zeta_dm1, zeta_d]
            u3 = linear_from(zeta_1, zeta_dm1, zeta_d) + beta_part
            if beta_part.is_zero():
                if not u3.is_zero():
                    summands.append((u3, _linear_cert_for(u3)))
            else:
                summands.append((u3, _quadratic_cert(zeta_vec, beta, d, field)))
        else:
            zp_dm1, zp_d = coeffs.extra
            zeta_vec = [zeta_1] + [field.zero()] * (d - 3) + [zp_dm1, zp_d]
            u3 = linear_from(zeta_1, zp_dm1, zp_d) + beta_part
            summands.append((u3, _quadratic_cert(zeta_vec, beta, d, field)))
            u4 = linear_from(field.zero(), zeta_dm1 - zp_dm1, zeta_d - zp_d)
            if not u4.is_zero():
                summands.append((u4, _linear_cert_for(u4)))

    if rho is not None:
        rho_inv = LinearLieAuto(matrix_inverse(rho.matrix))
        rho_inv_endo = rho_inv.to_endo(field)
        mapped = []
        for element, cert in summands:
            mapped.append(
                (
                    apply_endo(rho_inv_endo, element),
                    LieCertificate(cert.chain + [rho_inv], cert.generator_index),
                )
            )
        summands = mapped
    return LieDecomposition(f, summands, bound)


def verify_lie(dec):
    """Replay certificates, re-sum summands and check the count bound."""
    problems = []
    d, field = dec.input.arity, dec.input.field
    for i, (summand, cert) in enumerate(dec.summands, start=1):
        issues = validate_lie_certificate(cert, d)
        if issues:
            problems.append(f"summand {i}: invalid elementary factor ({'; '.join(issues)})")
            continue
        if lie_certify_apply(cert, d, field) != summand:
            problems.append(f"summand {i}: certificate replay mismatch")
    total = LieElement.zero(d, field)
    for summand, _ in dec.summands:
        total = total + summand
    if total != dec.input:
        problems.append("sum mismatch: summands do not add up to the input")
    if len(dec.summands) > dec.bound:
        problems.append(f"count {len(dec.summands)} exceeds bound {dec.bound}")
    return VerifyResult(not problems, problems)
