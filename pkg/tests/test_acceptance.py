"""Acceptance suite: one test per criterion, one pass/fail line each.

Run with ``pytest tests/test_acceptance.py -v`` (add ``-s`` to see the
per-criterion lines interleaved; they are printed unconditionally via the
report fixture).
"""

import itertools
import json
import random
import time
from fractions import Fraction
from math import comb

from primlen.document import dumps, lie_document, loads, poly_document, verify_document
from primlen.field import GF, QQ
from primlen.liedecomp import decompose_lie, lie_bound, verify_lie
from primlen.linalg import DenseMatrix, OpCounter, bareiss_determinant, solve_square, vandermonde_power_matrix
from primlen.metalie import LieElement, bracket, inner_auto, apply_endo
from primlen.multipoly import Polynomial
from primlen.parsing import lie_to_str, parse_lie, parse_poly, poly_to_str
from primlen.polyauto import AffineAuto, TriangularAuto, apply_auto, invert_auto
from primlen.polydecomp import FINITE, INFINITE, decompose, plength_bound, verify

from conftest import (
    cofactor_determinant,
    naive_fraction_solve,
    rand_lie,
    rand_nonzero_scalar,
    rand_poly,
    rand_scalar,
)


# -- criterion 1: polynomial bound, exact re-summation, certificates ---------


def test_criterion_1_polynomial_bound_corpus(report):
    rng = random.Random(20240801)
    corpus = []
    for n in range(2, 7):
        corpus.extend((2, n) for _ in range(30))
    for n in range(2, 7):
        corpus.extend((3, n) for _ in range(9))
    corpus.extend((4, n) for n in (2, 2, 2, 3, 3, 3, 4, 4, 4, 5, 5, 6))
    assert len(corpus) >= 200

    total = 0.0
    slowest = 0.0
    for d, n in corpus:
        f = rand_poly(rng, d, n, coeff_bound=100, extra_terms=rng.randint(4, 12))
        start = time.perf_counter()
        dec = decompose(f)
        result = verify(dec)
        elapsed = time.perf_counter() - start
        total += elapsed
        slowest = max(slowest, elapsed)
        assert dec.status == FINITE
        assert dec.count <= plength_bound(n, d)
        assert result.ok, result.problems
        resum = Polynomial.zero(d, QQ)
        for s, _ in dec.summands:
            resum = resum + s
        assert resum == f  # exact, zero tolerance
    mean = total / len(corpus)
    assert mean < 1.0, f"mean runtime {mean:.3f}s"
    assert total < 60.0, f"total runtime {total:.1f}s"
    report(
        f"[criterion 1] polynomial summand-bound corpus ({len(corpus)} instances, "
        f"mean {mean * 1000:.0f} ms, max {slowest:.2f} s, total {total:.1f} s): PASS"
    )


# -- criterion 2: degenerate cases, golden strings ----------------------------


def test_criterion_2_degenerate_cases(report):
    dec = decompose(Polynomial.constant(2, QQ, QQ(7)))
    assert [poly_to_str(s) for s, _ in dec.summands] == ["x1 + 7", "-x1"]
    assert dec.count == 2

    dec = decompose(parse_poly("-2/3 + x1", 2, QQ))
    assert [poly_to_str(s) for s, _ in dec.summands] == ["x1 - 2/3"]

    dec = decompose(parse_poly("3*x2 + 1/2", 3, QQ))
    assert dec.count == 1 and verify(dec).ok
    assert poly_to_str(dec.summands[0][0]) == "3*x2 + 1/2"

    dec = decompose(parse_poly("x1^2", 1, QQ))
    assert dec.status == INFINITE and dec.summands == [] and dec.bound is None
    report("[criterion 2] degenerate cases (constant/linear/univariate): PASS")


# -- criterion 3: Lie bound table ---------------------------------------------


def test_criterion_3_lie_bound_table(report):
    rng = random.Random(20240802)
    counts = 0
    slowest = 0.0
    for field in (QQ, GF(3), GF(2)):
        per_field = 0
        for d in (3, 4, 5):
            for _ in range(34):
                f = rand_lie(rng, d, rng.randint(1, 6), field=field, terms=rng.randint(2, 7))
                start = time.perf_counter()
                dec = decompose_lie(f)
                result = verify_lie(dec)
                elapsed = time.perf_counter() - start
                slowest = max(slowest, elapsed)
                assert elapsed < 1.0, f"instance took {elapsed:.2f}s"
                assert dec.count <= lie_bound(d, field)
                assert result.ok, (field, d, result.problems)
                resum = LieElement.zero(d, field)
                for s, _ in dec.summands:
                    resum = resum + s
                assert resum == f
                per_field += 1
        assert per_field >= 100
        counts += per_field
    report(
        f"[criterion 3] Lie bound table ({counts} instances over Q/GF(3)/GF(2), "
        f"max {slowest * 1000:.0f} ms): PASS"
    )


# -- criterion 4: Bareiss complexity shape -------------------------------------


def _fraction_bareiss_intermediates(rows, rhs):
    """Re-run the fraction-free recurrence over Fractions, returning all intermediates."""
    n = len(rows)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    prev = Fraction(1)
    produced = []
    for k in range(n - 1):
        if aug[k][k] == 0:
            for r in range(k + 1, n):
                if aug[r][k] != 0:
                    aug[k], aug[r] = aug[r], aug[k]
                    break
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                value = (aug[k][k] * aug[i][j] - aug[i][k] * aug[k][j]) / prev
                produced.append(value)
                aug[i][j] = value
            aug[i][k] = Fraction(0)
        prev = aug[k][k]
    return produced


def test_criterion_4_bareiss_complexity_shape(report):
    rng = random.Random(20240803)
    for n in (8, 16, 32, 64):
        while True:
            rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            rhs = [rng.randint(-9, 9) for _ in range(n)]
            oracle = naive_fraction_solve(rows, rhs)
            if oracle is not None:
                break
        # (a) fraction-free: every intermediate of the recurrence is an integer
        produced = _fraction_bareiss_intermediates(rows, rhs)
        assert produced and all(v.denominator == 1 for v in produced)
        # (b) arithmetic-operation count within 2 N^3
        counter = OpCounter()
        matrix = DenseMatrix.from_rows(QQ, rows)
        solution = solve_square(matrix, [QQ(b) for b in rhs], counter)
        assert counter.multiplications + counter.divisions <= 2 * n**3
        # (c) solutions equal the plain rational-elimination oracle exactly
        assert [Fraction(x.numerator, x.denominator) for x in solution] == oracle
    report("[criterion 4] Bareiss fraction-free property, op bound, oracle match (N=8..64): PASS")


# -- criterion 5: generalized Vandermonde minors -------------------------------


def test_criterion_5_vandermonde_minors(report):
    start = time.perf_counter()
    alphas = [QQ(a) for a in (2, 3, 4, 5)]
    plain_nodes = [2, 3, 4, 5]
    checked = 0
    for exponents in itertools.combinations(range(13), 4):
        rows = [[node**p for node in plain_nodes] for p in exponents]
        oracle = cofactor_determinant(rows)
        assert oracle != 0, f"oracle determinant vanished for exponents {exponents}"
        det, _ = bareiss_determinant(vandermonde_power_matrix(alphas, list(exponents)))
        assert Fraction(det.numerator, det.denominator) == oracle
        checked += 1
    elapsed = time.perf_counter() - start
    assert checked == comb(13, 4) == 715
    assert elapsed < 5.0, f"minor sweep took {elapsed:.1f}s"
    report(f"[criterion 5] all 715 generalized Vandermonde minors nonzero ({elapsed:.1f} s): PASS")


# -- criterion 6: algebraic axiom suites ---------------------------------------


def test_criterion_6_field_axioms(report):
    for field in (QQ, GF(2), GF(3)):
        rng = random.Random(20240804)
        zero, one = field.zero(), field.one()
        for _ in range(1100):
            a, b, c = (rand_scalar(rng, field) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a + b == b + a and a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert a + zero == a and a * one == a and a + (-a) == zero
            if not a.is_zero():
                assert a * a.inverse() == one
    report("[criterion 6a] field axioms (>=1000 cases per field): PASS")


def test_criterion_6_polynomial_ring_axioms(report):
    rng = random.Random(20240805)
    for _ in range(1000):
        d = rng.randint(1, 3)
        f, g, h = (rand_poly(rng, d, rng.randint(0, 2), extra_terms=2) for _ in range(3))
        assert (f + g) + h == f + (g + h)
        assert f + g == g + f
        assert (f * g) * h == f * (g * h)
        assert f * g == g * f
        assert f * (g + h) == f * g + f * h
    report("[criterion 6b] polynomial ring axioms (1000 cases): PASS")


def test_criterion_6_substitution_homomorphism(report):
    rng = random.Random(20240806)
    for _ in range(1000):
        f = rand_poly(rng, 2, rng.randint(0, 2), extra_terms=2)
        g = rand_poly(rng, 2, rng.randint(0, 2), extra_terms=2)
        phi = [rand_poly(rng, 2, rng.randint(0, 2), extra_terms=2) for _ in range(2)]
        assert (f * g).substitute(phi) == f.substitute(phi) * g.substitute(phi)
        assert (f + g).substitute(phi) == f.substitute(phi) + g.substitute(phi)
    report("[criterion 6c] substitution is a ring homomorphism (1000 cases): PASS")


def test_criterion_6_lie_axioms(report):
    rng = random.Random(20240807)
    for case in range(1000):
        field = (QQ, GF(2), GF(3))[case % 3]
        d = rng.randint(3, 4)
        a, b, c = (rand_lie(rng, d, 3, field=field, terms=3) for _ in range(3))
        assert bracket(a + b, c) == bracket(a, c) + bracket(b, c)
        assert bracket(a, b) == -bracket(b, a)
        jac = bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b)
        assert jac.is_zero()
        assert bracket(bracket(a, b), bracket(c, a)).is_zero()
    report("[criterion 6d] Lie bilinearity/anti-symmetry/Jacobi/metabelian (1000 cases): PASS")


def test_criterion_6_automorphism_round_trips(report):
    rng = random.Random(20240808)
    d = 3
    variables = [Polynomial.variable(d, QQ, i) for i in range(1, d + 1)]
    cases = 0
    for _ in range(350):
        rows = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)]
        matrix = DenseMatrix.from_rows(QQ, rows)
        det, _ = bareiss_determinant(matrix)
        if det.is_zero():
            continue
        auto = AffineAuto(matrix, [QQ(rng.randint(-3, 3)) for _ in range(d)])
        inv = invert_auto(auto)
        for x in variables:
            assert apply_auto(inv, apply_auto(auto, x)) == x
        cases += 1
    for _ in range(350):
        gammas = [rand_nonzero_scalar(rng, QQ, 4) for _ in range(d)]
        tails = []
        for j in range(d):
            terms = {}
            for _ in range(2):
                mono = [0] * d
                for i in range(j + 1, d):
                    mono[i] = rng.randint(0, 2)
                terms[tuple(mono)] = rand_scalar(rng, QQ, 3)
            tails.append(Polynomial(d, QQ, terms))
        auto = TriangularAuto(gammas, tails)
        inv = invert_auto(auto)
        for x in variables:
            assert apply_auto(inv, apply_auto(auto, x)) == x
        cases += 1
    for _ in range(350):
        v = rand_lie(rng, d, 4, terms=3)
        v = v - v.homogeneous_component(1)
        forward, backward = inner_auto(v), inner_auto(-v)
        for i in range(1, d + 1):
            xi = LieElement.generator(d, QQ, i)
            assert apply_endo(backward, apply_endo(forward, xi)) == xi
        cases += 1
    assert cases >= 1000
    report(f"[criterion 6e] automorphism-inverse round trips ({cases} cases): PASS")


# -- criterion 7: tamper detection ---------------------------------------------


def _perturb_poly_summand(doc, rng):
    record = rng.choice(doc["summands"])
    field_flag = doc["field"]
    arity = doc["arity"]
    from primlen.field import field_from_flag

    field = field_from_flag(field_flag)
    poly = parse_poly(record["summand"], arity, field)
    mono = rng.choice(sorted(poly.terms) or [(0,) * arity])
    bumped = poly + Polynomial(arity, field, {mono: field.one()})
    record["summand"] = poly_to_str(bumped)


def _perturb_lie_summand(doc, rng):
    record = rng.choice(doc["summands"])
    from primlen.field import field_from_flag

    field = field_from_flag(doc["field"])
    arity = doc["arity"]
    element = parse_lie(record["summand"], arity, field)
    words = sorted(element.terms)
    word = rng.choice(words) if words else (1,)
    bumped = element + LieElement(arity, field, {word: field.one()})
    record["summand"] = lie_to_str(bumped)


def _perturb_certificate(doc, rng):
    """Bump a load-bearing certificate scalar (a triangular gamma or tail)."""
    for record in doc["summands"]:
        for factor in record["certificate"]:
            if factor["kind"] == "triangular":
                if rng.random() < 0.5 and factor["tails"][0] not in ("0",):
                    factor["tails"][0] = factor["tails"][0] + " + x2" if doc["algebra"] == "metabelian-lie" else factor["tails"][0] + " + 1"
                else:
                    factor["gammas"][0] = str(int(factor["gammas"][0].split("/")[0]) + 1) if "/" not in factor["gammas"][0] else "0"
                return True
    return False


def test_criterion_7_tamper_detection(report):
    rng = random.Random(20240809)
    documents = []
    for _ in range(35):
        d = rng.choice([2, 3])
        f = rand_poly(rng, d, rng.randint(2, 4), extra_terms=4)
        documents.append(("poly", poly_document(decompose(f))))
    for _ in range(35):
        f = rand_poly(rng, 2, rng.randint(0, 1), extra_terms=2)
        documents.append(("poly", poly_document(decompose(f))))
    for _ in range(50):
        field = rng.choice([QQ, GF(2), GF(3)])
        d = rng.choice([3, 4])
        u = rand_lie(rng, d, rng.randint(1, 4), field=field)
        documents.append(("lie", lie_document(decompose_lie(u))))

    fuzzed = 0
    for kind, doc in documents:
        doc = loads(dumps(doc))  # round trip through JSON text
        assert verify_document(doc).ok
        if not doc["summands"]:
            continue
        tampered = json.loads(json.dumps(doc))
        if fuzzed % 3 == 2 and _perturb_certificate(tampered, rng):
            pass
        elif kind == "poly":
            _perturb_poly_summand(tampered, rng)
        else:
            _perturb_lie_summand(tampered, rng)
        result = verify_document(tampered)
        assert not result.ok, f"tampered {kind} document still verified"
        assert any(
            "sum mismatch" in p or "replay mismatch" in p or "invalid" in p or "failed" in p
            for p in result.problems
        ), result.problems
        fuzzed += 1
    assert fuzzed >= 100
    report(f"[criterion 7] tamper detection over {fuzzed} fuzzed documents: PASS")
