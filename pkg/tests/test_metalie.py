import random

import pytest

from primlen.errors import ArityMismatchError, DegreeCapError
from primlen.field import GF, QQ
from primlen.metalie import (
    LieElement,
    LieEndomorphism,
    apply_endo,
    bracket,
    degree_cap,
    inner_auto,
    is_normal_word,
    normalize_word,
    split_parts,
)

from conftest import rand_lie


def gen(i, d=3, F=QQ):
    return LieElement.generator(d, F, i)


def word(indices, d=3, F=QQ):
    return normalize_word(indices, d, F)


def test_antisymmetry_pair():
    assert word((1, 2)) == -word((2, 1))
    assert word((1, 2)).terms == {(2, 1): QQ(-1)}


def test_already_normal():
    assert word((2, 1, 3)).terms == {(2, 1, 3): QQ(1)}


def test_jacobi_rewrite():
    assert word((3, 2, 1)).terms == {(3, 1, 2): QQ(1), (2, 1, 3): QQ(-1)}


def test_jacobi_rewrite_oracle():
    # [[a,b],c] = [[a,c],b] + [a,[b,c]] checked on every generator triple
    d = 4
    for a in range(1, d + 1):
        for b in range(1, d + 1):
            for c in range(1, d + 1):
                xa, xb, xc = gen(a, d), gen(b, d), gen(c, d)
                lhs = bracket(bracket(xa, xb), xc)
                rhs = bracket(bracket(xa, xc), xb) + bracket(xa, bracket(xb, xc))
                assert lhs == rhs


def test_metabelian_law():
    assert bracket(word((2, 1)), word((3, 1))).is_zero()


def test_alternation():
    rng = random.Random(41)
    for _ in range(50):
        u = rand_lie(rng, 3, 4)
        assert bracket(u, u).is_zero()


def test_left_normed_convention():
    assert bracket(gen(3), bracket(gen(2), gen(1))).terms == {(2, 1, 3): QQ(-1)}


def test_normal_word_predicate():
    assert is_normal_word((5,))
    assert is_normal_word((3, 1, 2, 2))
    assert not is_normal_word((1, 2))
    assert not is_normal_word((3, 2, 1))


def test_normalize_idempotent_on_normal_words():
    rng = random.Random(42)
    for _ in range(100):
        d = rng.randint(2, 4)
        length = rng.randint(2, 5)
        i2 = rng.randint(1, d - 1)
        i1 = rng.randint(i2 + 1, d)
        tail = sorted(rng.randint(i2, d) for _ in range(length - 2))
        w = (i1, i2) + tuple(tail)
        assert is_normal_word(w)
        assert normalize_word(w, d, QQ).terms == {w: QQ(1)}


def test_bilinearity_antisymmetry_jacobi_randomized():
    rng = random.Random(43)
    for _ in range(150):
        d = rng.randint(3, 4)
        a, b, c = (rand_lie(rng, d, 4, terms=4) for _ in range(3))
        assert bracket(a + b, c) == bracket(a, c) + bracket(b, c)
        assert bracket(a, b) == -bracket(b, a)
        jac = bracket(bracket(a, b), c) + bracket(bracket(b, c), a) + bracket(bracket(c, a), b)
        assert jac.is_zero()
        com = bracket(bracket(a, b), bracket(c, a))
        assert com.is_zero()


def test_grading():
    rng = random.Random(44)
    for _ in range(60):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        u = rand_lie(rng, 3, 4).homogeneous_component(m)
        v = rand_lie(rng, 3, 4).homogeneous_component(n)
        w = bracket(u, v)
        assert w.is_zero() or (w.degree() == m + n and w.homogeneous_component(m + n) == w)


def test_apply_endo_identity():
    rng = random.Random(45)
    e = LieEndomorphism.identity(3, QQ)
    for _ in range(20):
        u = rand_lie(rng, 3, 4)
        assert apply_endo(e, u) == u


def test_apply_endo_bracket_of_images():
    # x1 -> x1 + x2 applied to [x2, x1]
    images = [gen(1) + gen(2), gen(2), gen(3)]
    e = LieEndomorphism(images)
    expected = bracket(images[1], images[0])
    assert apply_endo(e, word((2, 1))) == expected


def test_apply_endo_is_homomorphism():
    rng = random.Random(46)
    for _ in range(60):
        d = 3
        images = [rand_lie(rng, d, 2, terms=3) for _ in range(d)]
        e = LieEndomorphism(images)
        u = rand_lie(rng, d, 3, terms=3)
        v = rand_lie(rng, d, 3, terms=3)
        assert apply_endo(e, bracket(u, v)) == bracket(apply_endo(e, u), apply_endo(e, v))


def test_inner_auto_images():
    v = word((2, 1))
    e = inner_auto(v)
    assert e.images[0] == gen(1) - word((2, 1, 1))


def test_inner_auto_of_zero_is_identity():
    e = inner_auto(LieElement.zero(3, QQ))
    for i in range(3):
        assert e.images[i] == gen(i + 1)


def test_inner_auto_round_trip():
    rng = random.Random(47)
    for _ in range(40):
        v = rand_lie(rng, 3, 4, terms=4)
        v = v - v.homogeneous_component(1)
        forward = inner_auto(v)
        backward = inner_auto(-v)
        for i in range(3):
            assert apply_endo(backward, forward.images[i]) == gen(i + 1)


def test_inner_auto_rejects_linear_part():
    with pytest.raises(ValueError):
        inner_auto(gen(1))


def test_split_parts():
    u = gen(1) + word((2, 1)) + word((3, 2))
    linear, with_x1, without = split_parts(u)
    assert linear == gen(1)
    assert with_x1 == word((2, 1))
    assert without == word((3, 2))
    assert linear + with_x1 + without == u


def test_split_parts_linear_only():
    u = gen(1) + gen(3).scale(QQ(2))
    linear, with_x1, without = split_parts(u)
    assert linear == u and with_x1.is_zero() and without.is_zero()


def test_split_parts_random_resum():
    rng = random.Random(48)
    for _ in range(50):
        u = rand_lie(rng, 4, 5)
        a, b, c = split_parts(u)
        assert a + b + c == u
        assert not c.mentions(1)


def test_degree_cap(monkeypatch):
    monkeypatch.setenv("PRIMLEN_DEGREE_CAP", "3")
    assert degree_cap() == 3
    u = word((2, 1, 3))
    with pytest.raises(DegreeCapError):
        bracket(u, gen(3))
    monkeypatch.delenv("PRIMLEN_DEGREE_CAP")
    assert degree_cap() == 12
    bracket(u, gen(3))  # fine again


def test_index_out_of_range():
    with pytest.raises(ArityMismatchError):
        normalize_word((1, 5), 3, QQ)


def test_gf2_arithmetic():
    F = GF(2)
    u = normalize_word((2, 1), 3, F)
    assert (u + u).is_zero()
    assert u == -u
