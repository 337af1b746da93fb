"""Expression grammar and canonical printing.

Polynomials:   expr   := term (('+'|'-') term)*
               term   := factor (('*'|'/') factor)*
               factor := '-' factor | power
               power  := atom ('^' natural)?
               atom   := number | x<k> | '(' expr ')'
with '/' defined only against a nonzero constant right operand, so rational
literals like 1/2 work without introducing rational functions.

Lie elements:  lexpr  := lterm (('+'|'-') lterm)*
               lterm  := '-' lterm | scalar '*' lterm | latom
               latom  := x<k> | '[' x<i> (',' x<j>)+ ']' | '(' lexpr ')'
where brackets are left-normed and normalized on construction.

Printing uses graded-lexicographic order (highest degree first) for
polynomials and (length, word) order for Lie elements; parse(print(e))
always reproduces e.
"""

from __future__ import annotations

from .errors import ParseError
from .metalie import LieElement, normalize_word
from .multipoly import Polynomial

_SYMBOLS = set("+-*/^()[],")


def _tokenize(src):
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(("number", src[i:j], i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < n and src[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("variable name needs an index, like x1", i)
            tokens.append(("name", src[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Cursor:
    def __init__(self, tokens):
        self.tokens = tokens
        self.index = 0

    @property
    def token(self):
        return self.tokens[self.index]

    def peek_kind(self):
        return self.tokens[self.index][0]

    def advance(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind):
        tok = self.token
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return self.advance()


def _variable_index(tok, arity):
    index = int(tok[1][1:])
    if not 1 <= index <= arity:
        raise ParseError(f"variable {tok[1]} is outside x1..x{arity}", tok[2])
    return index


def parse_poly(src, arity, field):
    cur = _Cursor(_tokenize(src))

    def expr():
        value = term()
        while cur.peek_kind() in "+-":
            op = cur.advance()[0]
            rhs = term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term():
        value = factor()
        while cur.peek_kind() in "*/":
            op, _, pos = cur.advance()
            rhs = factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.total_degree() not in (None, 0) or rhs.is_zero():
                    raise ParseError("division is only defined by a nonzero constant", pos)
                value = value.scale(rhs.constant_term().inverse())
        return value

    def factor():
        if cur.peek_kind() == "-":
            cur.advance()
            return -factor()
        return power()

    def power():
        value = atom()
        if cur.peek_kind() == "^":
            cur.advance()
            exp_tok = cur.expect("number")
            value = value ** int(exp_tok[1])
        return value

    def atom():
        kind, text, pos = cur.token
        if kind == "number":
            cur.advance()
            return Polynomial.constant(arity, field, field(int(text)))
        if kind == "name":
            tok = cur.advance()
            return Polynomial.variable(arity, field, _variable_index(tok, arity))
        if kind == "(":
            cur.advance()
            value = expr()
            cur.expect(")")
            return value
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)

    value = expr()
    cur.expect("end")
    return value


def parse_lie(src, arity, field):
    cur = _Cursor(_tokenize(src))

    def scalar():
        num = int(cur.expect("number")[1])
        if cur.peek_kind() == "/":
            cur.advance()
            den_tok = cur.expect("number")
            return field(num, int(den_tok[1]))
        return field(num)

    def lexpr():
        value = lterm()
        while cur.peek_kind() in "+-":
            op = cur.advance()[0]
            rhs = lterm()
            value = value + rhs if op == "+" else value - rhs
        return value

    def lterm():
        kind, _, pos = cur.token
        if kind == "-":
            cur.advance()
            return -lterm()
        if kind == "number":
            c = scalar()
            if cur.peek_kind() != "*" and c.is_zero():
                return LieElement.zero(arity, field)
            cur.expect("*")
            return lterm().scale(c)
        return latom()

    def latom():
        kind, text, pos = cur.token
        if kind == "name":
            tok = cur.advance()
            return LieElement.generator(arity, field, _variable_index(tok, arity))
        if kind == "[":
            cur.advance()
            indices = [_variable_index(cur.expect("name"), arity)]
            while cur.peek_kind() == ",":
                cur.advance()
                indices.append(_variable_index(cur.expect("name"), arity))
            cur.expect("]")
            if len(indices) < 2:
                raise ParseError("a bracket needs at least two entries", pos)
            return normalize_word(indices, arity, field)
        if kind == "(":
            cur.advance()
            value = lexpr()
            cur.expect(")")
            return value
        raise ParseError(f"unexpected {text or 'end of input'!r}", pos)

    value = lexpr()
    cur.expect("end")
    return value


# -- printing ----------------------------------------------------------------


def scalar_to_str(c):
    return str(c)


def _is_negative(c):
    return c.field.is_rationals and c.value < 0


def _mono_to_str(mono):
    pieces = []
    for i, e in enumerate(mono):
        if e == 1:
            pieces.append(f"x{i + 1}")
        elif e > 1:
            pieces.append(f"x{i + 1}^{e}")
    return "*".join(pieces)


def _join_terms(parts):
    out = []
    for i, (negative, body) in enumerate(parts):
        if i == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


def _term_str(coeff, body):
    if not body:
        return scalar_to_str(coeff)
    if coeff.is_one():
        return body
    return f"{scalar_to_str(coeff)}*{body}"


def poly_to_str(f):
    if f.is_zero():
        return "0"
    parts = []
    for mono, coeff in f.iter_sorted():
        negative = _is_negative(coeff)
        magnitude = -coeff if negative else coeff
        parts.append((negative, _term_str(magnitude, _mono_to_str(mono))))
    return _join_terms(parts)


def _word_to_str(word):
    if len(word) == 1:
        return f"x{word[0]}"
    return "[" + ",".join(f"x{i}" for i in word) + "]"


def lie_to_str(u):
    if u.is_zero():
        return "0"
    parts = []
    for word, coeff in u.iter_sorted():
        negative = _is_negative(coeff)
        magnitude = -coeff if negative else coeff
        parts.append((negative, _term_str(magnitude, _word_to_str(word))))
    return _join_terms(parts)
