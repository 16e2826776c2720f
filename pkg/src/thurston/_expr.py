"""Tiny recursive-descent parser for rational expressions.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/')? factor)*      # juxtaposition multiplies
    factor := ('-'|'+') factor | atom ('^' int)?
    atom   := number | name | '(' expr ')'

Leaves are mapped into any algebra whose elements support the arithmetic
operators; names are looked up in ``variables``.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ExpressionError(ValueError):
    pass


def _tokens(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num), m.start(1)))
        elif name is not None:
            out.append(("name", name, m.start(2)))
        else:
            out.append(("op", op, m.start(3)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_expression(text: str, field, variables: dict):
    toks = _tokens(text)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        tok = toks[i]
        i += 1
        return tok

    def fail(msg):
        raise ExpressionError(f"{msg} at offset {peek()[2]} in {text!r}")

    def expr():
        val = term()
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def starts_factor(tok):
        return tok[0] in ("num", "name") or (tok[0] == "op" and tok[1] == "(")

    def term():
        val = factor()
        while True:
            tok = peek()
            if tok[0] == "op" and tok[1] in "*/":
                take()
                rhs = factor()
                val = val * rhs if tok[1] == "*" else val / rhs
            elif starts_factor(tok):
                val = val * factor()
            else:
                return val

    def integer():
        sign = 1
        if peek()[0] == "op" and peek()[1] in "+-":
            sign = -1 if take()[1] == "-" else 1
        if peek()[0] == "op" and peek()[1] == "(":
            take()
            k = integer()
            if take()[1] != ")":
                fail("expected ')'")
            return sign * k
        tok = take()
        if tok[0] != "num":
            fail("expected integer exponent")
        return sign * tok[1]

    def factor():
        tok = peek()
        if tok[0] == "op" and tok[1] in "+-":
            take()
            val = factor()
            return -val if tok[1] == "-" else val
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            k = integer()
            if k < 0:
                return field.one / _power(base, -k, field)
            return _power(base, k, field)
        return base

    def atom():
        tok = take()
        if tok[0] == "num":
            return field(tok[1])
        if tok[0] == "name":
            if tok[1] not in variables:
                raise ExpressionError(f"unknown symbol {tok[1]!r} in {text!r}")
            return variables[tok[1]]
        if tok[0] == "op" and tok[1] == "(":
            val = expr()
            if take()[1] != ")":
                fail("expected ')'")
            return val
        i_back = tok[2]
        raise ExpressionError(f"unexpected token at offset {i_back} in {text!r}")

    if peek()[0] == "end":
        raise ExpressionError("empty expression")
    value = expr()
    if peek()[0] != "end":
        fail("trailing input")
    return value


def _power(base, k, field):
    result = field.one
    for _ in range(k):
        result = result * base
    return result
