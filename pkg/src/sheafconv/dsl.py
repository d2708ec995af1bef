"""Tiny expression language for one-dimensional objects.

Grammar: expr := 'zero' | name '(' arg {',' arg} ')' where leaf calls
take rational literals ('p', '-p', 'p/q') and combinators take
subexpressions.  Arities and argument kinds are checked while parsing;
error positions are byte offsets into the input.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from . import sheaf1

_TOKEN = re.compile(r"\s*(?:(-?\d+(?:/\d+)?)|([a-zA-Z_]\w*)|([(),]))")

RAT, INT, EXPR = "rat", "int", "expr"

# name -> (argument kinds, variadic tail allowed)
_SIGNATURES = {
    "kc": ((RAT, RAT), False),
    "ko": ((RAT, RAT), False),
    "kco": ((RAT, RAT), False),
    "koc": ((RAT, RAT), False),
    "dirac": ((RAT,), False),
    "conv": ((EXPR, EXPR), True),
    "sum": ((EXPR, EXPR), True),
    "dual": ((EXPR,), False),
    "antipodal": ((EXPR,), False),
    "inverse": ((EXPR,), False),
    "shift": ((EXPR, INT), False),
    "translate": ((EXPR, RAT), False),
}


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        num, name, punct = m.groups()
        start = m.start(1) if num else m.start(2) if name else m.start(3)
        if num:
            out.append(("num", num, start))
        elif name:
            out.append(("name", name, start))
        else:
            out.append((punct, punct, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        kind, value, at = self.peek()
        if kind != "name":
            raise ParseError(f"expected an expression, found {value!r}", at)
        self.i += 1
        if value == "zero":
            return ("zero",)
        if value not in _SIGNATURES:
            raise ParseError(f"unknown name {value!r}", at)
        kinds, variadic = _SIGNATURES[value]
        self.take("(")
        args = [self.arg(kinds[0])]
        for k in kinds[1:]:
            self.take(",")
            args.append(self.arg(k))
        while variadic and self.peek()[0] == ",":
            self.take(",")
            args.append(self.arg(kinds[-1]))
        self.take(")")
        return (value, *args)

    def arg(self, kind):
        if kind == EXPR:
            return self.expr()
        tok_kind, value, at = self.peek()
        if tok_kind != "num":
            raise ParseError(f"expected a number, found {value!r}", at)
        self.i += 1
        if kind == INT:
            if "/" in value:
                raise ParseError("expected an integer", at)
            return int(value)
        if value.endswith("/0"):
            raise ParseError("zero denominator", at)
        return Fraction(value)


def parse(text: str):
    p = _Parser(text)
    tree = p.expr()
    kind, value, at = p.peek()
    if kind != "end":
        raise ParseError(f"trailing input starting at {value!r}", at)
    return tree


_LEAVES = {
    "kc": sheaf1.kc,
    "ko": sheaf1.ko,
    "kco": sheaf1.kco,
    "koc": sheaf1.koc,
    "dirac": sheaf1.dirac,
}


def eval_expr(tree) -> sheaf1.Sheaf1:
    head, args = tree[0], tree[1:]
    if head == "zero":
        return sheaf1.zero()
    if head in _LEAVES:
        return _LEAVES[head](*args)
    vals = [eval_expr(a) if isinstance(a, tuple) else a for a in args]
    if head == "conv":
        out = vals[0]
        for v in vals[1:]:
            out = sheaf1.convolve(out, v)
        return out
    if head == "sum":
        return sheaf1.direct_sum(*vals)
    if head == "dual":
        return sheaf1.dual(vals[0])
    if head == "antipodal":
        return sheaf1.antipodal(vals[0])
    if head == "inverse":
        return sheaf1.inverse(vals[0])
    if head == "shift":
        return sheaf1.shift(vals[0], vals[1])
    return sheaf1.translate(vals[0], vals[1])


def eval_text(text: str) -> sheaf1.Sheaf1:
    return eval_expr(parse(text))
