"""Recursive-descent parser for operator and rational-function text.

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*          ('/' also allowed in rational mode)
    factor   := atom ('^' uint)?
    atom     := '(' expr ')' | 'z' | 'D' | rational
    rational := uint ('/' uint)?

Multiplication is explicit and noncommutative; lowering to the Weyl algebra
normal-orders with D z = z D + 1.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .diffop import DiffOp, WeylPoly, diffop_from_weyl
from .exactcore import PolyQ, RatFuncQ


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos
        self.text = text


_TOKEN = re.compile(r"\s*(?:(\d+)|([zD])|([-+*/^()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out, i = [], 0
    while i < len(text):
        if text[i:].strip() == "":
            break
        m = _TOKEN.match(text, i)
        if not m:
            j = i + len(text[i:]) - len(text[i:].lstrip())
            raise ParseError(f"unexpected character {text[j]!r}", j, text)
        kind = "int" if m.group(1) else "var" if m.group(2) else "op"
        out.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        i = m.end()
    out.append(("end", "", len(text)))
    return out


@dataclass(frozen=True)
class Node:
    op: str  # num, z, D, add, sub, neg, mul, div, pow
    args: tuple = ()
    value: object = None


@dataclass(frozen=True)
class OperatorExpr:
    text: str
    tree: Node

    def to_weyl(self) -> WeylPoly:
        return _eval(self.tree, _WeylAlg)

    def to_diffop(self) -> DiffOp:
        return diffop_from_weyl(self.to_weyl())


class _Parser:
    def __init__(self, text: str, rational_mode: bool):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.rational_mode = rational_mode

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self) -> Node:
        node = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self) -> Node:
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            node = Node("neg", (self.term(),))
        else:
            node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = Node("add" if op == "+" else "sub", (node, self.term()))
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            tok = self.take()
            if tok[1] == "/" and not self.rational_mode:
                self.error("division is only allowed in rational-function input", tok)
            node = Node("mul" if tok[1] == "*" else "div", (node, self.factor()))
        return node

    def factor(self) -> Node:
        node = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.error("exponent must be a nonnegative integer literal", tok)
            self.take()
            node = Node("pow", (node,), int(tok[1]))
        return node

    def atom(self) -> Node:
        tok = self.take()
        kind, val = tok[0], tok[1]
        if kind == "op" and val == "(":
            node = self.expr()
            if self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return node
        if kind == "var":
            if val == "D" and self.rational_mode:
                self.error("D is not allowed in rational-function input", tok)
            return Node(val)
        if kind == "int":
            num = int(val)
            # a literal p/q binds tighter than '*' in operator text
            if not self.rational_mode and self.peek()[1] == "/" and self.peek()[0] == "op":
                self.take()
                den = self.peek()
                if den[0] != "int":
                    self.error("division is only allowed in rational-function input", den)
                self.take()
                if int(den[1]) == 0:
                    self.error("zero denominator", den)
                return Node("num", value=Fraction(num, int(den[1])))
            return Node("num", value=Fraction(num))
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {val!r}", tok)


class _WeylAlg:
    num = staticmethod(WeylPoly.const)
    z = staticmethod(WeylPoly.z)
    D = staticmethod(WeylPoly.D)


class _RatAlg:
    num = staticmethod(RatFuncQ.coerce)

    @staticmethod
    def z():
        return RatFuncQ.coerce(PolyQ.z())


def _eval(node: Node, alg):
    op = node.op
    if op == "num":
        return alg.num(node.value)
    if op == "z":
        return alg.z()
    if op == "D":
        return alg.D()
    a = [_eval(x, alg) for x in node.args]
    if op == "neg":
        return -a[0]
    if op == "add":
        return a[0] + a[1]
    if op == "sub":
        return a[0] - a[1]
    if op == "mul":
        return a[0] * a[1]
    if op == "div":
        return a[0] / a[1]
    if op == "pow":
        return a[0] ** node.value
    raise AssertionError(op)


def parse_operator(text: str) -> OperatorExpr:
    return OperatorExpr(text, _Parser(text, rational_mode=False).parse())


def parse_weyl(text: str) -> WeylPoly:
    return parse_operator(text).to_weyl()


def parse_diffop(text: str) -> DiffOp:
    w = parse_weyl(text)
    if w.is_zero():
        raise ValueError("the zero operator")
    return diffop_from_weyl(w)


def parse_ratfunc(text: str) -> RatFuncQ:
    tree = _Parser(text, rational_mode=True).parse()
    try:
        return _eval(tree, _RatAlg)
    except ZeroDivisionError:
        raise ParseError("division by zero", 0, text) from None


def parse_rational(text: str) -> Fraction:
    r = parse_ratfunc(text)
    if not (r.is_polynomial() and r.as_poly().degree <= 0):
        raise ParseError("expected a rational constant", 0, text)
    return r.as_poly()[0]
