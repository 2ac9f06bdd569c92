"""Recursive-descent parser for ImgQL scripts.

Infix precedence, loosest first: ``S``, ``|``, ``&``, comparisons, additive,
multiplicative; prefix ``!`` binds tightest. All infix operators associate
to the left.
"""

from __future__ import annotations

from . import ast
from .errors import ParseError
from .lexer import Token, tokenize

PRECEDENCE: list[set[str]] = [
    {"S"},
    {"|"},
    {"&"},
    {">", "<", ">.", "<.", ".<.", ".>."},
    {"+.", ".+.", ".-."},
    {".*.", "./."},
]


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.tok
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            got = t.text or t.kind
            raise ParseError(f"expected {want!r}, found {got!r}", t.loc)
        return self.advance()

    def commands(self) -> list[ast.Command]:
        out = []
        while self.tok.kind != "eof":
            out.append(self.command())
        return out

    def command(self) -> ast.Command:
        t = self.tok
        if t.kind != "keyword":
            raise ParseError(f"expected a command (let, load, save, print, import), found {t.text!r}", t.loc)
        self.advance()
        if t.text == "let":
            name = self.expect("ident").text
            params: list[str] = []
            if self.tok.kind == "punct" and self.tok.text == "(":
                self.advance()
                if not (self.tok.kind == "punct" and self.tok.text == ")"):
                    params.append(self.expect("ident").text)
                    while self.tok.kind == "punct" and self.tok.text == ",":
                        self.advance()
                        params.append(self.expect("ident").text)
                self.expect("punct", ")")
            if len(set(params)) != len(params):
                raise ParseError(f"duplicate parameter names in declaration of {name!r}", t.loc)
            self.expect("punct", "=")
            return ast.LetDecl(name, tuple(params), self.expr(), t.loc)
        if t.text == "load":
            name = self.expect("ident").text
            self.expect("punct", "=")
            return ast.Load(name, self.expect("string").text, t.loc)
        if t.text == "save":
            path = self.expect("string").text
            return ast.Save(path, self.expr(), t.loc)
        if t.text == "print":
            label = self.expect("string").text
            return ast.Print(label, self.expr(), t.loc)
        return ast.Import(self.expect("string").text, t.loc)

    def expr(self, level: int = 0):
        if level == len(PRECEDENCE):
            return self.prefix()
        lhs = self.expr(level + 1)
        while self.tok.kind == "op" and self.tok.text in PRECEDENCE[level]:
            op = self.advance()
            rhs = self.expr(level + 1)
            lhs = ast.InfixApp(op.text, lhs, rhs, op.loc)
        return lhs

    def prefix(self):
        if self.tok.kind == "op" and self.tok.text == "!":
            op = self.advance()
            return ast.PrefixApp("!", self.prefix(), op.loc)
        return self.primary()

    def primary(self):
        t = self.tok
        if t.kind == "number":
            self.advance()
            return ast.Number(float(t.text), t.loc)
        if t.kind == "string":
            self.advance()
            return ast.String(t.text, t.loc)
        if t.kind == "ident":
            self.advance()
            if self.tok.kind == "punct" and self.tok.text == "(":
                self.advance()
                args = []
                if not (self.tok.kind == "punct" and self.tok.text == ")"):
                    args.append(self.expr())
                    while self.tok.kind == "punct" and self.tok.text == ",":
                        self.advance()
                        args.append(self.expr())
                self.expect("punct", ")")
                return ast.Application(t.text, tuple(args), t.loc)
            return ast.Identifier(t.text, t.loc)
        if t.kind == "punct" and t.text == "(":
            self.advance()
            inner = self.expr()
            self.expect("punct", ")")
            return ast.Paren(inner, t.loc)
        raise ParseError(f"expected an expression, found {t.text or t.kind!r}", t.loc)


def parse(tokens: list[Token]) -> list[ast.Command]:
    return _Parser(tokens).commands()


def parse_source(source: str, filename: str = "<script>") -> list[ast.Command]:
    return parse(tokenize(source, filename))


def parse_expr(source: str) -> ast.Expr:
    p = _Parser(tokenize(source))
    e = p.expr()
    p.expect("eof")
    return e
