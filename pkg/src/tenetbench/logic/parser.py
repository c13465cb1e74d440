"""Parser for the ASCII expression grammar.

    []x     always          <>x     eventually
    () x    next            P<15m x held within the past 15 minutes
    !x      negation        x & y   conjunction (n-ary)
    x | y   disjunction     x -> y  implication (right associative)
    "..."   informal phrase, optional (term, ...) arguments
    name(t) formal atom     NAME(t) macro call (uppercase name)
    t OP t  interpreted comparison, OP in = != < > <= >=
    t + t   term-level addition; 15m / 2h / 1d are duration literals

Uppercase identifiers in term position are variables.  The full grammar
lives in docs/grammar.md.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exprs import (
    Always,
    And,
    Eventually,
    Expr,
    FormalAtom,
    Implies,
    InformalAtom,
    Leaf,
    MacroCall,
    Next,
    Not,
    Or,
    PastWithin,
)
from .terms import MINUTES_PER_UNIT, Compound, Const, Duration, Num, Term, Var


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    col: int


_COMPARISONS = {"=", "!=", "<", ">", "<=", ">="}


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def emit(kind: str, value: str) -> None:
        tokens.append(Token(kind, value, line, col))

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == '"':
            end = text.find('"', i + 1)
            if end < 0:
                raise ParseError("unbalanced quote", line, col)
            emit("QUOTED", text[i + 1 : end])
            col += end - i + 1
            i = end + 1
            continue
        if ch == "[":
            if i + 1 < n and text[i + 1] == "]":
                emit("ALWAYS", "[]")
                i += 2
                col += 2
                continue
            raise ParseError("expected '[]'", line, col)
        if ch == "<":
            nxt = text[i + 1] if i + 1 < n else ""
            if nxt == ">":
                emit("EVENTUALLY", "<>")
                i += 2
                col += 2
                continue
            if nxt == "=":
                emit("CMP", "<=")
                i += 2
                col += 2
                continue
            emit("CMP", "<")
            i += 1
            col += 1
            continue
        if ch == ">":
            if i + 1 < n and text[i + 1] == "=":
                emit("CMP", ">=")
                i += 2
                col += 2
                continue
            emit("CMP", ">")
            i += 1
            col += 1
            continue
        if ch == "(":
            if i + 1 < n and text[i + 1] == ")":
                emit("NEXT", "()")
                i += 2
                col += 2
                continue
            emit("LP", "(")
            i += 1
            col += 1
            continue
        if ch == ")":
            emit("RP", ")")
            i += 1
            col += 1
            continue
        if ch == "!":
            if i + 1 < n and text[i + 1] == "=":
                emit("CMP", "!=")
                i += 2
                col += 2
                continue
            emit("NOT", "!")
            i += 1
            col += 1
            continue
        if ch == "-":
            if i + 1 < n and text[i + 1] == ">":
                emit("IMPLIES", "->")
                i += 2
                col += 2
                continue
            raise ParseError("unknown operator '-'", line, col)
        if ch == "=":
            emit("CMP", "=")
            i += 1
            col += 1
            continue
        if ch in "&|,+":
            emit({"&": "AND", "|": "OR", ",": "COMMA", "+": "PLUS"}[ch], ch)
            i += 1
            col += 1
            continue
        # Bounded past: 'P<' immediately followed by a number, e.g. P<15m.
        if ch == "P" and i + 1 < n and text[i + 1] == "<" and i + 2 < n and text[i + 2].isdigit():
            j = i + 2
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] in MINUTES_PER_UNIT:
                j += 1
            emit("PAST", text[i + 2 : j])
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            unit = None
            if j < n and text[j] in MINUTES_PER_UNIT and not (j + 1 < n and text[j + 1].isalnum()):
                unit = text[j]
                j += 1
            emit("NUMBER", text[i:j])
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            emit("IDENT", text[i:j])
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


def _parse_number(raw: str) -> Num:
    if raw and raw[-1] in MINUTES_PER_UNIT and not raw[-1].isdigit():
        return Num(int(raw[:-1]), raw[-1])
    return Num(int(raw))


def _parse_duration(raw: str) -> Duration:
    if raw and raw[-1] in MINUTES_PER_UNIT and not raw[-1].isdigit():
        return Duration(int(raw[:-1]), raw[-1])
    return Duration(int(raw))


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.value or 'end of input'!r}", tok.line, tok.col)
        return self.next()

    def fail(self, message: str) -> ParseError:
        tok = self.peek()
        return ParseError(message, tok.line, tok.col)

    # -- expressions ---------------------------------------------------

    def expr(self) -> Expr:
        lhs = self.disjunction()
        if self.peek().kind == "IMPLIES":
            self.next()
            return Implies(lhs, self.expr())
        return lhs

    def disjunction(self) -> Expr:
        items = [self.conjunction()]
        while self.peek().kind == "OR":
            self.next()
            items.append(self.conjunction())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conjunction(self) -> Expr:
        items = [self.unary()]
        while self.peek().kind == "AND":
            self.next()
            items.append(self.unary())
        return items[0] if len(items) == 1 else And(tuple(items))

    def unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "NOT":
            self.next()
            return Not(self.unary())
        if tok.kind == "ALWAYS":
            self.next()
            return Always(self.unary())
        if tok.kind == "EVENTUALLY":
            self.next()
            return Eventually(self.unary())
        if tok.kind == "NEXT":
            self.next()
            return Next(self.unary())
        if tok.kind == "PAST":
            self.next()
            return PastWithin(_parse_duration(tok.value), self.unary())
        return self.primary()

    def primary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "LP":
            self.next()
            inner = self.expr()
            self.expect("RP")
            return inner
        return self.atom()

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "QUOTED":
            self.next()
            args = self.arg_list() if self.peek().kind == "LP" else ()
            return Leaf(InformalAtom(tok.value, args))
        if tok.kind == "IDENT" and tok.value[0].isupper() and self.peek(1).kind == "LP":
            self.next()
            return MacroCall(tok.value, self.arg_list())
        if tok.kind in ("IDENT", "NUMBER"):
            left = self.term()
            if self.peek().kind == "CMP":
                op = self.next().value
                return Leaf(FormalAtom(op, (left, self.term())))
            return self.term_as_atom(left, tok)
        raise self.fail(f"expected a formula, found {tok.value or 'end of input'!r}")

    def term_as_atom(self, t: Term, at: Token) -> Expr:
        if isinstance(t, Var):
            return MacroCall(t.name)
        if isinstance(t, Const):
            return Leaf(FormalAtom(t.name))
        if isinstance(t, Compound) and t.functor != "+":
            return Leaf(FormalAtom(t.functor, t.args))
        raise ParseError("expected a comparison after this term", at.line, at.col)

    # -- terms ---------------------------------------------------------

    def arg_list(self) -> tuple[Term, ...]:
        self.expect("LP")
        args = [self.term()]
        while self.peek().kind == "COMMA":
            self.next()
            args.append(self.term())
        self.expect("RP")
        return tuple(args)

    def term(self) -> Term:
        left = self.factor()
        while self.peek().kind == "PLUS":
            self.next()
            left = Compound("+", (left, self.factor()))
        return left

    def factor(self) -> Term:
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.next()
            return _parse_number(tok.value)
        if tok.kind == "QUOTED":
            self.next()
            return Const(tok.value)
        if tok.kind == "LP":
            self.next()
            inner = self.term()
            self.expect("RP")
            return inner
        if tok.kind == "IDENT":
            self.next()
            if tok.value[0].isupper():
                return Var(tok.value)
            if self.peek().kind == "LP":
                return Compound(tok.value, self.arg_list())
            return Const(tok.value)
        raise self.fail(f"expected a term, found {tok.value or 'end of input'!r}")


def parse_expr(text: str) -> Expr:
    parser = _Parser(tokenize(text))
    result = parser.expr()
    trailing = parser.peek()
    if trailing.kind != "EOF":
        raise ParseError(f"unexpected trailing input {trailing.value!r}", trailing.line, trailing.col)
    return result


def parse_term(text: str) -> Term:
    parser = _Parser(tokenize(text))
    result = parser.term()
    trailing = parser.peek()
    if trailing.kind != "EOF":
        raise ParseError(f"unexpected trailing input {trailing.value!r}", trailing.line, trailing.col)
    return result
