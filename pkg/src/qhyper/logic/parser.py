"""Recursive-descent parser for formulas, sequents and sorts.

Grammar (ASCII; a few Unicode connectives are accepted as synonyms)::

    sequent  := [ "[" ctx "]" ] formula "|-" formula
    ctx      := [ NAME ":" sort { "," NAME ":" sort } ]
    formula  := conj { "|" conj }
    conj     := unary { "&" unary }
    unary    := ("forall" | "exists") NAME ":" sort "." formula | postfix
    postfix  := primary { "'" }
    primary  := "top" | "bot" | "(" formula ")" | NAME [ "(" terms ")" ] | term "=" term
    term     := NAME [ "(" terms ")" ] | "<" term "," term ">" | ("fst" | "snd") "(" term ")"
    sort     := NAME { "*" sortatom }    sortatom := NAME | "(" sort ")"
"""

from __future__ import annotations

import re
from collections import deque
from typing import Deque, List, NamedTuple, Optional, Tuple, Union

from ..errors import FormulaSyntaxError
from .syntax import (
    And,
    Apply,
    Atom,
    BaseSort,
    Bottom,
    Context,
    Equals,
    Exists,
    Forall,
    Formula,
    Not,
    Or,
    Pair,
    ProductSort,
    Proj,
    Sequent,
    Sort,
    Term,
    Top,
    Var,
)

TOKEN_SPEC = [
    ("SKIP", r"[ \t\r\n]+"),
    ("TURNSTILE", r"\|-|⊢"),
    ("OR", r"\||∨"),
    ("AND", r"&|∧"),
    ("PRIME", r"'|′"),
    ("EQ", r"="),
    ("LANGLE", r"<|⟨"),
    ("RANGLE", r">|⟩"),
    ("LP", r"\("),
    ("RP", r"\)"),
    ("LB", r"\["),
    ("RB", r"\]"),
    ("COMMA", r","),
    ("COLON", r":"),
    ("DOT", r"\."),
    ("STAR", r"\*|×"),
    ("FORALL", r"∀"),
    ("EXISTS", r"∃"),
    ("TOP", r"⊤"),
    ("BOT", r"⊥"),
    ("NAME", r"[A-Za-z_][A-Za-z0-9_]*"),
    ("MISMATCH", r"."),
]

TOKEN_REGEX = re.compile("|".join("(?P<%s>%s)" % pair for pair in TOKEN_SPEC))

KEYWORDS = {
    "forall": "FORALL",
    "exists": "EXISTS",
    "top": "TOP",
    "bot": "BOT",
    "fst": "FST",
    "snd": "SND",
}


class Token(NamedTuple):
    type: str
    value: str
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    for match in TOKEN_REGEX.finditer(text):
        kind = match.lastgroup or "MISMATCH"
        value = match.group()
        if kind == "SKIP":
            continue
        if kind == "MISMATCH":
            raise FormulaSyntaxError(f"unexpected character {value!r}", match.start())
        if kind == "NAME":
            kind = KEYWORDS.get(value, kind)
        tokens.append(Token(kind, value, match.start()))
    tokens.append(Token("EOF", "", len(text)))
    return tokens


class Parser:
    def __init__(self, text: str) -> None:
        self.tokens: Deque[Token] = deque(tokenize(text))

    def peek(self, offset: int = 0) -> Token:
        if offset >= len(self.tokens):
            return self.tokens[-1]
        return self.tokens[offset]

    def pop(self, expected: Optional[str] = None) -> Token:
        token = self.tokens[0]
        if expected and token.type != expected:
            found = "end of input" if token.type == "EOF" else repr(token.value)
            raise FormulaSyntaxError(f"expected {expected}, got {found}", token.column)
        if token.type != "EOF":
            self.tokens.popleft()
        return token

    def at(self, *types: str) -> bool:
        return self.peek().type in types

    def finish(self) -> None:
        self.pop("EOF")

    # -- sorts ---------------------------------------------------------------

    def parse_sort(self) -> Sort:
        sort = self.parse_sort_atom()
        while self.at("STAR"):
            self.pop("STAR")
            sort = ProductSort(sort, self.parse_sort_atom())
        return sort

    def parse_sort_atom(self) -> Sort:
        if self.at("LP"):
            self.pop("LP")
            sort = self.parse_sort()
            self.pop("RP")
            return sort
        return BaseSort(self.pop("NAME").value)

    # -- sequents ------------------------------------------------------------

    def parse_sequent(self) -> Sequent:
        context = self.parse_context() if self.at("LB") else None
        left = self.parse_formula()
        self.pop("TURNSTILE")
        right = self.parse_formula()
        return Sequent(left, right, context)

    def parse_context(self) -> Context:
        self.pop("LB")
        entries: List[Tuple[str, Sort]] = []
        if not self.at("RB"):
            while True:
                name = self.pop("NAME")
                if any(name.value == seen for seen, _ in entries):
                    raise FormulaSyntaxError(f"variable {name.value!r} declared twice", name.column)
                self.pop("COLON")
                entries.append((name.value, self.parse_sort()))
                if not self.at("COMMA"):
                    break
                self.pop("COMMA")
        self.pop("RB")
        return tuple(entries)

    # -- formulas ------------------------------------------------------------

    def parse_formula(self) -> Formula:
        return self.parse_or()

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while self.at("OR"):
            self.pop("OR")
            left = Or(left, self.parse_and())
        return left

    def parse_and(self) -> Formula:
        left = self.parse_unary()
        while self.at("AND"):
            self.pop("AND")
            left = And(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        if self.at("FORALL", "EXISTS"):
            quantifier = self.pop()
            var = self.pop("NAME").value
            self.pop("COLON")
            sort = self.parse_sort()
            self.pop("DOT")
            body = self.parse_formula()
            cls = Forall if quantifier.type == "FORALL" else Exists
            return cls(var, sort, body)
        formula = self.parse_primary()
        while self.at("PRIME"):
            self.pop("PRIME")
            formula = Not(formula)
        return formula

    def parse_primary(self) -> Formula:
        token = self.peek()
        if token.type == "TOP":
            self.pop()
            return Top()
        if token.type == "BOT":
            self.pop()
            return Bottom()
        if token.type == "LP":
            self.pop("LP")
            formula = self.parse_formula()
            self.pop("RP")
            return formula
        if token.type == "NAME" and not self.peek(1).type == "EQ":
            name = self.pop("NAME").value
            args: Tuple[Term, ...] = ()
            if self.at("LP"):
                args = self.parse_arguments()
            if not self.at("EQ"):
                return Atom(name, args)
            left: Term = Apply(name, args)
        elif token.type in ("NAME", "LANGLE", "FST", "SND"):
            left = self.parse_term()
        else:
            found = "end of input" if token.type == "EOF" else repr(token.value)
            raise FormulaSyntaxError(f"expected a formula, got {found}", token.column)
        self.pop("EQ")
        return Equals(left, self.parse_term())

    # -- terms ---------------------------------------------------------------

    def parse_arguments(self) -> Tuple[Term, ...]:
        self.pop("LP")
        args: List[Term] = []
        if not self.at("RP"):
            args.append(self.parse_term())
            while self.at("COMMA"):
                self.pop("COMMA")
                args.append(self.parse_term())
        self.pop("RP")
        return tuple(args)

    def parse_term(self) -> Term:
        token = self.peek()
        if token.type == "LANGLE":
            self.pop("LANGLE")
            left = self.parse_term()
            self.pop("COMMA")
            right = self.parse_term()
            self.pop("RANGLE")
            return Pair(left, right)
        if token.type in ("FST", "SND"):
            self.pop()
            self.pop("LP")
            inner = self.parse_term()
            self.pop("RP")
            return Proj(1 if token.type == "FST" else 2, inner)
        name = self.pop("NAME").value
        if self.at("LP"):
            return Apply(name, self.parse_arguments())
        return Var(name)


def parse_formula(text: str) -> Formula:
    parser = Parser(text)
    formula = parser.parse_formula()
    parser.finish()
    return formula


def parse_sequent(text: str) -> Sequent:
    parser = Parser(text)
    sequent = parser.parse_sequent()
    parser.finish()
    return sequent


def parse_judgement(text: str) -> Tuple[Optional[Context], Formula]:
    """A formula with an optional leading context, ``[x:S] phi``."""
    parser = Parser(text)
    context = parser.parse_context() if parser.at("LB") else None
    formula = parser.parse_formula()
    parser.finish()
    return context, formula


def parse_sort(text: str) -> Sort:
    parser = Parser(text)
    sort = parser.parse_sort()
    parser.finish()
    return sort


def parse(text: str) -> Union[Formula, Sequent]:
    """A sequent when the text has a turnstile or a context, otherwise a formula."""
    tokens = tokenize(text)
    if any(t.type == "TURNSTILE" for t in tokens) or tokens[0].type == "LB":
        return parse_sequent(text)
    return parse_formula(text)
