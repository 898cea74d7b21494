"""
Text syntax for star-free expressions.

    union     := inter ('|' inter)*
    inter     := cat ('&' cat)*
    cat       := unary ('.'? unary)*
    unary     := '!' unary | atom
    atom      := '0' | 'e' | letter | '[' token ']' | '{' words '}' | '(' union ')'

Whitespace is ignored outside braces and brackets. Inside braces, words
are separated by commas and read with Alphabet.parse_word.
"""
from automata.alphabet import Alphabet
from automata.expr import StarFreeExpr, complement, concat, empty, epsilon, finite, intersect, letter, union
from core.errors import ExpressionError, InputError

_ATOM_START = set("0e[{(!")


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise ExpressionError(f"expected {ch!r}, found {found}", self.pos)
        self.pos += 1

    def parse(self) -> StarFreeExpr:
        e = self.union()
        if self.peek():
            raise ExpressionError(f"unexpected {self.peek()!r}", self.pos)
        return e

    def union(self) -> StarFreeExpr:
        parts = [self.inter()]
        while self.peek() == "|":
            self.pos += 1
            parts.append(self.inter())
        return parts[0] if len(parts) == 1 else union(*parts)

    def inter(self) -> StarFreeExpr:
        parts = [self.cat()]
        while self.peek() == "&":
            self.pos += 1
            parts.append(self.cat())
        return parts[0] if len(parts) == 1 else intersect(*parts)

    def cat(self) -> StarFreeExpr:
        parts = [self.unary()]
        while True:
            ch = self.peek()
            if ch == "*":
                raise ExpressionError("Kleene star is not part of the star-free syntax", self.pos)
            if ch == ".":
                self.pos += 1
                parts.append(self.unary())
            elif ch and (ch in _ATOM_START or ch in self.alphabet):
                parts.append(self.unary())
            else:
                break
        return parts[0] if len(parts) == 1 else concat(*parts)

    def unary(self) -> StarFreeExpr:
        if self.peek() == "!":
            self.pos += 1
            return complement(self.unary())
        return self.atom()

    def atom(self) -> StarFreeExpr:
        ch = self.peek()
        start = self.pos
        if ch == "":
            raise ExpressionError("unexpected end of input", start)
        if ch == "*":
            raise ExpressionError("Kleene star is not part of the star-free syntax", start)
        if ch == "0":
            self.pos += 1
            return empty()
        if ch == "e":
            self.pos += 1
            return epsilon()
        if ch == "(":
            self.pos += 1
            e = self.union()
            self.expect(")")
            return e
        if ch == "[":
            end = self.text.find("]", start)
            if end < 0:
                raise ExpressionError("unclosed '['", start)
            token = self.text[start + 1:end].strip()
            if token not in self.alphabet:
                raise ExpressionError(f"unknown symbol {token!r}", start)
            self.pos = end + 1
            return letter(token)
        if ch == "{":
            end = self.text.find("}", start)
            if end < 0:
                raise ExpressionError("unclosed '{'", start)
            body = self.text[start + 1:end]
            self.pos = end + 1
            words = []
            if body.strip():
                for item in body.split(","):
                    try:
                        words.append(self.alphabet.parse_word(item.replace("[", " ").replace("]", " ")))
                    except InputError as err:
                        raise ExpressionError(str(err), start) from None
            return finite(words)
        if ch in self.alphabet:
            self.pos += 1
            return letter(ch)
        raise ExpressionError(f"unexpected {ch!r}", start)


def parse_expr(text: str, alphabet: Alphabet) -> StarFreeExpr:
    """Parse the expression text syntax over the given alphabet."""
    if "e" in alphabet:
        raise ExpressionError("the symbol 'e' is reserved for the empty word in expression text")
    return _Parser(text, alphabet).parse()
