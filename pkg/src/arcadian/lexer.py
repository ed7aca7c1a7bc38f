"""Tokenizer shared by the formula and proof-term parsers."""
from __future__ import annotations

import re
from dataclasses import dataclass


class ParseError(Exception):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.message = message
        self.pos = pos


@dataclass(frozen=True)
class Token:
    kind: str  # 'id', 'op' or 'eof'
    text: str
    pos: int


# longest operators first so that '\\' wins over '\' and '->' over '-'
_OPS = [r"\\", "\\/", "/\\", "->", "=>", "\\", "~", "(", ")", ",", ".", ":",
        "<", ">", "[", "]", "{", "}", "|", "@", "="]
_UNICODE = {"→": "->", "∧": "/\\", "∨": "\\/", "¬": "~", "λ": "\\", "Λ": r"\\"}
_UNICODE_WORDS = {"⊥": "bot", "∀": "forall", "∃": "exists"}

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<id>[A-Za-z][A-Za-z0-9_']*)|(?P<op>"
    + "|".join(re.escape(op) for op in _OPS)
    + ")|(?P<uni>[→∧∨¬λΛ⊥∀∃])"
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind == "id":
            tokens.append(Token("id", m.group(), pos))
        elif kind == "op":
            tokens.append(Token("op", m.group(), pos))
        elif kind == "uni":
            ch = m.group()
            if ch in _UNICODE_WORDS:
                tokens.append(Token("id", _UNICODE_WORDS[ch], pos))
            else:
                tokens.append(Token("op", _UNICODE[ch], pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class Cursor:
    """Mutable position over a token list."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, text: str) -> bool:
        return self.tok.kind != "eof" and self.tok.text == text

    def accept(self, text: str) -> bool:
        if self.peek(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.tok
        if tok.kind == "eof" or tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.pos)
        self.i += 1
        return tok

    def ident(self, reserved: frozenset = frozenset()) -> str:
        tok = self.tok
        if tok.kind != "id" or tok.text in reserved:
            raise ParseError(f"expected identifier, found {tok.text or 'end of input'!r}", tok.pos)
        self.i += 1
        return tok.text

    def at_end(self) -> bool:
        return self.tok.kind == "eof"

    def finish(self) -> None:
        if not self.at_end():
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
