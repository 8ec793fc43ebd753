"""Tokenizer and token cursor shared by the category and document parsers."""

import enum
import re
from dataclasses import dataclass

from .exception import ParseError


class Token(enum.Enum):
    IDENT = enum.auto()
    ARROW = enum.auto()
    DOT = enum.auto()
    COMMA = enum.auto()
    SEMI = enum.auto()
    COLON = enum.auto()
    EQUALS = enum.auto()
    LBRACE = enum.auto()
    RBRACE = enum.auto()
    LPAREN = enum.auto()
    RPAREN = enum.auto()
    LESS = enum.auto()
    END = enum.auto()


_RULES = [
    (Token.ARROW, re.compile(r"->")),
    (Token.IDENT, re.compile(r"[A-Za-z0-9_*'][A-Za-z0-9_*']*")),
    (Token.DOT, re.compile(r"\.")),
    (Token.COMMA, re.compile(r",")),
    (Token.SEMI, re.compile(r";")),
    (Token.COLON, re.compile(r":")),
    (Token.EQUALS, re.compile(r"=")),
    (Token.LBRACE, re.compile(r"\{")),
    (Token.RBRACE, re.compile(r"\}")),
    (Token.LPAREN, re.compile(r"\(")),
    (Token.RPAREN, re.compile(r"\)")),
    (Token.LESS, re.compile(r"<")),
]
_SKIP = re.compile(r"(?:[ \t\r\n]+|#[^\n]*)+")


@dataclass(frozen=True)
class Lexeme:
    kind: Token
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Lexeme]:
    lexemes: list[Lexeme] = []
    pos, line, line_start = 0, 1, 0
    while True:
        skipped = _SKIP.match(text, pos)
        if skipped:
            chunk = skipped.group(0)
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = pos + chunk.rfind("\n") + 1
            pos = skipped.end()
        if pos >= len(text):
            lexemes.append(Lexeme(Token.END, "", line, pos - line_start + 1))
            return lexemes
        for kind, pattern in _RULES:
            match = pattern.match(text, pos)
            if match:
                lexemes.append(
                    Lexeme(kind, match.group(0), line, pos - line_start + 1)
                )
                pos = match.end()
                break
        else:
            raise ParseError(
                line, pos - line_start + 1, f"unexpected character {text[pos]!r}"
            )


class TokenCursor:
    """Recursive-descent helper over a token list."""

    def __init__(self, lexemes: list[Lexeme]):
        self._lexemes = lexemes
        self._index = 0

    @classmethod
    def of(cls, text: str) -> "TokenCursor":
        return cls(tokenize(text))

    def peek(self, offset: int = 0) -> Lexeme:
        index = min(self._index + offset, len(self._lexemes) - 1)
        return self._lexemes[index]

    def at(self, kind: Token, text: str | None = None) -> bool:
        current = self.peek()
        return current.kind is kind and (text is None or current.text == text)

    def accept(self, kind: Token, text: str | None = None) -> Lexeme | None:
        if self.at(kind, text):
            current = self.peek()
            self._index += 1
            return current
        return None

    def expect(self, kind: Token, text: str | None = None) -> Lexeme:
        current = self.peek()
        if not self.at(kind, text):
            wanted = repr(text) if text is not None else kind.name.lower()
            found = current.text or "end of input"
            raise ParseError(
                current.line, current.column, f"expected {wanted}, found {found!r}"
            )
        self._index += 1
        return current

    def error(self, message: str) -> ParseError:
        current = self.peek()
        return ParseError(current.line, current.column, message)

    def ident_list(self) -> list[Lexeme]:
        names = [self.expect(Token.IDENT)]
        while self.accept(Token.COMMA):
            names.append(self.expect(Token.IDENT))
        return names

    def path(self) -> list[Lexeme]:
        """A ``.``-separated path; returned left to right as written."""
        parts = [self.expect(Token.IDENT)]
        while self.accept(Token.DOT):
            parts.append(self.expect(Token.IDENT))
        return parts
