"""Experiment document parser - transforms tokens into a document tree."""

from typing import List, Set

from selfmeasure.errors import ConfigError
from .lexer import Lexer, Token, TokenType
from .nodes import (
    Document, Entry, Value, NumberValue, StringValue, BoolValue, ListValue, MappingValue,
)


class ParseError(ConfigError):
    """Parser error exception."""
    pass


class Parser:
    def __init__(self, tokens: List[Token]):
        self.tokens = tokens
        self.position = 0

    # ------------------------------------------------------------------
    # Token helpers
    # ------------------------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        """Look ahead at token without consuming it."""
        pos = self.position + offset
        if pos < len(self.tokens):
            return self.tokens[pos]
        return self.tokens[-1]  # Return EOF

    def advance(self) -> Token:
        """Consume and return current token."""
        token = self.peek()
        if token.type != TokenType.EOF:
            self.position += 1
        return token

    def expect(self, token_type: TokenType) -> Token:
        """Consume token of expected type or raise error."""
        token = self.peek()
        if token.type != token_type:
            raise ParseError(
                f"Expected {token_type.name}, got {token.type.name} at {token.line}:{token.column}"
            )
        return self.advance()

    def skip_newlines(self):
        """Skip newline tokens."""
        while self.peek().type == TokenType.NEWLINE:
            self.advance()

    # ------------------------------------------------------------------
    # Top-level
    # ------------------------------------------------------------------

    def parse(self) -> Document:
        """Parse entire document."""
        self.skip_newlines()
        entries = self.parse_entries(until=TokenType.EOF)
        return Document(entries=entries, line=1, column=1)

    def parse_entries(self, until: TokenType) -> List[Entry]:
        """Parse key: value entries up to a DEDENT or EOF."""
        entries: List[Entry] = []
        seen: Set[str] = set()

        while self.peek().type not in (until, TokenType.EOF):
            entry = self.parse_entry()
            if entry.key in seen:
                raise ParseError(f"Duplicate key {entry.key!r} at {entry.line}:{entry.column}")
            seen.add(entry.key)
            entries.append(entry)
            self.skip_newlines()

        return entries

    # ------------------------------------------------------------------
    # Entries
    # ------------------------------------------------------------------

    def parse_entry(self) -> Entry:
        """Parse `key: value` or `key:` followed by an indented mapping."""
        key_token = self.peek()
        if key_token.type not in (TokenType.WORD, TokenType.STRING_LITERAL):
            raise ParseError(
                f"Expected key, got {key_token.type.name} at {key_token.line}:{key_token.column}"
            )
        self.advance()
        self.expect(TokenType.COLON)

        if self.peek().type == TokenType.NEWLINE:
            self.skip_newlines()
            indent = self.expect(TokenType.INDENT)
            entries = self.parse_entries(until=TokenType.DEDENT)
            if self.peek().type == TokenType.DEDENT:
                self.advance()
            value: Value = MappingValue(entries=entries, line=indent.line, column=indent.column)
        else:
            value = self.parse_value()
            if self.peek().type not in (TokenType.NEWLINE, TokenType.EOF):
                token = self.peek()
                raise ParseError(
                    f"Expected end of line after value, got {token.type.name} at {token.line}:{token.column}"
                )

        return Entry(key=key_token.value, value=value, line=key_token.line, column=key_token.column)

    # ------------------------------------------------------------------
    # Values
    # ------------------------------------------------------------------

    def parse_value(self) -> Value:
        """Parse scalar or list value."""
        token = self.peek()

        if token.type == TokenType.INTEGER_LITERAL:
            self.advance()
            return NumberValue(value=int(token.value), line=token.line, column=token.column)

        if token.type == TokenType.FLOAT_LITERAL:
            self.advance()
            return NumberValue(value=float(token.value), line=token.line, column=token.column)

        if token.type in (TokenType.STRING_LITERAL, TokenType.WORD):
            self.advance()
            return StringValue(value=token.value, line=token.line, column=token.column)

        if token.type in (TokenType.TRUE, TokenType.FALSE):
            self.advance()
            return BoolValue(
                value=(token.type == TokenType.TRUE),
                line=token.line, column=token.column,
            )

        if token.type == TokenType.LBRACKET:
            return self._parse_list()

        raise ParseError(f"Unexpected token {token.type.name} at {token.line}:{token.column}")

    def _parse_list(self) -> ListValue:
        lbracket = self.expect(TokenType.LBRACKET)
        elements: List[Value] = []

        if self.peek().type != TokenType.RBRACKET:
            elements.append(self.parse_value())
            while self.peek().type == TokenType.COMMA:
                self.advance()
                if self.peek().type == TokenType.RBRACKET:
                    break  # trailing comma
                elements.append(self.parse_value())

        self.expect(TokenType.RBRACKET)
        return ListValue(
            elements=elements, line=lbracket.line, column=lbracket.column,
        )


def parse_document(source: str) -> Document:
    """Lex and parse document text."""
    return Parser(Lexer(source).tokenize()).parse()
