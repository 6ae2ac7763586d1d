import pytest
from selfmeasure.config import Lexer, TokenType, LexError


def types(source: str):
    return [t.type for t in Lexer(source).tokenize()]


class TestLexerKeywords:
    def test_bool_keywords(self):
        tokens = Lexer("true false").tokenize()
        assert tokens[0].type == TokenType.TRUE
        assert tokens[1].type == TokenType.FALSE

    def test_special_floats(self):
        tokens = Lexer("inf nan -inf").tokenize()
        assert [t.type for t in tokens[:3]] == [TokenType.FLOAT_LITERAL] * 3
        assert [t.value for t in tokens[:3]] == ["inf", "nan", "-inf"]


class TestLexerWords:
    def test_simple_word(self):
        tokens = Lexer("simulate").tokenize()
        assert tokens[0].type == TokenType.WORD
        assert tokens[0].value == "simulate"

    def test_word_with_dash(self):
        tokens = Lexer("algebra-info").tokenize()
        assert tokens[0].type == TokenType.WORD
        assert tokens[0].value == "algebra-info"

    def test_path_like_word(self):
        tokens = Lexer("runs/out_1.txt").tokenize()
        assert tokens[0].value == "runs/out_1.txt"

    def test_absolute_path_word(self):
        tokens = Lexer("output_path: /tmp/out.txt").tokenize()
        assert tokens[2].type == TokenType.WORD
        assert tokens[2].value == "/tmp/out.txt"

    def test_relative_path_words(self):
        for path in ("./out.txt", "../runs/out.txt", "~/runs/out.txt"):
            tokens = Lexer(path).tokenize()
            assert tokens[0].type == TokenType.WORD
            assert tokens[0].value == path

    def test_dot_before_digit_is_number(self):
        tokens = Lexer("[.5, ./x]").tokenize()
        assert tokens[1].type == TokenType.FLOAT_LITERAL
        assert tokens[3].type == TokenType.WORD

    def test_word_starting_with_underscore(self):
        tokens = Lexer("_private").tokenize()
        assert tokens[0].type == TokenType.WORD


class TestLexerLiterals:
    def test_integer_literal(self):
        tokens = Lexer("42").tokenize()
        assert tokens[0].type == TokenType.INTEGER_LITERAL
        assert tokens[0].value == "42"

    def test_signed_integer(self):
        tokens = Lexer("-7 +3").tokenize()
        assert [t.value for t in tokens[:2]] == ["-7", "+3"]
        assert tokens[0].type == TokenType.INTEGER_LITERAL

    def test_float_literal(self):
        tokens = Lexer("3.14").tokenize()
        assert tokens[0].type == TokenType.FLOAT_LITERAL
        assert tokens[0].value == "3.14"

    def test_exponent(self):
        tokens = Lexer("1e-3 2E+4 6.5e2").tokenize()
        assert [t.type for t in tokens[:3]] == [TokenType.FLOAT_LITERAL] * 3
        assert [t.value for t in tokens[:3]] == ["1e-3", "2E+4", "6.5e2"]

    def test_leading_dot(self):
        tokens = Lexer(".5").tokenize()
        assert tokens[0].type == TokenType.FLOAT_LITERAL

    def test_lone_sign(self):
        with pytest.raises(LexError, match="[Mm]alformed"):
            Lexer("-").tokenize()

    def test_string_literal(self):
        tokens = Lexer('"hello world"').tokenize()
        assert tokens[0].type == TokenType.STRING_LITERAL
        assert tokens[0].value == "hello world"

    def test_single_quoted_string(self):
        tokens = Lexer("'out dir/report.txt'").tokenize()
        assert tokens[0].value == "out dir/report.txt"

    def test_string_with_escape_sequences(self):
        tokens = Lexer('"hello\\nworld\\t!"').tokenize()
        assert tokens[0].value == "hello\nworld\t!"

    def test_string_with_escaped_quote(self):
        tokens = Lexer('"say \\"hi\\""').tokenize()
        assert tokens[0].value == 'say "hi"'


class TestLexerSymbols:
    def test_brackets(self):
        assert types("[]")[:2] == [TokenType.LBRACKET, TokenType.RBRACKET]

    def test_comma_colon(self):
        assert types(", :")[:2] == [TokenType.COMMA, TokenType.COLON]

    def test_unexpected_character(self):
        with pytest.raises(LexError, match="Unexpected character"):
            Lexer("seed: @").tokenize()


class TestLexerComments:
    def test_trailing_comment(self):
        tokens = Lexer("x # this is a comment\ny").tokenize()
        words = [t for t in tokens if t.type == TokenType.WORD]
        assert [t.value for t in words] == ["x", "y"]

    def test_comment_only_lines(self):
        assert types("# header\n\n# more\n") == [TokenType.EOF]


class TestLexerIndentation:
    def test_indent_dedent(self):
        result = types("a:\n  b: 1\nc: 2")
        assert result.count(TokenType.INDENT) == 1
        assert result.count(TokenType.DEDENT) == 1

    def test_tab_raises_error(self):
        with pytest.raises(LexError, match="[Tt]ab"):
            Lexer("\tx").tokenize()

    def test_odd_indentation_raises_error(self):
        with pytest.raises(LexError, match="[Ii]ndentation"):
            Lexer("x:\n   y: 1").tokenize()

    def test_nested_indentation(self):
        result = types("a:\n  b:\n    c: 1\n  d: 2\ne: 3")
        assert result.count(TokenType.INDENT) == 2
        assert result.count(TokenType.DEDENT) == 2

    def test_dedent_at_end_of_document(self):
        result = types("a:\n  b:\n    c: 1")
        assert result[-3:] == [TokenType.DEDENT, TokenType.DEDENT, TokenType.EOF]


class TestLexerLists:
    def test_multiline_list(self):
        result = types("a: [1,\n    2]\nb: 3")
        assert TokenType.INDENT not in result
        assert result.count(TokenType.NEWLINE) == 2

    def test_unclosed_list(self):
        with pytest.raises(LexError, match="[Uu]nclosed"):
            Lexer("a: [1, 2").tokenize()


class TestLexerLineTracking:
    def test_line_numbers(self):
        tokens = Lexer("x\ny\nz").tokenize()
        words = [t for t in tokens if t.type == TokenType.WORD]
        assert [t.line for t in words] == [1, 2, 3]

    def test_column_numbers(self):
        tokens = Lexer("abc def").tokenize()
        assert tokens[0].column == 1
        assert tokens[1].column == 5

    def test_crlf_line_endings(self):
        assert types("a: 1\r\nb: 2\r\n").count(TokenType.NEWLINE) == 2


class TestLexerErrors:
    def test_unclosed_string(self):
        with pytest.raises(LexError, match="[Uu]nclosed"):
            Lexer('"hello').tokenize()

    def test_string_cannot_span_lines(self):
        with pytest.raises(LexError):
            Lexer('"hello\nworld"').tokenize()


class TestLexerEOF:
    def test_eof_token(self):
        tokens = Lexer("x").tokenize()
        assert tokens[-1].type == TokenType.EOF

    def test_empty_source(self):
        assert types("") == [TokenType.EOF]


class TestLexerEntry:
    def test_entry_tokens(self):
        assert types("amplitudes: [[0.6, 0], [0.8, 0]]") == [
            TokenType.WORD, TokenType.COLON, TokenType.LBRACKET,
            TokenType.LBRACKET, TokenType.FLOAT_LITERAL, TokenType.COMMA, TokenType.INTEGER_LITERAL,
            TokenType.RBRACKET, TokenType.COMMA,
            TokenType.LBRACKET, TokenType.FLOAT_LITERAL, TokenType.COMMA, TokenType.INTEGER_LITERAL,
            TokenType.RBRACKET, TokenType.RBRACKET, TokenType.NEWLINE, TokenType.EOF,
        ]
