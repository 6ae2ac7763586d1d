from .lexer import Lexer, LexError, Token, TokenType
from .parser import Parser, ParseError, parse_document
from .writer import dump, format_float
from .experiment import (
    Command, ExperimentConfig,
    config_from_mapping, parse_config, config_to_mapping, serialize_config, config_summary,
)
