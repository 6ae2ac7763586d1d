"""Experiment document node definitions."""

from dataclasses import dataclass
from typing import Any, Dict, List, Union


# Base node
@dataclass
class Node:
    line: int
    column: int


# Values
@dataclass
class Value(Node):
    pass


@dataclass
class NumberValue(Value):
    value: Union[int, float]


@dataclass
class StringValue(Value):
    value: str


@dataclass
class BoolValue(Value):
    value: bool


@dataclass
class ListValue(Value):
    elements: List[Value]


@dataclass
class MappingValue(Value):
    entries: List['Entry']


# Entries
@dataclass
class Entry(Node):
    key: str
    value: Value


# Document
@dataclass
class Document(Node):
    entries: List[Entry]

    def keys(self) -> List[str]:
        return [entry.key for entry in self.entries]

    def to_dict(self) -> Dict[str, Any]:
        return {entry.key: to_python(entry.value) for entry in self.entries}


def to_python(value: Value) -> Any:
    """Plain Python form: numbers, strings, bools, lists and dicts."""
    if isinstance(value, (NumberValue, StringValue, BoolValue)):
        return value.value
    if isinstance(value, ListValue):
        return [to_python(element) for element in value.elements]
    if isinstance(value, MappingValue):
        return {entry.key: to_python(entry.value) for entry in value.entries}
    raise TypeError(f"Unknown document node {type(value).__name__}")
