# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import json
from abc import ABC, abstractmethod
from json.decoder import scanstring
from typing import Any

type JsonValue = Any


class SchemaError(ValueError):
    """
    JSON document does not match the expected schema.

    Carries the JSON path of the offending value. The CLI resolves the path
    to a line number of the source document.
    """

    def __init__(self, reason: str, path: tuple[str | int, ...] = ()) -> None:
        self.reason = reason
        self.path = path
        self.line: int | None = None
        super().__init__(self._message())

    def _message(self) -> str:
        parts = [format_path(self.path), self.reason]

        if self.line is not None:
            parts.insert(0, f"line {self.line}")

        return ": ".join(p for p in parts if p)

    def prefixed(self, key: str | int) -> "SchemaError":
        """Same error one level deeper in the document."""
        return SchemaError(self.reason, (key, *self.path))

    def at_line(self, line: int) -> "SchemaError":
        self.line = line
        self.args = (self._message(),)
        return self


def format_path(path: tuple[str | int, ...]) -> str:
    result = ""

    for key in path:
        result += f"[{key}]" if isinstance(key, int) else f".{key}"

    return result.lstrip(".")


_WS = " \t\n\r"


def _skip_ws(text: str, idx: int) -> int:
    while idx < len(text) and text[idx] in _WS:
        idx += 1

    return idx


def locate_line(text: str, path: tuple[str | int, ...]) -> int:
    """
    Line of the value at `path` in the JSON `text`.

    Stops at the deepest existing prefix of `path`, so a missing key is
    reported at its parent object.
    """
    decoder = json.JSONDecoder()
    idx = _skip_ws(text, 0)

    for key in path:
        if idx >= len(text) or text[idx] not in "{[":
            break

        start, is_object, item, found = idx, text[idx] == "{", 0, False
        idx = _skip_ws(text, idx + 1)

        while idx < len(text) and text[idx] not in "}]":
            if is_object:
                name, idx = scanstring(text, idx + 1)
                idx = _skip_ws(text, _skip_ws(text, idx) + 1)

            else:
                name, item = item, item + 1

            if name == key:
                found = True
                break

            _, idx = decoder.raw_decode(text, idx)
            idx = _skip_ws(text, idx)

            if idx < len(text) and text[idx] == ",":
                idx = _skip_ws(text, idx + 1)

        if not found:
            idx = start
            break

    return text.count("\n", 0, idx) + 1


class Serializer[T](ABC):
    def deserialize(self, src: str | bytes | JsonValue) -> T:
        if isinstance(src, (str, bytes)):
            text = src if isinstance(src, str) else src.decode()

            try:
                obj = json.loads(text)

            except json.JSONDecodeError as e:
                raise SchemaError(f"malformed JSON ({e.msg})").at_line(e.lineno)

            try:
                return self._deserialize(obj)

            except SchemaError as e:
                raise e.at_line(locate_line(text, e.path)) from None

        return self._deserialize(src)

    @abstractmethod
    def _deserialize(self, src: JsonValue) -> T: ...

    @abstractmethod
    def serialize(self, value: T) -> JsonValue: ...

    def dumps(self, value: T) -> str:
        return json.dumps(self.serialize(value), indent=2)
