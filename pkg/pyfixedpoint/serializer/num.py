# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import math
import re
from typing import override

from .serializer import JsonValue, SchemaError, Serializer

SupportedNumbers = int | float

_PARAM_PATTERN = re.compile(r"([fi])(\+|0\+|\(01\)|\(01\]|\[01\))?$")

_CHECKS = {
    None: (lambda x: True, "any finite value"),
    "+": (lambda x: x > 0, "strictly positive"),
    "0+": (lambda x: x >= 0, "nonnegative"),
    "(01)": (lambda x: 0 < x < 1, "in (0, 1)"),
    "(01]": (lambda x: 0 < x <= 1, "in (0, 1]"),
    "[01)": (lambda x: 0 <= x < 1, "in [0, 1)"),
}


def _parse_fmt(fmt: str) -> tuple[bool, str | None]:
    if m := _PARAM_PATTERN.match(fmt):
        return m.group(1) == "i", m.group(2)

    raise ValueError("Wrong serializer format.")


class NumSerializer(Serializer[SupportedNumbers]):
    """
    Reads and writes a JSON number, checking the range given by its format.

    Format: `f` (real) or `i` (integer), optionally followed by a range
    suffix: `+` positive, `0+` nonnegative, `(01)`, `(01]` or `[01)`.
    """

    __slots__ = "integer", "range"

    def __init__(self, format: str) -> None:
        self.integer, self.range = _parse_fmt(format)

    @override
    def _deserialize(self, src: JsonValue) -> SupportedNumbers:
        if isinstance(src, bool) or not isinstance(src, (int, float)):
            raise SchemaError(f"expected a number, got {type(src).__name__}")

        if self.integer:
            if isinstance(src, float) and not src.is_integer():
                raise SchemaError(f"expected an integer, got {src}")

            src = int(src)

        elif not math.isfinite(src):
            raise SchemaError("number must be finite")

        else:
            src = float(src)

        check, text = _CHECKS[self.range]

        if not check(src):
            raise SchemaError(f"value {src} must be {text}")

        return src

    @override
    def serialize(self, value: SupportedNumbers) -> JsonValue:
        return int(value) if self.integer else float(value)
