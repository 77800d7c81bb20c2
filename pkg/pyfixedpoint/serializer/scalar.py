# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

from enum import StrEnum
from typing import override

from .serializer import JsonValue, SchemaError, Serializer


class BoolSerializer(Serializer[bool]):
    @override
    def _deserialize(self, src: JsonValue) -> bool:
        if not isinstance(src, bool):
            raise SchemaError(f"expected a boolean, got {type(src).__name__}")

        return src

    @override
    def serialize(self, value: bool) -> JsonValue:
        return bool(value)


class StrSerializer(Serializer[str]):
    @override
    def _deserialize(self, src: JsonValue) -> str:
        if not isinstance(src, str) or not src:
            raise SchemaError("expected a nonempty string")

        return src

    @override
    def serialize(self, value: str) -> JsonValue:
        return value


class EnumSerializer[T: StrEnum](Serializer[T]):
    """String enumeration member by value."""

    def __init__(self, cls: type[T]) -> None:
        self._cls = cls

    @override
    def _deserialize(self, src: JsonValue) -> T:
        try:
            return self._cls(src)

        except ValueError:
            allowed = ", ".join(repr(x.value) for x in self._cls)
            raise SchemaError(f"got {src!r}, expected one of {allowed}") from None

    @override
    def serialize(self, value: T) -> JsonValue:
        return self._cls(value).value
