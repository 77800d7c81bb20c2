# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

from typing import Sequence, override

import numpy as np

from ..space import Vector, VectorError, vector
from .serializer import JsonValue, SchemaError, Serializer


class ListSerializer[T](Serializer[tuple[T, ...]]):
    """JSON array of items, of fixed length when `n` is given."""

    def __init__(self, serializer: Serializer[T], n: int | None = None) -> None:
        assert n is None or n > 0
        self._serializer = serializer
        self._len = n

    @override
    def serialize(self, value: Sequence[T]) -> JsonValue:
        return [self._serializer.serialize(x) for x in value]

    @override
    def _deserialize(self, src: JsonValue) -> tuple[T, ...]:
        if not isinstance(src, list):
            raise SchemaError(f"expected an array, got {type(src).__name__}")

        if self._len is not None and len(src) != self._len:
            raise SchemaError(f"expected {self._len} items, got {len(src)}")

        result = []

        for i, x in enumerate(src):
            try:
                result.append(self._serializer._deserialize(x))

            except SchemaError as e:
                raise e.prefixed(i) from None

        return tuple(result)


class VectorSerializer(Serializer[Vector]):
    """Vector as a JSON array of numbers."""

    @override
    def serialize(self, value: Vector) -> JsonValue:
        return [float(x) for x in value]

    @override
    def _deserialize(self, src: JsonValue) -> Vector:
        if not isinstance(src, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in src
        ):
            raise SchemaError("expected an array of numbers")

        try:
            return vector(np.asarray(src, dtype=np.float64))

        except VectorError as e:
            raise SchemaError(str(e)) from None
