# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

import dataclasses as dc
from enum import StrEnum
from types import GenericAlias, MappingProxyType, UnionType
from typing import (
    Any,
    ClassVar,
    Iterator,
    Optional,
    Self,
    TypedDict,
    Union,
    cast,
    get_args,
    get_origin,
    overload,
    override,
)

from .list import ListSerializer, VectorSerializer
from .num import NumSerializer
from .scalar import BoolSerializer, EnumSerializer, StrSerializer
from .serializer import JsonValue, SchemaError, Serializer


class ModelMeta(TypedDict, total=False):
    format: str
    key: str
    num: int


def model_meta(
    *,
    format: str = "",
    key: str | None = None,
    num: int | None = None,
) -> ModelMeta:
    """
    Field metadata of a serializable model.

    Parameters:
    - `format` - number format (see `NumSerializer`), `v` for a vector,
      `v*` for a nonempty list of vectors. Not needed for models, enums,
      strings and booleans.
    - `key` - JSON key if it differs from the field name.
    - `num` - exact number of items of a tuple field.
    """
    result = ModelMeta(format=format)

    if key is not None:
        result["key"] = key

    if num is not None:
        result["num"] = num

    return result


def _unwrap_optional(type_):
    if get_origin(type_) in (Optional, Union, UnionType):
        if (type_ := get_args(type_)[0]) is None:
            raise TypeError("Failed to get first type.")

    return type_


def _get_model_field_serializer(field: dc.Field) -> Serializer:
    meta = cast(ModelMeta, field.metadata)
    fmt = meta.get("format", "")

    if fmt == "v":
        return VectorSerializer()

    if fmt == "v*":
        return ListSerializer(VectorSerializer(), meta.get("num"))

    def _get_serializer(type_) -> Serializer:
        if isinstance(type_, GenericAlias):
            return ListSerializer(_get_serializer(get_args(type_)[0]), meta.get("num"))

        if not isinstance(type_, type):
            raise TypeError(f"Unsupported type of field '{field.name}'.")

        if issubclass(type_, bool):
            return BoolSerializer()

        if issubclass(type_, StrEnum):
            return EnumSerializer(type_)

        if issubclass(type_, str):
            return StrSerializer()

        if issubclass(type_, (int, float)):
            if fmt:
                return get_serializer(fmt)

            raise TypeError(f"Format string for field '{field.name}' is required.")

        if issubclass(type_, BaseModel):
            return get_serializer(type_)

        raise TypeError("Unsupported type.")

    return _get_serializer(_unwrap_optional(field.type))


def _get_model_serializers(cls: type["BaseModel"]) -> MappingProxyType[str, Serializer]:
    """Field name to serializer mapping, built once per class."""
    if (serializers_ := cls.__dict__.get("_model_serializers")) is None:
        result: dict[str, Serializer] = {}

        for field in dc.fields(cls):
            if field.metadata:
                result[field.name] = _get_model_field_serializer(field)

        setattr(cls, "_model_serializers", serializers_ := MappingProxyType(result))

    return serializers_


def _has_default(field: dc.Field) -> bool:
    return field.default is not dc.MISSING or field.default_factory is not dc.MISSING


@dc.dataclass(frozen=True, eq=False)
class BaseModel:
    """Frozen dataclass with a JSON object form."""

    _model_serializers: ClassVar[MappingProxyType[str, Serializer]]

    @classmethod
    def _iter_fields_serializers(cls) -> Iterator[tuple[dc.Field, Serializer]]:
        """Generate tuples of Fields and its Serializers."""
        serializers = _get_model_serializers(cls)

        for field in dc.fields(cls):
            if (serializer := serializers.get(field.name)) is not None:
                yield field, serializer

    @classmethod
    def _json_keys(cls) -> set[str]:
        return {
            cast(ModelMeta, f.metadata).get("key", f.name)
            for f, _ in cls._iter_fields_serializers()
        }

    @classmethod
    def _deserialize_asdict(cls, src: dict[str, JsonValue]) -> dict[str, Any]:
        kwargs = {}

        for field, serializer in cls._iter_fields_serializers():
            key = cast(ModelMeta, field.metadata).get("key", field.name)

            if (value := src.get(key)) is None:
                if not _has_default(field):
                    raise SchemaError(f"missing required key '{key}'")

                continue

            try:
                kwargs[field.name] = serializer._deserialize(value)

            except SchemaError as e:
                raise e.prefixed(key) from None

        return kwargs

    @classmethod
    def _deserialize(cls, src: JsonValue) -> Self:
        if not isinstance(src, dict):
            raise SchemaError(f"expected an object, got {type(src).__name__}")

        if unknown := src.keys() - cls._json_keys() - cls._reserved_keys():
            raise SchemaError(f"unexpected keys: {', '.join(sorted(unknown))}")

        kwargs = cls._deserialize_asdict(src)

        try:
            return cls(**kwargs)

        except SchemaError:
            raise

        except ValueError as e:
            raise SchemaError(str(e)) from None

    @classmethod
    def _reserved_keys(cls) -> set[str]:
        return set()

    def _serialize(self) -> dict[str, JsonValue]:
        result = {}

        for field, serializer in self._iter_fields_serializers():
            if (val := getattr(self, field.name)) is not None:
                key = cast(ModelMeta, field.metadata).get("key", field.name)
                result[key] = serializer.serialize(val)

        return result

    def _asdict(self) -> dict[str, JsonValue]:
        """JSON-compatible dictionary; `None` fields are dropped."""
        return self._serialize()

    def __post_init__(self, *args, **kwargs):
        for field in dc.fields(self):
            if (val := getattr(self, field.name)) is None:
                continue

            meta = cast(ModelMeta, field.metadata)

            if (num := meta.get("num")) and len(val) != num:
                raise ValueError(f"Length of field '{field.name}' must be {num}.")

    @classmethod
    def _get_serializer(cls) -> Serializer[Self]:
        return get_serializer(cls)


@dc.dataclass(frozen=True, eq=False)
class TaggedModel(BaseModel):
    """
    Base of a tagged union.

    A direct subclass declared without `tag` is the union root; subclasses
    declared with `tag=...` are its variants. The JSON form carries the tag
    under the root's `tag_key`.
    """

    _tag: ClassVar[str | None] = None
    _tag_key: ClassVar[str] = "type"
    _variants: ClassVar[dict[str, type["TaggedModel"]]]

    def __init_subclass__(
        cls, *, tag: str | None = None, tag_key: str | None = None, **kwargs
    ) -> None:
        super().__init_subclass__(**kwargs)

        if tag is None:
            cls._variants = {}

            if tag_key is not None:
                cls._tag_key = tag_key

        else:
            cls._tag = tag
            cls._variants[tag] = cls

    @override
    @classmethod
    def _reserved_keys(cls) -> set[str]:
        return {cls._tag_key}

    @override
    def _serialize(self) -> dict[str, JsonValue]:
        assert self._tag is not None
        return {self._tag_key: self._tag} | super()._serialize()


# MODEL SERIALIZERS


class ModelSerializer[T: BaseModel](Serializer[T]):
    """Model Serializer"""

    def __init__(self, cls: type[T]) -> None:
        self._cls = cls

    @override
    def _deserialize(self, src: JsonValue) -> T:
        return self._cls._deserialize(src)

    @override
    def serialize(self, value: T) -> JsonValue:
        return value._serialize()


class TaggedSerializer[T: TaggedModel](Serializer[T]):
    """Dispatches on the tag of a tagged union."""

    def __init__(self, cls: type[T]) -> None:
        self._cls = cls

    @override
    def _deserialize(self, src: JsonValue) -> T:
        if not isinstance(src, dict):
            raise SchemaError(f"expected an object, got {type(src).__name__}")

        key = self._cls._tag_key

        if (tag := src.get(key)) is None:
            raise SchemaError(f"missing required key '{key}'")

        if (variant := self._cls._variants.get(tag)) is None:
            allowed = ", ".join(repr(x) for x in self._cls._variants)
            raise SchemaError(f"unknown {key} {tag!r}, expected one of {allowed}")

        return cast(T, variant._deserialize(src))

    @override
    def serialize(self, value: T) -> JsonValue:
        return value._serialize()


# SERIALIZERS REGISTRY

_registry: dict[str | type[BaseModel], Serializer] = {}
"""Serializers Registry"""


@overload
def get_serializer(arg: str, num: None = None) -> NumSerializer: ...


@overload
def get_serializer[T: BaseModel](arg: type[T], num: None = None) -> Serializer[T]: ...


@overload
def get_serializer(arg: str, num: int) -> ListSerializer: ...


@overload
def get_serializer[T: BaseModel](arg: type[T], num: int) -> ListSerializer: ...


def get_serializer[T: BaseModel](arg: str | type[T], num: int | None = None):
    if (serializer := _registry.get(arg)) is None:
        if isinstance(arg, str):
            serializer = NumSerializer(arg)

        elif isinstance(arg, type) and issubclass(arg, TaggedModel) and arg._tag is None:
            serializer = TaggedSerializer(arg)

        elif isinstance(arg, type) and issubclass(arg, BaseModel):
            serializer = ModelSerializer(arg)

        else:
            raise TypeError(f"Unsupported type {arg}.")

        _registry[arg] = serializer

    return serializer if num is None else ListSerializer(serializer, num)
