# Copyright 2024, Sergey Dudanov
# SPDX-License-Identifier: Apache-2.0

from .list import ListSerializer, VectorSerializer
from .model import (
    BaseModel,
    ModelMeta,
    ModelSerializer,
    TaggedModel,
    TaggedSerializer,
    get_serializer,
    model_meta,
)
from .num import NumSerializer, SupportedNumbers
from .scalar import BoolSerializer, EnumSerializer, StrSerializer
from .serializer import JsonValue, SchemaError, Serializer, format_path, locate_line

__all__ = [
    "model_meta",
    "BaseModel",
    "TaggedModel",
    "get_serializer",
    "NumSerializer",
    "SupportedNumbers",
    "ListSerializer",
    "VectorSerializer",
    "BoolSerializer",
    "EnumSerializer",
    "StrSerializer",
    "ModelMeta",
    "ModelSerializer",
    "TaggedSerializer",
    "JsonValue",
    "SchemaError",
    "Serializer",
    "format_path",
    "locate_line",
]
