import json

import numpy as np
import pytest

from pyfixedpoint.models import Ball, ConvexSetDescriptor, Halfspace, Intersection
from pyfixedpoint.sequences import Custom, Power, Schedule
from pyfixedpoint.serializer import (
    NumSerializer,
    SchemaError,
    SupportedNumbers,
    TaggedSerializer,
    VectorSerializer,
    get_serializer,
    locate_line,
)


@pytest.mark.parametrize(
    "fmt,src,num",
    [
        ("f", -1.5, -1.5),
        ("f", 3, 3.0),
        ("f+", 0.25, 0.25),
        ("f0+", 0, 0.0),
        ("f(01)", 0.5, 0.5),
        ("f(01]", 1, 1.0),
        ("f[01)", 0, 0.0),
        ("i", -7, -7),
        ("i+", 4.0, 4),
        ("i0+", 0, 0),
    ],
)
def test_num_serializer(fmt: str, src, num: SupportedNumbers):
    s = get_serializer(fmt)

    assert isinstance(s, NumSerializer)
    assert s.deserialize(json.dumps(src)) == num
    assert type(s.serialize(num)) is type(num)


@pytest.mark.parametrize(
    "fmt,src",
    [
        ("f+", 0),
        ("f0+", -1e-9),
        ("f(01)", 1),
        ("f(01]", 0),
        ("f[01)", 1),
        ("i", 1.5),
        ("i+", 0),
        ("f", True),
        ("f", "1.0"),
    ],
)
def test_num_serializer_rejects(fmt: str, src):
    with pytest.raises(SchemaError):
        get_serializer(fmt).deserialize(json.dumps(src))


def test_num_serializer_bad_format():
    with pytest.raises(ValueError):
        NumSerializer("u2.1")


def test_vector_serializer():
    s = VectorSerializer()
    x = s.deserialize("[1, 2.5, -3]")

    assert x.dtype == np.float64
    assert not x.flags.writeable
    assert s.serialize(x) == [1.0, 2.5, -3.0]

    for bad in ("[]", "[1, \"a\"]", "{}", "[[1, 2]]"):
        with pytest.raises(SchemaError):
            s.deserialize(bad)


@pytest.mark.parametrize(
    "data,result",
    [
        (
            {"type": "halfspace", "a": [1, 0], "b": 0},
            {"type": "halfspace", "a": [1.0, 0.0], "b": 0.0},
        ),
        (
            {"type": "ball", "center": [0, 0], "radius": 2},
            {"type": "ball", "center": [0.0, 0.0], "radius": 2.0},
        ),
        (
            {
                "type": "intersection",
                "sets": [
                    {"type": "halfspace", "a": [0, 1], "b": 1},
                    {"type": "box", "lo": [-1, -1], "hi": [1, 1]},
                ],
            },
            {
                "type": "intersection",
                "sets": [
                    {"type": "halfspace", "a": [0.0, 1.0], "b": 1.0},
                    {"type": "box", "lo": [-1.0, -1.0], "hi": [1.0, 1.0]},
                ],
            },
        ),
    ],
)
def test_tagged_models(data: dict, result: dict):
    s = get_serializer(ConvexSetDescriptor)

    assert isinstance(s, TaggedSerializer)
    assert s.deserialize(json.dumps(data))._asdict() == result


def test_tagged_dispatch():
    s = get_serializer(ConvexSetDescriptor)

    assert isinstance(s.deserialize('{"type": "ball", "center": [0], "radius": 1}'), Ball)
    assert isinstance(
        s.deserialize('{"type": "intersection", "sets": [{"type": "halfspace", "a": [1], "b": 0}]}'),
        Intersection,
    )


@pytest.mark.parametrize(
    "data,message",
    [
        ({"a": [1, 0], "b": 0}, "missing required key 'type'"),
        ({"type": "cone"}, "unknown type 'cone'"),
        ({"type": "halfspace", "a": [1, 0]}, "missing required key 'b'"),
        ({"type": "halfspace", "a": [1, 0], "b": 0, "c": 1}, "unexpected keys: c"),
        ({"type": "halfspace", "a": [0, 0], "b": 0}, "normal vector must be nonzero"),
        ({"type": "ball", "center": [0], "radius": -1}, "radius: value -1.0 must be nonnegative"),
    ],
)
def test_schema_errors(data: dict, message: str):
    with pytest.raises(SchemaError, match=message):
        get_serializer(ConvexSetDescriptor).deserialize(json.dumps(data))


def test_schema_error_path_and_line():
    text = """{
  "type": "intersection",
  "sets": [
    {"type": "halfspace", "a": [1, 0], "b": 0},
    {
      "type": "ball",
      "center": [0, 0],
      "radius": -2
    }
  ]
}"""

    with pytest.raises(SchemaError) as e:
        get_serializer(ConvexSetDescriptor).deserialize(text)

    assert e.value.path == ("sets", 1, "radius")
    assert e.value.line == 8
    assert str(e.value).startswith("line 8: sets[1].radius: ")


def test_malformed_json_line():
    with pytest.raises(SchemaError, match="line 2: malformed JSON"):
        get_serializer(ConvexSetDescriptor).deserialize('{"type": "ball",\n ]')


@pytest.mark.parametrize(
    "path,line",
    [
        ((), 1),
        (("a",), 2),
        (("b", 1), 5),
        (("b", 1, "c"), 5),
        (("missing",), 1),
        (("b", 7), 3),
    ],
)
def test_locate_line(path: tuple, line: int):
    text = '{\n  "a": 1,\n  "b": [\n    {"c": 2},\n    {"c": 3}\n  ]\n}'

    assert locate_line(text, path) == line


def test_schedule_round_trip():
    s = get_serializer(Schedule)

    for schedule in (Power(c=2.0, p=0.7), Custom(items=(0.5, 0.25), asserted=("tends_to_zero",))):
        text = s.dumps(schedule)
        again = s.deserialize(text)

        assert type(again) is type(schedule)
        assert s.dumps(again) == text

    assert json.loads(s.dumps(Custom(items=(0.5,))))["values"] == [0.5]


def test_optional_fields_dropped():
    h = Halfspace(a=np.array([1.0]), b=0.0)

    assert set(h._asdict()) == {"type", "a", "b"}
