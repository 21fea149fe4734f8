import json
from fractions import Fraction

import pytest

from torex.collection import build_collection, closure, fullness_region, replay
from torex.errors import InputError
from torex.fixtures import fixture_fans, hexagon, p1_times_p2, pentagon
from torex.picard import picard_group
from torex.serialize import (
    TOREX_VERSION, class_from_dict, classes_from_json, dump_report, fan_from_dict, fan_to_dict,
    jsonable, load_classes, load_fan, load_report, make_report, shift_from_dict, trace_from_dict,
)


@pytest.mark.parametrize("fan", list(fixture_fans().values()) + [hexagon(), p1_times_p2()],
                         ids=lambda f: f.name)
def test_fan_round_trip(fan):
    text = json.dumps(fan_to_dict(fan))
    assert load_fan(text) == fan


def test_fan_without_cones_uses_face_fan():
    fan = load_fan('{"rays": [[0, 1], [1, 1], [1, 0], [0, -1], [-1, 0]], "name": "pentagon"}')
    assert fan == pentagon()


@pytest.mark.parametrize("text, where", [
    ('{\n  "rays": [[1], [-1]],\n  "colour": 1\n}', ":3:3:"),
    ('{\n  "rays": [[1], [-1]\n}', ":3:1:"),
    ('{"rays": [[1, 0], [0]]}', ":1:"),
    ('{"rays": [[1], [-1]], "max_cones": [[0], [5]]}', ":1:"),
    ('{"rays": [[1, 0], [0, 1], [1, 1]]}', ":1:1:"),
    ('{"rays": [[1.5], [-1]]}', ":1:"),
    ('[1, 2]', ":1:1:"),
])
def test_fan_input_errors_are_line_anchored(text, where):
    with pytest.raises(InputError) as info:
        load_fan(text, "fan.json")
    assert str(info.value).startswith("fan.json" + where)


def test_class_parsing():
    pic = picard_group(fixture_fans()["F_T"])
    c = class_from_dict(pic, {"free": [3], "torsion": [1]})
    assert c.free == (3,) and c.torsion == (1,)
    assert load_classes(pic, '[{"free": [1], "torsion": [0]}, {"free": [2], "torsion": [1]}]')[1] \
        == pic.make_class([2], [1])
    with pytest.raises(InputError):
        load_classes(pic, '{"free": [1], "torsion": [0], "extra": 1}')
    with pytest.raises(InputError):
        load_classes(pic, '{"free": [1, 2], "torsion": [0]}')
    with pytest.raises(InputError):
        load_classes(pic, '{"free": [1]')


def test_jsonable():
    assert jsonable(Fraction(3, 4)) == "3/4"
    assert jsonable(Fraction(4, 2)) == 2
    assert jsonable({"a": (1, Fraction(1, 2)), "b": {3, 1}}) == {"a": [1, "1/2"], "b": [1, 3]}
    with pytest.raises(TypeError):
        jsonable(object())


def test_report_round_trip_collection():
    coll = build_collection(pentagon())
    text = dump_report(make_report("collection", "pentagon", coll.to_dict()))
    rep = load_report(text)
    assert rep["torex_version"] == TOREX_VERSION
    assert classes_from_json(coll.pic, rep["result"]["classes"]) == coll.classes
    assert shift_from_dict(rep["result"]["shift"]) == coll.shift


def test_report_round_trip_trace():
    coll = build_collection(fixture_fans()["F_D"])
    trace = closure(coll.pic, coll.classes, fullness_region(coll))
    text = dump_report(make_report("closure", "F_D", {"trace": trace}))
    back = trace_from_dict(coll.pic, load_report(text)["result"]["trace"])
    assert back.to_dict() == {**trace.to_dict(), "moves": []}
    assert replay(coll.pic, back, trace.moves) == trace.known()


def test_report_schema_checks():
    good = make_report("picard", "x", {"rank": 1})
    with pytest.raises(InputError):
        load_report(json.dumps({**good, "extra": 1}))
    with pytest.raises(InputError):
        load_report(json.dumps({**good, "torex_version": "9.9"}))
    bad = dict(good)
    del bad["witnesses"]
    with pytest.raises(InputError):
        load_report(json.dumps(bad))
    assert dump_report(good) == dump_report(load_report(dump_report(good)))


def test_fan_dict_shape():
    d = fan_to_dict(pentagon())
    assert set(d) == {"name", "d", "rays", "max_cones", "trusted_complete"}
    assert fan_from_dict(d) == pentagon()
