import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from conftest import EXAMPLE_NAMES, example

from dgq import io as dio
from dgq.double import validate
from dgq.wha import ThetaWeights

FIXTURES = Path(__file__).resolve().parent.parent / "docs" / "fixtures"


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_round_trip_is_byte_identical(name):
    T, sigma = example(name)
    extra = {"theta": ThetaWeights.canonical(T)}
    if sigma is not None:
        extra["sigma"] = sigma
    text = dio.dump(T, **extra)
    loaded = dio.loads(text)
    assert validate(loaded.T).ok
    again = dio.dump(loaded.T, theta=loaded.theta(), sigma=loaded.sigma())
    assert again == text
    # labels come back as strings; the integer tables are unchanged
    for key in ("t", "b", "l", "r", "hcomp", "vcomp", "vid", "hid"):
        assert (getattr(loaded.T, key) == getattr(T, key)).all(), key


def test_rationals_in_lowest_terms():
    assert dio.rational("3/4") == Fraction(3, 4)
    assert dio.rational("-2") == -2
    with pytest.raises(dio.ParseError):
        dio.rational("2/4")
    with pytest.raises(dio.ParseError):
        dio.rational("1/0")
    with pytest.raises(dio.ParseError):
        dio.rational("x")


@given(st.fractions(max_denominator=1000))
def test_rational_round_trip(q):
    assert dio.rational(dio.fmt(q)) == q


def test_schema_rejects_unknown_sections():
    doc = json.loads(dio.dump(example("bimodule_C2")[0]))
    doc["extra"] = 1
    with pytest.raises(dio.ParseError, match="schema"):
        dio.from_document(doc)


def test_unknown_and_duplicate_ids():
    doc = json.loads(dio.dump(example("bimodule_C2")[0]))
    doc["boxes"][0]["t"] = "h99"
    with pytest.raises(dio.ParseError, match="unknown id"):
        dio.from_document(doc)
    doc = json.loads(dio.dump(example("bimodule_C2")[0]))
    doc["boxes"][1]["id"] = doc["boxes"][0]["id"]
    with pytest.raises(dio.ParseError, match="duplicate"):
        dio.from_document(doc)


def test_invalid_json():
    with pytest.raises(dio.ParseError):
        dio.loads("{not json")


def test_fixtures():
    assert validate(dio.loads((FIXTURES / "bimodule_c2.json").read_text()).T).ok
    broken = validate(dio.loads((FIXTURES / "broken_interchange.json").read_text()).T)
    assert "interchange" in broken.axioms_failed()
    empty = validate(dio.loads((FIXTURES / "empty_boxes.json").read_text()).T)
    assert not empty.ok


def test_boxes_csv():
    rows = dio.boxes_csv(example("bimodule_C2")[0]).splitlines()
    assert rows[0] == "id,t,b,l,r,label" and len(rows) == 5
