"""Unit tests for utils.py."""

from fractions import Fraction

import pytest

from frame_soliton.utils import (
    format_index,
    format_term,
    format_vector,
    get_command_context,
    yes_no,
)


@pytest.mark.unit
def test_get_command_context():
    ctx = get_command_context(
        "report", {"path": "m.json", "format": "json", "a": None}
    )
    assert ctx == "[report] path=m.json | format=json"
    ctx2 = get_command_context("init")
    assert ctx2 == "[init]"
    assert get_command_context("clean", {"yes": None}) == "[clean]"


@pytest.mark.unit
def test_yes_no():
    assert yes_no(True) == "yes"
    assert yes_no(False) == "no"
    assert yes_no(None) == "n/a"


@pytest.mark.parametrize(
    "coefficient,expected",
    [
        (Fraction(1), "e2"),
        (Fraction(-1), "-e2"),
        (Fraction(2), "2e2"),
        (Fraction(1, 3), "(1/3)e2"),
        (Fraction(-3, 2), "(-3/2)e2"),
    ],
)
@pytest.mark.unit
def test_format_term(coefficient, expected):
    assert format_term(coefficient, "e2") == expected


@pytest.mark.unit
def test_format_vector():
    assert format_vector([0, 0, 1, 0, 0]) == "e3"
    assert format_vector([0, 0, 0, 0, -1]) == "-e5"
    assert format_vector([Fraction(1, 3), 0, 0]) == "(1/3)e1"
    assert format_vector([1, 0, 0, Fraction(-1, 2)]) == "e1 - (1/2)e4"
    assert format_vector([0, 2, 3]) == "2e2 + 3e3"
    assert format_vector([0, 0, 0]) == "0"


@pytest.mark.unit
def test_format_index():
    assert format_index((0, 2)) == "e1,e3"
    assert format_index(()) == ""
