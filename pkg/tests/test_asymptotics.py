import json
from fractions import Fraction

import pytest

from guegraphs.asymptotics import (closing_valency, fit_and_verify, profile_for, sequence,
                                   smallest_admissible_g)
from guegraphs.errors import DomainError
from guegraphs.exact import Poly, RationalFunction
from guegraphs.wick import one_face_count

F = Fraction


def rf(num, den):
    return RationalFunction(Poly(num, "g"), Poly(den, "g"))


def test_closing_valency_satisfies_euler_constraint():
    assert profile_for("og", (2,), 3) == (2, 6)
    assert profile_for("rg", (), 2) == (8,)
    assert closing_valency("rg", (1, 1), 0) == 2
    assert smallest_admissible_g("og", (5, 5)) == 4


def test_sequence_examples():
    assert sequence("og", (), range(1, 5)) == [(g, 1) for g in range(1, 5)]
    assert [v for _, v in sequence("og", (2,), range(1, 4))] == [F(2, 3), F(4, 5), F(6, 7)]
    assert [v for _, v in sequence("rg", (), range(1, 4))] == [F(1, 2), F(7, 10), F(11, 14)]


def test_rg_sequence_matches_one_face_oracle():
    from guegraphs.exact import double_factorial
    for g, v in sequence("rg", (), range(1, 4)):
        assert v == one_face_count((4 * g,)) / (2 * double_factorial(4 * g - 3))


def test_sequence_skips_inadmissible_genera():
    assert [g for g, _ in sequence("og", (5, 5), range(0, 6))] == [4, 5]


def test_sequence_errors():
    with pytest.raises(DomainError):
        sequence("og", (5, 5), range(0, 3))
    with pytest.raises(DomainError):
        sequence("xx", (), range(1, 3))


def test_fit_two_g_over_two_g_plus_one():
    report = fit_and_verify("og", (2,), range(1, 6), range(6, 11))
    assert report.fitted == rf([0, 2], [1, 2])
    assert report.limit_verified and report.holdout_exact and report.ok
    assert report.expansion[:4] == [1, F(-1, 2), F(1, 4), F(-1, 8)]


def test_fit_constant_one():
    report = fit_and_verify("og", (), range(1, 4), range(4, 6))
    assert report.fitted == rf([1], [1])
    assert report.expansion == [1, 0, 0, 0, 0, 0, 0]


def test_fit_one_face_single_vertex():
    report = fit_and_verify("rg", (), range(1, 5), range(5, 7))
    assert report.fitted == rf([-1, 4], [2, 4])
    assert str(report.fitted) == "(4g-1)/(4g+2)"
    assert report.ok


def test_fit_failure_is_reported_not_raised():
    report = fit_and_verify("og", (2, 2), range(1, 3), range(3, 5))
    assert report.fitted is None
    assert not report.ok
    assert report.diagnostic


def test_overlapping_ranges_rejected():
    with pytest.raises(DomainError):
        fit_and_verify("og", (2,), range(1, 6), range(5, 8))


def test_report_json_schema_and_round_trip():
    report = fit_and_verify("og", (2,), range(1, 6), range(6, 11))
    text = report.to_json()
    doc = json.loads(text)
    assert doc["family"] == "og" and doc["fixed"] == [2]
    assert doc["samples"][0] == [1, "2/3"]
    assert doc["fitted"]["num"] == ["0", "1"] and doc["fitted"]["den"] == ["1/2", "1"]
    assert doc["fitted"]["text"] == "2g/(2g+1)"
    assert doc["expansion"][:3] == ["1", "-1/2", "1/4"]
    assert doc["limit_verified"] is True
    assert json.dumps(doc, sort_keys=True, indent=2) == text


@pytest.mark.parametrize("family, fixed", [("og", (1, 2)), ("og", (3, 1)), ("og", (4,)),
                                           ("rg", (3,)), ("rg", (1, 2)), ("rg", (2, 2))])
def test_limit_is_one_for_more_families(family, fixed):
    g0 = smallest_admissible_g(family, fixed)
    report = fit_and_verify(family, fixed, range(g0, g0 + 15), range(g0 + 15, g0 + 20))
    assert report.ok, report.diagnostic
    assert report.expansion[0] == 1
