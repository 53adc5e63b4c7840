import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from geogame import (
    Agreement,
    Deployment,
    OptimizeResult,
    Scenario,
    StabilityReport,
    SustainableRange,
    SweepConfig,
    nash_deployment,
    run_sweep,
    stability_report,
    surface_to_records,
    sustainable_range,
)
from geogame import serialize

reals = st.floats(allow_nan=False, allow_infinity=False)


def roundtrip_is_byte_identical(obj):
    text = serialize.dumps(obj)
    again = serialize.dumps(serialize.loads(text))
    assert text == again
    return text


@pytest.mark.parametrize(
    "obj",
    [
        nash_deployment(Scenario(-2, 1, 1)),
        stability_report(Scenario(-2, 1, 1), Agreement(-1 / 3)),
        sustainable_range(Scenario(-2, 2, 4)),
        OptimizeResult(minimizer=-1 / 3, objective=0.2, evaluations=19),
    ],
)
def test_envelopes_roundtrip(obj):
    text = roundtrip_is_byte_identical(obj)
    data = json.loads(text)
    assert data["version"] == serialize.SCHEMA_VERSION
    assert data["schema"].startswith("geogame.")
    assert serialize.loads(text) == obj


def test_surface_roundtrip():
    surface = run_sweep(SweepConfig(y_h_values=[0, -2], y_c_values=[0, 1, 3], z=4))
    text = roundtrip_is_byte_identical(surface)
    back = serialize.loads(text)
    assert surface_to_records(back) == surface_to_records(surface)


@given(reals, reals)
def test_deployment_floats_exact(g_h, g_c):
    obj = Deployment(g_h, g_c)
    assert serialize.loads(roundtrip_is_byte_identical(obj)) == obj


@given(reals, reals, reals)
def test_report_floats_exact(a, b, c):
    obj = StabilityReport(a, b, c, "H")
    assert serialize.loads(roundtrip_is_byte_identical(obj)) == obj


def test_unknown_type_rejected():
    with pytest.raises(TypeError):
        serialize.dumps(Scenario(-1, 1, 1))


def test_version_mismatch_rejected():
    data = json.loads(serialize.dumps(Deployment(1.0, 2.0)))
    data["version"] = 99
    with pytest.raises(ValueError):
        serialize.loads(json.dumps(data))


RECORDS = [
    (0.0, 0.0, 0.0, 0.0, "zero-cell"),
    (-2.0, 1.0, -1 / 3, 0.2000000011115, "ok"),
    (-2.0, 2.0, math.nan, math.nan, "failed"),
]


def _same(a, b):
    return all(
        (isinstance(x, float) and math.isnan(x) and math.isnan(y)) or x == y for x, y in zip(a, b)
    )


def test_csv_roundtrip():
    text = serialize.records_to_csv(RECORDS)
    assert text.splitlines()[0] == "y_star_h,y_star_c,y_tilde_opt,delta_min_opt,status"
    assert text.endswith("\n")
    back = serialize.records_from_csv(text)
    assert all(_same(a, b) for a, b in zip(back, RECORDS))
    assert serialize.records_to_csv(back) == text


def test_json_records_roundtrip():
    text = serialize.records_to_json(RECORDS)
    items = json.loads(text)
    assert set(items[0]) == {"y_star_h", "y_star_c", "y_tilde_opt", "delta_min_opt", "status"}
    assert items[2]["y_tilde_opt"] is None
    back = serialize.records_from_json(text)
    assert all(_same(a, b) for a, b in zip(back, RECORDS))
    assert serialize.records_to_json(back) == text


def test_csv_header_checked():
    with pytest.raises(ValueError):
        serialize.records_from_csv("a,b,c,d,e\n")


def test_sustainable_range_keys():
    data = json.loads(serialize.dumps(SustainableRange(-1.0, 1.0, 0.9999, -1.0001, 1.0001)))
    assert {"lower", "upper", "shrink", "raw_lower", "raw_upper"} <= set(data)
