import json

from hypothesis import given

from boolsep.core import and_type, majority
from boolsep.report import analyze

from conftest import tables


def test_and_type_report():
    rep = analyze(and_type(2))
    assert rep["schema"] == 1 and rep["tt"] == "08"
    assert rep["spectrum"] == [2, 2, 2, -2]
    assert rep["classes"]["bent"] == "yes" and rep["classes"]["monotone"] == "yes"
    assert rep["influence"]["total"]["value"] == 1.0
    assert rep["autocorrelation"] == [4, 0, 0, 0]


def test_report_without_classes():
    rep = analyze(majority(3), include_classes=False)
    assert "classes" not in rep and rep["entropy"] == 2.0


@given(tables(max_n=5))
def test_report_is_json_serialisable(tt):
    rep = analyze(tt)
    assert json.loads(json.dumps(rep)) == rep
    assert rep["average_sensitivity"] == rep["influence"]["total"]
