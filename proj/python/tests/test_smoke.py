import pytest

import connsys

C4 = [(0, 1), (1, 2), (2, 3), (3, 0)]


def c4():
    return connsys.System.edge_cut(4, C4)


def test_values_and_labels():
    sys = c4()
    assert sys.labels == ["e1", "e2", "e3", "e4"]
    assert sys.evaluate(["e1"]) == 2
    assert sys.evaluate(["e1", "e3"]) == 4
    assert sys.max_value == 4


def test_widths_and_certificates():
    sys = c4()
    bw = sys.branch_width()
    assert bw["width"] == 2
    assert sys.certificate_width(bw["certificate"]) == 2
    k4 = connsys.System.edge_cut(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert k4.branch_width()["width"] == 3
    lw = sys.linear_width()
    assert lw["width"] == 2
    assert sys.certificate_width({"type": "linear", "order": ["e1", "e3", "e2", "e4"]}) == 4


def test_family_checks():
    sys = c4()
    ok = sys.check_family("ultrafilter", [["e1", "e2", "e3", "e4"]], 1)
    assert ok["holds"] and ok["flags"]["non_principal"] == "yes"
    bad = sys.check_family("ultrafilter", [["e1", "e2", "e3", "e4"]], 2)
    assert not bad["holds"]
    assert bad["violated_axiom"] == "Q4"


def test_constructions():
    sys = c4()
    assert len(sys.enumerate("ultrafilter", 2)) == 4
    assert sys.enumerate("ultrafilter", 2, non_principal=True) == []
    built = sys.construct_ultrafilter(2)
    assert ["e1"] in built["sets"]
    extended = sys.extend_filter([["e1", "e2", "e3", "e4"]], 2)
    assert extended["size"] == 7
    assert sys.ultrafilter_number(1)["u"] == 1
    assert sys.ultrafilter_number(2)["u"] is None
    trivial = connsys.System.from_json(
        {"ground_set": ["a", "b", "c"],
         "function": {"type": "table", "values": {"": 0, "a": 0, "b": 0, "c": 0}}})
    gen = trivial.generate([["a", "b"], ["b", "c"]], 0)
    assert gen["sets"] == [["b"], ["a", "b"], ["b", "c"], ["a", "b", "c"]]


def test_audits():
    sys = connsys.System.from_json(
        {"ground_set": ["x", "y"], "function": {"type": "table", "values": {"": 0, "x": 0}}})
    reports = {r["theorem"]: r for r in sys.audit("all", 0)}
    assert reports["TSC-no-nonprincipal-ultrafilter"]["status"] == "verified_at_scale"
    assert reports["TSC-no-antichain"]["witness"] == [["x"], ["y"]]
    assert c4().duality("ultrafilter", 1)["consistent"]
    assert c4().dilworth(2)["equal"]


def test_errors_carry_codes():
    with pytest.raises(connsys.ConnsysError) as info:
        connsys.System.from_json(
            {"ground_set": ["a", "b"], "function": {"type": "table", "values": {"": 0, "a": 1, "b": 2}}})
    assert info.value.code == "SymmetryViolation"
    with pytest.raises(connsys.ConnsysError):
        c4().check_family("nonsense", [], 0)
