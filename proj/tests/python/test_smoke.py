import json

import pytest

import rmlattice


def test_order_arithmetic():
    o = rmlattice.Order(5)
    assert o.discriminant == 5
    assert o.fundamental_unit() == (0, 1)
    assert o.splitting_type(11) == "split"
    assert o.splitting_type(3) == "inert"
    x, y = o.solve_norm(11)
    assert abs(o.norm(x, y)) == 11
    assert rmlattice.Order(5, 3).discriminant == 45


def test_principalize_and_verify():
    s = rmlattice.generate(5, 3, [11], 42)
    assert s.degree == 121
    assert s.divisors == (1, 1, 11, 11)
    assert s.validate() == (True, "")

    report = rmlattice.principalize(s)
    out = report.output
    assert out.degree == 1
    assert out.order == rmlattice.Order(5, 1)
    assert [st["kind"] for st in report.steps]
    assert report.steps[-1]["degree_after"] == 1

    assert rmlattice.verify(s, report) == (True, "")
    again = rmlattice.Report.from_json(report.to_json())
    assert again.to_json() == report.to_json()
    assert rmlattice.verify(s, again)[0]


def test_json_round_trip_and_big_integers():
    s = rmlattice.Surface.standard(13)
    assert rmlattice.Surface.from_json(s.to_json()) == s
    data = json.loads(s.to_json())
    big = 2**70 + 1
    data["gram"] = [[str(v * big) for v in row] for row in data["gram"]]
    t = rmlattice.Surface.from_json(json.dumps(data))
    assert t.gram[0][1] == big
    assert t.pfaffian == big * big
    assert f"\"{big}\"" in t.to_json()


def test_tampered_certificate_is_rejected():
    s = rmlattice.generate(13, 3, [17], 7)
    cert = json.loads(rmlattice.principalize(s).to_json())
    cert["steps"][0]["degree_after"] = int(cert["steps"][0]["degree_after"]) + 2
    ok, diagnostic = rmlattice.verify(s, rmlattice.Report.from_json(json.dumps(cert)))
    assert not ok
    assert diagnostic.startswith("steps[0]")


def test_errors():
    with pytest.raises(rmlattice.HypothesisError):
        rmlattice.generate(5, 1, [3], 1)
    with pytest.raises(rmlattice.FormatError):
        rmlattice.Surface.from_json("{")
    with pytest.raises(ValueError):
        rmlattice.Order(4)
    assert rmlattice.humbert_nonempty(5, 1)
