"""Strict JSON wire format: exact rationals in, JSON-pointer errors out."""

import pytest
from gmpy2 import mpq

from resjet import ContactNF, FormJet, InputFormatError, Jet1, Jet2, ResMap, ResVF
from resjet import jsonio
from resjet.randomjets import contact, jet2, resmap, resvf, rng


def test_rational_roundtrip():
    assert jsonio.rational_from_json("3/2", "") == mpq(3, 2)
    assert jsonio.rational_from_json(-7, "") == -7
    assert jsonio.rational_to_json(mpq(-7, 3)) == "-7/3"


@pytest.mark.parametrize("bad", [0.5, True, False, None, [1], "1/0", "x"])
def test_rational_rejects_inexact_and_malformed(bad):
    with pytest.raises(InputFormatError):
        jsonio.rational_from_json(bad, "/here")


def test_error_carries_json_pointer():
    with pytest.raises(InputFormatError) as info:
        jsonio.jet1_from_json({"order": 1, "coeffs": ["1", 0.5]})
    assert info.value.path == "/coeffs/1"
    assert "/coeffs/1" in str(info.value)


def test_jet1_roundtrip_and_validation():
    a = Jet1([1, mpq(-2, 3), 0], 2)
    assert jsonio.jet1_from_json(jsonio.jet1_to_json(a)) == a
    with pytest.raises(InputFormatError):
        jsonio.jet1_from_json({"order": 2, "coeffs": ["1", "2"]})  # count mismatch
    with pytest.raises(InputFormatError):
        jsonio.jet1_from_json({"order": -1, "coeffs": []})
    with pytest.raises(InputFormatError):
        jsonio.jet1_from_json({"order": 0, "coeffs": ["1"], "extra": 1})
    with pytest.raises(InputFormatError):
        jsonio.jet1_from_json({"coeffs": ["1"]})  # missing order
    with pytest.raises(InputFormatError):
        jsonio.jet1_from_json(["not", "an", "object"])


def test_jet2_roundtrip_sorted_keys():
    r = rng(81)
    a = jet2(r, 6)
    doc = jsonio.jet2_to_json(a)
    assert jsonio.jet2_from_json(doc) == a
    degrees = [sum(int(p) for p in key.split(",")) for key in doc["coeffs"]]
    assert degrees == sorted(degrees)  # stable, degree-major key order


@pytest.mark.parametrize(
    "coeffs",
    [
        {"1": "1"},  # not an i,j pair
        {"a,b": "1"},  # non-integers
        {"-1,0": "1"},  # negative exponent
        {"2,2": "1"},  # degree above order
    ],
)
def test_jet2_rejects_bad_keys(coeffs):
    with pytest.raises(InputFormatError):
        jsonio.jet2_from_json({"order": 3, "coeffs": coeffs})


def test_map_roundtrip_and_constraints():
    r = rng(82)
    m = resmap(r, 6).map_jet(6)
    assert jsonio.map_from_json(jsonio.map_to_json(m)) == m
    # constant terms are not allowed in map components
    with pytest.raises(InputFormatError):
        jsonio.map_from_json(
            {
                "order": 2,
                "x": {"order": 2, "coeffs": {"0,0": "1", "1,0": "1"}},
                "y": {"order": 2, "coeffs": {"0,1": "1"}},
            }
        )


def test_resmap_roundtrip_and_constraints():
    r = rng(83)
    f = resmap(r, 8)
    assert jsonio.resmap_from_json(jsonio.resmap_to_json(f)) == f
    with pytest.raises(InputFormatError):
        jsonio.resmap_from_json({"lambda": "1/2", "omega": jsonio.jet1_to_json(f.omega)})


def test_resvf_roundtrip():
    r = rng(84)
    v = resvf(r, 7)
    assert jsonio.resvf_from_json(jsonio.resvf_to_json(v)) == v


def test_contact_roundtrip_and_constraints():
    r = rng(85)
    c = contact(r, 8)
    assert jsonio.contact_from_json(jsonio.contact_to_json(c)) == c
    with pytest.raises(InputFormatError):
        jsonio.contact_from_json({"theta": {"order": 1, "coeffs": ["0", "1"]}})


def test_formjet_roundtrip_all_degrees():
    r = rng(86)
    for degree, count in ((0, 1), (1, 3), (2, 3), (3, 1)):
        f = FormJet(degree, tuple(jet2(r, 5) for _ in range(count)))
        assert jsonio.formjet_from_json(jsonio.formjet_to_json(f)) == f


def test_formjet_rejects_bad_shape():
    payload = jsonio.jet2_to_json(Jet2.zero(3))
    with pytest.raises(InputFormatError):
        jsonio.formjet_from_json({"degree": 1, "comps": [payload]})  # needs 3 comps
    with pytest.raises(InputFormatError):
        jsonio.formjet_from_json({"degree": 5, "comps": [payload]})
    with pytest.raises(InputFormatError):
        jsonio.formjet_from_json({"degree": 0, "comps": payload})  # not a list
    with pytest.raises(InputFormatError) as info:
        jsonio.formjet_from_json(
            {"degree": 0, "comps": [{"order": 3, "coeffs": {"0,0": 0.5}}]}
        )
    assert info.value.path.startswith("/comps/0")
