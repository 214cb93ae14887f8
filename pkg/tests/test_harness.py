import json
from fractions import Fraction

import pytest

from supconvex import (
    extremal_grid_report,
    function_digest,
    function_from_payload,
    function_payload,
    lattice,
    load_function,
    make_extremal,
    make_random,
    mean_value,
    report_json,
    sampled_function,
    save_function,
    sharp_constant,
    subdivide,
    subdivision_svg,
    verify_nfold,
    verify_pair,
)

GOLDEN_RANDOM_DIGEST = (
    "6ac230f4e21d453efeb15c9f464a9946e29bfc86492f3306204b573705ed5491"
)

GOLDEN_EXTREMAL_REPORT = (
    '{"constant":"1/2","constant_kind":"sharp","k":1,"kind":"nfold",'
    '"lhs":"1/3","n":2,"provenance":{"f":"bfd71ff177a0c5fc9a1c72c2ddeed7'
    'aec047f3a70c5d481e06ffc56d7c161109","version":"0.1.0"},"ratio":"1",'
    '"resolution":2,"rhs":"1/3","tol_abs":"1/1000000000","tol_rel":"1/20",'
    '"verdict":"pass"}'
)


def test_function_file_round_trip(tmp_path):
    f = make_random(2, 3, seed=42)
    path = tmp_path / "f.json"
    save_function(f, path)
    g = load_function(path)
    assert g.lattice == f.lattice
    assert list(g.values) == list(f.values)
    assert function_digest(g) == function_digest(f)


def test_payload_validation_rejects_bad_input():
    f = make_random(1, 2, seed=1)
    good = function_payload(f)

    bad = json.loads(json.dumps(good))
    bad["values"][0], bad["values"][1] = bad["values"][1], bad["values"][0]
    with pytest.raises(ValueError, match="out of order"):
        function_from_payload(bad)

    bad = json.loads(json.dumps(good))
    del bad["values"][0]
    with pytest.raises(ValueError, match="rows"):
        function_from_payload(bad)

    bad = json.loads(json.dumps(good))
    bad["values"][0][-1] = 0
    with pytest.raises(ValueError, match="denominator"):
        function_from_payload(bad)

    bad = json.loads(json.dumps(good))
    bad["values"][0][-2] = 1.5
    with pytest.raises(ValueError, match="integers"):
        function_from_payload(bad)

    bad = json.loads(json.dumps(good))
    bad["values"][0].append(7)
    with pytest.raises(ValueError, match="entries"):
        function_from_payload(bad)

    with pytest.raises(ValueError, match="missing"):
        function_from_payload({"k": 1, "N": 2})
    with pytest.raises(ValueError, match="object"):
        function_from_payload([1, 2, 3])
    with pytest.raises(ValueError, match="integers"):
        function_from_payload({"k": "1", "N": 2, "values": []})


def test_make_extremal_counts():
    f = make_extremal(3, 6)
    zeros = sum(1 for v in f.values if v == 0)
    minus = sum(1 for v in f.values if v == -1)
    assert zeros == 4
    assert minus == len(f.lattice) - 4 == 80


def test_make_random_deterministic_and_golden():
    f = make_random(2, 6, seed=1)
    g = make_random(2, 6, seed=1)
    assert list(f.values) == list(g.values)
    assert function_digest(f) == GOLDEN_RANDOM_DIGEST
    assert all(-1 <= v <= 0 for v in f.values)
    assert all(v * 64 == int(v * 64) for v in f.values)


def test_make_random_roughness():
    f = make_random(2, 6, seed=1, roughness=0)
    assert all(v == 0 for v in f.values)
    # roughness only gates values; the draw stream is consumed either
    # way, so the nonzero values of a rough function are a subset
    full = make_random(2, 6, seed=1, roughness=1)
    half = make_random(2, 6, seed=1, roughness="1/2")
    for hv, fv in zip(half.values, full.values):
        assert hv == fv or hv == 0
    assert any(hv != 0 for hv in half.values)
    assert any(hv == 0 and fv != 0 for hv, fv in zip(half.values, full.values))
    with pytest.raises(ValueError):
        make_random(1, 2, seed=1, roughness=2)


def test_mean_value():
    assert mean_value([Fraction(1), Fraction(0), Fraction(1, 2)]) == Fraction(1, 2)


def test_frozen_extremal_report():
    rep = verify_nfold(make_extremal(1, 2), 2)
    assert report_json(rep) == GOLDEN_EXTREMAL_REPORT
    # byte reproducibility
    assert report_json(verify_nfold(make_extremal(1, 2), 2)) == GOLDEN_EXTREMAL_REPORT


def test_degenerate_pass_for_constant_function():
    f = sampled_function(lattice(2, 3), [Fraction(2)] * 10)
    rep = verify_nfold(f, 2)
    assert rep.verdict == "pass-degenerate"
    assert rep.ratio is None
    assert rep.passed


def test_verify_pair_failure_is_reported():
    # Adversarial pair: f's envelope gap is large but g is too negative
    # for the discrete witnesses to compensate at this resolution.
    lat = lattice(1, 2)
    f = sampled_function(lat, [0, -1, 0])
    g = sampled_function(lat, [-1, 0, -1])
    rep = verify_pair(f, g)
    assert rep.kind == "pair"
    assert rep.constant == Fraction(1, 2)
    assert rep.lhs == 0
    assert rep.rhs == Fraction(1, 3)
    assert rep.verdict == "fail"
    assert not rep.passed


def test_verify_nfold_random_smoke():
    for i in range(20):
        f = make_random(2, 6, seed=7000 + i, roughness=1 if i % 2 else "2/3")
        rep = verify_nfold(f, 2)
        assert rep.passed, report_json(rep)


def test_extremal_grid_equalities():
    rep = extremal_grid_report(2, 2, 12)
    assert rep.ratio == Fraction(3, 8) == sharp_constant(2, 2)
    rep = extremal_grid_report(2, 4, 12)
    assert rep.ratio == Fraction(21, 32) == sharp_constant(2, 4)
    assert rep.rhs == 1
    assert len(rep.rows) == len(subdivide(2, 4))


def test_extremal_grid_missing_representative():
    # At resolution 4 the reversed cells of the n=2 subdivision contain
    # no strictly interior lattice point, so the pipeline must refuse.
    with pytest.raises(ValueError, match="representative"):
        extremal_grid_report(2, 2, 4)


def test_subdivision_svg_counts():
    svg = subdivision_svg(4)
    assert svg.count('class="up"') == 10
    assert svg.count('class="down"') == 6
    svg = subdivision_svg(2)
    assert svg.count('class="up"') == 3
    assert svg.count('class="down"') == 1
    svg = subdivision_svg(1)
    assert svg.count('class="up"') == 1
    assert svg.count('class="down"') == 0
    assert svg.startswith("<svg") and svg.endswith("</svg>")
