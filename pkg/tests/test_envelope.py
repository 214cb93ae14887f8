from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import envelope_bruteforce
from supconvex import (
    SplitMix64,
    concave_envelope,
    evaluate_certificate,
    lattice,
    make_random,
    normalize_to_simplex_form,
    sampled_function,
)


def _func(k, resolution, values):
    return sampled_function(lattice(k, resolution), [Fraction(v) for v in values])


def test_constant_function_is_its_own_envelope():
    f = _func(1, 4, [3] * 5)
    res = concave_envelope(f)
    assert res.values == f.values


def test_single_dip_filled_in():
    # k=1, N=2, f = (0, -1, 0): envelope lifts the midpoint to 0.
    f = _func(1, 2, [0, -1, 0])
    res = concave_envelope(f)
    assert list(res.values) == [0, 0, 0]
    # midpoint certificate mixes the two endpoints (indices 0 and 2) equally
    cert = res.certificates[1]
    assert dict(cert) == {0: Fraction(1, 2), 2: Fraction(1, 2)}


def test_matches_bruteforce_k1():
    rng = SplitMix64(7)
    for resolution in (2, 3, 4, 5, 6):
        f = _func(
            1,
            resolution,
            [-Fraction(rng.next_below(9), 4) for _ in range(resolution + 1)],
        )
        assert list(concave_envelope(f).values) == envelope_bruteforce(f)


def test_matches_bruteforce_k2():
    for seed in (11, 12):
        f = make_random(2, 4, seed=seed)
        assert list(concave_envelope(f).values) == envelope_bruteforce(f)
    f = make_random(2, 6, seed=13)
    assert list(concave_envelope(f).values) == envelope_bruteforce(f)


def test_idempotent():
    for trial in range(50):
        k = 1 + trial % 2
        resolution = 2 + trial % 7
        f = make_random(k, resolution, seed=300 + trial)
        once = concave_envelope(f).as_function()
        twice = concave_envelope(once)
        assert list(twice.values) == list(once.values)


def test_affine_equivariance():
    # env(f + a) == env(f) + a for affine a; check with random affine shifts.
    rng = SplitMix64(41)
    for trial in range(50):
        k = 1 + trial % 2
        resolution = 2 + trial % 5
        f = make_random(k, resolution, seed=600 + trial)
        coeffs = [Fraction(rng.next_below(7)) - 3 for _ in range(k + 1)]
        lat = f.lattice
        shift = [
            sum(c * x for c, x in zip(coeffs, pt)) / resolution
            for pt in lat.int_points
        ]
        g = sampled_function(lat, [v + s for v, s in zip(f.values, shift)])
        env_f = concave_envelope(f).values
        env_g = concave_envelope(g).values
        assert all(b == a + s for a, b, s in zip(env_f, env_g, shift))


def test_envelope_dominates_and_is_concave_on_lines():
    f = make_random(2, 4, seed=77)
    env = concave_envelope(f).values
    lat = f.lattice
    assert all(e >= v for e, v in zip(env, f.values))
    # midpoint concavity along every aligned collinear triple
    idx = {pt: i for i, pt in enumerate(lat.int_points)}
    for pt in lat.int_points:
        for d in ((2, -2, 0), (2, 0, -2), (0, 2, -2), (2, -1, -1), (-1, 2, -1), (-1, -1, 2)):
            lo = tuple(a - b for a, b in zip(pt, d))
            hi = tuple(a + b for a, b in zip(pt, d))
            if lo in idx and hi in idx:
                assert env[idx[pt]] >= (env[idx[lo]] + env[idx[hi]]) / 2


def test_concave_input_fixed():
    # min of two affine functions is concave; envelope must not move it.
    lat = lattice(2, 4)
    vals = [
        min(Fraction(a, 4), Fraction(2 * b + c, 8))
        for (a, b, c) in lat.int_points
    ]
    f = sampled_function(lat, vals)
    assert list(concave_envelope(f).values) == vals


def test_certificates_reconstruct():
    f = make_random(2, 5, seed=99)
    res = concave_envelope(f)
    lat = f.lattice
    for i in range(len(lat)):
        cert = res.certificates[i]
        assert 1 <= len(cert) <= 3  # at most k+1 support points
        point, value, total = evaluate_certificate(res, i)
        assert total == 1
        assert tuple(point) == lat.points[i].coords
        assert value == res.values[i]


def test_normalize_examples():
    f = _func(1, 2, [0, -1, 0])
    g = normalize_to_simplex_form(f)
    assert list(g.values) == [0, -1, 0]

    f = _func(1, 2, [2, 3, 6])
    g = normalize_to_simplex_form(f)
    assert list(g.values) == [0, -1, 0]

    # non-affine envelope: vertex values still pinned to zero
    f = _func(1, 4, [0, 5, 0, 0, 0])
    g = normalize_to_simplex_form(f)
    assert g.values[0] == 0 and g.values[-1] == 0


def test_normalize_idempotent():
    for trial in range(20):
        f = make_random(2, 3, seed=900 + trial)
        g = normalize_to_simplex_form(f)
        h = normalize_to_simplex_form(g)
        assert list(g.values) == list(h.values)


@st.composite
def small_functions(draw):
    k = draw(st.integers(min_value=1, max_value=2))
    resolution = draw(st.integers(min_value=1, max_value=3))
    lat = lattice(k, resolution)
    vals = draw(
        st.lists(
            st.fractions(min_value=-3, max_value=3, max_denominator=4),
            min_size=len(lat.points),
            max_size=len(lat.points),
        )
    )
    return sampled_function(lat, vals)


@settings(max_examples=30, deadline=None)
@given(small_functions())
def test_envelope_properties_hypothesis(f):
    res = concave_envelope(f)
    env = res.values
    assert all(e >= v for e, v in zip(env, f.values))
    # vertices of the simplex cannot be lifted: they are extreme points
    for vi in f.lattice.vertex_indices():
        assert env[vi] == f.values[vi]
    again = concave_envelope(res.as_function())
    assert list(again.values) == list(env)


def test_length_mismatch_raises():
    with pytest.raises(ValueError):
        sampled_function(lattice(1, 2), [Fraction(0)] * 2)
