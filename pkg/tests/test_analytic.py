import math

import pytest

from trivortex import (
    CollinearArrangement,
    DegenerateIndex,
    SourceArrangement,
    collinear_limit,
    enumerate_lattice,
    farfield_value,
    hyperbola_m,
    hyperbola_n,
    predict_all,
    predict_theta,
    predict_vortex,
)

Z0 = 25.0


def envelope(r_perp, z0):
    """Largest possible field magnitude at that radius: three aligned unit phasors."""
    return 3.0 / math.hypot(z0, r_perp)


def test_first_index_angle_reference(arr60):
    # equal arms and the (0,0) scales put the first vortex on the 60 degree ray
    assert predict_theta(0, 0, arr60) == pytest.approx(math.radians(60.0), abs=1e-12)


def test_first_index_radius_reference(arr60):
    pair = predict_vortex(0, 0, arr60, Z0)
    assert pair is not None
    plus, minus = pair
    assert plus.r_perp == pytest.approx(25.0 / math.sqrt(19.25), abs=1e-12)
    assert plus.r_perp == pytest.approx(5.698028822981897, abs=1e-12)
    assert minus.r_perp == plus.r_perp


def test_predictions_zero_the_field_at_zero_phase(arr60, arr175):
    for arr in (arr60, arr175):
        preds = predict_all(arr, Z0)
        assert preds
        for p in preds:
            mag = abs(farfield_value(arr, p.r_perp, p.theta, p.z0))
            assert mag < 1e-9 * envelope(p.r_perp, p.z0)


def test_generic_phase_zeroes_one_branch_per_pair():
    arr = SourceArrangement(lambda0=1.0, r2=3.0, r3=3.0, theta3=math.radians(60.0), phi2=0.7)
    checked = 0
    for m, n in enumerate_lattice(arr):
        pair = predict_vortex(m, n, arr, Z0)
        if pair is None:
            continue
        mags = sorted(abs(farfield_value(arr, p.r_perp, p.theta, p.z0)) for p in pair)
        limit = 1e-9 * envelope(pair[0].r_perp, Z0)
        assert mags[0] < limit
        assert mags[1] > 1e3 * limit
        checked += 1
    assert checked >= 4


def test_branches_mirror_each_other(arr60):
    plus, minus = predict_vortex(0, 0, arr60, Z0)
    assert plus.branch == "plus"
    assert minus.branch == "minus"
    assert minus.r_perp == plus.r_perp
    gap = (minus.theta - plus.theta) % (2.0 * math.pi)
    assert gap == pytest.approx(math.pi, abs=1e-12)
    assert plus.x == pytest.approx(plus.r_perp * math.cos(plus.theta), rel=1e-13)
    assert plus.y == pytest.approx(plus.r_perp * math.sin(plus.theta), rel=1e-13)


def test_unreachable_index_returns_none(arr60):
    assert predict_vortex(7, 0, arr60, Z0) is None


def test_zero_scale_raises():
    arr = SourceArrangement(
        lambda0=1.0, r2=3.0, r3=3.0, theta3=math.radians(60.0), phi2=2.0 * math.pi / 3.0
    )
    with pytest.raises(DegenerateIndex):
        predict_theta(0, 0, arr)


def test_collinear_raises():
    arr = SourceArrangement(lambda0=1.0, r2=3.0, r3=3.0, theta3=0.0)
    with pytest.raises(CollinearArrangement):
        predict_vortex(0, 0, arr, Z0)


def test_radius_scales_with_screen_distance(arr60):
    near = predict_vortex(0, 0, arr60, Z0)[0]
    far = predict_vortex(0, 0, arr60, 3.0 * Z0)[0]
    assert far.theta == near.theta
    assert far.r_perp == pytest.approx(3.0 * near.r_perp, rel=1e-12)


def test_full_phase_period_relabels_m():
    base = SourceArrangement(lambda0=1.0, r2=2.0, r3=3.0, theta3=math.radians(80.0), phi2=0.9)
    shifted = SourceArrangement(
        lambda0=1.0, r2=2.0, r3=3.0, theta3=math.radians(80.0), phi2=0.9 + 2.0 * math.pi
    )
    for m, n in [(0, 0), (-1, 0), (1, -1)]:
        a = predict_vortex(m, n, base, Z0)
        b = predict_vortex(m + 1, n, shifted, Z0)
        assert (a is None) == (b is None)
        if a is None:
            continue
        for pa, pb in zip(a, b):
            assert pb.x == pytest.approx(pa.x, abs=1e-9)
            assert pb.y == pytest.approx(pa.y, abs=1e-9)


def test_predictions_cover_lattice_and_sort(arr175):
    preds = predict_all(arr175, Z0)
    pairs = enumerate_lattice(arr175)
    assert sorted({(p.m, p.n) for p in preds}) == pairs
    assert len(preds) == 2 * len(pairs)
    keys = [(p.m, p.n, p.branch != "plus") for p in preds]
    assert keys == sorted(keys)


def test_hyperbolas_cross_at_prediction(arr60):
    plus = predict_vortex(0, 0, arr60, Z0)[0]
    rm = hyperbola_m(0, arr60, Z0, plus.theta)
    rn = hyperbola_n(0, arr60, Z0, plus.theta)
    assert rm == pytest.approx(plus.r_perp, rel=1e-12)
    assert rn == pytest.approx(plus.r_perp, rel=1e-12)


def test_hyperbola_ends_beyond_cutoff(arr60):
    assert hyperbola_m(0, arr60, Z0, math.pi / 2.0) is None


def test_collinear_limit_validation(arr60):
    with pytest.raises(ValueError):
        collinear_limit(0.1, 0, 0, arr60, Z0)
    with pytest.raises(ValueError):
        collinear_limit(-0.2, 0, 0, arr60, Z0)


def test_collinear_limit_at_zero_epsilon(arr60):
    theta, r_perp = collinear_limit(0.0, 0, 0, arr60, Z0)
    assert theta == pytest.approx(math.pi / 2.0)
    assert r_perp is None


def test_collinear_limit_aligned_case(arr60):
    # for r2 == r3 the (0, -1) scales cancel and the vortex rides the axis
    theta, r_perp = collinear_limit(0.05, 0, -1, arr60, Z0)
    assert theta == 0.0
    assert r_perp == pytest.approx(25.0 / math.sqrt(80.0), rel=1e-12)


def test_collinear_limit_transition():
    arr = SourceArrangement(lambda0=1.0, r2=20.0, r3=20.0, theta3=math.pi)
    # the (0,0) vortex flies off to infinity as the sources align
    theta, r_perp = collinear_limit(0.07, 0, 0, arr, Z0)
    assert r_perp == pytest.approx(25.52970345222068, rel=1e-12)
    assert theta < math.pi / 2.0
    theta, r_perp = collinear_limit(0.03, 0, 0, arr, Z0)
    assert r_perp is None


def test_collinear_limit_angle_steepens():
    arr = SourceArrangement(lambda0=1.0, r2=20.0, r3=20.0, theta3=math.pi)
    angles = [collinear_limit(eps, 0, 0, arr, Z0)[0] for eps in (0.09, 0.08, 0.07, 0.06)]
    assert all(a < b < math.pi / 2.0 for a, b in zip(angles, angles[1:]))
