import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multispace import pseudoface as pf
from multispace.errors import (
    DimensionMismatch,
    DomainError,
    EmptySlice,
    MissingSection,
    NonFiniteImage,
    SingularSlice,
)

ident = lambda x: np.asarray(x, dtype=float)  # noqa: E731


def drop_third(section=True):
    sec = (lambda y: np.array([y[0], y[1], 0.0])) if section else None
    return pf.projection_face(ident, 3, 2, section=sec)


# -- evaluation -------------------------------------------------------------


def test_projection_drops_coordinate():
    np.testing.assert_array_equal(pf.evaluate_pseudo_face(drop_third(), [1, 2, 3]), [1, 2])


def test_scaled_ball_face_closed_form():
    fmap = pf.scaled_ball_face(1.0, 2)
    np.testing.assert_array_equal(fmap([1, 0, 2]), [2, 0])


def test_angle_face_on_axis_is_zero():
    assert pf.angle_face(2)([0, 0, 3])[0] == 0.0


def test_evaluate_rejects_wrong_length():
    with pytest.raises(DimensionMismatch):
        pf.evaluate_pseudo_face(drop_third(), [1, 2])


def test_map_rejects_zero_dims():
    with pytest.raises(DimensionMismatch):
        pf.PseudoFaceMap(0, 1, ident, ident)


def test_section_check():
    drop_third().check_section([[1, 2], [-3, 0.5]])
    bad = pf.projection_face(ident, 3, 2, section=lambda y: np.array([y[0] + 1, y[1], 0.0]))
    with pytest.raises(MissingSection):
        bad.check_section([[0, 0]])


# -- uniform continuity -----------------------------------------------------


def one_d(omega):
    return pf.projection_face(omega, 1, 1)


def test_identity_square_passes_with_lipschitz_delta():
    box = pf.DomainBox((0, 0), (1, 1), 64)
    rep = pf.check_uniform_continuity(drop_third_2d(), box, 0.1)
    assert rep.passed and rep.counterexample is None
    # closest grid pair at distance >= 0.1 is (6, 2) steps of 1/63
    assert rep.delta_estimate == pytest.approx(math.sqrt(40) / 63, rel=1e-12)


def drop_third_2d():
    return pf.projection_face(ident, 2, 2)


def test_square_map_delta_matches_closed_form():
    # x^2 on [0, 10] with eps = 0.1: the tightest pair sits at the right edge,
    # (10 - kh, 10) with k*h*(20 - k*h) >= 0.1, so delta is about 0.005
    n = 10001
    box = pf.DomainBox((0.0,), (10.0,), n)
    rep = pf.check_uniform_continuity(one_d(lambda x: x**2), box, 0.1)
    h = 10.0 / (n - 1)
    k = next(k for k in range(1, 100) if k * h * (20 - k * h) >= 0.1 - 1e-12)
    assert rep.passed
    assert rep.delta_estimate == pytest.approx(k * h, rel=1e-9)
    assert 0.005 <= rep.delta_estimate <= 0.005 + h * (1 + 1e-9)


def test_reciprocal_fails_near_lower_edge():
    box = pf.DomainBox((0.001,), (1.0,), 64)
    rep = pf.check_uniform_continuity(one_d(lambda x: 1.0 / x), box, 0.1)
    assert not rep.passed
    u, v, gap = rep.counterexample
    assert gap >= 0.1
    assert abs(u[0] - v[0]) < rep.delta_estimate
    assert min(u[0], v[0]) == pytest.approx(0.001)


def test_non_finite_image_raises():
    box = pf.DomainBox((0.0,), (1.0,), 16)
    with pytest.raises(NonFiniteImage):
        pf.check_uniform_continuity(one_d(lambda x: np.log(x) if x[0] > 0 else np.array([np.nan])), box, 0.1)


def test_bad_box_and_epsilon():
    with pytest.raises(DomainError):
        pf.DomainBox((1.0,), (0.0,))
    with pytest.raises(DomainError):
        pf.DomainBox((0.0,), (1.0,), 1)
    with pytest.raises(DomainError):
        pf.check_uniform_continuity(one_d(ident), pf.DomainBox((0.0,), (1.0,)), 0.0)


def test_numpy_and_loop_pair_search_agree():
    from multispace import _kernels

    rng = np.random.default_rng(3)
    for _ in range(20):
        pts = rng.uniform(-1, 1, (40, 2))
        img = np.sin(4 * pts)
        a = _kernels.closest_bad_pair_numpy(pts, img, 0.5)
        b = _kernels._closest_bad_pair_loop(pts, img, 0.5)
        assert a[1:] == b[1:]
        assert a[0] == pytest.approx(b[0], rel=1e-15)


@settings(max_examples=25, deadline=None)
@given(
    k=st.integers(1, 6),
    j=st.integers(1, 4),
    eps=st.floats(0.05, 2.0),
    a=st.floats(0.5, 3.0),
)
def test_refining_a_nested_grid_never_widens_delta(k, j, eps, a):
    # Every coarse sample is also a fine sample when (fine - 1) is a multiple
    # of (coarse - 1), so the closest bad pair can only get closer, and a
    # coarse counterexample is still a bad pair on the fine grid.
    coarse, fine = 4 * k + 1, (4 * k) * j + 1
    fmap = one_d(lambda x: np.sin(a * x**2))
    rc = pf.check_uniform_continuity(fmap, pf.DomainBox((0.0,), (3.0,), coarse), eps)
    rf = pf.check_uniform_continuity(fmap, pf.DomainBox((0.0,), (3.0,), fine), eps)
    closest = lambda r: r.counterexample and abs(r.counterexample[0][0] - r.counterexample[1][0])  # noqa: E731
    dc = closest(rc) if not rc.passed else rc.delta_estimate
    df = closest(rf) if not rf.passed else rf.delta_estimate
    assert df <= dc + 1e-12


def test_report_invariants_on_failure_and_success():
    box = pf.DomainBox((-1.0, -1.0), (1.0, 1.0), 20)
    for eps in (0.01, 0.3, 5.0):
        rep = pf.check_uniform_continuity(pf.projection_face(lambda x: 3 * x, 2, 2), box, eps)
        if rep.passed:
            assert rep.counterexample is None and rep.delta_estimate > 0
        else:
            u, v, gap = rep.counterexample
            assert gap >= eps
            assert math.dist(u, v) < rep.delta_estimate


# -- conjugate transport ----------------------------------------------------


def test_conjugate_identity():
    f = pf.conjugate_transport(ident, drop_third())
    for y in ([0, 0], [1.5, -2]):
        np.testing.assert_array_equal(f(y), y)


def test_conjugate_translation_and_rotation():
    fm = drop_third()
    tr = pf.conjugate_transport(lambda x: x + np.array([1.0, 0, 0]), fm)
    np.testing.assert_allclose(tr([2, 3]), [3, 3])
    rot = pf.conjugate_transport(lambda x: np.array([-x[1], x[0], x[2]]), fm)
    np.testing.assert_allclose(rot([2, 3]), [-3, 2])


def test_conjugate_requires_section():
    with pytest.raises(MissingSection):
        pf.conjugate_transport(ident, drop_third(section=False))


@settings(max_examples=50, deadline=None)
@given(
    st.floats(-5, 5), st.floats(-5, 5), st.floats(-np.pi, np.pi), st.floats(-2, 2), st.floats(-2, 2)
)
def test_conjugation_is_functorial(x, y, angle, dx, dy):
    # section . p is the identity on the z = 0 plane, which both maps preserve
    fm = drop_third()
    c, s = math.cos(angle), math.sin(angle)
    g1 = lambda v: np.array([c * v[0] - s * v[1], s * v[0] + c * v[1], v[2]])  # noqa: E731
    g2 = lambda v: v + np.array([dx, dy, 0.0])  # noqa: E731
    lhs = pf.conjugate_transport(lambda v: g2(g1(v)), fm)([x, y])
    rhs = pf.conjugate_transport(g2, fm)(pf.conjugate_transport(g1, fm)([x, y]))
    np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-9)


# -- ball slices ------------------------------------------------------------


def test_scaled_slice_examples():
    assert pf.ball_pseudo_shape_scaled(1, 0.6, 1).radius == pytest.approx(0.8 / 0.6, rel=1e-15)
    assert pf.ball_pseudo_shape_scaled(1, 1, 2).radius == 0.0
    with pytest.raises(SingularSlice):
        pf.ball_pseudo_shape_scaled(1, 0, 1)
    with pytest.raises(EmptySlice):
        pf.ball_pseudo_shape_scaled(1, 1.5, 1)


def test_angle_slice_examples():
    assert pf.ball_pseudo_shape_angle(1, 0).radius == 1.0
    assert pf.ball_pseudo_shape_angle(5, 3).radius == 4.0
    assert pf.ball_pseudo_shape_angle(2, 2).radius == 0.0
    with pytest.raises(EmptySlice):
        pf.ball_pseudo_shape_angle(2, -2.5)


def test_profile_modes():
    general = {s.t: s.radius for s in pf.ball_profile_scaled(1, 0.5, 5)}
    figure = {s.t: s.radius for s in pf.ball_profile_scaled(1, 0.5, 5, paper_figure_mode=True)}
    assert 0.0 not in general and len(general) == 4
    assert general[0.5] == pytest.approx(math.sqrt(0.75) / 0.25)
    assert figure[0.5] == pytest.approx(math.sqrt(0.75))
    assert general[1.0] == general[-1.0] == figure[1.0] == figure[-1.0] == 0.0
    with pytest.raises(DomainError):
        pf.ball_profile_scaled(1, 0.5, 2)


@given(R=st.floats(0.1, 100), frac=st.floats(0.0, 1.0), sigma=st.floats(0.01, 10))
def test_slices_are_even_in_t(R, frac, sigma):
    t = frac * R
    assert pf.ball_pseudo_shape_angle(R, t).radius == pf.ball_pseudo_shape_angle(R, -t).radius
    if t > 0:
        assert pf.ball_pseudo_shape_scaled(R, t, sigma).radius == pf.ball_pseudo_shape_scaled(R, -t, sigma).radius


@given(R=st.floats(0.1, 100), a=st.floats(0.0, 1.0), b=st.floats(0.0, 1.0), sigma=st.floats(0.01, 10))
def test_slice_radii_decrease_in_abs_t(R, a, b, sigma):
    lo, hi = sorted((a, b))
    if hi - lo < 1e-6:
        return
    if 0 < lo and hi < 1:
        assert pf.ball_pseudo_shape_angle(R, hi * R).radius < pf.ball_pseudo_shape_angle(R, lo * R).radius
    lo_s = 1 / math.sqrt(2) + lo * (1 - 1 / math.sqrt(2))
    hi_s = 1 / math.sqrt(2) + hi * (1 - 1 / math.sqrt(2))
    if hi_s < 1 and hi_s - lo_s > 1e-6:
        r_lo = pf.ball_pseudo_shape_scaled(R, lo_s * R, sigma).radius
        r_hi = pf.ball_pseudo_shape_scaled(R, hi_s * R, sigma).radius
        assert r_hi < r_lo


# -- angle field, sphere projection ------------------------------------------


def test_angle_field_examples():
    assert pf.angle_field_sample([0, 0, 1]) == 0.0
    assert pf.angle_field_sample([1, 0, 0]) == pytest.approx(math.pi)
    assert pf.angle_field_sample([1, 1]) == pytest.approx(math.pi / 2)
    with pytest.raises(DomainError):
        pf.angle_field_sample([0, 0, 0])


@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=5))
def test_angle_field_range(v):
    if np.linalg.norm(v) < 1e-6:
        return
    assert 0.0 <= pf.angle_field_sample(v) <= 2 * math.pi


@given(st.floats(1e-6, 1e6), st.integers(1, 4))
def test_angle_field_zero_on_positive_axis(t, n):
    assert pf.angle_field_sample([0.0] * n + [t]) == 0.0


def test_sphere_pseudo_plane():
    np.testing.assert_array_equal(pf.sphere_pseudo_plane([0, 0, 1], 0), [1, 0])
    np.testing.assert_array_equal(pf.sphere_pseudo_plane([1, 0, 0], 5), [0, 5])
    np.testing.assert_array_equal(pf.sphere_pseudo_plane([0, 0, -1], 1), [-1, 1])
    with pytest.raises(DomainError):
        pf.sphere_pseudo_plane([0, 0, 1.1], 0)


# -- subspace chains ----------------------------------------------------------


def test_chain_shape_and_membership():
    ch = pf.subspace_chain([0.0, 0.0, 0.0])
    assert ch.dimensions == [3, 2, 1, 0]
    assert ch.links[-1].basis == frozenset()
    assert pf.chain_is_nested(ch)
    assert all(ch.contains(k, [0, 0, 0]) for k in range(4))
    assert ch.contains(1, [1, 1, 0])
    assert not ch.contains(2, [1, 1, 0])


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=7))
def test_chain_invariants(anchor):
    ch = pf.subspace_chain(anchor)
    n = len(anchor)
    assert ch.dimensions == list(range(n, -1, -1))
    assert pf.chain_is_nested(ch)
    assert all(ch.contains(k, anchor) for k in range(n + 1))
