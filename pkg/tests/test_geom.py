import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _configs import (
    T,
    icosahedron,
    points_from_lengths,
    random_cap_triangle,
    random_face,
    random_quoin_params,
    random_small_simplex,
    simplex_radius,
)
from dodecakit.geom import (
    SOLID,
    VOLUME,
    DegenerateTriangle,
    FaceCycle,
    HOutOfRange,
    NonRealizable,
    Orientation,
    PreconditionRegime,
    RegimeMismatch,
    Simplex,
    a_fun,
    azim,
    azim_at,
    cap_sol,
    cap_vol,
    cone_disk_vol,
    delta_cm,
    eta,
    in_aff_plus,
    in_conv,
    in_rcone,
    mu_face,
    omega_any,
    omega_face,
    omega_simplex_y,
    omega_triangle,
    orientation,
    phi,
    quo,
    sol_girard,
    tet_vol,
)
from dodecakit.geom import montecarlo as mc
from dodecakit.geom.predicates import centroid, circumcenter
from dodecakit.ival import Interval
from dodecakit.ival import constants as K

ICO_EDGE = 8 / math.sqrt(10 + 2 * math.sqrt(5))


def icosahedron_faces(pts):
    """Faces of the icosahedron, counterclockwise seen from outside."""
    faces = []
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = (np.asarray(pts[x]) for x in (i, j, k))
                if all(abs(np.linalg.norm(p - q) - ICO_EDGE) < 1e-9 for p, q in ((a, b), (b, c), (a, c))):
                    tri = (i, j, k) if np.linalg.det(np.array([a, b, c])) > 0 else (i, k, j)
                    faces.append(FaceCycle([pts[x] for x in tri]))
    assert len(faces) == 20
    return faces


# eta


def test_eta_examples():
    assert eta(2.0, 2.0, 2.0) == pytest.approx(2 / math.sqrt(3), abs=1e-12)
    assert eta(2.0, 2.0, 2 * math.sqrt(2)) == pytest.approx(math.sqrt(2), abs=1e-12)
    e = eta(ICO_EDGE, ICO_EDGE, ICO_EDGE)
    assert e == pytest.approx(1.2141, abs=1e-4) and e <= math.sqrt(2)


def test_eta_degenerate():
    with pytest.raises(DegenerateTriangle):
        eta(1.0, 1.0, 2.0)


@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.01, 0.99))
@settings(max_examples=300, deadline=None)
def test_eta_at_least_half_longest(x, y, frac):
    z = abs(x - y) + frac * (x + y - abs(x - y))
    if z <= abs(x - y) * (1 + 1e-9) or z >= (x + y) * (1 - 1e-9):
        return
    assert eta(x, y, z) >= max(x, y, z) / 2 * (1 - 1e-12)


def test_eta_interval_contains_float():
    rng = np.random.default_rng(11)
    for _ in range(500):
        x, y = rng.uniform(1.5, 3.0, 2)
        z = rng.uniform(abs(x - y) + 0.1, x + y - 0.1)
        w = rng.uniform(0, 1e-3, 3)
        box = [Interval(x, x + w[0]), Interval(y, y + w[1]), Interval(z, z + w[2])]
        enc = eta(*box)
        for _ in range(5):
            s = [rng.uniform(b.lo, b.hi) for b in box]
            assert enc.contains(eta(*s))


# Cayley-Menger determinant and volume


def test_regular_tetrahedron_volume():
    s = Simplex(4.0, 4.0, 4.0, 4.0, 4.0, 4.0)
    assert delta_cm(s) == pytest.approx(128.0, abs=1e-9)
    assert tet_vol(s) == pytest.approx(math.sqrt(128) / 12, abs=1e-12)
    assert tet_vol(s) == pytest.approx(8 / (6 * math.sqrt(2)), abs=1e-12)


def test_flat_simplex_volume():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]
    s = Simplex.from_points(*pts)
    assert delta_cm(s) == pytest.approx(0.0, abs=1e-12)
    assert tet_vol(s) == pytest.approx(0.0, abs=1e-6)


def test_nonrealizable():
    with pytest.raises(NonRealizable):
        tet_vol(Simplex(1.0, 1.0, 1.0, 100.0, 100.0, 100.0))


def test_tet_vol_matches_coordinates():
    rng = np.random.default_rng(5)
    for _ in range(200):
        p = rng.normal(size=(4, 3))
        ref = abs(np.linalg.det(p[1:] - p[0])) / 6
        assert tet_vol(Simplex.from_points(*p)) == pytest.approx(ref, abs=1e-12, rel=1e-9)


def test_delta_nonnegative_on_random_quadruples():
    rng = np.random.default_rng(6)
    for _ in range(10_000):
        p = rng.uniform(-3, 3, size=(4, 3))
        d = delta_cm(Simplex.from_points(*p))
        scale = max(np.sum((p[i] - p[j]) ** 2) for i in range(4) for j in range(i)) ** 3
        assert d >= -1e-12 * scale


# phi, A, caps


def test_phi_solid_is_one():
    for h in (0.3, 1.0, 1.2, T):
        assert phi(h, T, SOLID) == 1.0


def test_phi_volume_value():
    assert phi(1.0, 1.25841, VOLUME) == pytest.approx(1.25841 * 2.25841 / 6, abs=1e-12)
    assert round(phi(1.0, 1.25841, VOLUME), 4) == 0.4737


def test_a_fun_vanishes_at_t():
    for lam in (VOLUME, SOLID, type(VOLUME)(0.4, -0.3)):
        assert a_fun(T, T, lam) == 0.0


def test_cap_sol_values():
    assert cap_sol(T, T) == 0.0
    assert cap_sol(T / 2, T) == pytest.approx(math.pi, abs=1e-15)
    assert cap_vol(T, T) == 0.0
    with pytest.raises(HOutOfRange):
        cap_sol(1.3, 1.2)


def test_cap_vol_against_monte_carlo():
    est, se = mc.cap_volume(1.0, T, n=2_000_000, rng=np.random.default_rng(7))
    v = cap_vol(1.0, T)
    assert abs(v - est) <= 3 * se
    assert abs(v - est) / v <= 1e-3 + 3 * se / v


@given(st.floats(0.2, 1.25))
@settings(max_examples=100, deadline=None)
def test_cap_and_disk_cone_fill_the_sector(h):
    assert cap_vol(h, T) + cone_disk_vol(h, T) == pytest.approx(cap_sol(h, T) * T ** 3 / 3, rel=1e-12)


# quoins


def test_quo_examples():
    assert quo(1.3, 1.2, 1.25841) == 0.0
    for a, b in ((1.0, 1.1), (1.0, 1.0), (0.5, 1.2)):
        assert quo(a, b, b) == pytest.approx(0.0, abs=1e-15)


def test_quo_against_monte_carlo():
    # |v| = 2 so a = 1; w is the antipode of 0 on the circle through 0, v with radius 1.1
    p = np.array([1.0, math.sqrt(1.1 ** 2 - 1.0), 0.0])
    v = np.array([2.0, 0.0, 0.0])
    w = 2 * p
    est, se = mc.quoin_volume(v, w, T, n=2_000_000, rng=np.random.default_rng(8))
    q = quo(1.0, 1.1, T)
    assert q > 0
    assert abs(q - est) <= 3 * se
    assert abs(q - est) / q <= 1e-3 + 3 * se / q


def test_quo_continuity():
    c = T
    for a in (0.9, 1.0, 1.1):
        # b -> c: the quoin collapses
        assert quo(a, c - 1e-9, c) == pytest.approx(0.0, abs=1e-12)
        # b -> a: the value approaches the finite limit (Holder-1/2, so the gap
        # shrinks like sqrt(b - a))
        limit = quo(a, a, c)
        gaps = [abs(quo(a, a + eps, c) - limit) for eps in (1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12)]
        assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))
        assert gaps[-1] < 1e-5
    # a -> b from the admissible side
    b = 1.1
    limit = quo(b, b, c)
    gaps = [abs(quo(b - eps, b, c) - limit) for eps in (1e-2, 1e-4, 1e-6, 1e-8, 1e-10)]
    assert all(g2 < g1 for g1, g2 in zip(gaps, gaps[1:]))


def test_quo_interval_contains_float():
    rng = np.random.default_rng(9)
    for _ in range(300):
        a = rng.uniform(0.95, 1.2)
        b = rng.uniform(a, T)
        w = rng.uniform(0, 1e-3, 2)
        ia, ib = Interval(a, a + w[0]), Interval(b, b + w[1])
        enc = quo(ia, ib, Interval(T))
        for _ in range(5):
            assert enc.contains(quo(rng.uniform(ia.lo, ia.hi), rng.uniform(ib.lo, ib.hi), T))


# azimuths and solid angles


def test_azim_examples():
    assert azim(Simplex(4.0, 4.0, 4.0, 4.0, 4.0, 4.0)) == pytest.approx(math.acos(1 / 3), abs=1e-12)
    s = Simplex.from_points((0, 0, 0), (0, 0, 1), (1, 0, 0), (0, 1, 0))
    assert azim(s) == pytest.approx(math.pi / 2, abs=1e-12)


def test_azim_matches_normals():
    rng = np.random.default_rng(10)
    for _ in range(200):
        p = rng.normal(size=(3, 3))
        v, u, w = p
        n1 = np.cross(v, u)
        n2 = np.cross(v, w)
        ref = math.acos(np.clip(n1 @ n2 / np.linalg.norm(n1) / np.linalg.norm(n2), -1, 1))
        assert azim(Simplex.from_points((0, 0, 0), v, u, w)) == pytest.approx(ref, abs=1e-9)


def test_icosahedron_azimuths():
    pts = icosahedron()
    faces = icosahedron_faces(pts)
    for f in faces:
        for i in range(3):
            assert azim_at(f, i) == pytest.approx(2 * math.pi / 5, abs=1e-12)
    # around each vertex the azimuths of its five faces sum to 2 pi
    for v in pts:
        total = sum(azim_at(f, f.vertices.index(v)) for f in faces if v in f.vertices)
        assert total == pytest.approx(2 * math.pi, abs=1e-9)


def test_sol_girard_examples():
    octant = FaceCycle([(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    assert sol_girard(octant) == pytest.approx(math.pi / 2, abs=1e-12)
    faces = icosahedron_faces(icosahedron())
    for f in faces:
        assert sol_girard(f) == pytest.approx(4 * math.pi / 20, abs=1e-12)
    assert sum(sol_girard(f) for f in faces) == pytest.approx(4 * math.pi, abs=1e-9)


def test_complementary_faces_cover_sphere():
    rng = np.random.default_rng(12)
    for r in (3, 4, 5, 6):
        for _ in range(20):
            f = random_face(rng, r)
            s1 = sol_girard(FaceCycle(f))
            s2 = sol_girard(FaceCycle(f[::-1]))
            assert 0 < s1 < 4 * math.pi and 0 < s2 < 4 * math.pi
            assert s1 + s2 == pytest.approx(4 * math.pi, abs=1e-9)


# face volumes


def test_regular_simplex_omega_against_monte_carlo():
    pts = points_from_lengths(2, 2, 2, 2, 2, 2)
    w = omega_triangle(*pts)
    est, se = mc.simplex_cell_volume(*pts, n=2_000_000, rng=np.random.default_rng(13))
    assert abs(w - est) <= 3 * se
    assert abs(w - est) / w <= 1e-3 + 3 * se / w


def test_square_face_against_monte_carlo():
    # |v_i| = 2, consecutive distance 2.2
    rho = 2.2 / math.sqrt(2)
    z = math.sqrt(4 - rho * rho)
    verts = [(rho * math.cos(k * math.pi / 2), rho * math.sin(k * math.pi / 2), z) for k in range(4)]
    face = FaceCycle(verts)
    w = omega_face(face)
    est, se = mc.face_cell_volume(verts, T, n=2_000_000, rng=np.random.default_rng(14))
    assert abs(w - est) <= 3 * se
    assert abs(w - est) / w <= 1e-3 + 3 * se / w


def test_face_without_quoins():
    # vertices far apart: every b_i exceeds t, so quoins vanish
    rho = 2.4 / math.sqrt(2)
    z = math.sqrt(2.3 ** 2 - rho * rho)
    verts = [(rho * math.cos(k * math.pi / 2), rho * math.sin(k * math.pi / 2), z) for k in range(4)]
    face = FaceCycle(verts)
    assert all(b > T for i in range(4) for b in face.b_pm(i))
    sol = sol_girard(face)
    reduced = sol * phi(T, T) + sum(azim_at(face, i) * a_fun(face.h(i), T) for i in range(4))
    assert omega_face(face) == pytest.approx(reduced, abs=1e-14)


def test_dodecahedral_totals():
    faces = icosahedron_faces(icosahedron())
    om = [omega_triangle(*f.vertices) for f in faces]
    for w in om:
        assert w == pytest.approx(K.omega_dod().mid / 20, abs=1e-9)
        assert w == pytest.approx(0.27751, abs=1e-5)
    assert sum(om) == pytest.approx(5.55029, abs=1e-5)
    mus = [mu_face(f) for f in faces]
    for m in mus:
        assert m == pytest.approx(0.0088770, abs=1e-6)
    assert sum(mus) == pytest.approx(0.177540, abs=1e-5)
    # the boundary case agrees under both formulas
    for f in faces:
        assert omega_face(f, check_regime=False) == pytest.approx(omega_triangle(*f.vertices), abs=1e-12)


def test_mu_zero_when_volume_matches():
    f = icosahedron_faces(icosahedron())[0]
    m = omega_any(f) / sol_girard(f)
    assert mu_face(f, m=m) == pytest.approx(0.0, abs=1e-15)


def test_regime_errors():
    regular = points_from_lengths(2, 2, 2, 2, 2, 2)
    with pytest.raises(PreconditionRegime):
        omega_face(FaceCycle(regular))
    big = points_from_lengths(2.0, 2.0, 2.0, 2.5, 2.5, 2.5)
    assert simplex_radius(big) > T
    with pytest.raises(RegimeMismatch):
        omega_triangle(*big)


def test_circumcenter_in_hull_for_small_simplices():
    rng = np.random.default_rng(16)
    for _ in range(100):
        pts = random_small_simplex(rng)
        c = circumcenter([(0, 0, 0), *pts])
        assert in_conv(c, [(0, 0, 0), *pts], tol=1e-9)


def test_interval_simplex_contains_float():
    rng = np.random.default_rng(17)
    for _ in range(100):
        pts = random_small_simplex(rng)
        ys = [np.linalg.norm(p) for p in pts] + [
            np.linalg.norm(np.subtract(pts[1], pts[2])),
            np.linalg.norm(np.subtract(pts[0], pts[2])),
            np.linalg.norm(np.subtract(pts[0], pts[1])),
        ]
        box = [Interval(y, y + 1e-6) for y in ys]
        enc = omega_simplex_y(*box)
        for _ in range(3):
            s = [rng.uniform(b.lo, b.hi) for b in box]
            assert enc.contains(omega_simplex_y(*s))


MC_N = 300_000
MC_CONFIGS = 50


def _within(value, est, se):
    return abs(value - est) <= 3 * se


def test_omega_face_monte_carlo_fifty_configurations():
    rng = np.random.default_rng(18)
    fails = []
    for k in range(MC_CONFIGS):
        r = (3, 4, 5, 6)[k % 4]
        verts = random_cap_triangle(rng) if r == 3 else random_face(rng, r)
        w = omega_face(FaceCycle(verts))
        est, se = mc.face_cell_volume(verts, T, n=MC_N, rng=np.random.default_rng(1000 + k))
        if not _within(w, est, se):
            fails.append((k, r, w, est, se))
    assert not fails


def test_omega_triangle_monte_carlo_fifty_configurations():
    rng = np.random.default_rng(19)
    fails = []
    for k in range(MC_CONFIGS):
        pts = random_small_simplex(rng)
        w = omega_triangle(*pts)
        est, se = mc.simplex_cell_volume(*pts, n=MC_N, rng=np.random.default_rng(2000 + k))
        if not _within(w, est, se):
            fails.append((k, w, est, se))
    assert not fails


def test_quo_monte_carlo_fifty_configurations():
    rng = np.random.default_rng(20)
    fails = []
    for k in range(MC_CONFIGS):
        v, w, b = random_quoin_params(rng)
        q = quo(np.linalg.norm(v) / 2, b, T)
        est, se = mc.quoin_volume(v, w, T, n=MC_N, rng=np.random.default_rng(3000 + k))
        if not _within(q, est, se):
            fails.append((k, q, est, se))
    assert not fails


# predicates


def test_in_rcone():
    v = (0.0, 0.0, 2.0)
    for h in (0.0, 0.5, 1.0):
        assert in_rcone(v, v, h)
        assert in_rcone((0.0, 0.0, 5.0), v, h)
    assert not in_rcone((1.0, 0.0, 0.1), v, 0.5)


def test_in_conv_centroid():
    rng = np.random.default_rng(21)
    for _ in range(20):
        pts = rng.normal(size=(4, 3))
        assert in_conv(centroid(pts), pts)
    tet = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert in_aff_plus((3, 4, 5), tet)
    assert not in_aff_plus((-1, 1, 1), tet)
    assert not in_conv((1, 1, 1), [(0, 0, 0), *tet])


def test_orientation_regular_tetrahedron():
    pts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    assert orientation(pts[0], pts[1:]) is Orientation.POSITIVE
    # a very obtuse apex puts the circumcenter on the far side
    flat = [(0, 0, 0.05), (1, 0, 0), (-0.5, 0.9, 0), (-0.5, -0.9, 0)]
    assert orientation(flat[0], flat[1:]) is Orientation.NEGATIVE
