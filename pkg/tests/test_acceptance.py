"""The ten acceptance criteria, at their stated tolerances and time limits."""

import io
import math
import random
import time
from fractions import Fraction
from pathlib import Path

import mpmath
import numpy as np
import pytest

from _configs import T, icosahedron, random_cap_triangle, random_face, random_quoin_params, random_small_simplex
from _gen_oracle import hole_fill
from _maps import brute_isomorphic, random_planar_faces
from dodecakit.cli import main
from dodecakit.geom import FaceCycle, cap_vol, omega_face, omega_triangle, quo
from dodecakit.geom import montecarlo as mc
from dodecakit.graphgen import GenParams, enumerate_maps, read_archive, replay
from dodecakit.hmap import canonical_form, from_face_list, is_connected, is_involutive, is_planar, relabel, to_face_list
from dodecakit.ival import Box, Interval
from dodecakit.ival import constants as K
from dodecakit.lp import (
    LinearSystem,
    bound_exact,
    builtin_certificate,
    check_certificate,
    scan_vertex_types,
    vertex_type_system,
)
from dodecakit.prover import BudgetExhausted, Failed, Verified, VerifyTask, parse, verify
from dodecakit.tame import check_superadditivity, is_tame, weight_feasible

DATA = Path(__file__).parent / "data"
PUBLISHED_ARCHIVE = DATA / "published_archive.txt"


class Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f} s, limit {self.limit} s"


def cli(*argv):
    buf = io.StringIO()
    code = main([str(a) for a in argv], stdout=buf)
    return code, [ln.split("\t") for ln in buf.getvalue().splitlines()]


@pytest.mark.criterion(1, "constants: t_dod and M_0 - M_dod enclosures")
def test_criterion_1_constants():
    with Clock(1.0):
        code, rows = cli("constants")
    table = {r[0]: (float(r[1]), float(r[2])) for r in rows[1:]}
    assert code == 0
    mpmath.mp.dps = 40
    exact = mpmath.sqrt(3) * mpmath.tan(mpmath.pi / 5)
    lo, hi = table["t_dod"]
    assert mpmath.mpf(lo) <= exact <= mpmath.mpf(hi)
    assert hi - lo <= 1e-12
    assert abs(lo - 1.258) < 5e-4
    # quoted to three significant figures
    lo, hi = table["M_0-M_dod"]
    assert 1.855e-7 <= lo <= hi <= 1.865e-7


@pytest.mark.criterion(2, "mu(Lambda_dod) from packing-report")
def test_criterion_2_mu_dod(tmp_path):
    path = tmp_path / "lambda_dod.txt"
    path.write_text("".join(" ".join(repr(float(c)) for c in p) + "\n" for p in icosahedron(2.0)))
    with Clock(10.0):
        code, rows = cli("packing-report", path)
    assert code == 0
    faces, total = rows[1:-1], rows[-1]
    assert len(faces) == 20 and total[1] == "20"
    assert abs(float(total[4]) - 0.177540) <= 5e-5
    assert abs(float(total[2]) - 4 * math.pi) <= 1e-9
    mus = [float(r[4]) for r in faces]
    sols = [float(r[2]) for r in faces]
    assert max(mus) - min(mus) < 1e-12 and max(sols) - min(sols) < 1e-12


@pytest.mark.criterion(3, "vertex types: cutoff p <= 7, q <= 5")
def test_criterion_3_vertex_types():
    with Clock(5.0):
        scan = scan_vertex_types(12, 12)
    assert (scan.max_p, scan.max_q) == (7, 5)
    assert not scan.undecided
    for pq in ((8, 0), (0, 6)):
        cert = scan.proofs[pq].certificate
        assert check_certificate(vertex_type_system(*pq), cert).proven


@pytest.mark.criterion(4, "superadditivity of D and the t_n table")
def test_criterion_4_superadditivity():
    with Clock(1.0):
        rep = check_superadditivity()
    assert rep.ok and rep.checked > 0 and rep.generating_checked > 0
    t4 = Fraction("0.031")
    assert t4 + t4 == t4 + 2 * Fraction("0.0155")


def _random_system(rng, feasible):
    m, n = int(rng.integers(1, 7)), int(rng.integers(1, 6))
    A = rng.normal(size=(m, n)).round(3)
    c = rng.normal(size=n).round(3)
    x = rng.uniform(-1, 1, size=n)
    b = A @ x + rng.uniform(0, 0.5, size=m)
    # widen half the coefficients into genuine intervals around the planted data
    rows = []
    for i in range(m):
        row = []
        for j in range(n):
            a = float(A[i, j])
            w = 1e-3 if rng.random() < 0.5 else 0.0
            row.append((j, Interval(a - w, a + w) if w else Interval.from_decimal(repr(a))))
        rows.append(row)
    cx = float(c @ x)
    M = cx - float(rng.uniform(0, 1e-9)) if feasible else cx + float(rng.uniform(0.2, 5))
    s = LinearSystem(n, rows, [float(v) for v in b], [-2.0] * n, [2.0] * n,
                     [Interval.from_decimal(repr(float(v))) for v in c], M)
    return s, x


@pytest.mark.criterion(5, "certificate soundness under fuzzing")
def test_criterion_5_certificate_soundness():
    rng = np.random.default_rng(2024)
    proven = planted = 0
    with Clock(60.0):
        for trial in range(1000):
            feasible = trial % 2 == 0
            s, x = _random_system(rng, feasible)
            cands = [rng.uniform(0, 3, size=s.m), np.abs(rng.normal(size=s.m)) * 1e5]
            ans = builtin_certificate(s)
            if ans.certificate is not None:
                y = np.array(ans.certificate.y)
                cands += [y, y * (1 + 1e-9), np.maximum(y + rng.normal(size=s.m) * 1e-6, 0)]
            for y in cands:
                chk = check_certificate(s, y)
                if feasible:
                    assert not chk.proven
                elif chk.proven:
                    exact = bound_exact(s, y)
                    assert exact is not None and exact < Fraction(s.M.lo)
                    proven += 1
            planted += feasible
    assert planted == 500 and proven >= 250


@pytest.mark.criterion(6, "prover: eta, Delta and the mu slice")
def test_criterion_6_prover():
    two_t = 2 * K.t_dod()
    with Clock(600.0):
        # (a) eta > 2/sqrt 3 - 1e-9 on [2, 2t]^3
        bound = 2 / math.sqrt(3) - 1e-9
        task = VerifyTask((parse(f"- eta var_0 var_1 var_2 const {bound!r}"),),
                          Box.from_bounds([(2, two_t.hi)] * 3))
        assert isinstance(verify(task), Verified)

        # (b) Delta > 0 on the box of squared lengths
        delta = parse("delta var_0 var_1 var_2 var_3 var_4 var_5")
        res = verify(VerifyTask((delta,), Box.from_bounds([(4, two_t.sqr().hi)] * 6)))
        assert isinstance(res, Verified)
        # on the degenerate boundary (a flat configuration) nothing is claimed
        flat = [(4, 4), (4, 4), (4, 4), (8, 8), (15.5, 16), (8, 8)]
        res = verify(VerifyTask((delta,), Box.from_bounds(flat), budget=2000, min_width=1e-6))
        assert isinstance(res, BudgetExhausted) and any(c.box[4].hi == 16 for c in res.frontier)
        beyond = list(flat)
        beyond[4] = (16.2, 16.5)
        assert isinstance(verify(VerifyTask((delta,), Box.from_bounds(beyond))), Failed)

        # (c) mu > -1e-6 with five edges in [2, 2.02] and one in [2, 2t]
        dom = [(2, 2.02)] * 6
        dom[3] = (2, two_t.hi)
        task = VerifyTask((parse("+ mu var_0 var_1 var_2 var_3 var_4 var_5 const 1e-6"),),
                          Box.from_bounds(dom), budget=200_000)
        assert isinstance(verify(task), Verified)


def _components(faces):
    parent = {}

    def find(v):
        while parent.setdefault(v, v) != v:
            v = parent[v]
        return v

    for f in faces:
        for a, b in zip(f, f[1:] + f[:1]):
            parent[find(a)] = find(b)
    return len({find(v) for f in faces for v in f})


@pytest.mark.criterion(7, "hypermap laws on random face lists")
def test_criterion_7_hypermap_laws():
    rng = random.Random(7)
    for trial in range(1000):
        faces = random_planar_faces(rng, max_edges=12)
        h = from_face_list(faces)
        assert h.size <= 24
        assert all(h.e[h.n[h.f[x]]] == x for x in range(h.size))
        assert is_involutive(h) and is_planar(h) and is_connected(h)
        V = len({v for f in faces for v in f})
        E = sum(map(len, faces)) // 2
        assert V - E + len(faces) == 2 * _components(faces)
        if trial % 2:
            sigma = list(range(h.size))
            rng.shuffle(sigma)
            other = relabel(h, sigma)
        else:
            other = from_face_list(random_planar_faces(rng, max_edges=12))
        assert (canonical_form(h) == canonical_form(other)) == brute_isomorphic(h, other)


@pytest.mark.criterion(8, "generator matches brute force on triangulations")
def test_criterion_8_generator_oracle():
    params = GenParams(max_nodes=14, min_nodes=4, face_sizes=(3,), min_degree=4, max_degree=6,
                       squander=False, tame_filters=False)

    def key(f):
        return canonical_form(from_face_list(f), allow_improper=True)

    with Clock(300.0):
        got = [key(f) for f in enumerate_maps(params)]
        want = {key(f) for f in hole_fill(14, 4, 6, 4)}
    assert len(got) == len(set(got))
    missing, spurious = want - set(got), set(got) - want
    assert not missing and not spurious
    assert len(want) > 100


def _validate_archive(arc, params):
    assert not arc.duplicates()
    verdicts = []
    for h in arc:
        assert is_involutive(h) and is_planar(h)
        rep = is_tame(h, weights=False)
        assert not rep.failed(), rep.details
        verdicts.append(weight_feasible(h).feasible)
        r = replay(to_face_list(h), params)
        assert r.ok, r.reason
    return verdicts


@pytest.mark.criterion(9, "archive validation and containment replay")
def test_criterion_9_published_archive():
    assert PUBLISHED_ARCHIVE.exists(), (
        f"the published archive of tame hypermaps is not bundled; place it at {PUBLISHED_ARCHIVE}")
    arc = read_archive(PUBLISHED_ARCHIVE)
    assert len(arc) == 206
    verdicts = _validate_archive(arc, GenParams(max_nodes=max(len(h.nodes()) for h in arc)))
    assert len(verdicts) == 206


@pytest.mark.criterion(9, "archive validation and containment replay")
def test_criterion_9_checks_on_self_generated_archive():
    # the same checks on the archive this generator produced at 14 nodes
    arc = read_archive(DATA / "tame_archive.txt")
    verdicts = _validate_archive(arc, GenParams(max_nodes=14))
    assert all(verdicts)


@pytest.mark.criterion(10, "geometry against Monte Carlo volumes")
def test_criterion_10_geometry_oracles():
    n = 200_000
    fails = []
    with Clock(600.0):
        rng = np.random.default_rng(10)
        for k in range(50):
            h = float(rng.uniform(1.0, T))
            v = cap_vol(h, T)
            est, se = mc.cap_volume(h, T, n=n, rng=np.random.default_rng(100 + k))
            if abs(v - est) > 3 * se:
                fails.append(("cap_vol", k))
            vq, wq, b = random_quoin_params(rng)
            q = quo(np.linalg.norm(vq) / 2, b, T)
            est, se = mc.quoin_volume(vq, wq, T, n=n, rng=np.random.default_rng(200 + k))
            if abs(q - est) > 3 * se:
                fails.append(("quo", k))
            r = (3, 4, 5, 6)[k % 4]
            verts = random_cap_triangle(rng) if r == 3 else random_face(rng, r)
            w = omega_face(FaceCycle(verts))
            est, se = mc.face_cell_volume(verts, T, n=n, rng=np.random.default_rng(300 + k))
            if abs(w - est) > 3 * se:
                fails.append(("omega_face", k))
            pts = random_small_simplex(rng)
            w = omega_triangle(*pts)
            est, se = mc.simplex_cell_volume(*pts, n=n, rng=np.random.default_rng(400 + k))
            if abs(w - est) > 3 * se:
                fails.append(("omega_triangle", k))
    assert not fails, fails
