"""One test per acceptance criterion; each prints a PASS/FAIL line per check."""
import numpy as np
import pytest

from sublorentz import geodesic_engine as ge
from sublorentz import hamiltonian_oracle as ho
from sublorentz import heisenberg as hz
from sublorentz import reachability as rc
from sublorentz.algebra import CausalKind, a_squared_explicit, lorentz_force_matrix, one_form_residual
from sublorentz.em_field import canonical_block_matrix, canonical_frame
from sublorentz.heisenberg import HKind, HPoint, HRegion
from sublorentz.reachability import Classification, EndpointQuery

PI = np.pi


class Report:
    """Collects checks, prints one PASS/FAIL line each, then asserts them all."""

    def __init__(self, capsys):
        self.capsys = capsys
        self.results = []

    def __call__(self, label, ok, detail=""):
        with self.capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {label} {detail}".rstrip(), end="")
        self.results.append((label, bool(ok)))

    def verify(self):
        with self.capsys.disabled():
            print()
        failed = [label for label, ok in self.results if not ok]
        assert not failed, f"failed checks: {failed}"


@pytest.fixture
def report(capsys):
    return Report(capsys)


@pytest.fixture(scope="module")
def oracle_runs():
    rng = np.random.default_rng(7)
    params = []
    for _ in range(100):
        d = rng.normal(size=3)
        theta = d / np.linalg.norm(d) * rng.uniform(0.1, 10)
        v = rng.normal(size=4)
        v0 = v / np.linalg.norm(v) * rng.uniform(0, 2)
        params.append(ge.make_params(theta, v0))
    devs, trajs = ho.compare_batch(params, T=1.0, steps=10_000, samples=101)
    return params, devs, trajs


def _unit(rng):
    d = rng.normal(size=3)
    return d / np.linalg.norm(d)


def test_c01_closed_form_vs_oracle(report, oracle_runs):
    _, devs, _ = oracle_runs
    worst = float(devs.max())
    report("C1 closed form vs Hamiltonian oracle (100 runs, 1e4 steps)", worst <= 1e-6, f"max dev {worst:.3e}")
    report.verify()


def test_c02_energy_conservation(report, oracle_runs):
    _, _, trajs = oracle_runs
    worst = max(ho.energy_drift(tr) for tr in trajs)
    report("C2 Hamiltonian drift relative", worst <= 1e-8, f"max {worst:.3e}")
    report.verify()


def test_c03_horizontality(report, oracle_runs):
    params, _, trajs = oracle_runs
    closed = 0.0
    for p in params:
        for t in np.linspace(0, 1, 101):
            s = ge.eval(p, t)
            closed = max(closed, float(np.max(np.abs(one_form_residual(s.x_original, s.tangent7)))))
    oracle = max(ho.horizontality_residual(tr) for tr in trajs)
    report("C3 horizontality, closed-form samples", closed <= 1e-9, f"max {closed:.3e}")
    report("C3 horizontality, oracle states", oracle <= 1e-9, f"max {oracle:.3e}")
    report.verify()


def test_c04_frame_suite(report):
    rng = np.random.default_rng(11)
    worst = dict(P=0.0, curlyP=0.0, block=0.0, eps=0.0, eig=0.0)
    for _ in range(100):
        th = _unit(rng) * rng.uniform(0.1, 10)
        n = np.linalg.norm(th)
        fr = canonical_frame(th)
        A, _ = lorentz_force_matrix(th)
        worst["P"] = max(worst["P"], np.abs(fr.P.T @ fr.P - np.eye(4)).max())
        worst["curlyP"] = max(worst["curlyP"], np.abs(fr.curlyP.T @ fr.curlyP - np.eye(3)).max())
        worst["block"] = max(worst["block"], np.abs(np.linalg.inv(fr.P) @ A @ fr.P - canonical_block_matrix(n)).max())
        worst["eps"] = max(worst["eps"], abs(fr.eps - n), abs(fr.delta - n))
        ev = np.sort_complex(np.linalg.eigvals(A))
        expect = np.sort_complex(np.array([-n, n, -1j * n, 1j * n]))
        worst["eig"] = max(worst["eig"], np.abs(ev - expect).max())
    for name, val in worst.items():
        report(f"C4 frame suite {name}", val <= 1e-10, f"max {val:.3e}")
    report.verify()


def test_c05_identity_suite(report):
    rng = np.random.default_rng(12)
    ident = zsq = 0.0
    for _ in range(1000):
        v0 = rng.uniform(-2, 2, 4)
        a1, a2, a3, a4 = ge.a_constants(v0)
        v1, v2 = -v0[0] ** 2 + v0[1] ** 2, v0[2] ** 2 + v0[3] ** 2
        s = v0[0] ** 2 + v0[1] ** 2
        ident = max(ident, abs(a1**2 + a4**2 - s * v2), abs(a2**2 + a3**2 - s * v2),
                    abs(a1 * a2 + a3 * a4 + v1 * v2), abs(a1 * a3 - a2 * a4 - 2 * v0[0] * v0[1] * v2))
        p = ge.make_params(_unit(rng) * rng.uniform(0.1, 10), v0)
        t = rng.uniform(0, 1)
        zt = ge.ztilde_at(p, t)
        rhs = ge.zsquare_closed_form(p, t)
        zsq = max(zsq, abs(zt[1] ** 2 + zt[2] ** 2 - rhs) / max(1.0, abs(rhs)))
    a2err = 0.0
    for _ in range(1000):
        th = rng.normal(size=3)
        A, _ = lorentz_force_matrix(th)
        a2err = max(a2err, np.abs(a_squared_explicit(th) - A @ A).max())
    report("C5 a-constant identities", ident <= 1e-10, f"max {ident:.3e}")
    report("C5 z~2^2 + z~3^2 product form (relative)", zsq <= 1e-10, f"max {zsq:.3e}")
    report("C5 A^2 explicit entrywise", a2err <= 1e-14, f"max {a2err:.3e}")
    report.verify()


def test_c06_origin_axis_family(report):
    z1 = np.array([1.0, 0.0, 0.0])
    rep = rc.connect(EndpointQuery(np.zeros(4), z1, 5))
    report("C6 classification OriginAxisFamily", rep.classification is Classification.ORIGIN_AXIS_FAMILY)
    for n, g in enumerate(rep.geodesics, 1):
        theta_ok = np.abs(g.params.theta - [2 * PI * n, 0, 0]).max() <= 1e-12
        s = ge.eval(g.params, 1.0)
        hit = float(np.abs(np.concatenate([s.x_canonical, s.z - z1])).max())
        report(f"C6 n={n} theta = (2 pi n, 0, 0)", theta_ok)
        report(f"C6 n={n} hits (0, z1)", hit <= 1e-8, f"err {hit:.3e}")
        report(f"C6 n={n} spacelike", g.causal.kind is CausalKind.SPACELIKE)
        expect = np.sqrt(2 * PI * n)
        report(f"C6 n={n} length = sqrt(2 pi n)", abs(g.length - expect) <= 1e-8,
               f"got {g.length:.10f} want {expect:.10f}")
    report.verify()


def _tan_tanh_bisection(k):
    # plain bisection on tan u - tanh u over (k pi, k pi + pi/2), independent of the library
    a, b = k * PI + 1e-9, k * PI + PI / 2 - 1e-9
    for _ in range(200):
        m = (a + b) / 2
        if np.tan(m) - np.tanh(m) < 0:
            a = m
        else:
            b = m
    return a + b


def test_c07_mu_machinery(report):
    m = rc.mu(0.01)
    report("C7 mu(0.01) = 0.002 +- 1e-4", abs(m - 0.002) <= 1e-4, f"got {m:.7f}")
    th1 = rc.theta_k_roots(1)[0].value
    ref = _tan_tanh_bisection(1)
    report("C7 theta_1 vs independent bisection", abs(th1 - ref) <= 1e-6, f"{th1:.12f} vs {ref:.12f}")
    report("C7 theta_1 = 7.8532...", abs(th1 - 7.8532) <= 1e-4, f"{th1:.6f}")
    worst = max(rc.mu(r.value) for r in rc.theta_k_roots(6))
    report("C7 mu(theta_k) <= 1e-10, k = 1..6", worst <= 1e-10, f"max {worst:.3e}")
    m0 = rc.m0()
    bound = 4 * np.sinh(PI) ** 2 / (2 * np.sinh(PI) + PI * np.cosh(PI) - 3 * PI)
    report("C7 m0 below its upper bound", m0 <= bound, f"m0 {m0:.6f} bound {bound:.6f}")
    report.verify()


def _check_roundtrip(report, label, reps, tol_theta=1e-8, tol_hit=1e-6):
    theta_err = max(r[0] for r in reps)
    hit_err = max(r[1] for r in reps)
    report(f"C8 {label} generating theta recovered", theta_err <= tol_theta, f"max {theta_err:.3e}")
    report(f"C8 {label} endpoints re-hit", hit_err <= tol_hit, f"max {hit_err:.3e}")


def test_c08_connect_roundtrips(report):
    rng = np.random.default_rng(21)
    spacelike = True

    reps = []
    for _ in range(20):
        r, d = rng.uniform(0.2, 2), _unit(rng)
        v0 = np.array([r * rng.choice([-1, 1]), *(r * d)])
        x, z = ge.endpoint(ge.make_params((0, 0, 0), v0))
        rep = rc.connect(EndpointQuery(x, z, 2))
        assert rep.classification is Classification.UNIQUE_LIGHTLIKE_LINE
        g = rep.geodesics[0]
        reps.append((float(np.abs(g.params.theta).max() + np.abs(g.params.v0 - v0).max()), g.hit_error))
    _check_roundtrip(report, "(a) lightlike line", reps)

    reps = []
    for _ in range(20):
        n = int(rng.integers(1, 4))
        theta = 2 * PI * n * _unit(rng)
        r, a = rng.uniform(0.2, 2), rng.uniform(0, 2 * PI)
        p = ge.make_params(theta, (0, 0, r * np.cos(a), r * np.sin(a)), rng.uniform(-3, 3))
        x, z = ge.endpoint(p)
        rep = rc.connect(EndpointQuery(np.zeros(4), z, 3))
        assert rep.classification is Classification.ORIGIN_AXIS_FAMILY
        g = rep.geodesics[n - 1]
        spacelike &= all(h.causal.kind is CausalKind.SPACELIKE for h in rep.geodesics)
        reps.append((float(np.abs(g.params.theta - theta).max()),
                     max(float(np.linalg.norm(x)), *(h.hit_error for h in rep.geodesics))))
    _check_roundtrip(report, "(b) origin axis", reps)

    # the family is one representative per n; the circle phase and the rotations fixing
    # z1 are a symmetry, so |theta| and the speeds |x0'(0)|, r identify the generator
    reps = []
    for _ in range(20):
        n = int(rng.integers(1, 4))
        tau = 2 * PI * n
        d, r, a = rng.uniform(-1, 1), rng.uniform(0.2, 2), rng.uniform(0, 2 * PI)
        v0 = np.array([d, d * rng.choice([-1, 1]), r * np.cos(a), r * np.sin(a)])
        p = ge.make_params(tau * _unit(rng), v0, rng.uniform(-3, 3))
        x, z = ge.endpoint(p)
        x = np.array([x[0], x[1], 0.0, 0.0])
        rep = rc.connect(EndpointQuery(x, z, 3))
        assert rep.classification is Classification.NULL_HYPERPLANE_FAMILY
        g = rep.geodesics[n - 1]
        spacelike &= all(h.causal.kind is CausalKind.SPACELIKE for h in rep.geodesics)
        err = max(abs(g.params.theta_norm - tau), abs(abs(g.params.v0[0]) - abs(d)),
                  abs(np.hypot(*g.params.v0[2:]) - r))
        reps.append((err, max(h.hit_error for h in rep.geodesics)))
    _check_roundtrip(report, "(c) null hyperplane", reps)

    reps = []
    while len(reps) < 20:
        tau = rng.uniform(0.3, rc.theta_k_roots(3)[-1].value - 0.1)
        if ge.is_singular_time(tau, 1.0, 1e-3):
            continue
        v2 = rng.uniform(0.2, 2)
        v1 = -rc.nu(tau) * v2
        a, h = rng.uniform(0, 2 * PI), rng.uniform(-1, 1)
        v0 = np.array([np.sqrt(-v1) * np.cosh(h), np.sqrt(-v1) * np.sinh(h),
                       np.sqrt(v2) * np.cos(a), np.sqrt(v2) * np.sin(a)])
        p = ge.make_params((rng.choice([-1, 1]) * tau, 0, 0), v0, rng.uniform(-3, 3))
        x, z = ge.endpoint(p)
        rep = rc.connect(EndpointQuery(x, z, 3))
        assert rep.classification is Classification.GENERAL_MU_FAMILY
        spacelike &= all(g.causal.kind is CausalKind.SPACELIKE for g in rep.geodesics)
        err = min(float(np.abs(g.params.theta - p.theta).max()) for g in rep.geodesics)
        reps.append((err, max(g.hit_error for g in rep.geodesics)))
    _check_roundtrip(report, "(d) general mu family", reps)

    x = np.array([np.sqrt(1.25), 1.0, 0.5, 0.0])
    rep = rc.connect(EndpointQuery(x, [1.0, np.sqrt(1.2 * rc.m0()), 0.0], 3))
    report("C8 (d) ratio > m0 gives NoGeodesic", rep.classification is Classification.NO_GEODESIC,
           f"ratio {rep.mu_ratio:.4f} m0 {rc.m0():.4f}")
    report("C8 every geodesic to a null x1 with z1 != 0 is spacelike", spacelike)
    report.verify()


def test_c09_heisenberg(report):
    rng = np.random.default_rng(31)
    err = 0.0
    unique = True
    for _ in range(100):
        theta = rng.uniform(-6, 6)
        a = rng.choice([-1, 1]) * rng.uniform(0.3, 2)
        p = hz.h_shoot(theta, (a, a * rng.uniform(-0.9, 0.9)))
        c = hz.h_connect(p)
        unique &= c.region is HRegion.RT and c.kind is HKind.GEODESIC and abs(c.theta - theta) <= 1e-9
        err = max(err, float(np.abs(c.at(1.0).as_array() - p.as_array()).max()))
    report("C9 100 Rt roundtrips recover the unique root", unique)
    report("C9 Rt roundtrip endpoint error", err <= 1e-8, f"max {err:.3e}")

    total = exclusive = True
    count = 0
    for x in np.linspace(-2, 2, 21):
        for y in np.linspace(-2, 2, 21):
            for z in np.linspace(-1, 1, 23):
                x, y, z = round(x, 12), round(y, 12), round(z, 12)
                q = -x * x + y * y
                labels = [
                    x == 0 and y == 0 and z == 0,
                    q < 0 and 4 * abs(z) < -q,
                    q > 0 and 4 * abs(z) < q,
                    q == 0 and z == 0 and not (x == 0 and y == 0),
                ]
                labels.append(not any(labels))
                exclusive &= sum(labels) == 1
                names = [HRegion.ORIGIN, HRegion.RT, HRegion.RSP, HRegion.RL, HRegion.COMPLEMENT]
                total &= hz.h_classify(HPoint(x, y, z), tol=0.0) is names[labels.index(True)]
                count += 1
    report(f"C9 classification total on {count} grid points", total)
    report("C9 classification exclusive", exclusive)
    report("C9 (1, 0, 0.3) has no geodesic", hz.h_connect(HPoint(1, 0, 0.3)).kind is HKind.NO_GEODESIC)
    c = hz.h_connect(HPoint(1, 1, 0))
    report("C9 (1, 1, 0) is a straight line", c.kind is HKind.STRAIGHT_LINE and c.region is HRegion.RL)
    report.verify()


def test_c10_small_theta_continuity(report):
    rng = np.random.default_rng(41)
    worst = 0.0
    for _ in range(50):
        th = 1e-6 * _unit(rng)
        v0 = rng.uniform(-2, 2, 4)
        p = ge.make_params(th, v0, rng.uniform(-3, 3))
        vo = p.frame.P @ v0
        for t in np.linspace(0, 1, 101):
            s = ge.eval(p, t, rates=False)
            worst = max(worst, float(np.abs(s.x_original - vo * t).max()), float(np.abs(s.z).max()))
    report("C10 |theta| = 1e-6 vs straight lines on [0, 1]", worst <= 1e-5, f"max {worst:.3e}")
    report.verify()
