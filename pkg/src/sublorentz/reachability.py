"""Boundary-value solving from the origin: which endpoints (x1, z1) are joined
by geodesics, and which geodesics join them.

Conventions: x1 is given in canonical coordinates, z1 in original
coordinates.  A geodesic with vertical map curlyP reaches z = 1/2 curlyP^T z~,
so connecting means finding |theta|, v0 with x(1) = x1 and a rotation
curlyP with curlyP z1 = z~(1) / 2.

The transcendental part is the function

    mu(t) = f(t) / g(t),
    f(t)  = cosh t - cos t - sin t sinh t = 2 (sin u cosh u - cos u sinh u)^2,
    g(t)  = sin^2 u (sinh t - t) + sinh^2 u (t - sin t),      u = t / 2,

whose zeros are the roots of tan u = tanh u.
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from . import _series as S
from . import geodesic_engine as ge
from ._roots import bisect, golden_section_max
from .algebra import CausalClass, causal_classify, lorentz_inner
from .em_field import frame_for_vertical_map
from .errors import InvalidQuery

# grid points per interval when scanning |z~1(t)| for the x1 = 0 subcase
_SCAN_POINTS = 400


# ---------------------------------------------------------------------------
# transcendental machinery


def boundary_norm(theta_norm, v1, v2):
    """|x(1)|_L^2 = (4 / |theta|^2) (v1 sinh^2(|theta|/2) + v2 sin^2(|theta|/2))."""
    if theta_norm <= 0:
        raise ValueError("theta_norm must be positive")
    u = theta_norm / 2
    return 4.0 / theta_norm**2 * (v1 * np.sinh(u) ** 2 + v2 * np.sin(u) ** 2)


def nu(theta_norm):
    """sin^2(|theta|/2) / sinh^2(|theta|/2), the null-endpoint ratio -v1/v2."""
    if theta_norm <= 0:
        raise ValueError("theta_norm must be positive")
    u = theta_norm / 2
    if u > 350:
        return float(4 * np.sin(u) ** 2 * np.exp(-2 * u) / (1 - np.exp(-2 * u)) ** 2)
    return float((np.sin(u) / np.sinh(u)) ** 2)


def mu_numerator(t):
    """f(t) = cosh t - cos t - sin t sinh t, evaluated as a square."""
    return float(2 * S.s_ch_minus_c_sh(t / 2) ** 2)


def mu_denominator(t):
    """g(t) = sin^2(t/2)(sinh t - t) + sinh^2(t/2)(t - sin t)."""
    u = t / 2
    return float(np.sin(u) ** 2 * S.sinh_minus_id(t) + np.sinh(u) ** 2 * S.id_minus_sin(t))


def mu(t):
    """f / g, with mu(0) = 0; for t >= 2 both are divided by cosh^2(t/2)."""
    t = float(t)
    if t < 0:
        raise ValueError("mu is defined for t >= 0")
    if t == 0.0:
        return 0.0
    if t < 2.0:
        return mu_numerator(t) / mu_denominator(t)
    u = t / 2
    th = np.tanh(u)
    e = np.exp(-t)
    sech2 = 4 * e / (1 + e) ** 2
    s, c = np.sin(u), np.cos(u)
    num = 2 * (s - c * th) ** 2
    den = s * s * (2 * th - t * sech2) + th * th * (t - np.sin(t))
    return float(num / den)


def tan_tanh_residual(t):
    """tan(t/2) - tanh(t/2)."""
    return float(np.tan(t / 2) - np.tanh(t / 2))


class RootKind(str, Enum):
    ZERO_OF_MU = "ZeroOfMu"
    MU_SOLUTION = "SolutionOfMuEquation"
    THETA_K = "ThetaK"


@dataclass(frozen=True)
class MuRoot:
    value: float
    interval_index: int
    kind: RootKind

    def to_dict(self):
        return {"value": self.value, "interval_index": self.interval_index, "kind": self.kind.value}


def _tan_tanh_sine_form(u):
    # cos u (tan u - tanh u): continuous across the poles of tan
    return np.sin(u) - np.cos(u) * np.tanh(u)


@lru_cache(maxsize=None)
def _theta_k(k):
    a, b = k * np.pi, k * np.pi + np.pi / 2
    return 2 * bisect(_tan_tanh_sine_form, a, b)


def theta_k_roots(k_max):
    """The roots t_k, k = 1..k_max, of tan(t/2) = tanh(t/2); t_k lies in (2k pi, (2k+1) pi)."""
    if int(k_max) < 1:
        raise ValueError("k_max must be >= 1")
    return [MuRoot(_theta_k(k), k, RootKind.THETA_K) for k in range(1, int(k_max) + 1)]


def _interval(k):
    lo = 0.0 if k == 0 else _theta_k(k)
    return lo, _theta_k(k + 1)


@lru_cache(maxsize=None)
def _mu_max(k):
    lo, hi = _interval(k)
    return golden_section_max(mu, lo, hi, tol=1e-10)


def mu_maxima(k_max):
    """[(m_k, argmax_k)] for the intervals (t_k, t_{k+1}), k = 0..k_max-1, with t_0 = 0."""
    if int(k_max) < 1:
        raise ValueError("k_max must be >= 1")
    return [(_mu_max(k)[1], _mu_max(k)[0]) for k in range(int(k_max))]


def m0_upper_bound():
    """4 sinh^2(pi) / (2 sinh(pi) + pi cosh(pi) - 3 pi), an upper bound for m_0."""
    p = np.pi
    return float(4 * np.sinh(p) ** 2 / (2 * np.sinh(p) + p * np.cosh(p) - 3 * p))


def m0():
    return _mu_max(0)[1]


def solve_mu_equation(ratio, k_max):
    """All t in (0, t_{k_max}) with mu(t) = ratio.

    Each interval (t_k, t_{k+1}) is split at the maximiser of mu and each
    monotone half is bisected.  ratio = 0 returns the roots t_1..t_{k_max}.
    """
    if ratio < 0:
        raise ValueError("ratio must be nonnegative")
    if int(k_max) < 1:
        raise ValueError("k_max must be >= 1")
    if ratio == 0:
        return theta_k_roots(k_max)
    out = []
    g = lambda t: mu(t) - ratio
    for k in range(int(k_max)):
        lo, hi = _interval(k)
        arg, top = _mu_max(k)
        if ratio > top:
            continue
        if ratio == top:
            out.append(MuRoot(arg, k, RootKind.MU_SOLUTION))
            continue
        left = bisect(g, lo, arg)
        if left > 0:
            out.append(MuRoot(left, k, RootKind.MU_SOLUTION))
        out.append(MuRoot(bisect(g, arg, hi), k, RootKind.MU_SOLUTION))
    return out


def initial_velocity_from_endpoint(theta_norm, x1):
    """x'(0) = W(1)^{-1} x1 in canonical coordinates; raises SingularAt on 2 pi Z.

    The hyperbolic block is inverted on the light-cone components x0 +- x1,
    which keeps full relative accuracy when x0 and x1 are large and nearly equal.
    """
    x = np.asarray(x1, dtype=float)
    v = ge.w_inverse(theta_norm, 1.0) @ x
    t = float(theta_norm)
    p = (x[0] + x[1]) * t / np.expm1(t)
    m = -(x[0] - x[1]) * t / np.expm1(-t)
    v[0], v[1] = (p + m) / 2, (p - m) / 2
    return v


def velocity_invariants_from_endpoint(theta_norm, x1):
    """(v1, v2) from the endpoint: v1 = t^2(-x0^2 + x1^2)/(4 sinh^2(t/2)),
    v2 = t^2(x2^2 + x3^2)/(4 sin^2(t/2))."""
    x = np.asarray(x1, dtype=float)
    t = float(theta_norm)
    v1 = -t * t * (x[0] + x[1]) * (x[0] - x[1]) / (4 * np.sinh(t / 2) ** 2)
    v2 = t * t * (x[2] ** 2 + x[3] ** 2) / (4 * np.sin(t / 2) ** 2)
    return v1, v2


# ---------------------------------------------------------------------------
# connect


class Classification(str, Enum):
    UNIQUE_LIGHTLIKE_LINE = "UniqueLightlikeLine"
    ORIGIN_AXIS_FAMILY = "OriginAxisFamily"
    NULL_HYPERPLANE_FAMILY = "NullHyperplaneFamily"
    GENERAL_MU_FAMILY = "GeneralMuFamily"
    CONSTANT_Z_LINE = "ConstantZLine"
    NO_GEODESIC = "NoGeodesic"
    OUT_OF_SCOPE = "OutOfImplementedScope"


@dataclass(frozen=True)
class EndpointQuery:
    """Endpoint (x1, z1) and optional start (0, z0); x1 canonical, z1 and z0 original."""
    x1: np.ndarray
    z1: np.ndarray
    n_max: int = 3
    z0: np.ndarray | None = None

    def __post_init__(self):
        x1 = np.asarray(self.x1, dtype=float)
        z1 = np.asarray(self.z1, dtype=float)
        if x1.shape != (4,) or z1.shape != (3,):
            raise InvalidQuery("endpoint needs a 4-vector x1 and a 3-vector z1")
        if not (np.all(np.isfinite(x1)) and np.all(np.isfinite(z1))):
            raise InvalidQuery("endpoint coordinates must be finite")
        if int(self.n_max) != self.n_max or int(self.n_max) < 1:
            raise InvalidQuery("n_max must be a positive integer")
        object.__setattr__(self, "x1", x1)
        object.__setattr__(self, "z1", z1)
        object.__setattr__(self, "n_max", int(self.n_max))
        if self.z0 is not None:
            z0 = np.asarray(self.z0, dtype=float)
            if z0.shape != (3,) or not np.all(np.isfinite(z0)):
                raise InvalidQuery("start z0 must be a finite 3-vector")
            object.__setattr__(self, "z0", z0)


@dataclass(frozen=True)
class ConnectedGeodesic:
    params: ge.GeodesicParams
    causal: CausalClass
    length: float | None
    family_index: int
    hit_error: float

    def to_dict(self):
        return {
            "theta": [float(t) for t in self.params.theta],
            "theta_norm": self.params.theta_norm,
            "v0": [float(v) for v in self.params.v0],
            "phase": self.params.phase,
            "causal": self.causal.kind.value,
            "orientation": self.causal.orientation.value,
            "length": self.length,
            "family_index": self.family_index,
            "hit_error": self.hit_error,
        }


@dataclass(frozen=True)
class ConnectReport:
    classification: Classification
    geodesics: list = field(default_factory=list)
    mu_ratio: float | None = None
    solved_thetas: list = field(default_factory=list)
    completeness: str = "complete"
    symmetry: str | None = None
    tolerance: float = 0.0
    start_z: tuple = (0.0, 0.0, 0.0)
    note: str | None = None

    def to_dict(self):
        return {
            "classification": self.classification.value,
            "geodesics": [g.to_dict() for g in self.geodesics],
            "mu_ratio": self.mu_ratio,
            "solved_thetas": [r.to_dict() for r in self.solved_thetas],
            "completeness": self.completeness,
            "symmetry": self.symmetry,
            "tolerance": self.tolerance,
            "start_z": list(self.start_z),
            "note": self.note,
        }


def rotation_taking(a, b):
    """Proper rotation R taking the direction of a to the direction of b."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    c = float(a @ b)
    if c < -1 + 1e-12:
        # half turn about any axis perpendicular to a
        u = np.cross(a, np.eye(3)[int(np.argmin(np.abs(a)))])
        u /= np.linalg.norm(u)
        return 2 * np.outer(u, u) - np.eye(3)
    v = np.cross(a, b)
    K = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
    return np.eye(3) + K + K @ K / (1 + c)


def _hit_error(params, x1, z1):
    s = ge.eval(params, 1.0, rates=False)
    return float(np.linalg.norm(np.concatenate([s.x_canonical - x1, s.z - z1])))


def _connected(params, x1, z1, family_index):
    sl = ge.speed_and_length(params)
    return ConnectedGeodesic(params, sl.causal, sl.length, family_index, _hit_error(params, x1, z1))


def _geodesic_with_vertical(tau, v0, z, family_index, x1):
    """Geodesic with |theta| = tau, canonical v0 and curlyP chosen so z(1) = z."""
    probe = ge.make_params((tau, 0.0, 0.0), v0)
    zt = ge.ztilde_at(probe, 1.0)
    target = rotation_taking(z / np.linalg.norm(z), zt / np.linalg.norm(zt))
    theta, psi = frame_for_vertical_map(tau, target)
    return _connected(ge.make_params(theta, v0, psi), x1, z, family_index)


def _origin_axis(z, n_max, x1):
    out = []
    zn = float(np.linalg.norm(z))
    for n in range(1, n_max + 1):
        tau = 2 * np.pi * n
        v0 = np.array([0.0, 0.0, np.sqrt(2 * tau * zn), 0.0])
        out.append(_geodesic_with_vertical(tau, v0, z, n, x1))
    return out


def _null_hyperplane(x, z, n_max):
    out = []
    zn = float(np.linalg.norm(z))
    plus = np.sign(x[0]) == np.sign(x[1])
    for n in range(1, n_max + 1):
        tau = 2 * np.pi * n
        if plus:
            d = x[0] * tau / np.expm1(tau)
            dd = (d, d)
        else:
            d = -x[0] * tau / np.expm1(-tau)
            dd = (d, -d)
        # z~2, z~3 are linear in the circle speed r, z~1 = -r^2 / tau
        b = ge.ztilde_at(ge.make_params((tau, 0.0, 0.0), (dd[0], dd[1], 1.0, 0.0)), 1.0)[1:]
        b2 = float(b @ b)
        r2 = 8 * zn**2 / (b2 + np.sqrt(b2 * b2 + 16 * zn**2 / tau**2))
        v0 = np.array([dd[0], dd[1], np.sqrt(r2), 0.0])
        out.append(_geodesic_with_vertical(tau, v0, z, n, x))
    return out


def _aligned_geodesic(tau, x, z, family_index):
    """The aligned reduction: curlyP = diag(-sigma, B) with B a 2x2 orthogonal block."""
    v0 = initial_velocity_from_endpoint(tau, x)
    zt = ge.ztilde_at(ge.make_params((tau, 0.0, 0.0), v0), 1.0)
    sigma = 1.0 if z[0] > 0 else -1.0
    u = zt[1:] / 2
    w = z[1:]
    if np.linalg.norm(w) > 0:
        ang = np.arctan2(u[1], u[0]) - np.arctan2(w[1], w[0])
    else:
        ang = 0.0
    c, s = np.cos(ang), np.sin(ang)
    B = np.array([[c, -s], [s, c]])
    if sigma > 0:
        # reflection with B w = u: rotate after flipping the second axis
        ang = np.arctan2(u[1], u[0]) + np.arctan2(w[1], w[0])
        c, s = np.cos(ang), np.sin(ang)
        B = np.array([[c, s], [s, -c]])
    target = np.zeros((3, 3))
    target[0, 0] = -sigma
    target[1:, 1:] = B
    theta, psi = frame_for_vertical_map(tau, target)
    return _connected(ge.make_params(theta, v0, psi), x, z, family_index), zt


def _z1_scan_roots(x, target, n_max):
    """t in (2 pi k, 2 pi (k+1)), k < n_max, with |z~1(1)| / 2 = target, for x with x0, x1 small."""
    def h(t):
        v0 = initial_velocity_from_endpoint(t, x)
        return abs(ge.ztilde_at(ge.make_params((t, 0.0, 0.0), v0), 1.0)[0]) / 2 - target

    roots = []
    for k in range(n_max):
        lo, hi = 2 * np.pi * k, 2 * np.pi * (k + 1)
        grid = np.linspace(lo, hi, _SCAN_POINTS + 1)[1:-1]
        vals = [h(t) for t in grid]
        for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
            if fa == 0:
                roots.append(MuRoot(float(a), k, RootKind.MU_SOLUTION))
            elif (fa > 0) != (fb > 0):
                roots.append(MuRoot(bisect(h, a, b), k, RootKind.MU_SOLUTION))
    return roots


def _general(x, z, n_max, tol, hit_tol):
    scale = float(np.linalg.norm(x))
    if abs(z[0]) <= tol * max(1.0, float(np.linalg.norm(z))):
        return ConnectReport(Classification.NO_GEODESIC, completeness="partial", tolerance=hit_tol,
                             note="z1 has no component along the aligned axis")
    z23 = float(z[1] ** 2 + z[2] ** 2)
    if abs(x[1]) <= tol * scale:
        if z23 > (tol * float(np.linalg.norm(z))) ** 2:
            return ConnectReport(Classification.NO_GEODESIC, mu_ratio=float("inf"),
                                 completeness="partial", tolerance=hit_tol)
        ratio = None
        roots = _z1_scan_roots(x, abs(z[0]), n_max)
    else:
        ratio = z23 / (abs(z[0]) * x[1] ** 2)
        if ratio > m0():
            return ConnectReport(Classification.NO_GEODESIC, mu_ratio=ratio,
                                 completeness="partial", tolerance=hit_tol)
        roots = solve_mu_equation(ratio, n_max)
    geos, solved = [], []
    for r in roots:
        if ge.is_singular_time(r.value, 1.0):
            continue
        g, zt = _aligned_geodesic(r.value, x, z, r.interval_index)
        # the aligned reduction also needs |z~1(1)| = 2 |z1|
        if abs(abs(zt[0]) - 2 * abs(z[0])) <= 1e-7 * max(1.0, 2 * abs(z[0])) and g.hit_error <= hit_tol:
            geos.append(g)
            solved.append(r)
    cls = Classification.GENERAL_MU_FAMILY if geos else Classification.NO_GEODESIC
    return ConnectReport(cls, geos, ratio, solved, "partial", None, hit_tol)


def connect(query, tol=1e-9):
    """Classify the endpoint and list connecting geodesics (see ConnectReport)."""
    if not tol > 0:
        raise InvalidQuery("tol must be positive")
    x = query.x1
    z0 = np.zeros(3) if query.z0 is None else query.z0
    # left translation by (0, -z0) moves the start to the origin and shifts z only
    z = query.z1 - z0
    xs = float(x @ x)
    zs = float(np.linalg.norm(z))
    scale = max(1.0, float(np.sqrt(xs)), zs)
    hit_tol = max(tol, 1e-8) * scale
    null = abs(float(lorentz_inner(x, x))) <= tol * max(xs, 1e-300)
    common = dict(tolerance=hit_tol, start_z=tuple(float(v) for v in z0))

    if zs <= tol * scale:
        if xs == 0.0:
            return ConnectReport(Classification.OUT_OF_SCOPE, note="start and end coincide", **common)
        params = ge.make_params((0.0, 0.0, 0.0), x)
        g = _connected(params, x, np.zeros(3), 0)
        if null and query.z0 is None:
            return ConnectReport(Classification.UNIQUE_LIGHTLIKE_LINE, [g], **common)
        return ConnectReport(Classification.CONSTANT_Z_LINE, [g], **common)

    if xs == 0.0:
        return ConnectReport(Classification.ORIGIN_AXIS_FAMILY, _origin_axis(z, query.n_max, x),
                             completeness="representative",
                             symmetry="circle phase of (x2'(0), x3'(0))", **common)
    if not null:
        return ConnectReport(Classification.OUT_OF_SCOPE,
                             note="endpoint off the null surface with z1 != 0", **common)
    if x[2] ** 2 + x[3] ** 2 <= (tol * np.sqrt(xs)) ** 2:
        return ConnectReport(Classification.NULL_HYPERPLANE_FAMILY, _null_hyperplane(x, z, query.n_max),
                             completeness="representative",
                             symmetry="circle phase of (x2'(0), x3'(0)) and rotations fixing z1",
                             **common)
    rep = _general(x, z, query.n_max, tol, hit_tol)
    return ConnectReport(rep.classification, rep.geodesics, rep.mu_ratio, rep.solved_thetas,
                         rep.completeness, rep.symmetry, rep.tolerance, common["start_z"], rep.note)


def constant_z_check(samples, tol):
    """True iff z is constant and x is collinear along the samples, both within tol."""
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    zs = np.array([s.z for s in samples], dtype=float)
    xs = np.array([s.x_original for s in samples], dtype=float)
    z_const = float(np.max(np.abs(zs - zs[0]))) <= tol
    d = xs - xs[0]
    sv = np.linalg.svd(d, compute_uv=False)
    collinear = (sv[1] if len(sv) > 1 else 0.0) <= tol * max(1.0, sv[0])
    return bool(z_const and collinear)
