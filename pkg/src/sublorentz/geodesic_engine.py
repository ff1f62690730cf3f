"""Closed-form sub-Lorentzian geodesics from the origin.

All formulas live in canonical coordinates, where the horizontal velocity is
a hyperbolic rotation in the (0, 1) plane and a Euclidean rotation in the
(2, 3) plane, both with angular rate |theta|.  Original-frame output is
produced at sampling time: x = P y and z = 1/2 curlyP^T z~.

Every evaluator accepts ``dtype`` so residual checks can run in extended
precision (``np.longdouble``).
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _series as S
from .algebra import CausalClass, CausalKind, Orientation, ThetaCovector, _frozen, as_theta
from .em_field import CanonicalFrame, canonical_frame
from .errors import SingularAt, ZeroTheta

# |theta| below this is treated as the straight-line case
STRAIGHT_LINE_THRESHOLD = 1e-9


def _theta_norm(theta):
    if isinstance(theta, ThetaCovector):
        return theta.norm
    a = np.asarray(theta)
    if a.ndim == 0:
        return abs(a[()])
    return np.sqrt(np.sum(a * a))


@dataclass(frozen=True)
class GeodesicParams:
    """theta (original frame), v0 = initial velocity in canonical coordinates."""
    theta: np.ndarray
    v0: np.ndarray
    frame: CanonicalFrame | None
    phase: float = 0.0

    @property
    def theta_norm(self):
        return float(np.linalg.norm(self.theta))

    @property
    def v1(self):
        # factored so that v0 = +-v1 gives exactly zero
        return float(-(self.v0[0] + self.v0[1]) * (self.v0[0] - self.v0[1]))

    @property
    def v2(self):
        return float(self.v0[2] ** 2 + self.v0[3] ** 2)

    @property
    def is_straight(self):
        return self.frame is None


def make_params(theta, v0, phase=0.0):
    th = as_theta(theta)
    v0 = _frozen(np.asarray(v0, dtype=np.float64))
    if v0.shape != (4,):
        raise ValueError("v0 must be a 4-vector")
    if np.linalg.norm(th) < STRAIGHT_LINE_THRESHOLD:
        return GeodesicParams(_frozen(th), v0, None, float(phase))
    return GeodesicParams(_frozen(th), v0, canonical_frame(th, phase), float(phase))


@lru_cache(maxsize=512)
def _cached_frame(theta, phase, dtype_name):
    return canonical_frame(np.array(theta), phase, np.dtype(dtype_name).type)


def frame_in(params, dtype):
    """The params' canonical frame computed in ``dtype``."""
    if params.frame is None:
        return None
    if np.dtype(dtype) == params.frame.P.dtype:
        return params.frame
    return _cached_frame(tuple(float(t) for t in params.theta), params.phase, np.dtype(dtype).name)


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    x_canonical: np.ndarray
    x_original: np.ndarray
    z: np.ndarray
    velocity_canonical: np.ndarray
    z_tilde: np.ndarray
    velocity_original: np.ndarray
    z_rate: np.ndarray

    @property
    def state7(self):
        return np.concatenate([self.x_original, self.z])

    @property
    def tangent7(self):
        return np.concatenate([self.velocity_original, self.z_rate])


@dataclass(frozen=True)
class Hyperbola:
    """(x0 - c0)^2 - (x1 - c1)^2 = constant; degenerate (a line pair) when constant = 0."""
    center: np.ndarray
    constant: float
    degenerate: bool


@dataclass(frozen=True)
class Circle:
    center: np.ndarray
    radius: float
    degenerate: bool


@dataclass(frozen=True)
class SpeedLength:
    v1: float
    v2: float
    causal: CausalClass
    length: float | None


def w_matrix(theta, t, dtype=np.float64):
    n = dtype(_theta_norm(theta))
    if n == 0:
        raise ZeroTheta("W(t) needs |theta| > 0")
    T = n * dtype(t)
    sh, ch1 = np.sinh(T), S.cosh_minus_one(T)
    sn, c1 = np.sin(T), S.one_minus_cos(T)
    z = dtype(0)
    return np.array([
        [sh, ch1, z, z],
        [ch1, sh, z, z],
        [z, z, sn, -c1],
        [z, z, c1, sn],
    ]) / n


def is_singular_time(theta_norm, t, rtol=1e-12):
    T = float(theta_norm) * float(t)
    k = round(T / (2 * np.pi))
    return abs(T - 2 * np.pi * k) <= rtol * max(1.0, abs(T))


def w_inverse(theta, t, dtype=np.float64):
    n = dtype(_theta_norm(theta))
    if n == 0:
        raise ZeroTheta("W(t) needs |theta| > 0")
    if is_singular_time(n, t):
        raise SingularAt(t, f"W(t) is singular at |theta| t = {float(n) * float(t)!r}")
    T = n * dtype(t)
    h = np.sinh(T) / S.cosh_minus_one(T)
    q = np.sin(T) / S.one_minus_cos(T)
    one, z = dtype(1), dtype(0)
    return np.array([
        [h, -one, z, z],
        [-one, h, z, z],
        [z, z, q, one],
        [z, z, -one, q],
    ]) * (n / 2)


def velocity_at(params, t, dtype=np.float64):
    v = np.asarray(params.v0, dtype=dtype)
    if params.is_straight:
        return v.copy()
    T = dtype(params.theta_norm) * dtype(t)
    c, s = np.cos(T), np.sin(T)
    # light-cone components of the hyperbolic block avoid cosh - sinh cancellation
    p = (v[0] + v[1]) * np.exp(T)
    m = (v[0] - v[1]) * np.exp(-T)
    return np.array([
        (p + m) / 2,
        (p - m) / 2,
        v[2] * c - v[3] * s,
        v[2] * s + v[3] * c,
    ])


def position_at(params, t, dtype=np.float64):
    v = np.asarray(params.v0, dtype=dtype)
    if params.is_straight:
        return v * dtype(t)
    n = dtype(params.theta_norm)
    T = n * dtype(t)
    p = (v[0] + v[1]) * np.expm1(T) / n
    m = -(v[0] - v[1]) * np.expm1(-T) / n
    sn, c1 = np.sin(T), S.one_minus_cos(T)
    return np.array([
        (p + m) / 2,
        (p - m) / 2,
        (v[2] * sn - v[3] * c1) / n,
        (v[2] * c1 + v[3] * sn) / n,
    ])


def conic_projections(params):
    if params.is_straight:
        raise ZeroTheta("conic projections need |theta| > 0")
    n = params.theta_norm
    v = params.v0
    hyp = Hyperbola(np.array([-v[1] / n, -v[0] / n]), params.v1 / n**2, params.v1 == 0.0)
    circ = Circle(np.array([-v[3] / n, v[2] / n]), np.sqrt(params.v2) / n, params.v2 == 0.0)
    return hyp, circ


def conic_residuals(params, x):
    """Residuals of the hyperbola and circle equations at a canonical point x."""
    hyp, circ = conic_projections(params)
    rh = (x[0] - hyp.center[0]) ** 2 - (x[1] - hyp.center[1]) ** 2 - hyp.constant
    rc = (x[2] - circ.center[0]) ** 2 + (x[3] - circ.center[1]) ** 2 - circ.radius**2
    return rh, rc


def a_constants(v0):
    d0, d1, d2, d3 = v0
    return (d0 * d3 + d1 * d2, d0 * d3 - d1 * d2, d0 * d2 + d1 * d3, d0 * d2 - d1 * d3)


def _ztilde_lightcone(v, T):
    """n^2 (z~2, z~3) via p = v0 + v1, m = v0 - v1; exact rewrite for T >= 1."""
    p, m = v[0] + v[1], v[0] - v[1]
    e, eb = np.exp(T), np.exp(-T)
    c, s = np.cos(T), np.sin(T)
    pa = e * (c + s - 1) + (c - s - 1)
    pb = e * (c - s + 1) - (1 + s + c)
    ma = eb * (s - c + 1) + (1 - s - c)
    mb = eb * (c + s + 1) - (1 + c - s)
    d2, d3 = v[2], v[3]
    z2 = (p * (d2 * pa + d3 * pb) + m * (d2 * ma + d3 * mb)) / 2
    z3 = (p * (d2 * pb - d3 * pa) + m * (d2 * mb - d3 * ma)) / 2
    return z2, z3


def ztilde_at(params, t, dtype=np.float64):
    if params.is_straight:
        return np.zeros(3, dtype=dtype)
    v = np.asarray(params.v0, dtype=dtype)
    n = dtype(params.theta_norm)
    T = n * dtype(t)
    v1 = -(v[0] + v[1]) * (v[0] - v[1])
    v2 = v[2] ** 2 + v[3] ** 2
    z1 = v1 * S.sinh_minus_id(T) - v2 * S.id_minus_sin(T)
    if abs(T) >= 1:
        z2, z3 = _ztilde_lightcone(v, T)
    else:
        a1, a2, a3, a4 = a_constants(v)
        al, be = S.cc_minus_one(T), S.ss_plus_c_minus_ch(T)
        ga, de = S.c_sh_minus_s(T), S.s_ch_minus_sh(T)
        z2 = a1 * al - a2 * be + a3 * ga + a4 * de
        z3 = a4 * al - a3 * be - a2 * ga - a1 * de
    return np.array([z1, z2, z3]) / (n * n)


def ztilde_rate_at(params, t, dtype=np.float64):
    """d z~/dt, the t-derivative of ztilde_at."""
    if params.is_straight:
        return np.zeros(3, dtype=dtype)
    v = np.asarray(params.v0, dtype=dtype)
    n = dtype(params.theta_norm)
    T = n * dtype(t)
    v1 = -v[0] ** 2 + v[1] ** 2
    v2 = v[2] ** 2 + v[3] ** 2
    a1, a2, a3, a4 = a_constants(v)
    al, be = S.cc_minus_one(T), S.ss_plus_c_minus_ch(T)
    ga, de = S.c_sh_minus_s(T), S.s_ch_minus_sh(T)
    c1, c2 = S.cosh_minus_one(T), S.one_minus_cos(T)
    dal = -S.s_ch_minus_c_sh(T)
    dbe = ga + de
    dga = al - be - c1
    dde = al + be + c2
    return np.array([
        v1 * c1 - v2 * c2,
        a1 * dal - a2 * dbe + a3 * dga + a4 * dde,
        a4 * dal - a3 * dbe - a2 * dga - a1 * dde,
    ]) / n


def zsquare_closed_form(params, t, dtype=np.float64):
    """z~2^2 + z~3^2 as a single product (velocity-block invariants times f)."""
    v = np.asarray(params.v0, dtype=dtype)
    n = dtype(params.theta_norm)
    T = n * dtype(t)
    v1 = -v[0] ** 2 + v[1] ** 2
    v2 = v[2] ** 2 + v[3] ** 2
    f = 2 * S.s_ch_minus_c_sh(T / 2) ** 2
    q = (v[0] ** 2 + v[1] ** 2) * np.cosh(T) + 2 * v[0] * v[1] * np.sinh(T) + v1
    return 4 * v2 / n**4 * f * q


def eval(params, t, dtype=np.float64, rates=True):
    """Sample at parameter t; ``rates=False`` skips dz/dt (left as NaN)."""
    y = position_at(params, t, dtype)
    u = velocity_at(params, t, dtype)
    zt = ztilde_at(params, t, dtype)
    frame = frame_in(params, dtype)
    if frame is None:
        return TrajectorySample(t, y, y, np.zeros(3, dtype), u, zt, u, np.zeros(3, dtype))
    half_pt = frame.curlyP.T / 2
    zr = half_pt @ ztilde_rate_at(params, t, dtype) if rates else np.full(3, np.nan, dtype)
    return TrajectorySample(t, y, frame.P @ y, half_pt @ zt, u, zt, frame.P @ u, zr)


def sample(params, ts, dtype=np.float64):
    return [eval(params, t, dtype) for t in ts]


def endpoint(params, dtype=np.float64):
    """(x_canonical(1), z_original(1))."""
    s = eval(params, 1.0, dtype)
    return s.x_canonical, s.z


def speed_and_length(params, t1=1.0):
    if t1 <= 0:
        raise ValueError("t1 must be positive")
    v1, v2 = params.v1, params.v2
    causal = speed_class(params.v0)
    if causal.kind is CausalKind.SPACELIKE:
        length = t1 * np.sqrt(v1 + v2)
    elif causal.kind is CausalKind.TIMELIKE:
        length = t1 * np.sqrt(-v1 - v2)
    else:
        length = None
    return SpeedLength(v1, v2, causal, None if length is None else float(length))


def speed_class(v0, tol=1e-12):
    """Causal type of a geodesic with canonical initial velocity v0, from its
    conserved speed v1 + v2.

    The null band is tol * (|v1| + v2), the rounding scale of the sum, so a
    large hyperbolic part with v1 = 0 exactly does not swamp a small circle part.
    """
    v0 = np.asarray(v0, dtype=float)
    if not v0.any():
        return CausalClass(CausalKind.ZERO, Orientation.NA)
    v1 = -(v0[0] + v0[1]) * (v0[0] - v0[1])
    v2 = v0[2] ** 2 + v0[3] ** 2
    q = v1 + v2
    if abs(q) <= tol * (abs(v1) + v2):
        kind = CausalKind.NULL
    elif q < 0:
        kind = CausalKind.TIMELIKE
    else:
        return CausalClass(CausalKind.SPACELIKE, Orientation.NA)
    return CausalClass(kind, Orientation.FUTURE if v0[0] > 0 else Orientation.PAST)
