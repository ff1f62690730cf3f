"""The 3-dimensional Lorentzian Heisenberg group: endpoint classification and
geodesics from the origin.

Group law (x, y, z) o (x', y', z') = (x + x', y + y', z + z' + (y x' - x y')/2),
horizontal frame X0 = d/dx + y/2 d/dz, X1 = d/dy - x/2 d/dz with X0 timelike.
With vertical costate theta (signed) the horizontal velocity obeys
u' = -theta K u, K = [[0, 1], [1, 0]], and the endpoint satisfies
4 z / (-x^2 + y^2) = h_mu(theta).
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _series as S
from ._roots import bisect
from .algebra import CausalClass, CausalKind, Orientation
from .errors import DegenerateEndpoint

# beyond this |tau| h_mu is evaluated from exponentials of -|tau|
_LARGE_TAU = 20.0


@dataclass(frozen=True)
class HPoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            v = float(getattr(self, name))
            if not np.isfinite(v):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)

    def as_array(self):
        return np.array([self.x, self.y, self.z])


class HRegion(str, Enum):
    RT = "Rt"
    RSP = "Rsp"
    RL = "Rl"
    COMPLEMENT = "Complement"
    ORIGIN = "Origin"


class HKind(str, Enum):
    GEODESIC = "Geodesic"
    STRAIGHT_LINE = "StraightLine"
    NO_GEODESIC = "NoGeodesic"


def h_mu(tau):
    """(tau/2)/sinh^2(tau/2) - coth(tau/2) = -(sinh tau - tau)/(cosh tau - 1); odd, decreasing."""
    tau = float(tau)
    if tau == 0.0:
        return 0.0
    a = abs(tau)
    if a < 1e-4:
        val = a / 3 - a**3 / 90
    elif a > _LARGE_TAU:
        # 1 - delta with delta decreasing, so rounded values stay monotone
        e = np.exp(-a)
        val = 1 - 2 * e * (a - 1 + e) / (1 - e) ** 2
    else:
        val = float(S.sinh_minus_id(a) / S.cosh_minus_one(a))
    return float(-val if tau > 0 else val)


def h_classify(p, tol=1e-12):
    """Region of p: Rt, Rsp, Rl, Complement or Origin; tol is relative to x^2 + y^2."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    x, y, z = p.x, p.y, p.z
    e2 = x * x + y * y
    q = -x * x + y * y
    if e2 == 0.0 and z == 0.0:
        return HRegion.ORIGIN
    if abs(q) <= tol * e2 or e2 == 0.0:
        return HRegion.RL if abs(z) <= tol * max(e2, 1.0) else HRegion.COMPLEMENT
    if 4 * abs(z) < abs(q):
        return HRegion.RT if q < 0 else HRegion.RSP
    return HRegion.COMPLEMENT


def _velocity_from_endpoint(theta, x, y):
    """u(0) with x(1) = (x, y): inverse of [[sinh, 1 - cosh], [1 - cosh, sinh]] / theta."""
    if theta == 0.0:
        return np.array([x, y])
    h = 1 / np.tanh(theta / 2)
    return theta / 2 * np.array([h * x + y, x + h * y])


@dataclass(frozen=True)
class HConnection:
    kind: HKind
    region: HRegion
    endpoint: HPoint
    theta: float | None = None
    causal: CausalClass | None = None

    @property
    def initial_velocity(self):
        if self.kind is HKind.NO_GEODESIC:
            return None
        return _velocity_from_endpoint(self.theta, self.endpoint.x, self.endpoint.y)

    def at(self, t):
        if self.kind is HKind.NO_GEODESIC:
            raise ValueError("no geodesic to evaluate")
        return h_geodesic_eval(self.theta, self.endpoint, t)

    def velocity(self, t):
        """(x'(t), y'(t)): hyperbolic rotation of u(0) by -theta t."""
        a, b = self.initial_velocity
        T = self.theta * float(t)
        ch, sh = np.cosh(T), np.sinh(T)
        return np.array([a * ch - b * sh, -a * sh + b * ch])

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "region": self.region.value,
            "endpoint": [self.endpoint.x, self.endpoint.y, self.endpoint.z],
            "theta": self.theta,
            "causal": None if self.causal is None else self.causal.kind.value,
            "orientation": None if self.causal is None else self.causal.orientation.value,
        }


def _solve_theta(r):
    """Unique theta with h_mu(theta) = r, |r| < 1."""
    if r == 0.0:
        return 0.0
    f = lambda t: h_mu(t) - r
    hi = 1.0
    while f(hi) > 0:
        hi *= 2
    lo = -1.0
    while f(lo) < 0:
        lo *= 2
    return bisect(f, lo, hi)


def _causal_of(region, x):
    orient = Orientation.FUTURE if x > 0 else Orientation.PAST
    if region is HRegion.RT:
        return CausalClass(CausalKind.TIMELIKE, orient)
    if region is HRegion.RL:
        return CausalClass(CausalKind.NULL, orient)
    return CausalClass(CausalKind.SPACELIKE, Orientation.NA)


def h_connect(p, tol=1e-12):
    """Unique geodesic from the origin to p, a straight line, or NoGeodesic.

    Raises DegenerateEndpoint on the null cone with z != 0, where no
    Hamiltonian geodesic ends.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    region = h_classify(p, tol)
    if region is HRegion.ORIGIN:
        return HConnection(HKind.STRAIGHT_LINE, region, p, 0.0, CausalClass(CausalKind.ZERO, Orientation.NA))
    q = -p.x * p.x + p.y * p.y
    e2 = p.x * p.x + p.y * p.y
    if abs(q) <= tol * e2 or e2 == 0.0:
        if region is HRegion.RL:
            return HConnection(HKind.STRAIGHT_LINE, region, p, 0.0, _causal_of(region, p.x))
        raise DegenerateEndpoint("endpoint on the null cone with z != 0 has no Hamiltonian geodesic")
    if region is HRegion.COMPLEMENT:
        return HConnection(HKind.NO_GEODESIC, region, p)
    theta = _solve_theta(4 * p.z / q)
    kind = HKind.STRAIGHT_LINE if theta == 0.0 else HKind.GEODESIC
    return HConnection(kind, region, p, theta, _causal_of(region, p.x))


def h_geodesic_eval(theta, endpoint, t):
    """Point at parameter t of the geodesic with costate theta ending at ``endpoint``.

    x(t) = x A(t) + y B(t), y(t) = y A(t) + x B(t) with u = theta/2 and
    A = sinh^2(ut)(coth(ut) coth(u) - 1), B = sinh^2(ut)(coth(ut) - coth(u)),
    z(t) = z (sinh(theta t) - theta t) / (sinh theta - theta).
    """
    t = float(t)
    x, y, z = endpoint.x, endpoint.y, endpoint.z
    if theta == 0.0:
        return HPoint(x * t, y * t, z * t)
    u = theta / 2
    ut = u * t
    cu = 1 / np.tanh(u)
    A = (np.sinh(2 * ut) * cu - np.cosh(2 * ut) + 1) / 2
    B = (np.sinh(2 * ut) - (np.cosh(2 * ut) - 1) * cu) / 2
    zt = z * float(S.sinh_minus_id(theta * t) / S.sinh_minus_id(theta))
    return HPoint(x * A + y * B, y * A + x * B, zt)


def h_shoot(theta, u0, t=1.0):
    """Point reached at t from the origin with initial velocity u0 and costate theta."""
    a, b = u0
    T = theta * float(t)
    if theta == 0.0:
        return HPoint(a * t, b * t, 0.0)
    sh, c1 = np.sinh(T), float(S.cosh_minus_one(T))
    x = (a * sh - b * c1) / theta
    y = (-a * c1 + b * sh) / theta
    # z' = (y x' - x y')/2 integrates to (a^2 - b^2)(sinh T - T) / (2 theta^2)
    z = (a * a - b * b) * float(S.sinh_minus_id(T)) / (2 * theta * theta)
    return HPoint(x, y, z)
