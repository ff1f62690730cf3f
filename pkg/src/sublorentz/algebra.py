"""Quaternion arithmetic, the H-type group law on R^4 x R^3, the left-invariant
frame and contact forms, the matrices Omega, eta, A, and causal classification
of horizontal vectors.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np


def _frozen(a, dtype=None):
    a = np.asarray(a)
    a = np.array(a, dtype=dtype if dtype is not None else np.result_type(a, np.float64))
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Quaternion:
    re: float
    im: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "re", float(self.re))
        im = _frozen(self.im)
        if im.shape != (3,):
            raise ValueError("imaginary part must be a 3-vector")
        object.__setattr__(self, "im", im)

    @classmethod
    def from_vector(cls, x):
        x = np.asarray(x, dtype=float)
        return cls(x[0], x[1:])

    def as_vector(self):
        return np.concatenate([[self.re], self.im])

    def conj(self):
        return Quaternion(self.re, -self.im)

    def __mul__(self, other):
        return quat_mul(self, other)


def quat_mul(q1, q2):
    """Hamilton product: re = r1 r2 - u.v, im = r1 v + r2 u + u x v."""
    re = q1.re * q2.re - float(np.dot(q1.im, q2.im))
    im = q1.re * q2.im + q2.re * q1.im + np.cross(q1.im, q2.im)
    return Quaternion(re, im)


@dataclass(frozen=True)
class GroupElement:
    x: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        x, z = _frozen(self.x), _frozen(self.z)
        if x.shape != (4,) or z.shape != (3,):
            raise ValueError("GroupElement needs a 4-vector x and a 3-vector z")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)

    @classmethod
    def identity(cls):
        return cls(np.zeros(4), np.zeros(3))


def group_mul(p, q):
    """(x, z) o (x', z') = (x + x', z + z' + 1/2 pu(conj(x) x'))."""
    prod = quat_mul(Quaternion.from_vector(p.x).conj(), Quaternion.from_vector(q.x))
    return GroupElement(p.x + q.x, p.z + q.z + 0.5 * prod.im)


def group_inverse(p):
    return GroupElement(-p.x, -p.z)


@dataclass(frozen=True)
class ThetaCovector:
    theta: np.ndarray

    def __post_init__(self):
        th = _frozen(self.theta)
        if th.shape != (3,):
            raise ValueError("theta must be a 3-vector")
        object.__setattr__(self, "theta", th)

    @property
    def norm(self):
        return float(np.linalg.norm(self.theta))

    def __array__(self, dtype=None, copy=None):
        return np.array(self.theta, dtype=dtype)


def as_theta(theta, dtype=None):
    """Coerce a ThetaCovector or array-like into a float 3-vector."""
    if isinstance(theta, ThetaCovector):
        theta = theta.theta
    th = np.asarray(theta, dtype=dtype if dtype is not None else np.float64)
    if th.shape != (3,):
        raise ValueError(f"theta must be a 3-vector, got shape {th.shape}")
    return th


ETA = _frozen(np.diag([-1.0, 1.0, 1.0, 1.0]))

_I = (
    _frozen([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], float),
    _frozen([[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], float),
    _frozen([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]], float),
)


def imaginary_basis(k):
    """The 4x4 real matrix I_k (k = 1, 2, 3) representing a unit imaginary quaternion."""
    if k not in (1, 2, 3):
        raise IndexError(f"imaginary basis index must be 1, 2 or 3, got {k!r}")
    return _I[k - 1]


def omega_matrix(theta, dtype=None):
    t1, t2, t3 = as_theta(theta, dtype)
    z = t1 * 0
    return np.array([
        [z, t1, -t3, -t2],
        [-t1, z, -t2, t3],
        [t3, t2, z, t1],
        [t2, -t3, -t1, z],
    ])


def a_squared_explicit(theta, dtype=None):
    """Entrywise closed form of (eta Omega)^2."""
    t1, t2, t3 = as_theta(theta, dtype)
    z = t1 * 0
    return np.array([
        [t1**2 + t2**2 + t3**2, z, z, z],
        [z, t1**2 - t2**2 - t3**2, -2 * t1 * t3, -2 * t1 * t2],
        [z, -2 * t1 * t3, -t1**2 - t2**2 + t3**2, 2 * t2 * t3],
        [z, -2 * t1 * t2, 2 * t2 * t3, -t1**2 + t2**2 - t3**2],
    ])


def lorentz_force_matrix(theta, dtype=None):
    """Return (A, A^2) with A = eta Omega(theta); A^2 from its explicit closed form."""
    A = ETA @ omega_matrix(theta, dtype)
    return A, a_squared_explicit(theta, dtype)


def lorentz_inner(u, v):
    u = np.asarray(u)
    v = np.asarray(v)
    return -u[..., 0] * v[..., 0] + np.sum(u[..., 1:] * v[..., 1:], axis=-1)


class CausalKind(str, Enum):
    TIMELIKE = "Timelike"
    SPACELIKE = "Spacelike"
    NULL = "Null"
    ZERO = "Zero"


class Orientation(str, Enum):
    FUTURE = "FutureDirected"
    PAST = "PastDirected"
    NA = "NotApplicable"


@dataclass(frozen=True)
class CausalClass:
    kind: CausalKind
    orientation: Orientation

    def __str__(self):
        return self.kind.value


def causal_classify(v, tol=1e-12):
    """Causal type from the sign of |v|_L^2, null band tol * |v|_E^2.

    Nonspacelike vectors are future directed when (v, X0)_L = -v0 < 0.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    v = np.asarray(v, dtype=float)
    e2 = float(np.dot(v, v))
    if e2 == 0.0:
        return CausalClass(CausalKind.ZERO, Orientation.NA)
    q = float(lorentz_inner(v, v))
    if abs(q) <= tol * e2:
        kind = CausalKind.NULL
    elif q < 0:
        kind = CausalKind.TIMELIKE
    else:
        return CausalClass(CausalKind.SPACELIKE, Orientation.NA)
    # a nonzero null or timelike vector always has v0 != 0
    orient = Orientation.FUTURE if v[0] > 0 else Orientation.PAST
    return CausalClass(kind, orient)


def one_form_residual(p, v):
    """(omega_1(v), omega_2(v), omega_3(v)) at p, omega_k = dz_k - 1/2 dx^T I_k x."""
    x = np.asarray(p.x if isinstance(p, GroupElement) else p[:4])
    v = np.asarray(v)
    vx, vz = v[:4], v[4:7]
    return np.array([vz[k] - 0.5 * vx @ (_I[k] @ x) for k in range(3)])


def left_invariant_frame(p):
    """X_0..X_3 at p as 7-vectors: X_i = d/dx_i + 1/2 sum_k (e_i^T I_k x) d/dz_k."""
    x = np.asarray(p.x if isinstance(p, GroupElement) else p[:4])
    out = []
    for i in range(4):
        X = np.zeros(7, dtype=np.result_type(x, np.float64))
        X[i] = 1.0
        for k in range(3):
            X[4 + k] = 0.5 * (_I[k] @ x)[i]
        out.append(X)
    return out


def vertical_frame():
    """Z_1..Z_3 = d/dz_k as 7-vectors."""
    return [np.eye(7)[4 + k] for k in range(3)]
