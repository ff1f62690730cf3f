"""Electromagnetic reading of the Lorentz force matrix A = eta Omega(theta):
field vectors, Lorentz invariants, energy-momentum observables and the
canonical frame that brings A to its hyperbolic/rotational block form.
"""
from dataclasses import dataclass

import numpy as np

from .algebra import ETA, _frozen, as_theta, imaginary_basis, lorentz_force_matrix
from .errors import ZeroTheta

# below this ratio sqrt(t1^2 + t2^2)/|theta| the generic frame formulas are not used
_DEGENERATE_RATIO = 1e-12


@dataclass(frozen=True)
class FieldVectors:
    E: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "E", _frozen(self.E))
        object.__setattr__(self, "B", _frozen(self.B))


@dataclass(frozen=True)
class EMTensor:
    F: np.ndarray
    A: np.ndarray


@dataclass(frozen=True)
class EnergyObservables:
    T: np.ndarray
    density: float
    poynting: np.ndarray
    stress: np.ndarray


@dataclass(frozen=True)
class CanonicalFrame:
    """Columns of P are the canonical basis e~0..e~3 in original coordinates.

    A point with canonical coordinates y sits at P @ y in the original frame,
    and the vertical coordinates transform as z = 1/2 curlyP^T z~.
    """
    P: np.ndarray
    Pinv: np.ndarray
    curlyP: np.ndarray
    eps: float
    delta: float
    theta: np.ndarray
    phase: float = 0.0

    @property
    def A_canonical(self):
        return canonical_block_matrix(self.eps, self.P.dtype.type)


def field_from_theta(theta):
    """E = (t2, t3, -t1), B = -E: the assignment for which eta F reproduces eta Omega."""
    t1, t2, t3 = as_theta(theta)
    E = np.array([t2, t3, -t1])
    return FieldVectors(E, -E)


def em_tensor(fv):
    E1, E2, E3 = fv.E
    B1, B2, B3 = fv.B
    F = np.array([
        [0.0, -E3, -E2, -E1],
        [E3, 0.0, B1, -B2],
        [E2, -B1, 0.0, B3],
        [E1, B2, -B3, 0.0],
    ])
    return EMTensor(_frozen(F), _frozen(ETA @ F))


def lorentz_invariants(fv):
    """(|B|^2 - |E|^2, E.B)."""
    return float(fv.B @ fv.B - fv.E @ fv.E), float(fv.E @ fv.B)


def is_regular(fv):
    """A is regular unless both invariants vanish (a null field)."""
    a, b = lorentz_invariants(fv)
    return not (a == 0.0 and b == 0.0)


def energy_observables(fv):
    A = em_tensor(fv).A
    A2 = A @ A
    T = (np.trace(A2) / 4 * np.eye(4) - A2) / (4 * np.pi)
    density = float(fv.E @ fv.E + fv.B @ fv.B) / (8 * np.pi)
    poynting = np.cross(fv.E, fv.B) / (4 * np.pi)
    return EnergyObservables(_frozen(T), density, _frozen(poynting), _frozen(T[1:, 1:]))


def canonical_block_matrix(theta_norm, dtype=np.float64):
    n = dtype(theta_norm)
    z = dtype(0)
    return np.array([[z, n, z, z], [n, z, z, z], [z, z, z, -n], [z, z, n, z]])


def rotation_about_first_axis(psi, dtype=np.float64):
    c, s = np.cos(dtype(psi)), np.sin(dtype(psi))
    return np.array([[1, 0, 0], [0, c, -s], [0, s, c]], dtype=dtype)


def _curly_p_from_frame(P):
    J = [P @ imaginary_basis(k) @ P.T for k in (1, 2, 3)]
    return np.array([[np.sum(imaginary_basis(j) * J[k]) / 4 for j in (1, 2, 3)]
                     for k in range(3)])


def canonical_frame(theta, phase=0.0, dtype=np.float64):
    """Canonical frame for theta.

    ``phase`` rotates e~2, e~3 inside their plane; the defining relations
    A e~0 = |theta| e~1 and A e~2 = |theta| e~3 are kept, and curlyP is
    multiplied on the left by a rotation about its first axis by ``phase``.
    """
    th = as_theta(theta, dtype)
    t1, t2, t3 = th
    n = np.sqrt(t1 * t1 + t2 * t2 + t3 * t3)
    if n == 0:
        raise ZeroTheta("canonical frame needs |theta| > 0")
    s = np.sqrt(t1 * t1 + t2 * t2)
    z = dtype(0)
    e0 = np.array([1, 0, 0, 0], dtype=dtype)
    e1 = np.array([z, -t1, t3, t2]) / n
    A, _ = lorentz_force_matrix(th, dtype)
    if s > _DEGENERATE_RATIO * n:
        e2 = np.array([z, t1 * t3, s * s, -t2 * t3]) / (n * s)
        e3 = np.array([z, -t2 / s, z, -t1 / s])
        curly = np.array([
            [-t1 / n, -t2 / n, -t3 / n],
            [t2 / s, -t1 / s, z],
            [-t1 * t3 / (n * s), -t2 * t3 / (n * s), s / n],
        ])
    else:
        # theta along the third axis: pick e~2 from the rotation plane of A
        basis = np.eye(4, dtype=dtype)
        for k in range(1, 4):
            cand = basis[k] - (basis[k] @ e1) * e1
            cand[0] = 0
            norm = np.sqrt(cand @ cand)
            if norm > 0.5:
                break
        e2 = cand / norm
        e3 = A @ e2 / n
        curly = None
    if phase:
        c, sn = np.cos(dtype(phase)), np.sin(dtype(phase))
        e2, e3 = c * e2 + sn * e3, -sn * e2 + c * e3
    P = np.column_stack([e0, e1, e2, e3])
    if curly is None:
        curly = _curly_p_from_frame(P)
    elif phase:
        curly = rotation_about_first_axis(phase, dtype) @ curly
    P.flags.writeable = False
    Pinv = P.T.copy()
    Pinv.flags.writeable = False
    curly = np.asarray(curly, dtype=dtype)
    curly.flags.writeable = False
    return CanonicalFrame(P, Pinv, curly, float(n), float(n), _frozen(th, dtype), float(phase))


def curly_p_from_frame(frame):
    """curlyP recomputed from P alone via J_k = P I_k P^T = sum_j curlyP_kj I_j."""
    return _curly_p_from_frame(frame.P)


def principal_null_directions(frame):
    e0, e1 = frame.P[:, 0], frame.P[:, 1]
    return (e0 + e1) / np.sqrt(2), (e0 - e1) / np.sqrt(2)


def conjugated_horizontality_matrices(frame, theta=None):
    return tuple(frame.P @ imaginary_basis(k) @ frame.Pinv for k in (1, 2, 3))


def frame_for_vertical_map(theta_norm, target, dtype=np.float64):
    """Return (theta, phase) whose canonical frame has curlyP equal to ``target``.

    ``target`` must be a proper rotation.  Its first row fixes the direction
    of theta and the remaining rotation about that axis is the phase.
    """
    target = np.asarray(target, dtype=dtype)
    theta = -dtype(theta_norm) * target[0]
    base = canonical_frame(theta, 0.0, dtype).curlyP
    delta = target @ base.T
    psi = float(np.arctan2(delta[2, 1], delta[1, 1]))
    return theta, psi

