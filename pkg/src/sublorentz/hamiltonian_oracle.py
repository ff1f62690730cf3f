"""Fixed-step RK4 integration of the full Hamiltonian system in original
coordinates: the independent check on the closed-form engine.

``vector_field`` writes out the four blocks of each system term by
term.  The batched stepper in ``kernels`` uses the algebraically equivalent
form x' = G h, z_k' = x'.(I_k x)/2, xi' = Omega x'/2 with h = xi + Omega x/2,
and the test-suite checks the two agree.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import geodesic_engine as ge
from . import kernels
from .algebra import ETA, GroupElement, imaginary_basis, left_invariant_frame, omega_matrix, one_form_residual


class MetricMode(str, Enum):
    LORENTZIAN = "Lorentzian"
    RIEMANNIAN = "Riemannian"


@dataclass(frozen=True)
class PhaseState:
    x: np.ndarray
    z: np.ndarray
    xi: np.ndarray
    theta: np.ndarray

    def as_vector(self):
        return np.concatenate([self.x, self.z, self.xi, self.theta])

    @classmethod
    def from_vector(cls, y):
        y = np.asarray(y)
        return cls(y[:4], y[4:7], y[7:11], y[11:14])


@dataclass(frozen=True)
class IntegratorConfig:
    steps: int = 10_000
    metric_mode: MetricMode = MetricMode.LORENTZIAN

    def __post_init__(self):
        if int(self.steps) < 1:
            raise ValueError("steps must be >= 1")
        object.__setattr__(self, "metric_mode", MetricMode(self.metric_mode))


def _gram(mode):
    return ETA if MetricMode(mode) is MetricMode.LORENTZIAN else np.eye(4)


def hamiltonian_value(s, mode=MetricMode.LORENTZIAN):
    """Matrix form: 1/2 xi^T G xi + 1/2 xi^T G Omega x + 1/8 (Omega x)^T G Omega x."""
    G = _gram(mode)
    Om = omega_matrix(s.theta)
    ox = Om @ s.x
    return s.xi @ G @ s.xi / 2 + s.xi @ G @ ox / 2 + ox @ G @ ox / 8


def hamiltonian_frame_value(s, mode=MetricMode.LORENTZIAN):
    """-1/2 <l,X0>^2 + 1/2 sum <l,Xi>^2 (or the all-plus sum), l = (xi, theta)."""
    lam = np.concatenate([s.xi, s.theta])
    pair = [lam @ X for X in left_invariant_frame(GroupElement(s.x, s.z))]
    sign = -1.0 if MetricMode(mode) is MetricMode.LORENTZIAN else 1.0
    return (sign * pair[0] ** 2 + sum(p**2 for p in pair[1:])) / 2


def vector_field(s, mode=MetricMode.LORENTZIAN):
    x, xi, th = s.x, s.xi, s.theta
    Om = omega_matrix(th)
    I = [imaginary_basis(k) for k in (1, 2, 3)]
    if MetricMode(mode) is MetricMode.LORENTZIAN:
        A = ETA @ Om
        xd = ETA @ xi + A @ x / 2
        zd = np.array([(I[k] @ x) @ ETA @ Om @ x / 4 + xi @ ETA @ I[k] @ x / 2 for k in range(3)])
        xid = ETA @ A @ A @ x / 4 - A.T @ xi / 2
    else:
        xd = xi + Om @ x / 2
        zd = np.array([(x @ x) * th[k] / 4 + xi @ I[k] @ x / 2 for k in range(3)])
        xid = -(th @ th) * x / 4 + Om @ xi / 2
    return PhaseState(xd, zd, xid, np.zeros(3))


@dataclass(frozen=True)
class Trajectory:
    """Oracle output: uniform times and the (x, z, xi) history in long double."""
    times: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    mode: MetricMode

    def state(self, i):
        y = self.y[i]
        return PhaseState(y[:4], y[4:7], y[7:11], self.theta.astype(y.dtype))

    def __len__(self):
        return len(self.times)


def integrate_batch(thetas, y0s, T, steps, mode=MetricMode.LORENTZIAN, record_every=1):
    """Integrate many trajectories at once; returns long double (N, records, 11)."""
    # copies: the compiled core needs writable buffers and inputs may be frozen
    thetas = np.array(thetas, dtype=np.float64, order="C").reshape(-1, 3)
    y0s = np.array(y0s, dtype=np.longdouble, order="C").reshape(-1, 11)
    lor = MetricMode(mode) is MetricMode.LORENTZIAN
    return kernels.rk4_batch(thetas, y0s, float(T), int(steps), lor, int(record_every))


def integrate(s0, T, cfg=IntegratorConfig(), record_every=1):
    """steps + 1 states (or every ``record_every``-th) at uniform times on [0, T]."""
    y0 = np.concatenate([s0.x, s0.z, s0.xi]).astype(np.longdouble)
    ys = integrate_batch(np.asarray(s0.theta, float)[None], y0[None], T, cfg.steps,
                         cfg.metric_mode, record_every)[0]
    times = np.linspace(0.0, float(T), ys.shape[0])
    return Trajectory(times, ys, np.asarray(s0.theta, float), cfg.metric_mode)


def initial_state(params):
    """x = z = 0 and xi0 = eta x'(0) with x'(0) the original-frame velocity."""
    v = np.asarray(params.v0, dtype=np.longdouble)
    frame = ge.frame_in(params, np.longdouble)
    vo = v if frame is None else frame.P @ v
    return PhaseState(np.zeros(4, np.longdouble), np.zeros(3, np.longdouble),
                      ETA.astype(np.longdouble) @ vo, np.asarray(params.theta, float))


def _sample_stride(steps, samples):
    if steps % (samples - 1) == 0:
        return steps // (samples - 1)
    return 1


def compare_batch(params_list, T=1.0, steps=10_000, samples=101):
    """Max over uniform sample times of |oracle (x, z) - closed form (x, z)| per geodesic.

    Returns (deviations, trajectories).  Closed-form samples are evaluated in
    long double so the comparison measures the oracle's truncation error.
    """
    stride = _sample_stride(steps, samples)
    s0 = [initial_state(p) for p in params_list]
    y0 = np.array([np.concatenate([s.x, s.z, s.xi]) for s in s0])
    th = np.array([p.theta for p in params_list])
    ys = integrate_batch(th, y0, T, steps, MetricMode.LORENTZIAN, stride)
    times = np.linspace(0.0, float(T), ys.shape[1])
    idx = np.linspace(0, ys.shape[1] - 1, samples).round().astype(int)
    devs, trajs = [], []
    for p, y in zip(params_list, ys):
        worst = 0.0
        for i in idx:
            smp = ge.eval(p, np.longdouble(times[i]), np.longdouble, rates=False)
            d = np.concatenate([y[i, :4] - smp.x_original, y[i, 4:7] - smp.z])
            worst = max(worst, float(np.sqrt(np.sum(d * d))))
        devs.append(worst)
        trajs.append(Trajectory(times, y, np.asarray(p.theta, float), MetricMode.LORENTZIAN))
    return np.array(devs), trajs


def compare_with_closed_form(params, T=1.0, cfg=IntegratorConfig(), samples=101):
    if cfg.metric_mode is not MetricMode.LORENTZIAN:
        raise ValueError("closed-form comparison is defined for the Lorentzian system")
    devs, _ = compare_batch([params], T, cfg.steps, samples)
    return float(devs[0])


def _hamiltonian_rows(y, theta, mode):
    """Matrix-form Hamiltonian for each row of a (records, 11) history."""
    G = _gram(mode).astype(y.dtype)
    Om = omega_matrix(theta).astype(y.dtype)
    x, xi = y[:, :4], y[:, 7:11]
    ox = x @ Om.T
    return (np.sum(xi * (xi @ G), 1) / 2 + np.sum(xi * (ox @ G), 1) / 2
            + np.sum(ox * (ox @ G), 1) / 8)


def energy_drift(traj):
    """max_t |H(t) - H(0)| / max(1, |H(0)|)."""
    H = _hamiltonian_rows(traj.y, traj.theta, traj.mode)
    return float(np.max(np.abs(H - H[0])) / max(1.0, abs(float(H[0]))))


def horizontality_residual(traj):
    """max over recorded states of |omega_k(x', z')| with (x', z') from the block vector field."""
    worst = 0.0
    for i in range(len(traj)):
        s = traj.state(i)
        d = vector_field(s, traj.mode)
        r = one_form_residual(s.x, np.concatenate([d.x, d.z]))
        worst = max(worst, float(np.max(np.abs(r))))
    return worst
