"""Pure numpy fallback for the RK4 stepper, vectorised over trajectories.

Same state layout and field as the compiled core; arithmetic in np.longdouble.
"""
import numpy as np

LD = np.longdouble


def _omega(theta):
    t1, t2, t3 = theta[:, 0], theta[:, 1], theta[:, 2]
    z = np.zeros_like(t1)
    return np.stack([
        np.stack([z, t1, -t3, -t2], -1),
        np.stack([-t1, z, -t2, t3], -1),
        np.stack([t3, t2, z, t1], -1),
        np.stack([t2, -t3, -t1, z], -1),
    ], -2)


def _matvec(m, v):
    return np.sum(m * v[:, None, :], axis=-1)


def _field(om, g, y):
    x, xi = y[:, :4], y[:, 7:]
    xd = g * (xi + _matvec(om, x) / 2)
    x0, x1, x2, x3 = x.T
    d0, d1, d2, d3 = xd.T
    zd = np.stack([
        d0 * x1 - d1 * x0 + d2 * x3 - d3 * x2,
        -d0 * x3 - d1 * x2 + d2 * x1 + d3 * x0,
        -d0 * x2 + d1 * x3 + d2 * x0 - d3 * x1,
    ], -1) / 2
    return np.concatenate([xd, zd, _matvec(om, xd) / 2], axis=-1)


def rk4_batch(theta, y0, T, steps, lorentzian, record_every):
    if steps < 1 or record_every < 1 or steps % record_every:
        raise ValueError("steps must be a positive multiple of record_every")
    theta = np.asarray(theta, dtype=LD)
    y = np.array(y0, dtype=LD)
    om = _omega(theta)
    g = np.array([-1 if lorentzian else 1, 1, 1, 1], dtype=LD)
    dt = LD(T) / steps
    out = np.zeros((y.shape[0], steps // record_every + 1, 11), dtype=LD)
    out[:, 0] = y
    for s in range(1, steps + 1):
        k1 = _field(om, g, y)
        k2 = _field(om, g, y + dt / 2 * k1)
        k3 = _field(om, g, y + dt / 2 * k2)
        k4 = _field(om, g, y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if s % record_every == 0:
            out[:, s // record_every] = y
    return out
