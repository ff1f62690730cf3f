# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled RK4 stepper for the Hamiltonian flow, in C long double.

State layout per trajectory (11 entries): x[0:4], z[4:7], xi[7:11].
With h = xi + Omega x / 2 and G = eta (Lorentzian) or I (Riemannian):
    x' = G h,   z_k' = x' . (I_k x) / 2,   xi' = Omega x' / 2.
"""
import numpy as np

ctypedef long double ld


cdef inline void _omega(const double* th, ld* om) noexcept nogil:
    cdef ld t1 = th[0], t2 = th[1], t3 = th[2]
    om[0] = 0;   om[1] = t1;  om[2] = -t3; om[3] = -t2
    om[4] = -t1; om[5] = 0;   om[6] = -t2; om[7] = t3
    om[8] = t3;  om[9] = t2;  om[10] = 0;  om[11] = t1
    om[12] = t2; om[13] = -t3; om[14] = -t1; om[15] = 0


cdef inline void _field(const ld* om, int lorentz, const ld* y, ld* dy) noexcept nogil:
    cdef ld h[4]
    cdef int i, j
    cdef ld half = 0.5
    for i in range(4):
        h[i] = y[7 + i]
        for j in range(4):
            h[i] += half * om[4 * i + j] * y[j]
    for i in range(4):
        dy[i] = h[i]
    if lorentz:
        dy[0] = -h[0]
    dy[4] = half * (dy[0] * y[1] - dy[1] * y[0] + dy[2] * y[3] - dy[3] * y[2])
    dy[5] = half * (-dy[0] * y[3] - dy[1] * y[2] + dy[2] * y[1] + dy[3] * y[0])
    dy[6] = half * (-dy[0] * y[2] + dy[1] * y[3] + dy[2] * y[0] - dy[3] * y[1])
    for i in range(4):
        dy[7 + i] = 0
        for j in range(4):
            dy[7 + i] += half * om[4 * i + j] * dy[j]


def rk4_batch(double[:, ::1] theta, y0, double T, long steps, bint lorentzian,
              long record_every):
    """Integrate N trajectories; returns long double array (N, steps/record_every + 1, 11)."""
    cdef Py_ssize_t n = theta.shape[0]
    if steps < 1 or record_every < 1 or steps % record_every:
        raise ValueError("steps must be a positive multiple of record_every")
    cdef long nrec = steps // record_every + 1
    out_arr = np.zeros((n, nrec, 11), dtype=np.longdouble)
    cdef ld[:, :, ::1] out = out_arr
    cdef ld[:, ::1] init = np.ascontiguousarray(y0, dtype=np.longdouble)
    cdef ld om[16]
    cdef ld y[11]
    cdef ld k1[11]
    cdef ld k2[11]
    cdef ld k3[11]
    cdef ld k4[11]
    cdef ld tmp[11]
    cdef ld dt = (<ld> T) / steps
    cdef ld half = 0.5, sixth = (<ld> 1) / 6
    cdef Py_ssize_t r, i
    cdef long s
    cdef int lor = lorentzian
    with nogil:
        for r in range(n):
            _omega(&theta[r, 0], om)
            for i in range(11):
                y[i] = init[r, i]
                out[r, 0, i] = y[i]
            for s in range(1, steps + 1):
                _field(om, lor, y, k1)
                for i in range(11):
                    tmp[i] = y[i] + half * dt * k1[i]
                _field(om, lor, tmp, k2)
                for i in range(11):
                    tmp[i] = y[i] + half * dt * k2[i]
                _field(om, lor, tmp, k3)
                for i in range(11):
                    tmp[i] = y[i] + dt * k3[i]
                _field(om, lor, tmp, k4)
                for i in range(11):
                    y[i] += dt * sixth * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i])
                if s % record_every == 0:
                    for i in range(11):
                        out[r, s // record_every, i] = y[i]
    return out_arr
