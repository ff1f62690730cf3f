import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sublorentz.algebra import ETA, imaginary_basis, lorentz_force_matrix, lorentz_inner, omega_matrix
from sublorentz.em_field import (
    FieldVectors, canonical_block_matrix, canonical_frame, conjugated_horizontality_matrices,
    curly_p_from_frame, em_tensor, energy_observables, field_from_theta, frame_for_vertical_map,
    is_regular, lorentz_invariants, principal_null_directions, rotation_about_first_axis,
)
from sublorentz.errors import ZeroTheta

theta_st = st.lists(st.floats(-10, 10, allow_nan=False), min_size=3, max_size=3).map(np.array).filter(
    lambda t: np.linalg.norm(t) > 1e-3)


def test_field_from_theta():
    fv = field_from_theta([1, 0, 0])
    assert np.array_equal(fv.E, [0, 0, -1]) and np.array_equal(fv.B, [0, 0, 1])
    fv = field_from_theta([1, 2, 3])
    assert np.array_equal(fv.E, [2, 3, -1])
    fv = field_from_theta([0, 0, 0])
    assert not fv.E.any() and not fv.B.any()


@given(theta_st)
def test_field_tensor_reproduces_lorentz_force(th):
    fv = field_from_theta(th)
    t = em_tensor(fv)
    assert np.array_equal(t.F + t.F.T, np.zeros((4, 4)))
    assert np.allclose(t.A, ETA @ omega_matrix(th))
    assert np.allclose(t.A.T @ ETA + ETA @ t.A, 0)
    assert np.isclose(fv.E @ fv.E, th @ th)
    assert np.array_equal(fv.E, -fv.B)


def test_em_tensor_zero():
    assert not em_tensor(FieldVectors(np.zeros(3), np.zeros(3))).F.any()


@given(theta_st)
def test_invariants_from_theta(th):
    a, b = lorentz_invariants(field_from_theta(th))
    assert a == 0.0
    assert np.isclose(b, -(th @ th))
    assert is_regular(field_from_theta(th))


def test_invariants_null_field():
    fv = FieldVectors(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]))
    assert lorentz_invariants(fv) == (0.0, 0.0)
    assert not is_regular(fv)
    assert not is_regular(field_from_theta([0, 0, 0]))


@given(theta_st)
def test_energy_observables(th):
    fv = field_from_theta(th)
    obs = energy_observables(fv)
    assert abs(np.trace(obs.T)) <= 1e-12 * (th @ th)
    assert np.allclose(ETA @ obs.T, (ETA @ obs.T).T)
    assert np.array_equal(obs.poynting, np.zeros(3))
    assert np.isclose(obs.density, (th @ th) / (4 * np.pi))
    t1, t2, t3 = th
    mst = np.array([
        [t1**2 - t2**2 - t3**2, -2 * t1 * t3, -2 * t1 * t2],
        [-2 * t1 * t3, -t1**2 - t2**2 + t3**2, 2 * t2 * t3],
        [-2 * t1 * t2, 2 * t2 * t3, -t1**2 + t2**2 - t3**2],
    ])
    assert np.allclose(-4 * np.pi * obs.stress, mst, atol=1e-12 * (th @ th))


def test_energy_observables_examples():
    obs = energy_observables(field_from_theta([1, 0, 0]))
    assert np.allclose(-4 * np.pi * obs.stress, np.diag([1, -1, -1]))
    obs = energy_observables(FieldVectors(np.zeros(3), np.zeros(3)))
    assert not obs.T.any() and obs.density == 0.0


def _check_frame(th, fr, tol=1e-12):
    n = np.linalg.norm(th)
    A, _ = lorentz_force_matrix(th)
    assert np.allclose(fr.P.T @ fr.P, np.eye(4), atol=tol)
    assert np.allclose(fr.curlyP.T @ fr.curlyP, np.eye(3), atol=tol)
    assert np.allclose(fr.Pinv @ A @ fr.P, canonical_block_matrix(n), atol=tol * max(1, n))
    assert np.isclose(fr.eps, n) and np.isclose(fr.delta, n)
    assert np.isclose(np.linalg.det(fr.curlyP), 1.0)
    assert np.allclose(curly_p_from_frame(fr), fr.curlyP, atol=tol)


@given(theta_st, st.floats(-np.pi, np.pi))
def test_canonical_frame_invariants(th, phase):
    _check_frame(th, canonical_frame(th))
    _check_frame(th, canonical_frame(th, phase))


def test_canonical_frame_generic_closed_form():
    th = np.array([0.7, -1.3, 2.1])
    t1, t2, t3 = th
    n, s = np.linalg.norm(th), np.hypot(t1, t2)
    fr = canonical_frame(th)
    assert np.allclose(fr.P[:, 1], [0, -t1 / n, t3 / n, t2 / n])
    assert np.allclose(fr.P[:, 2], [0, t1 * t3 / (n * s), s / n, -t2 * t3 / (n * s)])
    assert np.allclose(fr.P[:, 3], [0, -t2 / s, 0, -t1 / s])
    assert np.allclose(fr.curlyP, [[-t1 / n, -t2 / n, -t3 / n], [t2 / s, -t1 / s, 0],
                                   [-t1 * t3 / (n * s), -t2 * t3 / (n * s), s / n]])


def test_canonical_frame_axis_example():
    assert np.allclose(canonical_frame([1, 0, 0]).curlyP, np.diag([-1, -1, 1]))


def test_degenerate_frame():
    fr = canonical_frame([0, 0, 1])
    e = np.eye(4)
    assert np.array_equal(fr.P, np.column_stack([e[0], e[2], e[1], -e[3]]))
    _check_frame(np.array([0, 0, 1.0]), fr)
    _check_frame(np.array([0, 0, -3.0]), canonical_frame([0, 0, -3]))
    _check_frame(np.array([1e-14, 0, 2.0]), canonical_frame([1e-14, 0, 2]))


def test_zero_theta_frame():
    with pytest.raises(ZeroTheta):
        canonical_frame([0, 0, 0])


@given(theta_st, st.floats(-3, 3))
def test_phase_rotates_vertical_map(th, psi):
    base = canonical_frame(th).curlyP
    rot = canonical_frame(th, psi).curlyP
    assert np.allclose(rot, rotation_about_first_axis(psi) @ base, atol=1e-12)


@given(theta_st)
def test_eigenvalues(th):
    n = np.linalg.norm(th)
    A, _ = lorentz_force_matrix(th)
    ev = np.sort_complex(np.linalg.eigvals(A))
    expect = np.sort_complex(np.array([-n, n, -1j * n, 1j * n]))
    assert np.allclose(ev, expect, atol=1e-10 * max(1, n))


def test_principal_null_directions():
    for th in ([1, 0, 0], [0.3, -2, 1.1]):
        fr = canonical_frame(th)
        n = np.linalg.norm(th)
        A, _ = lorentz_force_matrix(th)
        plus, minus = principal_null_directions(fr)
        assert np.allclose(A @ plus, n * plus) and np.allclose(A @ minus, -n * minus)
        assert abs(lorentz_inner(plus, plus)) < 1e-15 and abs(lorentz_inner(minus, minus)) < 1e-15
        assert np.isclose(np.linalg.norm(plus), 1.0)


@given(theta_st)
def test_conjugated_matrices(th):
    fr = canonical_frame(th)
    J = conjugated_horizontality_matrices(fr, th)
    assert np.allclose(J[0], -omega_matrix(th) / np.linalg.norm(th))
    for Jk in J:
        assert np.allclose(Jk + Jk.T, 0)


def test_conjugated_matrices_example():
    th = np.array([1.0, 1.0, 1.0])
    t1, t2, t3 = th
    n, s = np.linalg.norm(th), np.hypot(t1, t2)
    J2 = np.array([[0, t2, 0, t1], [-t2, 0, t1, 0], [0, -t1, 0, t2], [-t1, 0, -t2, 0]]) / s
    s2 = t1**2 + t2**2
    J3 = np.array([
        [0, -t1 * t3, -s2, t2 * t3],
        [t1 * t3, 0, t2 * t3, s2],
        [s2, -t2 * t3, 0, -t1 * t3],
        [-t2 * t3, -s2, t1 * t3, 0],
    ]) / (n * s)
    J = conjugated_horizontality_matrices(canonical_frame(th), th)
    assert np.allclose(J[1], J2) and np.allclose(J[2], J3)
    assert np.allclose(J[0], -omega_matrix(th) / n)


@given(theta_st, st.floats(-3, 3))
def test_frame_for_vertical_map_roundtrip(th, psi):
    target = canonical_frame(th, psi).curlyP
    theta, phase = frame_for_vertical_map(np.linalg.norm(th), target)
    assert np.allclose(canonical_frame(theta, phase).curlyP, target, atol=1e-10)


def test_frame_in_long_double():
    th = [0.5, 1.5, -2.0]
    fr = canonical_frame(th, 0.4, np.longdouble)
    assert fr.P.dtype == np.longdouble
    assert np.allclose(fr.P.astype(float), canonical_frame(th, 0.4).P, atol=1e-15)
    assert np.abs(fr.P.T @ fr.P - np.eye(4, dtype=np.longdouble)).max() < 1e-17


def test_curly_p_equals_trace_form():
    th = np.array([0.4, -0.8, 1.9])
    fr = canonical_frame(th)
    J = [fr.P @ imaginary_basis(k) @ fr.P.T for k in (1, 2, 3)]
    for k in range(3):
        assert np.allclose(J[k], sum(fr.curlyP[k, j] * imaginary_basis(j + 1) for j in range(3)))
