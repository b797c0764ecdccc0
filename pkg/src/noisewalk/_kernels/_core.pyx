# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation kernels.

Scalar loops over (realization, pulse) with closed-form 2x2 SU(2)
exponentials.  Mirrors ``fallback`` exactly; see that module for the
argument contracts.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()


def sequence_unitaries(const signed char[::1] axis_codes,
                       const double[::1] angles,
                       const double[::1] det_phases,
                       const long[::1] slot_index,
                       const double[:, ::1] deltas):
    cdef Py_ssize_t n_real = deltas.shape[0]
    cdef Py_ssize_t n_pulses = axis_codes.shape[0]
    out = np.empty((n_real, 2, 2), dtype=np.complex128)
    cdef double complex[:, :, ::1] u = out
    cdef Py_ssize_t i, k
    cdef int code
    cdef long slot
    cdef double half, vx, vy, vz, r, c, s
    cdef double complex p00, p01, p10, p11
    cdef double complex a00, a01, a10, a11
    for i in range(n_real):
        a00 = 1.0
        a01 = 0.0
        a10 = 0.0
        a11 = 1.0
        for k in range(n_pulses):
            code = axis_codes[k]
            half = angles[k] / 2.0
            vx = 0.0
            vy = 0.0
            if code == 3:
                vz = half
            else:
                slot = slot_index[k]
                vz = det_phases[k] * deltas[i, slot]
                if code == 0:
                    vx = half
                elif code == 1:
                    vy = half
            r = sqrt(vx * vx + vy * vy + vz * vz)
            c = cos(r)
            if r > 1e-300:
                s = sin(r) / r
            else:
                s = 1.0
            p00 = c - 1j * (s * vz)
            p01 = -1j * (s * vx) - (s * vy)
            p10 = -1j * (s * vx) + (s * vy)
            p11 = c + 1j * (s * vz)
            a00, a01, a10, a11 = (p00 * a00 + p01 * a10,
                                  p00 * a01 + p01 * a11,
                                  p10 * a00 + p11 * a10,
                                  p10 * a01 + p11 * a11)
        u[i, 0, 0] = a00
        u[i, 0, 1] = a01
        u[i, 1, 0] = a10
        u[i, 1, 1] = a11
    return out


def survival_batch(const signed char[::1] axis_codes,
                   const double[::1] angles,
                   const double[::1] det_phases,
                   const long[::1] slot_index,
                   const double[:, ::1] deltas):
    cdef Py_ssize_t n_real = deltas.shape[0]
    cdef Py_ssize_t n_pulses = axis_codes.shape[0]
    out = np.empty(n_real, dtype=np.float64)
    cdef double[::1] f = out
    cdef Py_ssize_t i, k
    cdef int code
    cdef long slot
    cdef double half, vx, vy, vz, r, c, s
    cdef double complex p00, p01, p10, p11
    cdef double complex a00, a01, a10, a11
    for i in range(n_real):
        a00 = 1.0
        a01 = 0.0
        a10 = 0.0
        a11 = 1.0
        for k in range(n_pulses):
            code = axis_codes[k]
            half = angles[k] / 2.0
            vx = 0.0
            vy = 0.0
            if code == 3:
                vz = half
            else:
                slot = slot_index[k]
                vz = det_phases[k] * deltas[i, slot]
                if code == 0:
                    vx = half
                elif code == 1:
                    vy = half
            r = sqrt(vx * vx + vy * vy + vz * vz)
            c = cos(r)
            if r > 1e-300:
                s = sin(r) / r
            else:
                s = 1.0
            p00 = c - 1j * (s * vz)
            p01 = -1j * (s * vx) - (s * vy)
            p10 = -1j * (s * vx) + (s * vy)
            p11 = c + 1j * (s * vz)
            a00, a01, a10, a11 = (p00 * a00 + p01 * a10,
                                  p00 * a01 + p01 * a11,
                                  p10 * a00 + p11 * a10,
                                  p10 * a01 + p11 * a11)
        f[i] = a00.real * a00.real + a00.imag * a00.imag
    return out


def pauli_rotation_product(const long[::1] dir_codes,
                           const double[::1] weights,
                           const double[:, ::1] deltas):
    cdef Py_ssize_t n_real = deltas.shape[0]
    cdef Py_ssize_t n_steps = dir_codes.shape[0]
    cdef bint broadcast = deltas.shape[1] == 1
    out = np.empty((n_real, 2, 2), dtype=np.complex128)
    cdef double complex[:, :, ::1] u = out
    cdef Py_ssize_t i, l
    cdef long code, axis
    cdef double sign, ang, c, s
    cdef double complex p00, p01, p10, p11
    cdef double complex a00, a01, a10, a11
    for i in range(n_real):
        a00 = 1.0
        a01 = 0.0
        a10 = 0.0
        a11 = 1.0
        for l in range(n_steps):
            if broadcast:
                ang = weights[l] * deltas[i, 0]
            else:
                ang = weights[l] * deltas[i, l]
            code = dir_codes[l]
            axis = code / 2
            sign = 1.0 if code % 2 == 0 else -1.0
            c = cos(ang)
            s = sign * sin(ang)
            if axis == 0:
                p00 = c
                p11 = c
                p01 = -1j * s
                p10 = -1j * s
            elif axis == 1:
                p00 = c
                p11 = c
                p01 = -s
                p10 = s
            else:
                p00 = c - 1j * s
                p11 = c + 1j * s
                p01 = 0.0
                p10 = 0.0
            a00, a01, a10, a11 = (p00 * a00 + p01 * a10,
                                  p00 * a01 + p01 * a11,
                                  p10 * a00 + p11 * a10,
                                  p10 * a01 + p11 * a11)
        u[i, 0, 0] = a00
        u[i, 0, 1] = a01
        u[i, 1, 0] = a10
        u[i, 1, 1] = a11
    return out
