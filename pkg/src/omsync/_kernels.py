"""Compiled inner loops for the semi-classical integrator.

The drift parameters travel as a flat float64 vector so the kernels stay
signature-stable:

    dp = [delta1, kappa1, g0_1, alpha_l1, omega1, gamma1,
          delta2, kappa2, g0_2, alpha_l2, omega2, gamma2, K]

State order is (alpha1, beta1, alpha2, beta2); the noise block ``z`` holds
standard normals with columns (a1 re, a1 im, b1 re, b1 im, a2 re, a2 im,
b2 re, b2 im), exactly one row per step.
"""

from __future__ import annotations

import numba
import numpy as np


@numba.njit(cache=True, inline="always")
def _drift4(a1, b1, a2, b2, dp, rwa):
    x1 = b1 + np.conj(b1)
    x2 = b2 + np.conj(b2)
    da1 = (1j * dp[0] - 0.5 * dp[1]) * a1 + 1j * dp[2] * a1 * x1 - 1j * dp[3]
    da2 = (1j * dp[6] - 0.5 * dp[7]) * a2 + 1j * dp[8] * a2 * x2 - 1j * dp[9]
    if rwa:
        c1 = dp[12] * b2
        c2 = dp[12] * b1
    else:
        c1 = dp[12] * x2
        c2 = dp[12] * x1
    db1 = (
        -(1j * dp[4] + 0.5 * dp[5]) * b1
        + 1j * dp[2] * (a1.real * a1.real + a1.imag * a1.imag)
        + 1j * c1
    )
    db2 = (
        -(1j * dp[10] + 0.5 * dp[11]) * b2
        + 1j * dp[8] * (a2.real * a2.real + a2.imag * a2.imag)
        + 1j * c2
    )
    return da1, db1, da2, db2


@numba.njit(cache=True)
def heun_chunk(y, dp, rwa, dt, coefs, z, out, stride, step0):
    """Advance ``y`` in place through ``z.shape[0]`` Heun steps.

    The additive noise increment coefs[m] * (z_re + i z_im) enters both the
    predictor and the corrector (Ito and Stratonovich coincide for additive
    noise).  After global step g the state (time (g+1)*dt) is recorded into
    ``out[(g+1)//stride]`` whenever (g+1) % stride == 0.  Returns -1 on
    success, else the global index of the first non-finite step.
    """
    a1 = y[0]
    b1 = y[1]
    a2 = y[2]
    b2 = y[3]
    n = z.shape[0]
    for i in range(n):
        na1 = coefs[0] * complex(z[i, 0], z[i, 1])
        nb1 = coefs[1] * complex(z[i, 2], z[i, 3])
        na2 = coefs[2] * complex(z[i, 4], z[i, 5])
        nb2 = coefs[3] * complex(z[i, 6], z[i, 7])
        fa1, fb1, fa2, fb2 = _drift4(a1, b1, a2, b2, dp, rwa)
        pa1 = a1 + dt * fa1 + na1
        pb1 = b1 + dt * fb1 + nb1
        pa2 = a2 + dt * fa2 + na2
        pb2 = b2 + dt * fb2 + nb2
        qa1, qb1, qa2, qb2 = _drift4(pa1, pb1, pa2, pb2, dp, rwa)
        a1 = a1 + 0.5 * dt * (fa1 + qa1) + na1
        b1 = b1 + 0.5 * dt * (fb1 + qb1) + nb1
        a2 = a2 + 0.5 * dt * (fa2 + qa2) + na2
        b2 = b2 + 0.5 * dt * (fb2 + qb2) + nb2
        if not (
            np.isfinite(a1.real)
            and np.isfinite(a1.imag)
            and np.isfinite(b1.real)
            and np.isfinite(b1.imag)
            and np.isfinite(a2.real)
            and np.isfinite(a2.imag)
            and np.isfinite(b2.real)
            and np.isfinite(b2.imag)
        ):
            return step0 + i
        done = step0 + i + 1
        if done % stride == 0:
            j = done // stride
            out[j, 0] = a1
            out[j, 1] = b1
            out[j, 2] = a2
            out[j, 3] = b2
    y[0] = a1
    y[1] = b1
    y[2] = a2
    y[3] = b2
    return -1
