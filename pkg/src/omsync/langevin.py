"""Semi-classical Langevin integration of the coupled optomechanical dimer.

The deterministic part of the equations of motion for the complex amplitudes
(alpha_j, beta_j) is

    d(alpha_1)/dt = (i*delta - kappa/2) alpha_1
                    + i g0 alpha_1 (beta_1 + beta_1*) - i alpha_L
    d(beta_1)/dt  = -(i*omega + gamma/2) beta_1 + i g0 |alpha_1|^2
                    + i K beta_2            (RWA coupling)
                    + i K (beta_2 + beta_2*) (full coupling)

mirrored under 1 <-> 2.  Quantum-mimicking vacuum noise enters additively as
-sqrt(kappa) dW_opt and -sqrt(gamma) dW_mech per step, with complex Gaussian
increments of total variance optical_strength*dt and mechanical_strength*dt
(independent real/imaginary quadratures of half that variance each).

In rescaled mode the amplitudes carry the tilde normalization (g0 * alpha),
the drive is the fixed product alpha_L_tilde = g0 * alpha_L, the nonlinearity
coefficient becomes 1, and both noise variances pick up a factor g0^2 so that
quantum_parameter = 0 is exactly noiseless.

Integration uses a Heun predictor-corrector for the drift with the additive
noise increment applied once per step; the noise is additive, so the Ito and
Stratonovich readings coincide and no Milstein correction exists.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import asdict, dataclass, replace

import numpy as np

from . import _kernels
from ._rng import substream
from .params import DimerParams, OmParams, ParameterError, QuantumScale, make_identical_dimer

TWO_PI = 2.0 * math.pi

# Initial mechanical kick off the unstable origin; limit-cycle attractors
# erase it within the burn-in.
INIT_AMPLITUDE_RAW = 0.1
INIT_AMPLITUDE_RESCALED = 0.01

_CHUNK = 1 << 16
_NO_RECORD = 1 << 62

TRAJECTORY_COLUMNS = [
    "t",
    "alpha1_re",
    "alpha1_im",
    "beta1_re",
    "beta1_im",
    "alpha2_re",
    "alpha2_im",
    "beta2_re",
    "beta2_im",
]


class ConfigError(ValueError):
    """Raised for invalid integration settings."""


class StiffnessError(RuntimeError):
    """Raised when an amplitude becomes non-finite; never silently clamped."""

    def __init__(self, step: int, t: float):
        self.step = step
        self.t = t
        super().__init__(
            f"non-finite amplitude at step {step} (t = {t:.6g}); "
            "reduce dt or check parameters"
        )


@dataclass(frozen=True)
class NoiseSpec:
    """Variance scales and the random stream for one trajectory.

    ``optical_strength`` multiplies dt to give the total variance of the
    optical increment (1/2 for quantum vacuum noise); ``mechanical_strength``
    plays the same role for the mechanical bath and includes the thermal
    occupancy (n_th + 1/2).  In rescaled mode both carry the factor g0^2.
    """

    optical_strength: float
    mechanical_strength: float
    seed: int = 0
    stream_id: int = 0

    def __post_init__(self) -> None:
        for name in ("optical_strength", "mechanical_strength"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ParameterError(f"{name}: must be >= 0 and finite, got {value!r}")

    @classmethod
    def quantum(cls, n_th: float = 0.0, seed: int = 0, stream_id: int = 0) -> "NoiseSpec":
        """Vacuum optical noise plus a mechanical bath at occupancy ``n_th``."""
        return cls(0.5, n_th + 0.5, seed, stream_id)

    @classmethod
    def rescaled(cls, g0: float, n_th: float = 0.0, seed: int = 0, stream_id: int = 0) -> "NoiseSpec":
        """Tilde-variable noise: both variances are scaled by g0^2."""
        s = g0 * g0
        return cls(0.5 * s, s * (n_th + 0.5), seed, stream_id)

    @classmethod
    def none(cls, seed: int = 0, stream_id: int = 0) -> "NoiseSpec":
        return cls(0.0, 0.0, seed, stream_id)

    def with_stream(self, stream_id: int) -> "NoiseSpec":
        return replace(self, stream_id=stream_id)

    @property
    def silent(self) -> bool:
        return self.optical_strength == 0.0 and self.mechanical_strength == 0.0


@dataclass(frozen=True)
class SemiclassicalState:
    """Four complex amplitudes at one time point (also used for derivatives)."""

    alpha1: complex
    beta1: complex
    alpha2: complex
    beta2: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha1, self.beta1, self.alpha2, self.beta2], dtype=np.complex128)

    @classmethod
    def from_array(cls, y: np.ndarray) -> "SemiclassicalState":
        return cls(complex(y[0]), complex(y[1]), complex(y[2]), complex(y[3]))

    @classmethod
    def zero(cls) -> "SemiclassicalState":
        return cls(0j, 0j, 0j, 0j)


@dataclass(frozen=True)
class Trajectory:
    """Strided samples of one integration run (burn-in already discarded)."""

    times: np.ndarray
    states: np.ndarray  # shape (n, 4), columns alpha1, beta1, alpha2, beta2
    sample_stride: int
    dt: float
    params: DimerParams
    scale: QuantumScale | None = None

    @property
    def alpha1(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def beta1(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def alpha2(self) -> np.ndarray:
        return self.states[:, 2]

    @property
    def beta2(self) -> np.ndarray:
        return self.states[:, 3]

    @property
    def rescaled(self) -> bool:
        return self.scale is not None

    def snapshot(self) -> dict:
        """JSON-serializable parameter snapshot used in CSV headers."""
        return {
            "cell1": asdict(self.params.cell1),
            "cell2": asdict(self.params.cell2),
            "coupling_k": self.params.coupling_k,
            "rwa_coupling": self.params.rwa_coupling,
            "scale": None if self.scale is None else asdict(self.scale),
            "dt": self.dt,
            "sample_stride": self.sample_stride,
        }


def drift(s: SemiclassicalState, p: DimerParams) -> SemiclassicalState:
    """Deterministic right-hand side of the amplitude equations."""
    x1 = s.beta1 + s.beta1.conjugate()
    x2 = s.beta2 + s.beta2.conjugate()
    c1, c2 = p.cell1, p.cell2
    da1 = (1j * c1.delta - 0.5 * c1.kappa) * s.alpha1 + 1j * c1.g0 * s.alpha1 * x1 - 1j * c1.alpha_l
    da2 = (1j * c2.delta - 0.5 * c2.kappa) * s.alpha2 + 1j * c2.g0 * s.alpha2 * x2 - 1j * c2.alpha_l
    if p.rwa_coupling:
        k1, k2 = p.coupling_k * s.beta2, p.coupling_k * s.beta1
    else:
        k1, k2 = p.coupling_k * x2, p.coupling_k * x1
    db1 = -(1j * c1.omega + 0.5 * c1.gamma) * s.beta1 + 1j * c1.g0 * abs(s.alpha1) ** 2 + 1j * k1
    db2 = -(1j * c2.omega + 0.5 * c2.gamma) * s.beta2 + 1j * c2.g0 * abs(s.alpha2) ** 2 + 1j * k2
    return SemiclassicalState(da1, db1, da2, db2)


def _drift_params(p: DimerParams, scale: QuantumScale | None) -> np.ndarray:
    cells = (p.cell1, p.cell2)
    dp = np.empty(13, dtype=np.float64)
    for j, c in enumerate(cells):
        base = 6 * j
        dp[base + 0] = c.delta
        dp[base + 1] = c.kappa
        dp[base + 4] = c.omega
        dp[base + 5] = c.gamma
        if scale is None:
            dp[base + 2] = c.g0
            dp[base + 3] = c.alpha_l
        else:
            dp[base + 2] = 1.0
            dp[base + 3] = scale.rescaled_drive
    dp[12] = p.coupling_k
    return dp


def _noise_coefs(p: DimerParams, noise: NoiseSpec, dt: float) -> np.ndarray:
    sig_opt = math.sqrt(noise.optical_strength * dt / 2.0)
    sig_mech = math.sqrt(noise.mechanical_strength * dt / 2.0)
    return np.array(
        [
            -math.sqrt(p.cell1.kappa) * sig_opt,
            -math.sqrt(p.cell1.gamma) * sig_mech,
            -math.sqrt(p.cell2.kappa) * sig_opt,
            -math.sqrt(p.cell2.gamma) * sig_mech,
        ],
        dtype=np.float64,
    )


def default_dt(p: DimerParams) -> float:
    """Resolves the mechanical period with 200 steps (cell 2 may be faster)."""
    return TWO_PI / (200.0 * max(p.cell1.omega, p.cell2.omega))


def default_burn_in(p: DimerParams) -> float:
    return 2000.0 * TWO_PI / p.cell1.omega


def max_stable_dt(p: DimerParams) -> float:
    scales = [
        p.cell1.omega,
        p.cell2.omega,
        abs(p.cell1.delta) + p.cell1.kappa,
        abs(p.cell2.delta) + p.cell2.kappa,
    ]
    return TWO_PI / (40.0 * max(scales))


def _auto_noise(p: DimerParams, scale: QuantumScale | None, seed: int, stream_id: int) -> NoiseSpec:
    if p.cell1.n_th != p.cell2.n_th:
        raise ConfigError(
            "cells carry different n_th; pass an explicit NoiseSpec to disambiguate"
        )
    if scale is None:
        return NoiseSpec.quantum(n_th=p.cell1.n_th, seed=seed, stream_id=stream_id)
    if p.cell1.kappa != p.cell2.kappa:
        raise ConfigError("rescaled mode requires equal kappa in both cells")
    g0 = scale.quantum_parameter * p.cell1.kappa
    return NoiseSpec.rescaled(g0, n_th=p.cell1.n_th, seed=seed, stream_id=stream_id)


def step(
    s: SemiclassicalState,
    p: DimerParams,
    dt: float,
    noise: NoiseSpec,
    rng: np.random.Generator,
    scale: QuantumScale | None = None,
) -> SemiclassicalState:
    """One Heun step with a single additive noise increment.

    Consumes exactly eight standard normals from ``rng`` in the fixed order
    (a1 re, a1 im, b1 re, b1 im, a2 re, a2 im, b2 re, b2 im).
    """
    if dt <= 0:
        raise ConfigError(f"dt must be > 0, got {dt}")
    y = s.as_array()
    z = rng.standard_normal((1, 8))
    out = np.empty((1, 4), dtype=np.complex128)
    status = _kernels.heun_chunk(
        y, _drift_params(p, scale), p.rwa_coupling, dt, _noise_coefs(p, noise, dt), z, out, _NO_RECORD, 0
    )
    if status >= 0:
        raise StiffnessError(step=int(status), t=float(status) * dt)
    return SemiclassicalState.from_array(y)


def simulate(
    p: DimerParams,
    t_total: float,
    *,
    dt: float | None = None,
    burn_in: float | None = None,
    noise: NoiseSpec | None = None,
    scale: QuantumScale | None = None,
    sample_stride: int | None = None,
    init_phases: tuple[float, float] | None = None,
    seed: int = 0,
    stream_id: int = 0,
) -> Trajectory:
    """Integrate the dimer and return strided samples after the burn-in.

    Initial conditions are alpha_j = 0 and beta_j at a small fixed magnitude
    with uniformly random phases (drawn from the trajectory stream unless
    ``init_phases`` pins them).  ``noise=None`` derives the NoiseSpec from
    the parameters: quantum vacuum plus thermal strengths in raw mode, the
    g0^2-scaled equivalents in rescaled mode.  ``seed``/``stream_id`` are
    only used when ``noise`` is None.
    """
    if dt is None:
        dt = default_dt(p)
    if dt <= 0:
        raise ConfigError(f"dt must be > 0, got {dt}")
    dt_max = max_stable_dt(p)
    if dt > dt_max:
        raise ConfigError(
            f"dt = {dt:.6g} does not resolve the fastest scale (need <= {dt_max:.6g})"
        )
    if burn_in is None:
        burn_in = default_burn_in(p)
    if not 0 <= burn_in < t_total:
        raise ConfigError(f"need 0 <= burn_in < t_total, got {burn_in} vs {t_total}")
    if noise is None:
        noise = _auto_noise(p, scale, seed, stream_id)
    if sample_stride is None:
        sample_stride = max(1, int(round(TWO_PI / p.cell1.omega / dt / 8.0)))
    if sample_stride < 1:
        raise ConfigError(f"sample_stride must be >= 1, got {sample_stride}")

    n_steps = int(round(t_total / dt))
    if n_steps < 1:
        raise ConfigError("t_total shorter than one step")

    rng = substream(noise.seed, noise.stream_id)
    if init_phases is None:
        phases = rng.uniform(0.0, TWO_PI, size=2)
    else:
        phases = np.asarray(init_phases, dtype=float)
    r0 = INIT_AMPLITUDE_RESCALED if scale is not None else INIT_AMPLITUDE_RAW
    y = np.array(
        [0j, r0 * np.exp(1j * phases[0]), 0j, r0 * np.exp(1j * phases[1])],
        dtype=np.complex128,
    )

    n_samples = n_steps // sample_stride + 1
    out = np.empty((n_samples, 4), dtype=np.complex128)
    out[0] = y
    dp = _drift_params(p, scale)
    coefs = _noise_coefs(p, noise, dt)
    silent = noise.silent

    done = 0
    while done < n_steps:
        m = min(_CHUNK, n_steps - done)
        if silent:
            z = np.zeros((m, 8))
        else:
            z = rng.standard_normal((m, 8))
        status = _kernels.heun_chunk(y, dp, p.rwa_coupling, dt, coefs, z, out, sample_stride, done)
        if status >= 0:
            raise StiffnessError(step=int(status), t=(int(status) + 1) * dt)
        done += m

    times = np.arange(n_samples) * (sample_stride * dt)
    keep = times >= burn_in - 1e-12
    return Trajectory(
        times=times[keep],
        states=out[keep],
        sample_stride=sample_stride,
        dt=dt,
        params=p,
        scale=scale,
    )


def mechanical_ac_energy(traj: Trajectory, cell: int = 1) -> float:
    """Time-averaged |beta - <beta>|^2: zero at any fixed point, the squared
    limit-cycle amplitude on a periodic orbit."""
    beta = traj.beta1 if cell == 1 else traj.beta2
    return float(np.mean(np.abs(beta - beta.mean()) ** 2))


def photon_number(traj: Trajectory, cell: int = 1) -> float:
    """Time-averaged photon number <|alpha|^2>, un-tilded in rescaled mode."""
    alpha = traj.alpha1 if cell == 1 else traj.alpha2
    value = float(np.mean(np.abs(alpha) ** 2))
    if traj.scale is not None:
        cell_p = traj.params.cell1 if cell == 1 else traj.params.cell2
        g0 = traj.scale.quantum_parameter * cell_p.kappa
        if g0 == 0.0:
            raise ConfigError("photon number is undefined in the strict classical limit")
        value /= g0 * g0
    return value


@dataclass(frozen=True)
class ThresholdScan:
    """Grid of single-cell limit-cycle detections over (alpha_l, delta)."""

    alpha_l_values: np.ndarray
    delta_values: np.ndarray
    limit_cycle: np.ndarray  # bool, shape (n_alpha, n_delta)
    ac_energy: np.ndarray  # float, same shape
    energy_floor: float


def selfosc_threshold_scan(
    p: OmParams,
    alpha_l_values,
    delta_values,
    *,
    t_total: float | None = None,
    burn_in: float | None = None,
    dt: float | None = None,
    energy_floor: float = 1e-4,
) -> ThresholdScan:
    """Detect self-sustained mechanical oscillation over a drive/detuning grid.

    Each grid point integrates a single noiseless cell (K = 0) and reports
    whether the long-time AC mechanical energy exceeds ``energy_floor``.
    """
    alpha_l_values = np.atleast_1d(np.asarray(alpha_l_values, dtype=float))
    delta_values = np.atleast_1d(np.asarray(delta_values, dtype=float))
    period = TWO_PI / p.omega
    if t_total is None:
        t_total = 600.0 * period
    if burn_in is None:
        burn_in = 400.0 * period
    energy = np.zeros((alpha_l_values.size, delta_values.size))
    present = np.zeros_like(energy, dtype=bool)
    for i, alpha_l in enumerate(alpha_l_values):
        for j, delta in enumerate(delta_values):
            cell = replace(p, alpha_l=float(alpha_l), delta=float(delta), omega=1.0)
            dimer = make_identical_dimer(cell, 0.0)
            traj = simulate(
                dimer,
                t_total,
                dt=dt,
                burn_in=burn_in,
                noise=NoiseSpec.none(),
                init_phases=(0.0, 0.0),
            )
            energy[i, j] = mechanical_ac_energy(traj, cell=1)
            present[i, j] = energy[i, j] > energy_floor
    return ThresholdScan(
        alpha_l_values=alpha_l_values,
        delta_values=delta_values,
        limit_cycle=present,
        ac_energy=energy,
        energy_floor=energy_floor,
    )


def save_trajectory_csv(traj: Trajectory, path) -> None:
    """Write t plus re/im of all four amplitudes; the first line is a comment
    carrying the JSON parameter snapshot."""
    buf = io.StringIO()
    buf.write("# " + json.dumps(traj.snapshot(), sort_keys=True) + "\n")
    buf.write(",".join(TRAJECTORY_COLUMNS) + "\n")
    for i in range(traj.times.size):
        row = [repr(float(traj.times[i]))]
        for m in range(4):
            v = traj.states[i, m]
            row.append(repr(float(v.real)))
            row.append(repr(float(v.imag)))
        buf.write(",".join(row) + "\n")
    with open(path, "w") as fh:
        fh.write(buf.getvalue())


def load_trajectory_csv(path) -> Trajectory:
    with open(path) as fh:
        header = fh.readline()
        if not header.startswith("# "):
            raise ValueError(f"{path}: missing parameter-snapshot comment line")
        snap = json.loads(header[2:])
        columns = fh.readline().strip().split(",")
        if columns != TRAJECTORY_COLUMNS:
            raise ValueError(f"{path}: unexpected columns {columns}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    times = data[:, 0]
    states = np.empty((data.shape[0], 4), dtype=np.complex128)
    for m in range(4):
        states[:, m] = data[:, 1 + 2 * m] + 1j * data[:, 2 + 2 * m]
    params = DimerParams(
        cell1=OmParams(**snap["cell1"]),
        cell2=OmParams(**snap["cell2"]),
        coupling_k=snap["coupling_k"],
        rwa_coupling=snap["rwa_coupling"],
    )
    scale = None if snap["scale"] is None else QuantumScale(**snap["scale"])
    return Trajectory(
        times=times,
        states=states,
        sample_stride=int(snap["sample_stride"]),
        dt=float(snap["dt"]),
        params=params,
        scale=scale,
    )
