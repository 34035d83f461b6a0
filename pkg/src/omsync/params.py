"""Physical parameters and dimensionless conventions shared by all engines.

Conventions: every frequency is expressed in units of the mechanical frequency
of oscillator 1 (so ``omega == 1`` for cell 1 by definition), time is measured
in units of its inverse, and hbar = 1.  Mechanical mass and zero-point length
never appear as independent inputs; they cancel in every implemented formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


class ParameterError(ValueError):
    """Raised when a parameter set violates its physical range."""


def _require(condition: bool, field: str, message: str) -> None:
    if not condition:
        raise ParameterError(f"{field}: {message}")


@dataclass(frozen=True)
class OmParams:
    """Microscopic parameters of one optomechanical cell.

    Attributes:
        delta: laser detuning from the cavity resonance, in units of Omega_1.
        omega: mechanical frequency in units of Omega_1 (cell 1 carries 1.0).
        kappa: optical amplitude damping rate.
        gamma: mechanical amplitude damping rate.
        g0: single-photon optomechanical coupling.
        alpha_l: laser driving strength.
        n_th: thermal occupancy of the mechanical bath (>= 0).
    """

    delta: float
    omega: float
    kappa: float
    gamma: float
    g0: float
    alpha_l: float
    n_th: float = 0.0

    def __post_init__(self) -> None:
        for name in ("delta", "omega", "kappa", "gamma", "g0", "alpha_l", "n_th"):
            value = getattr(self, name)
            _require(math.isfinite(value), name, f"must be finite, got {value!r}")
        _require(self.omega > 0, "omega", f"must be > 0, got {self.omega}")
        _require(self.kappa > 0, "kappa", f"must be > 0, got {self.kappa}")
        _require(self.gamma > 0, "gamma", f"must be > 0, got {self.gamma}")
        _require(self.g0 >= 0, "g0", f"must be >= 0, got {self.g0}")
        _require(self.n_th >= 0, "n_th", f"must be >= 0, got {self.n_th}")


@dataclass(frozen=True)
class DimerParams:
    """Two optomechanical cells with a mechanical coupling.

    ``rwa_coupling`` selects the excitation-conserving form of the coupling
    (b1^dag b2 + b1 b2^dag) instead of the full (b1 + b1^dag)(b2 + b2^dag).
    """

    cell1: OmParams
    cell2: OmParams
    coupling_k: float
    rwa_coupling: bool = False

    def __post_init__(self) -> None:
        _require(
            self.cell1.omega == 1.0,
            "cell1.omega",
            f"unit convention requires exactly 1.0, got {self.cell1.omega}",
        )
        _require(
            math.isfinite(self.coupling_k),
            "coupling_k",
            f"must be finite, got {self.coupling_k!r}",
        )

    @property
    def identical(self) -> bool:
        return self.cell1 == self.cell2


@dataclass(frozen=True)
class QuantumScale:
    """Effective quantum-noise strength and the drive combination held fixed.

    ``quantum_parameter`` is g0/kappa; zero denotes the noiseless classical
    limit.  ``rescaled_drive`` is g0*alpha_L (in units of Omega_1^2) and is
    kept constant along a classical-to-quantum sweep.
    """

    quantum_parameter: float
    rescaled_drive: float

    def __post_init__(self) -> None:
        _require(
            math.isfinite(self.quantum_parameter) and self.quantum_parameter >= 0,
            "quantum_parameter",
            f"must be >= 0 and finite, got {self.quantum_parameter!r}",
        )
        _require(
            math.isfinite(self.rescaled_drive),
            "rescaled_drive",
            f"must be finite, got {self.rescaled_drive!r}",
        )

    @property
    def noiseless(self) -> bool:
        return self.quantum_parameter == 0.0


@dataclass(frozen=True)
class CrossoverPoint:
    """One point of a classical-to-quantum sweep.

    ``noiseless`` marks the classical limit, where the laser amplitude cannot
    be materialized (alpha_L = rescaled_drive/g0 diverges); integrators must
    then take the rescaled, noise-free path and the per-cell ``g0``/``alpha_l``
    entries are placeholders.
    """

    params: DimerParams
    noiseless: bool


def make_identical_dimer(p: OmParams, k: float, rwa: bool = False) -> DimerParams:
    """Build a dimer of two exactly identical cells with coupling ``k``."""
    return DimerParams(cell1=p, cell2=p, coupling_k=k, rwa_coupling=rwa)


def detune(d: DimerParams, delta_omega: float) -> DimerParams:
    """Return a copy of ``d`` with cell 2 mechanically detuned by ``delta_omega``."""
    return replace(d, cell2=replace(d.cell2, omega=1.0 + delta_omega))


def crossover_point(scale: QuantumScale, base: DimerParams) -> CrossoverPoint:
    """Materialize dimer parameters at one quantum-parameter value.

    All classical ratios (kappa, gamma, delta, omega, K) come from ``base``;
    g0 = quantum_parameter * kappa per cell and alpha_L = rescaled_drive / g0.
    """
    if scale.noiseless:
        cells = [replace(c, g0=0.0, alpha_l=0.0) for c in (base.cell1, base.cell2)]
        params = replace(base, cell1=cells[0], cell2=cells[1])
        return CrossoverPoint(params=params, noiseless=True)
    cells = []
    for cell in (base.cell1, base.cell2):
        g0 = scale.quantum_parameter * cell.kappa
        cells.append(replace(cell, g0=g0, alpha_l=scale.rescaled_drive / g0))
    params = replace(base, cell1=cells[0], cell2=cells[1])
    return CrossoverPoint(params=params, noiseless=False)
