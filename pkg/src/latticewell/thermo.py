"""Partition functions and thermodynamics of the lattice well gas.

Four routes to Z: the discrete sum over the N-1 lattice modes, the continuum
sum over parabolic levels, its closed Gaussian-integral form
L sqrt(m*/2 pi beta hbar^2), and the theta-function form (theta3(mu) - 1)/2
with mu = beta hbar^2 pi^2 / (2 m* L^2).  Mean energy, free energy, and the
two-level (Schottky) heat-capacity model derive from these.
"""

import math
from dataclasses import dataclass

import numpy as np

from .spectrum import ParticleSpec, Spectrum, boltzmann_constant

#: Relative size at which a series term stops the summation.
SERIES_RTOL = 1e-16
#: Hard cap on series length; hitting it raises SeriesCapExceeded.
SERIES_CAP = 10 ** 6

DISCRETE_SUM = "discrete_sum"
CONTINUUM_SUM = "continuum_sum"
CONTINUUM_CLOSED = "continuum_closed"
THETA = "theta"


class SeriesCapExceeded(RuntimeError):
    """An infinite-series evaluation hit the term cap before converging."""


@dataclass(frozen=True)
class PartitionResult:
    """Partition function value with its evaluation method and derived F."""

    Z: float
    method: str
    beta: float
    free_energy: float
    mu: float | None = None


def _result(Z: float, method: str, beta: float, mu: float | None = None) -> PartitionResult:
    F = -math.log(Z) / beta if beta > 0 else math.nan
    return PartitionResult(Z, method, beta, F, mu)


def free_energy(result: PartitionResult) -> float:
    """F = -ln Z / beta."""
    if result.beta <= 0:
        raise ValueError(f"free energy needs beta > 0, got {result.beta!r}")
    return -math.log(result.Z) / result.beta


def theta_argument(L: float, particle: ParticleSpec, beta: float) -> float:
    """mu = beta hbar^2 pi^2 / (2 m* L^2), the dimensionless theta argument."""
    return beta * particle.hbar ** 2 * math.pi ** 2 / (2.0 * particle.m_star * L * L)


def _gaussian_series(c: float) -> float:
    """sum_{n>=1} exp(-c n^2), truncated at machine precision."""
    total = 0.0
    for n in range(1, SERIES_CAP + 1):
        term = math.exp(-c * n * n)
        total += term
        if term <= SERIES_RTOL * total:
            return total
    raise SeriesCapExceeded(f"sum of exp(-{c:g} n^2) needs more than {SERIES_CAP} terms")


def partition_discrete(spectrum: Spectrum, beta: float) -> PartitionResult:
    """Direct sum over the N-1 lattice modes; Z(0) = N-1."""
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta!r}")
    Z = float(np.sum(np.exp(-beta * spectrum.energies)))
    return _result(Z, DISCRETE_SUM, beta)


def partition_continuum_sum(
    L: float, particle: ParticleSpec, beta: float, cutoff: int | None = None
) -> PartitionResult:
    """Converged sum over parabolic continuum levels exp(-mu n^2)."""
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    mu = theta_argument(L, particle, beta)
    if cutoff is None:
        Z = _gaussian_series(mu)
    else:
        if cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {cutoff!r}")
        Z = sum(math.exp(-mu * n * n) for n in range(1, cutoff + 1))
    return _result(Z, CONTINUUM_SUM, beta, mu)


def partition_continuum_closed(L: float, particle: ParticleSpec, beta: float) -> PartitionResult:
    """Closed Gaussian-integral form L sqrt(m*/2 pi beta hbar^2) = (1/2) sqrt(pi/mu)."""
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    mu = theta_argument(L, particle, beta)
    Z = L * math.sqrt(particle.m_star / (2.0 * math.pi * beta * particle.hbar ** 2))
    return _result(Z, CONTINUUM_CLOSED, beta, mu)


def theta3(mu: float) -> float:
    """theta3(mu) = sum over all integers of exp(-mu n^2), by direct summation."""
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu!r}")
    return 1.0 + 2.0 * _gaussian_series(mu)


def theta3_poisson(mu: float) -> float:
    """Poisson-resummed form sqrt(pi/mu) * theta3(pi^2/mu); equals theta3(mu)."""
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu!r}")
    c = math.pi * math.pi / mu
    return math.sqrt(math.pi / mu) * (1.0 + 2.0 * _gaussian_series(c))


def partition_theta(L: float, particle: ParticleSpec, beta: float) -> PartitionResult:
    """Continuum partition function as (theta3(mu) - 1) / 2."""
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    mu = theta_argument(L, particle, beta)
    return _result(0.5 * (theta3(mu) - 1.0), THETA, beta, mu)


def mean_energy(spectrum: Spectrum, beta: float, zero_beta_limit: bool = False) -> float:
    """Thermal mean energy -d ln Z / d beta of the discrete spectrum.

    The Boltzmann weights degenerate to 0/0 at beta = 0; pass
    zero_beta_limit=True for the unweighted spectral mean instead.
    """
    E = spectrum.energies
    if zero_beta_limit:
        return float(np.mean(E))
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    E0 = float(E.min())
    w = np.exp(-beta * (E - E0))
    return E0 + float(np.sum((E - E0) * w) / np.sum(w))


def mean_energy_continuum(L: float, particle: ParticleSpec, beta: float, rel_step: float = 1e-4) -> float:
    """-d ln Z / d beta of the closed continuum form, by central difference.

    Analytically this is 1/(2 beta) (equipartition); the finite difference
    keeps the route independent of that identity.
    """
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta!r}")
    h = rel_step * beta
    zp = partition_continuum_closed(L, particle, beta + h).Z
    zm = partition_continuum_closed(L, particle, beta - h).Z
    return -(math.log(zp) - math.log(zm)) / (2.0 * h)


def _lowest_pair(spectrum: Spectrum) -> tuple[float, float]:
    if spectrum.lattice.N < 5:
        raise ValueError(
            f"two-level quantities need N >= 5 (E1 = E2 degeneracy below), got N={spectrum.lattice.N}"
        )
    return spectrum.mode(1).energy, spectrum.mode(2).energy


@dataclass(frozen=True)
class TwoLevelModel:
    """Lowest two modes with their gap and characteristic temperature."""

    E1: float
    E2: float
    delta_E: float
    theta_char: float


def two_level_model(spectrum: Spectrum, k_B: float | None = None) -> TwoLevelModel:
    E1, E2 = _lowest_pair(spectrum)
    kb = boltzmann_constant(spectrum.particle) if k_B is None else k_B
    return TwoLevelModel(E1, E2, E1 - E2, abs(E1 - E2) / (2.0 * kb))


def two_level_partition(spectrum: Spectrum, beta: float) -> float:
    """Two lowest terms e^{-beta E1} + e^{-beta E2} of the discrete sum."""
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta!r}")
    E1, E2 = _lowest_pair(spectrum)
    return math.exp(-beta * E1) + math.exp(-beta * E2)


def characteristic_temperature(spectrum: Spectrum, k_B: float | None = None) -> float:
    """Theta = |E1 - E2| / (2 k_B), so that x = Theta / T in the heat capacity."""
    return two_level_model(spectrum, k_B).theta_char


def heat_capacity_two_level(spectrum: Spectrum, T: float, k_B: float | None = None) -> float:
    """Two-level heat capacity C_V/R = (x / cosh x)^2 with x = |E2 - E1|/(2 k_B T).

    Peaks near x ~ 1.2 and vanishes in both tails (Schottky anomaly).
    """
    if T <= 0:
        raise ValueError(f"temperature must be positive, got {T!r}")
    x = two_level_model(spectrum, k_B).theta_char / T
    if x > 700:  # cosh would overflow; the value is already below 1e-600
        return 0.0
    r = x / math.cosh(x)
    return r * r
