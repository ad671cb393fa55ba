"""Parameter records, Matsubara frequencies, and basis indexing.

Conventions used throughout the package (hbar = k_B = 1):

  * the atomic Hamiltonian is Omega * J_z with J_z = sum_i sigma_z^(i),
    sigma_z eigenvalues +-1/2, so the single-atom gap is exactly Omega
    and the collective spectrum is m in {-N/2, ..., +N/2};
  * g1 multiplies the rotating terms (b J+ + b'' J-), g2 the
    counter-rotating ones, both scaled by 1/sqrt(N);
  * lam is the uniform infinite-range dipole-dipole strength (the
    sigma+ sigma- coupling carries lam/N);
  * beta is the inverse temperature; beta=None is the distinguished
    zero-temperature flag (tanh(beta*Omega/4) -> 1 analytically, never
    beta=inf arithmetic).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the spin-boson model.

    omega0  boson mode energy, > 0
    Omega   atomic level splitting, > 0
    g1      rotating-term coupling, >= 0
    g2      counter-rotating coupling, >= 0
    lam     dipole-dipole strength, any sign
    n_atoms number of atoms N, >= 1
    beta    inverse temperature > 0, or None for zero temperature
    """

    omega0: float
    Omega: float
    g1: float
    g2: float = 0.0
    lam: float = 0.0
    n_atoms: int = 1
    beta: float | None = None

    def with_beta(self, beta: float | None) -> "ModelParams":
        return replace(self, beta=beta)

    def with_coupling(self, g1: float | None = None, g2: float | None = None) -> "ModelParams":
        out = self
        if g1 is not None:
            out = replace(out, g1=float(g1))
        if g2 is not None:
            out = replace(out, g2=float(g2))
        return out

    @property
    def zero_temperature(self) -> bool:
        return self.beta is None


def validation_errors(params: ModelParams) -> list[str]:
    """Every violated invariant of ``params``, one message each.

    An empty list means the record is valid.
    """
    errors = []
    if not (params.omega0 > 0):
        errors.append("omega0 must be positive")
    if not (params.Omega > 0):
        errors.append("Omega must be positive")
    if params.g1 < 0 or params.g2 < 0:
        errors.append("couplings must be non-negative")
    if not (isinstance(params.n_atoms, int) and params.n_atoms >= 1):
        errors.append("n_atoms must be a positive integer")
    if params.beta is not None and not (params.beta > 0):
        errors.append("beta must be positive or None (zero temperature)")
    for name in ("omega0", "Omega", "g1", "g2", "lam"):
        value = getattr(params, name)
        if isinstance(value, float) and not math.isfinite(value):
            errors.append(f"{name} must be finite")
    return errors


def validate(params: ModelParams) -> ModelParams:
    """Return ``params`` unchanged if valid, else raise with all violations."""
    errors = validation_errors(params)
    if errors:
        raise ValueError("; ".join(errors))
    return params


def thermal_factor(params: ModelParams, beta: float | None = None) -> float:
    """The weight tanh(beta*Omega/4); exactly 1 at zero temperature.

    ``beta`` overrides ``params.beta`` when given.
    """
    if beta is None:
        beta = params.beta
    if beta is None:
        return 1.0
    if beta <= 0:
        raise ValueError("beta must be positive or None (zero temperature)")
    return math.tanh(beta * params.Omega / 4.0)


@dataclass(frozen=True)
class MatsubaraFrequency:
    """One discrete imaginary-time frequency.

    kind "bosonic": value = 2*pi*n/beta; kind "fermionic":
    value = (2n+1)*pi/beta.
    """

    kind: str
    index: int
    value: float


def matsubara(kind: str, index: int, beta: float) -> MatsubaraFrequency:
    """Exact Matsubara frequency for the given kind, integer index, and beta."""
    if not beta > 0:
        raise ValueError("beta must be positive")
    if kind == "bosonic":
        value = 2.0 * math.pi * index / beta
    elif kind == "fermionic":
        value = (2 * index + 1) * math.pi / beta
    else:
        raise ValueError(f"unknown frequency kind {kind!r}")
    return MatsubaraFrequency(kind=kind, index=index, value=value)


@dataclass(frozen=True)
class BasisIndex:
    """Position in the truncated Fock (x) collective-spin product basis.

    fock_n is the boson occupation, 0..n_max.  spin_m is the collective
    J_z eigenvalue in the maximal-spin sector j = N/2; it is
    half-integer when N is odd.
    """

    fock_n: int
    spin_m: float


def basis_size(n_max: int, n_atoms: int) -> int:
    return (n_max + 1) * (n_atoms + 1)


def flat_index(state: BasisIndex, n_max: int, n_atoms: int) -> int:
    """Flatten to 0..(n_max+1)(N+1)-1; Fock-major, spin minor."""
    k = round(state.spin_m + n_atoms / 2.0)
    if not 0 <= state.fock_n <= n_max:
        raise ValueError("fock_n out of range")
    if not 0 <= k <= n_atoms:
        raise ValueError("spin_m out of range")
    if abs(state.spin_m + n_atoms / 2.0 - k) > 1e-9:
        raise ValueError("spin_m must step by 1 from -N/2")
    return state.fock_n * (n_atoms + 1) + k


def basis_state(index: int, n_max: int, n_atoms: int) -> BasisIndex:
    """Inverse of flat_index."""
    if not 0 <= index < basis_size(n_max, n_atoms):
        raise ValueError("flat index out of range")
    fock_n, k = divmod(index, n_atoms + 1)
    return BasisIndex(fock_n=fock_n, spin_m=k - n_atoms / 2.0)
