"""Finite-N oracle in the truncated Fock (x) collective-spin basis.

The Hamiltonian acts on |n> (x) |j, m> with j = N/2 (both couplings
commute with atom permutations, so the symmetric sector is closed):

    H = Omega*Jz + omega0*b'b
        + (1/sqrt(N)) * (g1*(b*J+ + b'*J-) + g2*(b*J- + b'*J+))
        + (lam/N) * (J+J- - Jz - N/2)          [dipole term, optional]

with the standard ladder factors <m+1|J+|m> = sqrt(j(j+1) - m(m+1))
and <n-1|b|n> = sqrt(n).  The dipole term is the symmetric-sector
form of the uniform sum over sigma_i^+ sigma_j^- pairs.

Basis layout matches params.flat_index: index = fock_n*(N+1) + k with
k = m + N/2, i.e. the Fock label is the slow axis.

Dense full diagonalization backs thermal_observables and
ground_state.  The coupling-grid scans (qpt_scan) instead solve for
the lowest eigenpair with a sparse Lanczos solver and a fixed start
vector, because the scan dimensions at N = 32 make 201 full dense
decompositions far too slow; the dense and sparse paths agree to
eigensolver precision and the scan is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh

from .params import ModelParams, basis_size, validate

DENSE_SPARSE_SWITCH = 600  # below this dimension a dense solve is cheaper


class DimensionCapError(RuntimeError):
    """Requested matrix dimension exceeds the configured cap."""


class TruncationCapError(RuntimeError):
    """Fock tail still above tolerance at the hard cutoff cap."""


@dataclass(frozen=True)
class HamiltonianMatrix:
    dimension: int
    matrix: np.ndarray  # real symmetric, read-only
    params: ModelParams
    n_max: int
    include_dipole: bool


@dataclass(frozen=True)
class ThermalObservables:
    free_energy_per_atom: float
    order_parameter: float  # <b'b>/N
    mean_Jz_per_atom: float
    partition_function_log: float
    fock_tail: float  # thermal weight on the top Fock level


@dataclass(frozen=True)
class QuantumState:
    amplitudes: np.ndarray
    energy: float
    degenerate: bool = False


def _spin_blocks(n_atoms: int):
    j = n_atoms / 2.0
    m = np.arange(n_atoms + 1) - j
    jz = np.diag(m)
    raise_amp = np.sqrt(j * (j + 1.0) - m[:-1] * (m[:-1] + 1.0))
    jp = np.zeros((n_atoms + 1, n_atoms + 1))
    jp[np.arange(1, n_atoms + 1), np.arange(n_atoms)] = raise_amp
    return jz, jp, jp.T


def _boson_blocks(n_max: int):
    b = np.zeros((n_max + 1, n_max + 1))
    n = np.arange(1, n_max + 1)
    b[n - 1, n] = np.sqrt(n)
    return b, b.T, np.diag(np.arange(n_max + 1, dtype=float))


def _assemble(params: ModelParams, n_max: int, include_dipole: bool, kron, as_block):
    n = params.n_atoms
    jz, jp, jm = (as_block(x) for x in _spin_blocks(n))
    b, bdag, num = (as_block(x) for x in _boson_blocks(n_max))
    eye_f = as_block(np.eye(n_max + 1))
    eye_s = as_block(np.eye(n + 1))
    root_n = math.sqrt(n)
    h = params.Omega * kron(eye_f, jz) + params.omega0 * kron(num, eye_s)
    h = h + (params.g1 / root_n) * (kron(b, jp) + kron(bdag, jm))
    h = h + (params.g2 / root_n) * (kron(b, jm) + kron(bdag, jp))
    if include_dipole:
        dipole = jp @ jm - jz - (n / 2.0) * eye_s
        h = h + (params.lam / n) * kron(eye_f, dipole)
    return h


def build_hamiltonian(
    params: ModelParams,
    n_max: int,
    include_dipole: bool = True,
    max_dimension: int = 200_000,
) -> HamiltonianMatrix:
    """Dense symmetric Hamiltonian at Fock cutoff ``n_max``."""
    validate(params)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    dim = basis_size(n_max, params.n_atoms)
    if dim > max_dimension:
        raise DimensionCapError(f"dimension {dim} exceeds cap {max_dimension}")
    h = _assemble(params, n_max, include_dipole, np.kron, lambda x: x)
    h.setflags(write=False)
    return HamiltonianMatrix(
        dimension=dim, matrix=h, params=params, n_max=n_max, include_dipole=include_dipole
    )


def _build_sparse(params: ModelParams, n_max: int, include_dipole: bool = True) -> sp.csr_matrix:
    h = _assemble(params, n_max, include_dipole, sp.kron, sp.csr_matrix)
    return h.tocsr()


def fock_labels(n_max: int, n_atoms: int) -> np.ndarray:
    return np.repeat(np.arange(n_max + 1, dtype=float), n_atoms + 1)


def jz_labels(n_max: int, n_atoms: int) -> np.ndarray:
    return np.tile(np.arange(n_atoms + 1, dtype=float) - n_atoms / 2.0, n_max + 1)


def thermal_observables(H: HamiltonianMatrix, beta: float) -> ThermalObservables:
    """Boltzmann-weighted traces from the full dense eigendecomposition.

    The partition sum is accumulated on shifted exponentials
    exp(-beta*(E_k - E_0)), so log Z stays finite at any beta.
    """
    if not (beta is not None and beta > 0):
        raise ValueError("thermal_observables needs beta > 0; use ground_state at zero temperature")
    evals, evecs = la.eigh(np.asarray(H.matrix))
    e0 = evals[0]
    weights = np.exp(-beta * (evals - e0))
    z_shift = weights.sum()
    log_z = -beta * e0 + math.log(z_shift)
    probs = weights / z_shift
    occ = fock_labels(H.n_max, H.params.n_atoms)
    mvals = jz_labels(H.n_max, H.params.n_atoms)
    occ_per_state = (evecs * evecs * occ[:, None]).sum(axis=0)
    jz_per_state = (evecs * evecs * mvals[:, None]).sum(axis=0)
    top = slice(H.n_max * (H.params.n_atoms + 1), None)
    tail_per_state = (evecs[top] * evecs[top]).sum(axis=0)
    n_atoms = H.params.n_atoms
    return ThermalObservables(
        free_energy_per_atom=-log_z / (beta * n_atoms),
        order_parameter=float(probs @ occ_per_state) / n_atoms,
        mean_Jz_per_atom=float(probs @ jz_per_state) / n_atoms,
        partition_function_log=log_z,
        fock_tail=float(probs @ tail_per_state),
    )


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    # deterministic convention: largest-magnitude amplitude positive
    idx = int(np.argmax(np.abs(vec)))
    if vec[idx] < 0:
        vec = -vec
    return vec


def ground_state(H: HamiltonianMatrix):
    """Lowest eigenpair of the dense matrix.

    Returns a single QuantumState, or a tuple of them (each flagged
    ``degenerate=True``) when further levels sit within
    1e-12 * ||H||_inf of the bottom — in the broken-symmetry regime
    the parity doublet becomes exponentially close.
    """
    mat = np.asarray(H.matrix)
    norm = float(np.abs(mat).sum(axis=1).max())
    threshold = 1e-12 * max(1.0, norm)
    k = min(H.dimension, 8)
    while True:
        evals, evecs = la.eigh(mat, subset_by_index=[0, k - 1])
        n_deg = int(np.sum(evals - evals[0] < threshold))
        if n_deg < k or k == H.dimension:
            break
        k = min(H.dimension, 2 * k)
    if n_deg == 1:
        vec = _fix_sign(evecs[:, 0].copy())
        vec.setflags(write=False)
        return QuantumState(amplitudes=vec, energy=float(evals[0]))
    states = []
    for i in range(n_deg):
        vec = _fix_sign(evecs[:, i].copy())
        vec.setflags(write=False)
        states.append(QuantumState(amplitudes=vec, energy=float(evals[i]), degenerate=True))
    return tuple(states)


@dataclass(frozen=True)
class CutoffPolicy:
    """Fock-cutoff schedule for coupling scans.

    The starting cutoff is max(8, 4*(g1+g2)^2/omega0^2 * N) bounded by
    ``start_cap``; the cutoff then doubles until the ground-state
    weight on the top Fock level drops below ``tail_tol`` or
    ``hard_cap`` is hit (which raises TruncationCapError).
    """

    start_cap: int = 64
    hard_cap: int = 4096
    tail_tol: float = 1e-8


def initial_cutoff(params: ModelParams, policy: CutoffPolicy = CutoffPolicy()) -> int:
    guess = math.ceil(4.0 * (params.g1 + params.g2) ** 2 / params.omega0**2 * params.n_atoms)
    # hard_cap is a promise to the caller: no diagonalization above it,
    # not even the first one
    return min(max(8, min(policy.start_cap, guess)), policy.hard_cap)


def _lowest_pair(params: ModelParams, n_max: int) -> tuple[float, np.ndarray]:
    """Lowest eigenpair, dense below DENSE_SPARSE_SWITCH, else Lanczos
    with a fixed start vector (deterministic)."""
    dim = basis_size(n_max, params.n_atoms)
    if dim <= DENSE_SPARSE_SWITCH:
        h = _assemble(params, n_max, True, np.kron, lambda x: x)
        evals, evecs = la.eigh(h, subset_by_index=[0, 0])
        return float(evals[0]), evecs[:, 0]
    h = _build_sparse(params, n_max, True)
    v0 = np.full(dim, 1.0 / math.sqrt(dim))
    evals, evecs = eigsh(h, k=1, which="SA", v0=v0, ncv=min(dim - 1, 64), maxiter=10 * dim)
    return float(evals[0]), evecs[:, 0]


def converged_ground(
    params: ModelParams, policy: CutoffPolicy = CutoffPolicy(), n_max: int | None = None
) -> tuple[QuantumState, int, float]:
    """Ground state with the cutoff doubled until the Fock tail passes.

    Returns (state, n_max_used, tail).  ``n_max`` overrides the policy
    start when given.
    """
    cutoff = initial_cutoff(params, policy) if n_max is None else n_max
    while True:
        energy, vec = _lowest_pair(params, cutoff)
        tail = float(np.sum(vec[cutoff * (params.n_atoms + 1) :] ** 2))
        if tail <= policy.tail_tol:
            break
        if cutoff >= policy.hard_cap:
            raise TruncationCapError(
                f"Fock tail {tail:.3e} above {policy.tail_tol:.1e} at hard cap n_max={cutoff}"
            )
        cutoff = min(2 * cutoff, policy.hard_cap)
    vec = _fix_sign(vec)
    vec.setflags(write=False)
    return QuantumState(amplitudes=vec, energy=energy), cutoff, tail


def apply_sweep(params: ModelParams, sweep: str, g: float) -> ModelParams:
    if sweep == "g1":
        return replace(params, g1=float(g))
    if sweep == "g2":
        return replace(params, g2=float(g))
    if sweep == "both":
        return replace(params, g1=float(g), g2=float(g))
    raise ValueError(f"unknown sweep axis {sweep!r}")


def default_coupling_grid(params: ModelParams, points: int = 201) -> np.ndarray:
    return np.linspace(0.0, 2.0 * math.sqrt(params.omega0 * params.Omega), points)


@dataclass(frozen=True)
class QptPoint:
    """Crossover summary for one system size.

    chi is the negated second difference of the ground energy,
    chi(g) = -d2 E0/dg2; g_star is the grid argmax (first index on
    ties, i.e. smallest g).  ``sharp`` is False when the peak's
    half-maximum width exceeds a fifth of the grid (no critical
    feature, e.g. N=1).  ``g_star_doubled`` repeats the scan with the
    per-point cutoff doubled; ``converged`` records whether that moved
    g_star by less than one grid spacing.
    """

    n_atoms: int
    g_star: float
    chi_peak: float
    half_width_steps: int
    sharp: bool
    n_max_peak: int
    g_star_doubled: float
    grid_spacing: float
    converged: bool


def _scan_energies(
    params: ModelParams, grid: np.ndarray, sweep: str, policy: CutoffPolicy, double: bool
) -> tuple[np.ndarray, list[int]]:
    energies = np.empty(len(grid))
    cutoffs = []
    for i, g in enumerate(grid):
        p = apply_sweep(params, sweep, g)
        state, used, _ = converged_ground(p, policy)
        if double:
            state, used, _ = converged_ground(p, policy, n_max=2 * used)
        energies[i] = state.energy
        cutoffs.append(used)
    return energies, cutoffs


def _chi_argmax(grid: np.ndarray, energies: np.ndarray) -> tuple[int, np.ndarray]:
    h = grid[1] - grid[0]
    chi = np.zeros_like(energies)
    chi[1:-1] = -(energies[:-2] - 2.0 * energies[1:-1] + energies[2:]) / (h * h)
    return int(np.argmax(chi)), chi


def qpt_scan(
    params: ModelParams,
    n_atoms_list,
    sweep: str = "g2",
    grid: np.ndarray | None = None,
    policy: CutoffPolicy = CutoffPolicy(),
) -> list[QptPoint]:
    """Ground-state susceptibility scan over the coupling grid for each
    system size; the peak location g*(N) drifts toward the infinite-N
    critical coupling sqrt(omega0*Omega) as N grows.
    """
    if grid is None:
        grid = default_coupling_grid(params)
    grid = np.asarray(grid, dtype=float)
    results = []
    for n in n_atoms_list:
        p_n = replace(params, n_atoms=int(n))
        energies, cutoffs = _scan_energies(p_n, grid, sweep, policy, double=False)
        peak, chi = _chi_argmax(grid, energies)
        energies2, _ = _scan_energies(p_n, grid, sweep, policy, double=True)
        peak2, _ = _chi_argmax(grid, energies2)
        half = chi >= chi[peak] / 2.0
        left = peak
        while left > 0 and half[left - 1]:
            left -= 1
        right = peak
        while right < len(grid) - 1 and half[right + 1]:
            right += 1
        width = right - left
        spacing = float(grid[1] - grid[0])
        results.append(
            QptPoint(
                n_atoms=int(n),
                g_star=float(grid[peak]),
                chi_peak=float(chi[peak]),
                half_width_steps=width,
                sharp=bool(width <= 0.2 * len(grid) and chi[peak] > 0),
                n_max_peak=cutoffs[peak],
                g_star_doubled=float(grid[peak2]),
                grid_spacing=spacing,
                converged=bool(abs(grid[peak2] - grid[peak]) < spacing),
            )
        )
    return results
