"""Independent oracles for the test suite.

Everything here is built from first principles with individual Pauli
matrices on the full 2^N atomic space, deliberately sharing no code
with the package: the dipole-dipole term is the literal two-site sum
over ordered pairs, not the collective-ladder rearrangement.  Sizes
are kept tiny (N <= 4, small Fock cutoffs), this is a cross-check,
not a solver.
"""

import numpy as np

SX = np.array([[0.0, 1.0], [1.0, 0.0]])
SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
SP = np.array([[0.0, 1.0], [0.0, 0.0]])  # sigma+ : |down> -> |up>
SM = SP.T


def _site_operator(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    out = np.array([[1.0]])
    for i in range(n_sites):
        out = np.kron(out, op if i == site else np.eye(2))
    return out


def full_space_hamiltonian(omega0, Omega, g1, g2, lam, n_atoms, n_max) -> np.ndarray:
    """H on Fock(n_max) (x) C^{2^N}, every spin individual.

    The atomic splitting is Omega * sum_i sigma_z^i / 2, couplings are
    scaled by 1/sqrt(N), and the dipole-dipole term is
    (lam/N) sum_{i != k} sigma+_i sigma-_k.
    """
    dim_spin = 2**n_atoms
    jp = sum(_site_operator(SP, i, n_atoms) for i in range(n_atoms))
    jm = jp.T
    jz = sum(_site_operator(SZ, i, n_atoms) for i in range(n_atoms)) / 2.0

    b = np.zeros((n_max + 1, n_max + 1))
    for n in range(1, n_max + 1):
        b[n - 1, n] = np.sqrt(n)
    bdag = b.T
    num = bdag @ b
    eye_b = np.eye(n_max + 1)
    eye_s = np.eye(dim_spin)

    h = Omega * np.kron(eye_b, jz) + omega0 * np.kron(num, eye_s)
    root_n = np.sqrt(n_atoms)
    h += g1 / root_n * (np.kron(b, jp) + np.kron(bdag, jm))
    h += g2 / root_n * (np.kron(b, jm) + np.kron(bdag, jp))
    if lam != 0.0:
        dipole = np.zeros((dim_spin, dim_spin))
        for i in range(n_atoms):
            for k in range(n_atoms):
                if i != k:
                    dipole += _site_operator(SP, i, n_atoms) @ _site_operator(SM, k, n_atoms)
        h += lam / n_atoms * np.kron(eye_b, dipole)
    return h


def symmetric_sector_embedding(n_atoms: int, n_max: int) -> np.ndarray:
    """Isometry from the collective basis (Fock-major, spin minor) into
    the full product space: column q is the normalized symmetric state
    with fock_n = q // (N+1) excitations-of-light and
    k = q % (N+1) atoms up.
    """
    dim_spin = 2**n_atoms
    sym = np.zeros((dim_spin, n_atoms + 1))
    for config in range(dim_spin):
        # bit value 1 selects the second basis vector, the sigma_z = -1
        # (down) state, so the number of up atoms counts the zero bits
        ups = n_atoms - bin(config).count("1")
        sym[config, ups] = 1.0
    sym /= np.sqrt(sym.sum(axis=0))
    cols = []
    for fock in range(n_max + 1):
        fock_vec = np.zeros(n_max + 1)
        fock_vec[fock] = 1.0
        for k in range(n_atoms + 1):
            cols.append(np.kron(fock_vec, sym[:, k]))
    return np.array(cols).T


def free_log_partition(omega0, Omega, beta, n_atoms, n_max) -> float:
    """log Z of the uncoupled model on the truncated collective basis:
    a finite geometric boson sum times the N+1 spin levels."""
    boson = sum(np.exp(-beta * omega0 * n) for n in range(n_max + 1))
    spins = sum(np.exp(-beta * Omega * (k - n_atoms / 2.0)) for k in range(n_atoms + 1))
    return float(np.log(boson) + np.log(spins))
