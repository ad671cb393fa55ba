"""Regenerate tests/reference_values.py with mpmath at 50 digits.

Every constant the test suite asserts against a plain decimal literal
is produced here, by routes independent of the package code: mpmath
arithmetic on the printed formulas, or explicit small matrices.  Run

    python3 tests/tools/gen_reference_values.py > tests/reference_values.py

and commit the result; tests import the frozen module, never this
script.
"""

import mpmath as mp

mp.mp.dps = 50


def _fmt(x) -> str:
    return mp.nstr(x, 17, strip_zeros=False)


def critical_beta(omega0, Omega, g_eff_sq):
    # beta_c = (4/Omega) artanh(omega0*Omega/g_eff^2)
    return 4 / Omega * mp.atanh(omega0 * Omega / g_eff_sq)


def a1_zero_frequency(omega0, Omega, g1, g2, beta):
    # A1(0) = t/(pi Omega^2) [g1^2/omega0 + g2^2/omega0
    #                         - t (g1^2-g2^2)^2/(omega0^2 Omega)]
    t = mp.tanh(beta * Omega / 4)
    return (
        t
        / (mp.pi * Omega**2)
        * (g1**2 / omega0 + g2**2 / omega0 - t * (g1**2 - g2**2) ** 2 / (omega0**2 * Omega))
    )


def entropy_two_level(p):
    return -(p * mp.log(p) + (1 - p) * mp.log(1 - p))


def symmetric_state_covariance(pauli: bool):
    # |s> = (|01> + |10>)/sqrt(2); covariance of X (x) I and I (x) X.
    half = mp.mpf(1) / 2
    x = mp.matrix([[0, 1], [1, 0]]) * (1 if pauli else half)
    psi = mp.matrix([0, 1, 1, 0]) / mp.sqrt(2)
    x1 = _kron(x, mp.eye(2))
    x2 = _kron(mp.eye(2), x)
    mean1 = _expect(psi, x1)
    mean2 = _expect(psi, x2)
    joint = _expect(psi, x1 * x2)
    return joint - mean1 * mean2


def _kron(a, b):
    out = mp.zeros(a.rows * b.rows, a.cols * b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            for k in range(b.rows):
                for l in range(b.cols):
                    out[i * b.rows + k, j * b.cols + l] = a[i, j] * b[k, l]
    return out


def _expect(psi, op):
    return (psi.T * op * psi)[0]


def main() -> None:
    one = mp.mpf(1)
    values = {
        # thermal weight tanh(beta*Omega/4) at beta=4, Omega=1
        "tanh_one": mp.tanh(one),
        # beta_c at omega0 = Omega = 1 for g_eff^2 = 2 and 4
        "beta_c_geff_sq_2": critical_beta(one, one, mp.mpf(2)),
        "beta_c_geff_sq_4": critical_beta(one, one, mp.mpf(4)),
        # beta_c at omega0=1, Omega=2, g_eff^2 = 9/4
        "beta_c_w1_O2_geff_sq_2p25": critical_beta(one, mp.mpf(2), mp.mpf(9) / 4),
        # A1(0) at omega0=Omega=1, g1=1, g2=0, beta=1
        "a1_zero_unit": a1_zero_frequency(one, one, one, mp.mpf(0), one),
        # von Neumann entropy (nats) of eigenvalues (3/4, 1/4)
        "entropy_three_quarter": entropy_two_level(mp.mpf(3) / 4),
        "log_two": mp.log(2),
        # covariance of X1, X2 in the two-atom symmetric one-excitation
        # state, Pauli convention (+-1) and spin-1/2 convention (+-1/2)
        "sym_covariance_pauli": symmetric_state_covariance(True),
        "sym_covariance_spin_half": symmetric_state_covariance(False),
        # Jaynes-Cummings doublet at n=0: omega0=1, Omega=1.5, g1=0.7
        # E = (n+1/2) omega0 +- sqrt(((Omega-omega0)/2)^2 + g1^2 (n+1))
        "jc_doublet_upper": one / 2 + mp.sqrt(mp.mpf(1) / 16 + mp.mpf(49) / 100),
        "jc_doublet_lower": one / 2 - mp.sqrt(mp.mpf(1) / 16 + mp.mpf(49) / 100),
    }
    print('"""Frozen reference constants; regenerate with')
    print('tests/tools/gen_reference_values.py (mpmath, 50 digits)."""')
    print()
    for name, value in values.items():
        print(f"{name.upper()} = {_fmt(value)}")


if __name__ == "__main__":
    main()
