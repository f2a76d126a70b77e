"""Shared generators for randomized tests.

All randomness flows through seeded np.random.default_rng instances created
per test, so every run is reproducible.
"""

import numpy as np

from heatctx import (
    TwoQubitThermalParams,
    TwoQutritThermalParams,
)


def random_hermitian(rng, d):
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (m + m.conj().T) / 2


def random_unitary(rng, d):
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(rng, d):
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def qubit_thermal_populations(omega, beta_A, beta_B):
    """Diagonal of the product of local Gibbs states, basis |00>,|01>,|10>,|11>."""
    za = 1.0 + np.exp(-omega * beta_A)
    zb = 1.0 + np.exp(-omega * beta_B)
    pa = np.array([1.0, np.exp(-omega * beta_A)]) / za
    pb = np.array([1.0, np.exp(-omega * beta_B)]) / zb
    return np.outer(pa, pb).reshape(4)


def random_two_qubit_params(rng, eta_frac_max=0.95, with_extras=False):
    """Random valid parameters; eta stays inside the positivity disc."""
    omega = rng.uniform(0.5, 2.0)
    beta_a = rng.uniform(0.1, 2.0)
    beta_b = rng.uniform(0.1, 2.0)
    p = qubit_thermal_populations(omega, beta_a, beta_b)
    eta_cap = np.sqrt(p[1] * p[2])
    eta = rng.uniform(-eta_frac_max, eta_frac_max) * eta_cap
    xi = rng.uniform(0.0, 2 * np.pi)
    extras = {}
    if with_extras:
        # Small remaining off-diagonals; positivity still checked downstream.
        scale = 0.05 * p.min()
        for key in ("nu1", "nu2", "gamma"):
            extras[key] = complex(rng.normal(0, scale), rng.normal(0, scale))
    return TwoQubitThermalParams(
        omega=omega, beta_A=beta_a, beta_B=beta_b, eta=eta, xi=xi, **extras
    )


def random_two_qutrit_params(rng, eta_frac_max=0.9):
    oms = np.sort(rng.uniform(0.0, 2.0, size=3))
    beta_a = rng.uniform(0.1, 2.0)
    beta_b = rng.uniform(0.1, 2.0)
    params0 = TwoQutritThermalParams(
        omegas=tuple(oms), beta_A=beta_a, beta_B=beta_b
    )
    p = params0.diagonal_probabilities()
    caps = {
        "eta31": np.sqrt(p[1] * p[3]),
        "eta62": np.sqrt(p[2] * p[6]),
        "eta75": np.sqrt(p[5] * p[7]),
    }
    # Split the positivity budget so all three coherences can coexist.
    etas = {
        k: rng.uniform(-eta_frac_max, eta_frac_max) * cap / 2
        for k, cap in caps.items()
    }
    thetas = {t: rng.uniform(0.0, 2 * np.pi) for t in ("theta31", "theta62", "theta75")}
    return TwoQutritThermalParams(
        omegas=tuple(oms), beta_A=beta_a, beta_B=beta_b, **etas, **thetas
    )
