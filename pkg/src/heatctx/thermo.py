"""Heat averages, the modified Clausius inequality, and entropy production.

Sign convention, fixed once: positive <Q_A> means subsystem A receives heat.
The trace form evolves the state (Schrodinger picture), which is what the
closed-form expressions reproduce.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NonThermalMarginalsError, NumericsError
from .linalg import as_matrix, dagger, kron, max_norm
from .states import (
    DensityMatrix,
    TwoQubitThermalParams,
    TwoQutritThermalParams,
    gibbs_state,
    mutual_information,
    relative_entropy,
    zeeman_hamiltonian,
    qutrit_hamiltonian,
)
from .dynamics import evolve_interaction_picture

THERMAL_MARGIN_TOL = 1e-8


@dataclass(frozen=True)
class HeatResult:
    """Heat bookkeeping at a single evolution time."""

    q_A: float
    q_B: float
    delta_mutual_info: float
    clausius_lhs: float  # (beta_A - beta_B) <Q_A>  -  Delta I(A:B)
    entropy_production: float  # S(rho_A'||rho_A) + S(rho_B'||rho_B)


def heat_trace(rho: DensityMatrix, h_int, h_a_local, t: float) -> float:
    """<Q_A> = Tr{U rho U^dag (H_A x 1)} - Tr{rho (H_A x 1)}."""
    ha = as_matrix(h_a_local)
    d_b = rho.dim // ha.shape[0]
    if ha.shape[0] * d_b != rho.dim:
        raise DimensionError(
            f"local dim {ha.shape[0]} does not divide state dim {rho.dim}"
        )
    ha_full = kron(ha, np.eye(d_b))
    evolved = evolve_interaction_picture(rho, h_int, t)
    return float(np.real(np.trace((evolved.matrix - rho.matrix) @ ha_full)))


def heat_closed_form_2qubit(
    p01: float,
    p10: float,
    eta: float,
    xi: float,
    g: float,
    theta: float,
    omega: float,
    t,
):
    """Resonant two-qubit heat from populations and the |01><10| coherence.

    <Q_A> = omega * ((p01 - p10) sin^2(gt) + eta sin(2gt) sin(xi - theta)).
    Accepts scalar or array t.
    """
    x = g * np.asarray(t, dtype=float)
    out = omega * (
        (p01 - p10) * np.sin(x) ** 2 + eta * np.sin(2 * x) * np.sin(xi - theta)
    )
    return out if out.ndim else float(out)


def heat_closed_form_2qubit_thermal(
    params: TwoQubitThermalParams, g: float, theta: float, t
):
    """Heat for the thermal two-qubit family in tanh form.

    <Q_A> = omega * ( (1/2) sin^2(gt) [tanh(omega beta_A / 2) - tanh(omega beta_B / 2)]
                      + eta sin(2gt) sin(xi - theta) ).
    """
    p = params
    x = g * np.asarray(t, dtype=float)
    thermal = 0.5 * (
        np.tanh(p.omega * p.beta_A / 2) - np.tanh(p.omega * p.beta_B / 2)
    )
    out = p.omega * (
        thermal * np.sin(x) ** 2 + p.eta * np.sin(2 * x) * np.sin(p.xi - theta)
    )
    return out if out.ndim else float(out)


def qutrit_heat_coefficients(params: TwoQutritThermalParams) -> tuple[float, float]:
    """Coefficients (zeta, xi) of <Q_A> = zeta sin^2(gt) + xi sin(gt)cos(gt).

    zeta collects the population imbalance between swapped levels; xi collects
    the coherences. Both are verified against the brute-force trace formula:

      zeta = sum_{i<j} (omega_j - omega_i)(p_{ij} - p_{ji})
      xi   = 2 [ eta31 (omega_1-omega_0) sin(theta31)
               + eta62 (omega_2-omega_0) sin(theta62)
               + eta75 (omega_2-omega_1) sin(theta75) ]
    """
    o0, o1, o2 = params.omegas
    p = params.diagonal_probabilities()
    zeta = (
        (o1 - o0) * (p[1] - p[3])
        + (o2 - o0) * (p[2] - p[6])
        + (o2 - o1) * (p[5] - p[7])
    )
    xi = 2.0 * (
        params.eta31 * (o1 - o0) * np.sin(params.theta31)
        + params.eta62 * (o2 - o0) * np.sin(params.theta62)
        + params.eta75 * (o2 - o1) * np.sin(params.theta75)
    )
    return float(zeta), float(xi)


def heat_closed_form_qutrit(params: TwoQutritThermalParams, g: float, t):
    """Partial-SWAP heat for the two-qutrit family."""
    zeta, xi = qutrit_heat_coefficients(params)
    x = g * np.asarray(t, dtype=float)
    out = zeta * np.sin(x) ** 2 + xi * np.sin(x) * np.cos(x)
    return out if out.ndim else float(out)


def clausius_report(
    rho: DensityMatrix,
    h_int,
    h_a_local,
    h_b_local,
    beta_A: float,
    beta_B: float,
    t: float,
) -> HeatResult:
    """Evaluate heat, mutual-information change, and entropy production.

    Verifies the identity
        S(rho_A'||rho_A) + S(rho_B'||rho_B)
            = beta_A <Q_A> + beta_B <Q_B> - Delta I(A:B)
    to 1e-9 and returns all pieces. Requires thermal marginals at the given
    betas (to 1e-8, looser than construction so externally loaded states pass).
    """
    for keep, h_local, beta in ((0, h_a_local, beta_A), (1, h_b_local, beta_B)):
        want = gibbs_state(h_local, beta).matrix
        got = rho.marginal(keep).matrix
        dev = max_norm(got - want)
        if dev > THERMAL_MARGIN_TOL:
            raise NonThermalMarginalsError(
                f"marginal {keep} deviates from Gibbs(beta={beta:g}) by {dev:.3g}"
            )

    q_a = heat_trace(rho, h_int, h_a_local, t)
    hb = as_matrix(h_b_local)
    d_a = rho.dim // hb.shape[0]
    hb_full = kron(np.eye(d_a), hb)
    evolved = evolve_interaction_picture(rho, h_int, t)
    q_b = float(np.real(np.trace((evolved.matrix - rho.matrix) @ hb_full)))

    delta_i = mutual_information(evolved) - mutual_information(rho)
    entropy_production = relative_entropy(
        evolved.marginal(0), rho.marginal(0)
    ) + relative_entropy(evolved.marginal(1), rho.marginal(1))

    identity_gap = abs(entropy_production - (beta_A * q_a + beta_B * q_b - delta_i))
    if identity_gap > 1e-9:
        raise NumericsError(
            f"entropy-production identity violated by {identity_gap:.3g}"
        )

    return HeatResult(
        q_A=q_a,
        q_B=q_b,
        delta_mutual_info=delta_i,
        clausius_lhs=(beta_A - beta_B) * q_a - delta_i,
        entropy_production=entropy_production,
    )


def two_qubit_clausius(params: TwoQubitThermalParams, interaction, t: float) -> HeatResult:
    """Convenience wrapper: build the thermal state and its Zeeman locals, then report."""
    from .states import two_qubit_thermal

    rho = two_qubit_thermal(params)
    h_local = zeeman_hamiltonian(params.omega)
    return clausius_report(
        rho,
        interaction.hamiltonian(),
        h_local,
        h_local,
        params.beta_A,
        params.beta_B,
        t,
    )


def two_qutrit_clausius(
    params: TwoQutritThermalParams, interaction, t: float
) -> HeatResult:
    from .states import two_qutrit_thermal

    rho = two_qutrit_thermal(params)
    h_local = qutrit_hamiltonian(params.omegas)
    return clausius_report(
        rho,
        interaction.hamiltonian(),
        h_local,
        h_local,
        params.beta_A,
        params.beta_B,
        t,
    )
