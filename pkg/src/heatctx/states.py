"""Density-matrix construction and entropic quantities.

Covers Gibbs states, the correlated two-qubit thermal family (whose marginals
are thermal by construction), the two-qutrit energy-conserving correlated
family, and von Neumann entropy / mutual information / relative entropy.

Units: hbar = k_B = 1. Energies carry whatever unit the caller uses; betas
are inverse energies in the same unit. Entropies are in nats.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionError,
    NotAStateError,
    ParamError,
    SupportError,
)
from .linalg import (
    HermitianOp,
    as_matrix,
    dagger,
    eig_hermitian,
    max_norm,
    partial_trace,
)

STATE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix with subsystem dimension metadata."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        dims = tuple(int(d) for d in self.dims)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"density matrix must be square, got {m.shape}")
        if int(np.prod(dims)) != m.shape[0]:
            raise DimensionError(
                f"subsystem dims {dims} do not match matrix dimension {m.shape[0]}"
            )
        if max_norm(m - dagger(m)) > STATE_TOL:
            raise NotAStateError("density matrix is not Hermitian to 1e-12")
        if abs(np.trace(m).real - 1.0) > STATE_TOL or abs(np.trace(m).imag) > STATE_TOL:
            raise NotAStateError(f"trace is {np.trace(m):.15g}, expected 1")
        w = np.linalg.eigvalsh((m + dagger(m)) / 2)
        if w.min() < EIGENVALUE_FLOOR:
            raise NotAStateError(
                f"smallest eigenvalue {w.min():.3g} below floor {EIGENVALUE_FLOOR:g}"
            )
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def marginal(self, keep: int) -> "DensityMatrix":
        red = partial_trace(self.matrix, self.dims, keep)
        return DensityMatrix(red, (self.dims[keep],))


def gibbs_state(h, beta: float) -> DensityMatrix:
    """Thermal state e^{-beta h} / Z, diagonal in the eigenbasis of h."""
    if not np.isfinite(beta) or beta < 0:
        raise ParamError(f"beta must be finite and >= 0, got {beta}")
    w, v = eig_hermitian(h)
    # Shift by the ground energy so the exponentials never overflow.
    ew = np.exp(-beta * (w - w.min()))
    ew /= ew.sum()
    rho = (v * ew) @ dagger(v)
    rho = (rho + dagger(rho)) / 2
    return DensityMatrix(rho, (rho.shape[0],))


def zeeman_hamiltonian(omega: float) -> HermitianOp:
    """Single-qubit local Hamiltonian (omega/2)(1 - sigma_z) = diag(0, omega)."""
    return HermitianOp(np.diag([0.0, omega]).astype(complex))


def qutrit_hamiltonian(omegas) -> HermitianOp:
    """Single-qutrit local Hamiltonian diag(omega_0, omega_1, omega_2)."""
    omegas = np.asarray(omegas, dtype=float)
    if omegas.shape != (3,):
        raise ParamError("qutrit Hamiltonian needs exactly three energies")
    return HermitianOp(np.diag(omegas).astype(complex))


@dataclass(frozen=True)
class TwoQubitThermalParams:
    """Parameters of the general correlated two-qubit state with thermal marginals.

    The diagonal is fixed by (omega, beta_A, beta_B, nu0); eta*e^{i xi} is the
    |01><10| coherence, nu1/nu2/gamma the remaining free off-diagonals.
    Positivity is checked numerically at construction of the state.
    """

    omega: float
    beta_A: float
    beta_B: float
    nu0: float | None = None
    nu1: complex = 0.0
    nu2: complex = 0.0
    gamma: complex = 0.0
    eta: float = 0.0
    xi: float = 0.0

    def partition_functions(self) -> tuple[float, float]:
        return (
            1.0 + np.exp(-self.omega * self.beta_A),
            1.0 + np.exp(-self.omega * self.beta_B),
        )

    def default_nu0(self) -> float:
        # Product-state value: p00 = (1/Z_A)(1/Z_B).
        za, zb = self.partition_functions()
        return 1.0 / (za * zb)


def two_qubit_thermal(params: TwoQubitThermalParams) -> DensityMatrix:
    """Build the 4x4 correlated state with exactly thermal marginals.

    Basis order |00>, |01>, |10>, |11> in the sigma_z x sigma_z eigenbasis.
    Raises NotAStateError when the correlation parameters break positivity.
    """
    p = params
    za, zb = p.partition_functions()
    nu0 = p.default_nu0() if p.nu0 is None else float(p.nu0)
    corner = (np.exp(-p.omega * p.beta_A - p.omega * p.beta_B) - 1.0) / (za * zb) + nu0
    coh = p.eta * np.exp(1j * p.xi)
    rho = np.array(
        [
            [nu0, np.conj(p.nu1), np.conj(p.nu2), np.conj(p.gamma)],
            [p.nu1, 1.0 / za - nu0, coh, -np.conj(p.nu2)],
            [p.nu2, np.conj(coh), 1.0 / zb - nu0, -np.conj(p.nu1)],
            [p.gamma, -p.nu2, -p.nu1, corner],
        ],
        dtype=complex,
    )
    try:
        state = DensityMatrix(rho, (2, 2))
    except NotAStateError as exc:
        raise NotAStateError(
            f"two-qubit thermal parameters give a non-positive matrix: {exc}"
        ) from exc
    _check_thermal_marginals(state, p.omega, p.beta_A, p.beta_B)
    return state


def _check_thermal_marginals(state, omega, beta_A, beta_B, tol=STATE_TOL):
    h = zeeman_hamiltonian(omega)
    for keep, beta in ((0, beta_A), (1, beta_B)):
        want = gibbs_state(h, beta).matrix
        got = state.marginal(keep).matrix
        if max_norm(got - want) > tol:
            raise NotAStateError(
                f"marginal {keep} deviates from its Gibbs state by {max_norm(got - want):.3g}"
            )


@dataclass(frozen=True)
class TwoQutritThermalParams:
    """Correlated two-qutrit family: thermal diagonal plus three coherences.

    Coherences sit between the degenerate pairs |01>~|10>, |02>~|20>,
    |12>~|21> (matrix positions (1,3), (2,6), (5,7)), so they preserve both
    energy-block structure and the thermal marginals.
    """

    omegas: tuple[float, float, float]
    beta_A: float
    beta_B: float
    eta31: float = 0.0
    eta62: float = 0.0
    eta75: float = 0.0
    theta31: float = 0.0
    theta62: float = 0.0
    theta75: float = 0.0

    def __post_init__(self):
        oms = tuple(float(o) for o in self.omegas)
        if len(oms) != 3 or not (oms[0] <= oms[1] <= oms[2]):
            raise ParamError(f"omegas must be three ascending energies, got {oms}")
        object.__setattr__(self, "omegas", oms)

    def diagonal_probabilities(self) -> np.ndarray:
        """The nine products p_i = p^A_i p^B_j in basis order |ij> -> 3i+j."""
        oms = np.asarray(self.omegas)
        ea = np.exp(-self.beta_A * (oms - oms.min()))
        eb = np.exp(-self.beta_B * (oms - oms.min()))
        pa = ea / ea.sum()
        pb = eb / eb.sum()
        return np.outer(pa, pb).reshape(9)


def two_qutrit_thermal(params: TwoQutritThermalParams) -> DensityMatrix:
    """Build the 9x9 correlated two-qutrit state."""
    p = params.diagonal_probabilities()
    rho = np.diag(p).astype(complex)
    for (i, j), eta, theta in (
        ((1, 3), params.eta31, params.theta31),
        ((2, 6), params.eta62, params.theta62),
        ((5, 7), params.eta75, params.theta75),
    ):
        rho[i, j] = eta * np.exp(1j * theta)
        rho[j, i] = np.conj(rho[i, j])
    try:
        state = DensityMatrix(rho, (3, 3))
    except NotAStateError as exc:
        raise NotAStateError(
            f"two-qutrit thermal parameters give a non-positive matrix: {exc}"
        ) from exc
    return state


def _spectrum(rho: DensityMatrix | np.ndarray) -> np.ndarray:
    m = rho.matrix if isinstance(rho, DensityMatrix) else as_matrix(rho)
    w = np.linalg.eigvalsh((m + dagger(m)) / 2)
    return np.clip(w, 0.0, None)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """S(rho) = -sum lambda ln lambda in nats, with 0 ln 0 := 0."""
    w = _spectrum(rho)
    nz = w[w > 0]
    return float(-np.sum(nz * np.log(nz)))


def mutual_information(rho: DensityMatrix) -> float:
    """I(A:B) = S(rho_A) + S(rho_B) - S(rho) for a bipartite state."""
    if len(rho.dims) != 2:
        raise DimensionError(f"mutual information needs bipartite dims, got {rho.dims}")
    return (
        von_neumann_entropy(rho.marginal(0))
        + von_neumann_entropy(rho.marginal(1))
        - von_neumann_entropy(rho)
    )


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix, support_tol=1e-10) -> float:
    """S(rho || sigma) = Tr{rho ln rho - rho ln sigma} in nats.

    Raises SupportError when rho has weight on the kernel of sigma.
    """
    if rho.dim != sigma.dim:
        raise DimensionError("relative entropy needs equal dimensions")
    ws, vs = eig_hermitian(sigma.matrix)
    ws = np.clip(ws, 0.0, None)
    kernel = ws <= support_tol
    if np.any(kernel):
        weight = np.real(
            np.einsum("ij,jk,ki->", dagger(vs[:, kernel]), rho.matrix, vs[:, kernel])
        )
        if weight > support_tol:
            raise SupportError(
                f"rho has weight {weight:.3g} outside the support of sigma"
            )
    wr = _spectrum(rho)
    nz = wr[wr > 0]
    tr_rho_log_rho = float(np.sum(nz * np.log(nz)))
    log_sigma_evals = np.log(np.where(kernel, 1.0, ws))  # kernel rows carry ~0 weight
    log_sigma = (vs * log_sigma_evals) @ dagger(vs)
    tr_rho_log_sigma = float(np.real(np.trace(rho.matrix @ log_sigma)))
    return tr_rho_log_rho - tr_rho_log_sigma
