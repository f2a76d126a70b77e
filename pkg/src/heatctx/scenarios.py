"""Reproducible scenario definitions, sweep orchestration, and data emission.

A scenario bundles a correlated thermal state, an energy-conserving
interaction, a time grid, and units. Sweeps evaluate the closed-form heat on
the full grid (cross-checked against the trace formula on a seeded 1% sample),
the noncontextual bounds, per-point violation flags, the mutual-information
change, and the bound-crossing times.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict, replace

import numpy as np

from .errors import ConfigError, NumericsError
from .linalg import eig_hermitian
from .states import (
    TwoQubitThermalParams,
    TwoQutritThermalParams,
    two_qubit_thermal,
    two_qutrit_thermal,
    zeeman_hamiltonian,
    qutrit_hamiltonian,
)
from .dynamics import (
    NonResonantInteraction,
    PartialSwapInteraction,
    ResonantInteraction,
)
from .thermo import (
    heat_closed_form_2qubit_thermal,
    heat_closed_form_qutrit,
    heat_trace,
    qutrit_heat_coefficients,
)
from .contextuality import (
    Crossing,
    find_critical_times,
    sequential_b_factors,
)

SCENARIOS = ("two_qubit_resonant", "two_qubit_nonresonant", "qutrit_partial_swap")
UNITS = ("natural", "eV_seconds")
FORMATS = ("csv", "json")

CSV_HEADER = "t,heat,bound_upper,bound_lower,violates,delta_mutual_info"
VIOLATION_REL_TOL = 1e-12
CROSS_CHECK_FRACTION = 0.01
CROSS_CHECK_TOL = 1e-9

MICADEI_J_HZ = 215.1
MICADEI_OMEGA_EV = 4.135e-12
MICADEI_T_A_EV = 4.3e-12
MICADEI_T_B_EV = 3.66e-12
MICADEI_ETA = -0.19


@dataclass(frozen=True)
class TimeGrid:
    t_min: float
    t_max: float
    n_points: int

    def __post_init__(self):
        if not self.t_min >= 0:
            raise ConfigError(f"time_grid.t_min must be >= 0, got {self.t_min}")
        if not self.t_max > self.t_min:
            raise ConfigError(
                f"time_grid.t_max ({self.t_max}) must exceed t_min ({self.t_min})"
            )
        if not self.n_points >= 2:
            raise ConfigError(f"time_grid.n_points must be >= 2, got {self.n_points}")

    def times(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, int(self.n_points))


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    state: dict
    interaction: dict
    time_grid: TimeGrid
    units: str = "natural"
    output_path: str | None = None
    output_format: str = "csv"
    seed: int = 0

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(
                f"scenario must be one of {SCENARIOS}, got {self.scenario!r}"
            )
        if self.units not in UNITS:
            raise ConfigError(f"units must be one of {UNITS}, got {self.units!r}")
        if self.output_format not in FORMATS:
            raise ConfigError(
                f"output.format must be one of {FORMATS}, got {self.output_format!r}"
            )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["time_grid"] = asdict(self.time_grid)
        return d

    @staticmethod
    def from_dict(raw: dict) -> "ScenarioConfig":
        try:
            grid = raw.get("time_grid")
            if not isinstance(grid, dict):
                raise ConfigError("time_grid must be an object with t_min/t_max/n_points")
            tg = TimeGrid(
                t_min=float(grid["t_min"]),
                t_max=float(grid["t_max"]),
                n_points=int(grid["n_points"]),
            )
        except KeyError as exc:
            raise ConfigError(f"time_grid is missing field {exc}") from exc
        for req in ("scenario", "state", "interaction"):
            if req not in raw:
                raise ConfigError(f"config is missing required field {req!r}")
        out = raw.get("output", {}) or {}
        return ScenarioConfig(
            scenario=raw["scenario"],
            state=dict(raw["state"]),
            interaction=dict(raw["interaction"]),
            time_grid=tg,
            units=raw.get("units", "natural"),
            output_path=out.get("path"),
            output_format=out.get("format", "csv"),
            seed=int(raw.get("seed", 0)),
        )


@dataclass(frozen=True)
class SweepRecord:
    t: float
    heat: float
    bound_upper: float
    bound_lower: float
    violates: bool
    delta_mutual_info: float


@dataclass(frozen=True)
class SweepResult:
    config: ScenarioConfig
    records: list[SweepRecord]
    crossings: list[Crossing]

    @property
    def critical_times(self) -> list[float]:
        return [c.time for c in self.crossings if not c.grazing]


def builtin_micadei() -> ScenarioConfig:
    """The NMR two-qubit experiment: J = 215.1 Hz, resonant exchange, eta = -0.19.

    nu0 = null selects the product-diagonal value 1/(Z_A Z_B): the initial
    state is the product of the local Gibbs states plus the eta coherence
    (the literal nu0 = 0 would put negative weight on |11>).
    """
    return ScenarioConfig(
        scenario="two_qubit_resonant",
        units="eV_seconds",
        state={
            "omega": MICADEI_OMEGA_EV,
            "T_A": MICADEI_T_A_EV,
            "T_B": MICADEI_T_B_EV,
            "eta": MICADEI_ETA,
            "xi": 0.0,
            "nu0": None,
            "nu1": 0.0,
            "nu2": 0.0,
            "gamma": 0.0,
        },
        interaction={"g": math.pi * MICADEI_J_HZ, "a": 0.0, "theta": math.pi / 2},
        time_grid=TimeGrid(t_min=0.0, t_max=5e-3, n_points=100_000),
        output_format="csv",
        seed=0,
    )


def builtin_qutrit_demo() -> ScenarioConfig:
    """Partial-SWAP qutrit demo: equally spaced levels, pi/2 phases, negative etas."""
    return ScenarioConfig(
        scenario="qutrit_partial_swap",
        units="natural",
        state={
            "omegas": [0.0, 1.0, 2.0],
            "T_A": 2.5,
            "T_B": 1.0,
            "eta31": -0.04,
            "eta62": -0.02,
            "eta75": -0.02,
            "theta31": math.pi / 2,
            "theta62": math.pi / 2,
            "theta75": math.pi / 2,
        },
        interaction={"g": 1.0},
        time_grid=TimeGrid(t_min=0.0, t_max=3.0, n_points=30_000),
        output_format="csv",
        seed=0,
    )


def _complex_field(state: dict, key: str) -> complex:
    v = state.get(key, 0.0)
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ConfigError(f"state.{key} as a pair must be [re, im]")
        return complex(float(v[0]), float(v[1]))
    return complex(v)


def _two_qubit_params(state: dict) -> TwoQubitThermalParams:
    try:
        omega = float(state["omega"])
        t_a = float(state["T_A"])
        t_b = float(state["T_B"])
    except KeyError as exc:
        raise ConfigError(f"state is missing field {exc}") from exc
    if t_a <= 0 or t_b <= 0:
        raise ConfigError("state.T_A and state.T_B must be positive temperatures")
    nu0 = state.get("nu0")
    return TwoQubitThermalParams(
        omega=omega,
        beta_A=1.0 / t_a,
        beta_B=1.0 / t_b,
        nu0=None if nu0 is None else float(nu0),
        nu1=_complex_field(state, "nu1"),
        nu2=_complex_field(state, "nu2"),
        gamma=_complex_field(state, "gamma"),
        eta=float(state.get("eta", 0.0)),
        xi=float(state.get("xi", 0.0)),
    )


def _qutrit_params(state: dict) -> TwoQutritThermalParams:
    try:
        omegas = tuple(float(o) for o in state["omegas"])
        t_a = float(state["T_A"])
        t_b = float(state["T_B"])
    except KeyError as exc:
        raise ConfigError(f"state is missing field {exc}") from exc
    if t_a <= 0 or t_b <= 0:
        raise ConfigError("state.T_A and state.T_B must be positive temperatures")
    return TwoQutritThermalParams(
        omegas=omegas,
        beta_A=1.0 / t_a,
        beta_B=1.0 / t_b,
        eta31=float(state.get("eta31", 0.0)),
        eta62=float(state.get("eta62", 0.0)),
        eta75=float(state.get("eta75", 0.0)),
        theta31=float(state.get("theta31", 0.0)),
        theta62=float(state.get("theta62", 0.0)),
        theta75=float(state.get("theta75", 0.0)),
    )


class _ScenarioEngine:
    """Assembled state/interaction/bounds for one config; vectorized over t."""

    def __init__(self, config: ScenarioConfig):
        self.config = config
        inter = config.interaction
        try:
            g = float(inter["g"])
        except KeyError as exc:
            raise ConfigError(f"interaction is missing field {exc}") from exc
        self.g = g
        if config.scenario == "two_qubit_resonant":
            self.params = _two_qubit_params(config.state)
            self.interaction = ResonantInteraction(
                g=g,
                a=float(inter.get("a", 0.0)),
                theta=float(inter.get("theta", 0.0)),
            )
            self.rho = two_qubit_thermal(self.params)
            self.h_local = zeeman_hamiltonian(self.params.omega)
            self.a_max = self.params.omega
        elif config.scenario == "two_qubit_nonresonant":
            self.params = _two_qubit_params(config.state)
            self.interaction = NonResonantInteraction(g=g)
            self.rho = two_qubit_thermal(self.params)
            self.h_local = zeeman_hamiltonian(self.params.omega)
            self.a_max = self.params.omega
        else:
            self.params = _qutrit_params(config.state)
            self.interaction = PartialSwapInteraction(g=g, local_dim=3)
            self.rho = two_qutrit_thermal(self.params)
            self.h_local = qutrit_hamiltonian(self.params.omegas)
            self.a_max = max(self.params.omegas)
        self.h_int = self.interaction.hamiltonian()

    # -- heat ---------------------------------------------------------------

    def heat(self, t):
        c = self.config.scenario
        if c == "two_qubit_resonant":
            return heat_closed_form_2qubit_thermal(
                self.params, self.g, self.interaction.theta, t
            )
        if c == "two_qubit_nonresonant":
            out = np.zeros_like(np.asarray(t, dtype=float))
            return out if out.ndim else 0.0
        return heat_closed_form_qutrit(self.params, self.g, t)

    def heat_trace_at(self, t: float) -> float:
        return heat_trace(self.rho, self.h_int, self.h_local, t)

    # -- bounds -------------------------------------------------------------

    def bounds(self, t):
        """(upper, lower) noncontextual bounds at time(s) t."""
        x = self.g * np.asarray(t, dtype=float)
        c = self.config.scenario
        if c == "two_qubit_resonant":
            # First factor in the sequence: the exchange part, p_d1 = sin^2(gt);
            # second: the commuting detuning part, p_d2 = sin^2((a-1)gt/2).
            p_d1 = np.sin(x) ** 2
            p_d2 = np.sin((self.interaction.a - 1.0) * x / 2) ** 2
            b_minus, b_plus = sequential_b_factors(p_d1, p_d2)
            return 2 * self.a_max * b_plus, -4 * self.a_max * b_minus
        # Single-equivalence bound at alpha = 1/2.
        if c == "two_qubit_nonresonant":
            p_d = np.sin(x / 2) ** 2
        else:
            p_d = np.sin(x) ** 2
        return 2 * self.a_max * p_d, -4 * self.a_max * p_d

    # -- mutual information -------------------------------------------------

    def delta_mutual_info(self, ts: np.ndarray) -> np.ndarray:
        """Batched I(t) - I(0); the global entropy cancels under unitaries."""
        w, v = eig_hermitian(self.h_int.matrix)
        d_a, d_b = self.rho.dims
        phases = np.exp(-1j * np.outer(ts, w))  # (N, d)
        # U(t) = V diag(phases) V^dag, batched over the grid
        u = np.einsum("ij,nj,kj->nik", v, phases, v.conj())
        rho_t = np.einsum("nij,jk,nlk->nil", u, self.rho.matrix, u.conj())
        r4 = rho_t.reshape(-1, d_a, d_b, d_a, d_b)
        rho_a = np.einsum("nijkj->nik", r4)
        rho_b = np.einsum("nijil->njl", r4)
        s_a = _batched_entropy(rho_a)
        s_b = _batched_entropy(rho_b)
        return (s_a - s_a[0]) + (s_b - s_b[0])


def _batched_entropy(rhos: np.ndarray) -> np.ndarray:
    w = np.linalg.eigvalsh(rhos)
    w = np.clip(w, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(w > 0, -w * np.log(np.where(w > 0, w, 1.0)), 0.0)
    return terms.sum(axis=-1)


def run_sweep(config: ScenarioConfig) -> SweepResult:
    """Evaluate the sweep; deterministic given the config (seed included)."""
    engine = _ScenarioEngine(config)
    ts = config.time_grid.times()
    heat = np.asarray(engine.heat(ts), dtype=float)
    upper, lower = engine.bounds(ts)
    upper = np.asarray(upper, dtype=float)
    lower = np.asarray(lower, dtype=float)

    # Closed form vs trace formula on a seeded 1% sample of the grid.
    rng = np.random.default_rng(config.seed)
    n_sample = max(1, int(len(ts) * CROSS_CHECK_FRACTION))
    sample = rng.choice(len(ts), size=n_sample, replace=False)
    scale = max(abs(engine.a_max), 1.0e-300)
    for i in sample:
        q_ref = engine.heat_trace_at(float(ts[i]))
        if abs(q_ref - heat[i]) > CROSS_CHECK_TOL * max(scale, abs(q_ref)):
            raise NumericsError(
                f"closed-form heat deviates from trace formula at t={ts[i]:g}: "
                f"{heat[i]:.17g} vs {q_ref:.17g}"
            )

    # Delta mutual information, batched over the grid.
    if config.time_grid.t_min == 0:
        delta_i = engine.delta_mutual_info(ts)
    else:
        ts0 = np.concatenate(([0.0], ts))
        delta_i = engine.delta_mutual_info(ts0)[1:]

    tol = VIOLATION_REL_TOL * np.maximum.reduce(
        [np.abs(upper), np.abs(lower), np.abs(heat)]
    )
    violates = (heat > upper + tol) | (heat < lower - tol)

    crossings = find_critical_times(
        engine.heat,
        lambda t: engine.bounds(t)[0],
        config.time_grid.t_max,
        lower_bound_fn=lambda t: engine.bounds(t)[1],
        n_grid=int(config.time_grid.n_points),
    )

    records = [
        SweepRecord(
            t=float(ts[i]),
            heat=float(heat[i]),
            bound_upper=float(upper[i]),
            bound_lower=float(lower[i]),
            violates=bool(violates[i]),
            delta_mutual_info=float(delta_i[i]),
        )
        for i in range(len(ts))
    ]
    return SweepResult(config=config, records=records, crossings=crossings)


# -- emission ----------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.16e}"


def format_csv(records: list[SweepRecord]) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                [
                    _fmt(r.t),
                    _fmt(r.heat),
                    _fmt(r.bound_upper),
                    _fmt(r.bound_lower),
                    "true" if r.violates else "false",
                    _fmt(r.delta_mutual_info),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def format_json(result: SweepResult) -> str:
    payload = {
        "config": result.config.to_dict(),
        "records": [asdict(r) for r in result.records],
        "critical_times": result.critical_times,
        "crossings": [
            {"time": c.time, "side": c.side, "grazing": c.grazing}
            for c in result.crossings
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def emit(result: SweepResult, fmt: str, path: str) -> None:
    """Write the sweep output to disk; IO errors carry the path."""
    if fmt not in FORMATS:
        raise ConfigError(f"format must be one of {FORMATS}, got {fmt!r}")
    text = format_csv(result.records) if fmt == "csv" else format_json(result)
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write output to {path}: {exc}") from exc


# -- unit conversion ---------------------------------------------------------


@dataclass(frozen=True)
class UnitScales:
    """Scales taking an eV_seconds config to natural units (omega = 1, g = 1)."""

    energy: float  # divide energies by this
    time: float  # divide times by this (1/g)


def to_natural_units(config: ScenarioConfig) -> tuple[ScenarioConfig, UnitScales]:
    """Rescale so the reference energy is 1 and g = 1."""
    if config.units == "natural":
        return config, UnitScales(energy=1.0, time=1.0)
    state = dict(config.state)
    if config.scenario == "qutrit_partial_swap":
        e_scale = max(float(o) for o in state["omegas"])
        state["omegas"] = [float(o) / e_scale for o in state["omegas"]]
    else:
        e_scale = float(state["omega"])
        state["omega"] = 1.0
    state["T_A"] = float(state["T_A"]) / e_scale
    state["T_B"] = float(state["T_B"]) / e_scale
    g = float(config.interaction["g"])
    t_scale = 1.0 / g
    interaction = dict(config.interaction)
    interaction["g"] = 1.0
    grid = TimeGrid(
        t_min=config.time_grid.t_min / t_scale,
        t_max=config.time_grid.t_max / t_scale,
        n_points=config.time_grid.n_points,
    )
    natural = replace(
        config, units="natural", state=state, interaction=interaction, time_grid=grid
    )
    return natural, UnitScales(energy=e_scale, time=t_scale)


def from_natural_units(config: ScenarioConfig, scales: UnitScales) -> ScenarioConfig:
    """Inverse of to_natural_units."""
    if scales.energy == 1.0 and scales.time == 1.0:
        return config
    state = dict(config.state)
    if config.scenario == "qutrit_partial_swap":
        state["omegas"] = [float(o) * scales.energy for o in state["omegas"]]
    else:
        state["omega"] = float(state["omega"]) * scales.energy
    state["T_A"] = float(state["T_A"]) * scales.energy
    state["T_B"] = float(state["T_B"]) * scales.energy
    interaction = dict(config.interaction)
    interaction["g"] = 1.0 / scales.time
    grid = TimeGrid(
        t_min=config.time_grid.t_min * scales.time,
        t_max=config.time_grid.t_max * scales.time,
        n_points=config.time_grid.n_points,
    )
    return replace(
        config,
        units="eV_seconds",
        state=state,
        interaction=interaction,
        time_grid=grid,
    )
