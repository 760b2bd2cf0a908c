"""Reduced-order, quasi-static fuel-rod model.

One axial node and a radial chain of thermal resistances from the coolant to
the fuel centerline. Burnup comes from the integrated fission-rate density;
fuel and cladding volumes follow the material eigenstrain correlations; the
plenum pressure follows from a fixed helium inventory.

Standalone use::

    python -m pcerod.rodsim input.json outdir      # writes outdir/qoi.csv
"""
from __future__ import annotations

import csv
import dataclasses
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import materials as mat
from .errors import ConfigError, DomainError, RangeClampWarning, SimulationError

AVOGADRO = 6.02214076e23
R_UNIVERSAL = 8.314462618
SECONDS_PER_YEAR = 365.25 * 86400.0

QOI_NAMES = ("avg_burnup", "max_clad_surface_T", "max_fuel_centerline_T",
             "clad_inner_volume", "fuel_volume", "plenum_pressure")
QOI_UNITS = {"avg_burnup": "FIMA", "max_clad_surface_T": "K", "max_fuel_centerline_T": "K",
             "clad_inner_volume": "m^3", "fuel_volume": "m^3", "plenum_pressure": "Pa"}
FUELS = ("UO2", "U3Si2")


def _strict(cls, data: dict | None):
    data = dict(data or {})
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ConfigError(f"unknown {cls.__name__} keys: {', '.join(unknown)}")
    return cls(**data)


class _Record:
    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict | None):
        return _strict(cls, data)


@dataclass(frozen=True)
class RodGeometry(_Record):
    """Lengths in meters."""
    fuel_radius: float = 4.1e-3
    fuel_height: float = 26.2e-3
    plenum_gap: float = 0.82e-3
    radial_gap: float = 0.12e-3
    axial_gap: float = 0.25e-3
    clad_inner_radius: float = 4.22e-3
    clad_outer_radius: float = 4.74e-3
    clad_radial_thickness: float = 0.52e-3
    clad_axial_thickness: float = 2.24e-3
    clad_height: float = 29.3e-3

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if not getattr(self, f.name) > 0:
                raise DomainError(f"geometry {f.name} must be positive")
        if abs(self.clad_inner_radius - (self.fuel_radius + self.radial_gap)) > 1e-9:
            raise DomainError("clad inner radius must equal fuel radius + radial gap")
        if abs(self.clad_outer_radius - (self.clad_inner_radius + self.clad_radial_thickness)) > 1e-9:
            raise DomainError("clad outer radius must equal inner radius + radial thickness")

    @property
    def interior_height(self) -> float:
        """Cavity height: fuel stack plus axial gap plus plenum."""
        return self.fuel_height + self.axial_gap + self.plenum_gap

    @property
    def fuel_volume(self) -> float:
        return math.pi * self.fuel_radius**2 * self.fuel_height

    @property
    def cavity_volume(self) -> float:
        return math.pi * self.clad_inner_radius**2 * self.interior_height

    @property
    def gap_radius(self) -> float:
        return 0.5 * (self.fuel_radius + self.clad_inner_radius)


@dataclass(frozen=True)
class OperatingConditions(_Record):
    fission_energy: float = 3.20e-11       # J/fission
    coolant_temperature: float = 580.0     # K
    coolant_pressure: float = 15.5e6       # Pa
    mass_flux: float = 3800.0              # kg/m^2-s
    rod_diameter: float = 9.48e-3          # m
    pitch: float = 1.26e-2                 # m
    # liquid water at 15.5 MPa, 580 K (IAPWS-IF97)
    water_density: float = 711.872
    water_cp: float = 5644.15
    water_viscosity: float = 8.58116e-5
    water_conductivity: float = 0.552793

    def __post_init__(self):
        for name in ("fission_energy", "coolant_temperature", "coolant_pressure", "rod_diameter",
                     "pitch", "water_density", "water_cp", "water_viscosity", "water_conductivity"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")

    @property
    def prandtl(self) -> float:
        return self.water_cp * self.water_viscosity / self.water_conductivity

    @property
    def hydraulic_diameter(self) -> float:
        d, p = self.rod_diameter, self.pitch
        return 4.0 * (p * p - math.pi * d * d / 4.0) / (math.pi * d)


@dataclass(frozen=True)
class PowerHistory(_Record):
    ramp_end: float = 2.8 * 3600.0              # s
    peak_linear_power: float = 1.5e4            # W/m
    end_of_life: float = 3.2 * SECONDS_PER_YEAR  # s

    def __post_init__(self):
        if not (0 < self.ramp_end < self.end_of_life) or self.peak_linear_power < 0:
            raise DomainError("power history needs 0 < ramp_end < end_of_life and peak >= 0")

    def linear_power(self, t):
        t = np.asarray(t, dtype=float)
        return self.peak_linear_power * np.clip(t / self.ramp_end, 0.0, 1.0)

    def energy(self, t):
        """Deposited energy per unit length, integral of q' from 0 to t (J/m)."""
        t = np.asarray(t, dtype=float)
        q, tr = self.peak_linear_power, self.ramp_end
        return np.where(t <= tr, 0.5 * q * t * t / tr, q * (t - 0.5 * tr))


@dataclass(frozen=True)
class RodInputs(_Record):
    """The four uncertain material inputs plus the fuel kind."""
    fuel: str = "UO2"
    fuel_k: float = 2.8
    fuel_density: float = 10430.0
    clad_k: float = 75.0
    clad_density: float = 2650.0

    def __post_init__(self):
        if self.fuel not in FUELS:
            raise DomainError(f"fuel must be one of {FUELS}, got {self.fuel!r}")
        for name in ("fuel_k", "fuel_density", "clad_k", "clad_density"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive")


@dataclass(frozen=True)
class SolverConfig(_Record):
    n_points: int = 200
    t_first: float = 1e2
    time_grid: tuple | None = None
    gap_conductivity: float = 0.30          # W/m-K, helium
    fill_pressure: float = 2.0e6            # Pa
    fill_temperature: float = 295.0         # K
    fluence_per_fission: float = 5e-6       # n/cm^2 per fission/m^3
    delta_rho0: float = 0.01
    bu_d_mwd_per_kgu: float = 5.0
    molar_mass_uo2: float = 0.27003         # kg/mol
    molar_mass_u3si2: float = 0.77027       # kg/mol
    u3si2_cte: float = 1.5e-5               # 1/K
    sic_reference_T: float = 295.0
    katoh_steps: int = 1000
    radial_nodes: int = 16
    clamp_sic_cte: bool = True

    def __post_init__(self):
        if self.time_grid is not None:
            object.__setattr__(self, "time_grid", tuple(float(t) for t in self.time_grid))


@dataclass
class QoiSeries:
    time_grid: np.ndarray
    values: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)
    info: dict = field(default_factory=dict)
    aux: dict = field(default_factory=dict)  # intermediate temperatures of the radial chain

    def __getitem__(self, name: str) -> np.ndarray:
        return self.values[name]

    def as_array(self) -> np.ndarray:
        """(n_times, 6) in ``QOI_NAMES`` order."""
        return np.column_stack([self.values[n] for n in QOI_NAMES])

    def to_csv(self, path) -> Path:
        path = Path(path)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(("time_s",) + QOI_NAMES)
            for i, t in enumerate(self.time_grid):
                w.writerow([format(t, ".17g")] + [format(self.values[n][i], ".17g") for n in QOI_NAMES])
        return path

    @classmethod
    def from_csv(cls, path, names=QOI_NAMES) -> "QoiSeries":
        with Path(path).open(newline="") as fh:
            rows = list(csv.reader(fh))
        header, body = rows[0], np.array(rows[1:], dtype=float).reshape(-1, len(rows[0]))
        if header[0] != "time_s" or any(n not in header for n in names):
            raise ConfigError(f"{path}: expected columns time_s + {', '.join(names)}")
        return cls(body[:, 0], {n: body[:, header.index(n)] for n in names})


def default_time_grid(power: PowerHistory, n_points: int = 200, t_first: float = 1e2) -> np.ndarray:
    """Log-spaced grid joined with the ramp breakpoint."""
    grid = np.geomspace(t_first, power.end_of_life, n_points)
    return np.union1d(grid, [power.ramp_end])


def heavy_metal_density(fuel: str, density: float, molar_mass: float | None = None) -> float:
    """Uranium atoms per m^3."""
    if not density > 0:
        raise DomainError("density must be positive")
    if fuel == "UO2":
        return density / (molar_mass or 0.27003) * AVOGADRO
    if fuel == "U3Si2":
        return 3.0 * density / (molar_mass or 0.77027) * AVOGADRO
    raise DomainError(f"unknown fuel kind {fuel!r}")


def coolant_film_coefficient(conditions: OperatingConditions) -> float:
    """Dittus-Boelter heat-transfer coefficient (W/m^2-K)."""
    if not conditions.mass_flux > 0:
        raise DomainError("coolant mass flux must be positive")
    if conditions.pitch <= conditions.rod_diameter:
        raise DomainError("fuel pin pitch must exceed rod diameter")
    dh = conditions.hydraulic_diameter
    re = conditions.mass_flux * dh / conditions.water_viscosity
    nu = 0.023 * re**0.8 * conditions.prandtl**0.4
    return nu * conditions.water_conductivity / dh


def _radial_nodes(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _piecewise_average(func, t_center: float, dt_fuel: float, breaks, nodes) -> float:
    """Volume average of func(T) over the parabolic pellet profile.

    With u = (r/R)^2 the profile is linear, T(u) = Tc - dT u, and volume is
    uniform in u. The interval is split where T crosses a breakpoint so that
    piecewise correlations are integrated exactly.
    """
    cuts = [0.0, 1.0]
    if dt_fuel > 0:
        for tb in breaks:
            u = (t_center - tb) / dt_fuel
            if 0.0 < u < 1.0:
                cuts.append(u)
    cuts = sorted(cuts)
    x, w = nodes
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        u = a + (b - a) * x
        total += (b - a) * float(np.dot(w, func(t_center - dt_fuel * u)))
    return total


def simulate(geometry: RodGeometry | None = None, conditions: OperatingConditions | None = None,
             power: PowerHistory | None = None, inputs: RodInputs | None = None,
             solver_config: SolverConfig | None = None) -> QoiSeries:
    """Run the rod model over the power history and return the six QoI series."""
    g = geometry or RodGeometry()
    c = conditions or OperatingConditions()
    pw = power or PowerHistory()
    rod = inputs or RodInputs()
    s = solver_config or SolverConfig()
    if abs(c.rod_diameter - 2.0 * g.clad_outer_radius) > 1e-6:
        raise DomainError("rod diameter inconsistent with clad outer radius")

    grid = np.asarray(s.time_grid, dtype=float) if s.time_grid is not None else \
        default_time_grid(pw, s.n_points, s.t_first)
    if grid.ndim != 1 or grid.size == 0 or grid[0] <= 0 or np.any(np.diff(grid) <= 0):
        raise DomainError("time grid must be positive and strictly increasing")

    h_cool = coolant_film_coefficient(c)
    h_gap = s.gap_conductivity / g.radial_gap
    r_f, r_ci, r_co = g.fuel_radius, g.clad_inner_radius, g.clad_outer_radius
    area = math.pi * r_f**2
    molar = s.molar_mass_uo2 if rod.fuel == "UO2" else s.molar_mass_u3si2
    n_hm = heavy_metal_density(rod.fuel, rod.fuel_density, molar)
    bu_d = mat.mwd_per_kgu_to_fima(s.bu_d_mwd_per_kgu, c.fission_energy)
    nodes = _radial_nodes(s.radial_nodes)
    t_cool = c.coolant_temperature
    escore_break = mat.constants.ESCORE["transition_celsius"] + 273.15
    gas_break = mat.constants.SWELLING_UO2["t_limit"]

    def fuel_thermal_strain(tc, dtf):
        if rod.fuel == "UO2":
            avg = _piecewise_average(mat.fthexp_strain, tc, dtf, (), nodes)
            return avg - mat.fthexp_strain(t_cool)
        return s.u3si2_cte * (tc - 0.5 * dtf - t_cool)

    def densification(bu, tc, dtf):
        f = lambda T: mat.escore_densification(bu, T - 273.15, s.delta_rho0, bu_d, rod.fuel)  # noqa: E731
        return _piecewise_average(f, tc, dtf, (escore_break,), nodes)

    # helium inventory fixed at fill; the as-built geometry is the isothermal
    # state at coolant temperature, so strains below are increments from it
    v_gas0 = g.cavity_volume - g.fuel_volume
    moles = s.fill_pressure * v_gas0 / (R_UNIVERSAL * s.fill_temperature)

    flags: set[str] = set()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RangeClampWarning)
        eps_sic0 = mat.sic_thermal_strain_step(0.0, s.sic_reference_T, t_cool, clamp=s.clamp_sic_cte)
    if caught:
        flags.add("sic_cte_clamped")

    n = grid.size
    out = {name: np.empty(n) for name in QOI_NAMES}
    aux = {name: np.empty(n) for name in ("fuel_surface_T", "clad_inner_T", "gas_T")}
    energy = pw.energy(grid)
    q_all = pw.linear_power(grid)
    fission_density = energy / (c.fission_energy * area)  # fissions/m^3
    burnup = fission_density / n_hm
    fluence = s.fluence_per_fission * fission_density      # n/cm^2

    eps_sic, t_clad_prev = eps_sic0, t_cool
    swell_katoh, gas_swell = 0.0, 0.0
    bu_prev, flu_prev = 0.0, 0.0
    for i in range(n):
        q = q_all[i]
        t_co = t_cool + q / (2.0 * math.pi * r_co * h_cool)
        t_ci = t_co + q * math.log(r_co / r_ci) / (2.0 * math.pi * rod.clad_k)
        t_fs = t_ci + q / (2.0 * math.pi * g.gap_radius * h_gap)
        dtf = q / (4.0 * math.pi * rod.fuel_k)
        t_c = t_fs + dtf
        bu = burnup[i]

        # fuel volume
        eps_f = fuel_thermal_strain(t_c, dtf)
        dens = densification(bu, t_c, dtf)
        if rod.fuel == "UO2":
            dbu = bu - bu_prev
            bu_mid = 0.5 * (bu + bu_prev)
            gas_inc = _piecewise_average(
                lambda T: mat.uo2_fission_swelling(rod.fuel_density, bu_mid, dbu, T).gaseous,
                t_c, dtf, (gas_break,), nodes)
            if t_c >= gas_break:
                flags.add("gaseous_swelling_above_2800K")
            gas_swell += gas_inc
            fps = mat.uo2_fission_swelling(rod.fuel_density, bu, bu, t_cool).solid + gas_swell
        else:
            fps = mat.u3si2_fission_swelling(bu)
        v_fuel = g.fuel_volume * (1.0 + 3.0 * eps_f) * (1.0 + dens + fps)

        # cladding cavity
        t_clad = 0.5 * (t_co + t_ci)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", RangeClampWarning)
            eps_sic = mat.sic_thermal_strain_step(eps_sic, t_clad_prev, t_clad, clamp=s.clamp_sic_cte)
        if caught:
            flags.add("sic_cte_clamped")
        swell_katoh = mat.katoh_swelling_step(swell_katoh, flu_prev, fluence[i] - flu_prev, t_clad,
                                              low_fluence_steps=s.katoh_steps)
        v_cavity = g.cavity_volume * (1.0 + 3.0 * (eps_sic - eps_sic0)) * (1.0 + swell_katoh)

        v_gas = v_cavity - v_fuel
        if v_gas <= 0:
            raise SimulationError(f"gas volume closed (fuel-clad contact) at t={grid[i]:.6g} s",
                                  time_s=float(grid[i]))
        t_gas = 0.5 * (t_fs + t_ci)

        out["avg_burnup"][i] = bu
        out["max_clad_surface_T"][i] = t_co
        out["max_fuel_centerline_T"][i] = t_c
        out["clad_inner_volume"][i] = v_cavity
        out["fuel_volume"][i] = v_fuel
        out["plenum_pressure"][i] = moles * R_UNIVERSAL * t_gas / v_gas
        aux["fuel_surface_T"][i], aux["clad_inner_T"][i], aux["gas_T"][i] = t_fs, t_ci, t_gas
        bu_prev, flu_prev, t_clad_prev = bu, fluence[i], t_clad

    info = {"coolant_h": h_cool, "gap_h": h_gap, "heavy_metal_density": n_hm, "bu_d_fima": bu_d,
            "helium_moles": moles}
    return QoiSeries(grid, out, sorted(flags), info, aux)


def load_input(path) -> dict:
    """Parse a standalone input file into keyword arguments for ``simulate``."""
    data = json.loads(Path(path).read_text())
    allowed = {"geometry", "conditions", "power", "inputs", "solver"}
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"unknown input sections: {', '.join(unknown)}")
    return {
        "geometry": RodGeometry.from_dict(data.get("geometry")),
        "conditions": OperatingConditions.from_dict(data.get("conditions")),
        "power": PowerHistory.from_dict(data.get("power")),
        "inputs": RodInputs.from_dict(data.get("inputs")),
        "solver_config": SolverConfig.from_dict(data.get("solver")),
    }


def run_file(input_path, outdir) -> QoiSeries:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    series = simulate(**load_input(input_path))
    series.to_csv(outdir / "qoi.csv")
    return series


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 2:
        print("usage: python -m pcerod.rodsim INPUT.json OUTDIR", file=sys.stderr)
        return 2
    try:
        series = run_file(argv[0], argv[1])
    except Exception as exc:  # single-line diagnostic for the campaign log
        print(f"ERROR {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    for flag in series.flags:
        print(f"flag: {flag}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
