"""Command-line front end emitting CSV/JSON tables for the lattice well model.

Subcommands: spectrum, wavefunction, density-matrix, partition, mean-energy,
heat-capacity, converge.  Identical configurations produce byte-identical
output; numbers are written with 17 significant digits so either format
round-trips exactly.

Exit statuses: 0 success, 2 configuration error, 3 domain error, 4 numeric
error (series cap hit).
"""

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

from . import __version__
from .bloch import density_matrix_normalized, density_matrix_spectral
from .lattice import LatticeSpec
from .spectrum import (
    HBAR_SI,
    K_B_SI,
    ParticleSpec,
    build_spectrum,
    continuum_limit_error,
    eigenfunction,
    energy_continuum,
    energy_discrete,
)
from .thermo import (
    SeriesCapExceeded,
    characteristic_temperature,
    heat_capacity_two_level,
    mean_energy,
    mean_energy_continuum,
    partition_continuum_closed,
    partition_continuum_sum,
    partition_discrete,
    partition_theta,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_NUMERIC = 4

#: Default SI inputs (free-electron mass; hbar and k_B match the library defaults).
M_STAR_SI_DEFAULT = 9.1e-31


class ConfigError(Exception):
    """Invalid flag/config-file combination."""


@dataclass(frozen=True)
class SweepSpec:
    """Parameter sweep start:stop:points:scale (scale linear or log)."""

    start: float
    stop: float
    points: int
    scale: str

    @classmethod
    def parse(cls, text: str) -> "SweepSpec":
        parts = text.split(":")
        if len(parts) != 4:
            raise ConfigError(f"sweep must be start:stop:points:scale, got {text!r}")
        try:
            start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ConfigError(f"bad sweep {text!r}: {exc}") from None
        scale = parts[3]
        if scale not in ("linear", "log"):
            raise ConfigError(f"sweep scale must be linear or log, got {scale!r}")
        if points < 2:
            raise ConfigError(f"sweep needs at least 2 points, got {points}")
        if not start > 0 or not stop > start:
            raise ConfigError(f"sweep needs 0 < start < stop, got {text!r}")
        return cls(start, stop, points, scale)

    def values(self) -> list[float]:
        k = self.points - 1
        if self.scale == "linear":
            return [self.start + (self.stop - self.start) * i / k for i in range(self.points)]
        lg0, lg1 = math.log10(self.start), math.log10(self.stop)
        return [10.0 ** (lg0 + (lg1 - lg0) * i / k) for i in range(self.points)]

    def text(self) -> str:
        return f"{self.start:g}:{self.stop:g}:{self.points}:{self.scale}"


@dataclass
class RunConfig:
    command: str
    N: int | None
    a: float | None
    L: float | None
    unit_mode: str
    m_star: float
    hbar: float
    k_B: float
    beta: float | None
    T: float | None
    sweep: SweepSpec | None
    n_E: int
    quantity: str
    normalized: bool
    output: str
    out: str | None


_VALUE_TYPES = {
    "N": int,
    "a": float,
    "L": float,
    "m_star": float,
    "hbar": float,
    "k_B": float,
    "beta": float,
    "T": float,
    "sweep": str,
    "n_E": int,
    "quantity": str,
    "output": str,
    "out": str,
}
_BOOL_DESTS = ("natural", "si", "normalized")
_TRUE_WORDS = ("1", "true", "yes", "on")
_FALSE_WORDS = ("0", "false", "no", "off")


def _build_parser() -> tuple[argparse.ArgumentParser, dict[str, set]]:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=None, help="number of lattice spacings (sites 0..N)")
    geom = common.add_mutually_exclusive_group()
    geom.add_argument("--a", type=float, default=None, help="lattice spacing")
    geom.add_argument("--L", type=float, default=None, help="well width (spacing derived as L/N)")
    units = common.add_mutually_exclusive_group()
    units.add_argument("--natural", action="store_true", help="natural units: m* = hbar = k_B = 1 (default)")
    units.add_argument("--SI", dest="si", action="store_true", help="SI units with --m-star/--hbar/--k-B")
    common.add_argument("--m-star", type=float, default=None, help=f"effective mass [kg], default {M_STAR_SI_DEFAULT:g}")
    common.add_argument("--hbar", type=float, default=None, help=f"hbar [J s], default {HBAR_SI:g}")
    common.add_argument("--k-B", type=float, default=None, help=f"Boltzmann constant [J/K], default {K_B_SI:g}")
    common.add_argument("--output", choices=("csv", "json"), default=None, help="table format (default csv)")
    common.add_argument("--out", default=None, help="output file path (default stdout)")
    common.add_argument("--config", default=None, help="key = value config file; flags take precedence")

    thermal = argparse.ArgumentParser(add_help=False)
    tgroup = thermal.add_mutually_exclusive_group()
    tgroup.add_argument("--beta", type=float, default=None, help="inverse temperature")
    tgroup.add_argument("--T", type=float, default=None, help="temperature")

    swept = argparse.ArgumentParser(add_help=False)
    swept.add_argument("--sweep", default=None, help="start:stop:points:scale with scale linear|log")

    parser = argparse.ArgumentParser(
        prog="latticewell",
        description="Hard-wall well on a lattice: spectra, density matrices, partition functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="all N-1 modes with continuum comparison")
    p = sub.add_parser("wavefunction", parents=[common], help="one normalized eigenfunction")
    p.add_argument("--n-E", type=int, default=None, help="principal quantum number (default 1)")
    p = sub.add_parser("density-matrix", parents=[common, thermal], help="spectral density matrix at beta")
    p.add_argument("--normalized", action="store_true", help="divide by the discrete partition function")
    sub.add_parser("partition", parents=[common, thermal, swept], help="Z by all four methods")
    sub.add_parser("mean-energy", parents=[common, thermal, swept], help="discrete and continuum mean energy")
    sub.add_parser("heat-capacity", parents=[common, thermal, swept], help="two-level heat capacity curve")
    p = sub.add_parser("converge", parents=[common, thermal, swept], help="lattice-to-continuum convergence over N")
    p.add_argument("--n-E", type=int, default=None, help="mode tracked by quantity=energy (default 1)")
    p.add_argument("--quantity", choices=("energy", "partition"), default=None, help="quantity to converge (default energy)")

    allowed = {}
    for name, sp in sub.choices.items():
        dests = {act.dest for act in sp._actions if act.dest not in ("help", "config")}
        allowed[name] = dests
    return parser, allowed


def _load_config_file(path: str, allowed: set) -> dict:
    values = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, val = key.strip(), val.strip()
        dest = key.replace("-", "_").replace("SI", "si")
        if dest not in allowed:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if dest in _BOOL_DESTS:
            low = val.lower()
            if low in _TRUE_WORDS:
                values[dest] = True
            elif low in _FALSE_WORDS:
                values[dest] = False
            else:
                raise ConfigError(f"{path}:{lineno}: key {key!r} expects a boolean, got {val!r}")
            continue
        try:
            values[dest] = _VALUE_TYPES[dest](val)
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value {val!r} for key {key!r}") from None
    return values


def _merged(args: argparse.Namespace, fileconf: dict, dest: str, default=None):
    flag = getattr(args, dest, None)
    if flag is not None:
        return flag
    if dest in fileconf:
        return fileconf[dest]
    return default


def _require_positive(name: str, value) -> None:
    if value is not None and not value > 0:
        raise ConfigError(f"{name} must be positive, got {value!r}")


def parse_config(argv=None) -> RunConfig:
    parser, allowed = _build_parser()
    args = parser.parse_args(argv)
    command = args.command

    fileconf = {}
    if getattr(args, "config", None):
        fileconf = _load_config_file(args.config, allowed[command])
    # A flag from a mutually exclusive pair silences the config file's other member.
    for pair in (("beta", "T"), ("a", "L"), ("natural", "si")):
        given = [d for d in pair if getattr(args, d, None) not in (None, False)]
        if given:
            for d in pair:
                fileconf.pop(d, None)

    si = bool(getattr(args, "si", False)) or bool(fileconf.get("si", False))
    natural = bool(getattr(args, "natural", False)) or bool(fileconf.get("natural", False))
    if si and natural:
        raise ConfigError("--natural and --SI are mutually exclusive")
    unit_mode = "SI" if si else "natural"

    m_star = _merged(args, fileconf, "m_star")
    hbar = _merged(args, fileconf, "hbar")
    k_B = _merged(args, fileconf, "k_B")
    if unit_mode == "natural":
        if m_star is not None or hbar is not None or k_B is not None:
            raise ConfigError("natural units fix m-star = hbar = k-B = 1; use --SI to override")
        m_star, hbar, k_B = 1.0, 1.0, 1.0
    else:
        m_star = M_STAR_SI_DEFAULT if m_star is None else m_star
        hbar = HBAR_SI if hbar is None else hbar
        k_B = K_B_SI if k_B is None else k_B
    for name, value in (("m-star", m_star), ("hbar", hbar), ("k-B", k_B)):
        _require_positive(name, value)

    N = _merged(args, fileconf, "N")
    a = _merged(args, fileconf, "a")
    L = _merged(args, fileconf, "L")
    if a is not None and L is not None:
        raise ConfigError("give exactly one of a and L")
    _require_positive("a", a)
    _require_positive("L", L)
    if command == "converge":
        if L is None:
            raise ConfigError("converge holds the width fixed: give --L, not --a")
    elif command in ("partition", "mean-energy") and N is None:
        # continuum-only run: the discrete columns are emitted as nan
        if L is None:
            raise ConfigError("without --N the continuum needs --L")
    else:
        if N is None:
            raise ConfigError("--N is required")
        if N < 2:
            raise ConfigError(f"N must be >= 2, got {N}")
        if a is None and L is None:
            a = 1.0

    beta = _merged(args, fileconf, "beta")
    T = _merged(args, fileconf, "T")
    if beta is not None and T is not None:
        raise ConfigError("give exactly one of beta and T")
    _require_positive("T", T)
    if beta is not None and beta < 0:
        raise ConfigError(f"beta must be >= 0, got {beta!r}")

    sweep_text = _merged(args, fileconf, "sweep")
    sweep = SweepSpec.parse(sweep_text) if sweep_text is not None else None

    thermal_given = beta is not None or T is not None
    if command in ("partition", "mean-energy"):
        if sweep is not None and thermal_given:
            raise ConfigError("give either --beta/--T or --sweep, not both")
        if sweep is None and not thermal_given:
            raise ConfigError("give --beta, --T, or --sweep")
        if beta is not None and beta == 0:
            raise ConfigError("continuum partition functions need beta > 0")
    elif command == "heat-capacity":
        if sweep is not None and thermal_given:
            raise ConfigError("give either --beta/--T or --sweep, not both")
        if sweep is None and not thermal_given:
            raise ConfigError("give --T, --beta, or --sweep")
    elif command == "density-matrix":
        if not thermal_given:
            raise ConfigError("give --beta or --T")
    elif command == "converge":
        if sweep is None:
            raise ConfigError("converge needs --sweep over N")

    n_E = _merged(args, fileconf, "n_E", 1)
    if n_E < 1:
        raise ConfigError(f"n-E must be >= 1, got {n_E}")
    quantity = _merged(args, fileconf, "quantity", "energy")
    if command == "converge" and quantity == "partition" and not thermal_given:
        raise ConfigError("quantity=partition needs --beta or --T")
    normalized = bool(getattr(args, "normalized", False)) or bool(fileconf.get("normalized", False))

    output = _merged(args, fileconf, "output", "csv")
    if output not in ("csv", "json"):
        raise ConfigError(f"output must be csv or json, got {output!r}")
    out = _merged(args, fileconf, "out")

    return RunConfig(
        command=command, N=N, a=a, L=L, unit_mode=unit_mode,
        m_star=m_star, hbar=hbar, k_B=k_B, beta=beta, T=T, sweep=sweep,
        n_E=n_E, quantity=quantity, normalized=normalized, output=output, out=out,
    )


def _particle(cfg: RunConfig) -> ParticleSpec:
    if cfg.unit_mode == "natural":
        return ParticleSpec.natural()
    return ParticleSpec.si(cfg.m_star, cfg.hbar)


def _lattice(cfg: RunConfig, N: int | None = None) -> LatticeSpec:
    N = cfg.N if N is None else N
    a = cfg.a if cfg.a is not None else cfg.L / N
    return LatticeSpec(N, a)


def _beta_value(cfg: RunConfig) -> float:
    if cfg.beta is not None:
        return cfg.beta
    return 1.0 / (cfg.k_B * cfg.T)


def _beta_grid(cfg: RunConfig) -> list[float]:
    if cfg.sweep is not None:
        return cfg.sweep.values()
    return [_beta_value(cfg)]


def _cmd_spectrum(cfg: RunConfig):
    lattice = _lattice(cfg)
    particle = _particle(cfg)
    spec = build_spectrum(lattice, particle)
    rows = [
        [m.n_E, m.e_tilde, m.energy,
         energy_continuum(m.n_E, lattice.L, particle),
         continuum_limit_error(m.n_E, lattice.N)]
        for m in spec.modes
    ]
    return ["n_E", "e_tilde", "E", "E_continuum", "rel_error"], rows


def _cmd_wavefunction(cfg: RunConfig):
    lattice = _lattice(cfg)
    spec = build_spectrum(lattice, _particle(cfg))
    psi = eigenfunction(spec.mode(cfg.n_E), lattice)
    rows = [[n, n * lattice.a, float(psi.values[n])] for n in range(lattice.N + 1)]
    return ["n", "x_n", "psi"], rows


def _cmd_density_matrix(cfg: RunConfig):
    lattice = _lattice(cfg)
    spec = build_spectrum(lattice, _particle(cfg))
    beta = _beta_value(cfg)
    dm = density_matrix_spectral(spec, beta)
    if cfg.normalized:
        dm = density_matrix_normalized(dm, partition_discrete(spec, beta).Z)
    rows = [
        [n, np_, float(dm.rho[n, np_])]
        for n in range(lattice.N + 1)
        for np_ in range(lattice.N + 1)
    ]
    return ["n", "n_prime", "rho"], rows


def _cmd_partition(cfg: RunConfig):
    particle = _particle(cfg)
    if cfg.N is None:
        spec, L = None, cfg.L
    else:
        lattice = _lattice(cfg)
        spec, L = build_spectrum(lattice, particle), lattice.L
    rows = []
    for beta in _beta_grid(cfg):
        closed = partition_continuum_closed(L, particle, beta)
        rows.append([
            beta,
            partition_discrete(spec, beta).Z if spec is not None else math.nan,
            partition_continuum_sum(L, particle, beta).Z,
            closed.Z,
            partition_theta(L, particle, beta).Z,
            closed.free_energy,
        ])
    return ["beta", "Z_discrete", "Z_continuum_sum", "Z_closed", "Z_theta", "F"], rows


def _cmd_mean_energy(cfg: RunConfig):
    particle = _particle(cfg)
    if cfg.N is None:
        spec, L = None, cfg.L
    else:
        lattice = _lattice(cfg)
        spec, L = build_spectrum(lattice, particle), lattice.L
    rows = [
        [beta,
         mean_energy(spec, beta) if spec is not None else math.nan,
         mean_energy_continuum(L, particle, beta)]
        for beta in _beta_grid(cfg)
    ]
    return ["beta", "H_mean_discrete", "H_mean_continuum"], rows


def _cmd_heat_capacity(cfg: RunConfig):
    lattice = _lattice(cfg)
    spec = build_spectrum(lattice, _particle(cfg))
    theta = characteristic_temperature(spec, cfg.k_B)
    if cfg.sweep is not None:
        temps = cfg.sweep.values()
    elif cfg.T is not None:
        temps = [cfg.T]
    else:
        temps = [1.0 / (cfg.k_B * cfg.beta)]
    rows = [[T, theta / T, heat_capacity_two_level(spec, T, cfg.k_B)] for T in temps]
    return ["T", "x", "Cv_over_R"], rows


def _cmd_converge(cfg: RunConfig):
    particle = _particle(cfg)
    L = cfg.L
    rows = []
    if cfg.quantity == "energy":
        for v in cfg.sweep.values():
            N = int(round(v))
            lattice = LatticeSpec(N, L / N)
            rows.append([
                N, "energy",
                energy_discrete(cfg.n_E, lattice, particle),
                continuum_limit_error(cfg.n_E, N),
            ])
    else:
        beta = _beta_value(cfg)
        z_cont = partition_continuum_sum(L, particle, beta).Z
        for v in cfg.sweep.values():
            N = int(round(v))
            lattice = LatticeSpec(N, L / N)
            z_d = partition_discrete(build_spectrum(lattice, particle), beta).Z
            rows.append([N, "partition", z_d, abs(z_d - z_cont)])
    return ["N", "quantity", "value", "error_vs_continuum"], rows


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "wavefunction": _cmd_wavefunction,
    "density-matrix": _cmd_density_matrix,
    "partition": _cmd_partition,
    "mean-energy": _cmd_mean_energy,
    "heat-capacity": _cmd_heat_capacity,
    "converge": _cmd_converge,
}


def build_table(cfg: RunConfig):
    return _COMMANDS[cfg.command](cfg)


def _format_cell(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, int):
        return str(v)
    return format(float(v), ".17g")


def _config_echo(cfg: RunConfig) -> dict:
    return {
        "command": cfg.command,
        "N": cfg.N,
        "a": cfg.a,
        "L": cfg.L,
        "unit_mode": cfg.unit_mode,
        "m_star": cfg.m_star,
        "hbar": cfg.hbar,
        "k_B": cfg.k_B,
        "beta": cfg.beta,
        "T": cfg.T,
        "sweep": cfg.sweep.text() if cfg.sweep else None,
        "n_E": cfg.n_E,
        "quantity": cfg.quantity,
        "normalized": cfg.normalized,
        "output": cfg.output,
        "out": cfg.out,
    }


def emit(cfg: RunConfig, columns, rows, stream) -> None:
    if cfg.output == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_cell(v) for v in row])
        return
    doc = {
        "config": _config_echo(cfg),
        "columns": list(columns),
        "rows": [[v if isinstance(v, (int, str)) else float(v) for v in row] for row in rows],
        "meta": {"version": __version__, "unit_mode": cfg.unit_mode},
    }
    stream.write(json.dumps(doc) + "\n")


def run(cfg: RunConfig, stream=None) -> int:
    """Compute the configured table and write it (spec'd entry point)."""
    columns, rows = build_table(cfg)
    if stream is not None:
        emit(cfg, columns, rows, stream)
    elif cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            emit(cfg, columns, rows, fh)
    else:
        emit(cfg, columns, rows, sys.stdout)
    return EXIT_OK


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SystemExit as exc:  # argparse usage text / --help
        return int(exc.code) if exc.code else 0
    try:
        return run(cfg)
    except SeriesCapExceeded as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
