"""Batch driver: runs the verification suites and writes JSON or text
reports.  Exit status is 2 for a bad configuration, 1 when any check fails
and 0 otherwise."""
from __future__ import annotations

import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import click

from . import __version__
from .suites import SUITES

SCHEMA_VERSION = 1
PRIMES = (3, 5, 7)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    suite: str
    p: int = 3
    t: int | None = None
    epsilon: Fraction = Fraction(1, 8)
    max_degree: int | None = None
    out: str | None = None
    format: str = "json"


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    wall_clock_s: float = 0.0
    parts: list = field(default_factory=list)  # sub-reports of "all"

    @property
    def failed(self) -> int:
        own = sum(1 for c in self.checks if c.verdict != "pass")
        return own + sum(r.failed for r in self.parts)

    @property
    def total(self) -> int:
        return len(self.checks) + sum(r.total for r in self.parts)

    def as_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "config": self.config,
            "checks": [c.as_dict() for c in self.checks],
        }
        if self.parts:
            out["reports"] = [r.as_dict() for r in self.parts]
        out["summary"] = {"total": self.total, "passed": self.total - self.failed, "failed": self.failed}
        out["wall_clock_s"] = round(self.wall_clock_s, 3)
        out["version"] = __version__
        return out


# ---- configuration ----------------------------------------------------------

def parse_epsilon(text) -> Fraction:
    try:
        eps = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"epsilon {text!r} is not a rational a/b") from exc
    if not Fraction(0) < eps < Fraction(1, 4):
        raise ConfigError(f"epsilon {eps} must lie strictly between 0 and 1/4")
    return eps


def read_config_file(path: str) -> dict:
    """Plain ``key = value`` lines; blank lines and # comments are skipped."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in ("p", "t", "epsilon", "max_degree", "out", "format"):
            raise ConfigError(f"{path}:{n}: unknown key {key!r}")
        out[key] = value
    return out


def _int(key: str, value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key} must be an integer, got {value!r}") from exc


def make_config(suite: str, file_values: dict, flags: dict) -> RunConfig:
    """Merge defaults, config-file values and flags (flags win)."""
    merged = dict(file_values)
    merged.update({k: v for k, v in flags.items() if v is not None})
    if suite not in SUITES + ("all",):
        raise ConfigError(f"unknown suite {suite!r}")
    cfg = RunConfig(suite)
    if "p" in merged:
        cfg.p = _int("p", merged["p"])
    if cfg.p not in PRIMES:
        raise ConfigError(f"p must be one of {PRIMES}, got {cfg.p}")
    if suite == "construct3" and cfg.p != 3:
        raise ConfigError("the construction exists only for p = 3")
    if merged.get("t") is not None:
        cfg.t = _int("t", merged["t"])
        if not 0 <= cfg.t <= cfg.p:
            raise ConfigError(f"t must lie in 0..{cfg.p}")
    if merged.get("epsilon") is not None:
        cfg.epsilon = parse_epsilon(merged["epsilon"])
    if merged.get("max_degree") is not None:
        cfg.max_degree = _int("max_degree", merged["max_degree"])
        if cfg.max_degree < 0:
            raise ConfigError("max_degree must be nonnegative")
    cfg.out = merged.get("out")
    cfg.format = merged.get("format", "json")
    if cfg.format not in ("json", "text"):
        raise ConfigError(f"format must be json or text, got {cfg.format!r}")
    return cfg


# ---- running ----------------------------------------------------------------

def _suite_checks(name: str, cfg: RunConfig) -> list:
    from . import suites

    if name == "chern":
        return suites.chern_suite(cfg.p, cfg.t)
    if name == "serre":
        return suites.serre_suite(cfg.p, cfg.t)
    if name == "emspace":
        return suites.emspace_suite(cfg.p, cfg.max_degree)
    if name == "steenrod":
        return suites.steenrod_suite(cfg.p, cfg.max_degree)
    if name == "oliver":
        return suites.oliver_suite(cfg.p)
    if name == "gl2":
        return suites.gl2_suite(cfg.p)
    if name == "construct3":
        return suites.construct3_suite(cfg.epsilon)
    raise ConfigError(f"unknown suite {name!r}")


def _config_dict(cfg: RunConfig, suite: str) -> dict:
    out = {"p": cfg.p}
    if suite in ("chern", "serre"):
        out["t"] = cfg.t
    if suite in ("emspace", "steenrod"):
        out["max_degree"] = cfg.max_degree
    if suite == "construct3":
        out["epsilon"] = str(cfg.epsilon)
    return out


def run_suite(cfg: RunConfig) -> Report:
    start = time.perf_counter()
    if cfg.suite == "all":
        names = [s for s in SUITES if s != "construct3" or cfg.p == 3]
        parts = [run_suite(RunConfig(s, cfg.p, cfg.t, cfg.epsilon, cfg.max_degree)) for s in names]
        rep = Report("all", [], {"p": cfg.p, "suites": names}, parts=parts)
    else:
        rep = Report(cfg.suite, _suite_checks(cfg.suite, cfg), _config_dict(cfg, cfg.suite))
    rep.wall_clock_s = time.perf_counter() - start
    return rep


def _text_lines(d: dict, indent: str = "") -> list:
    lines = [f"{indent}suite {d['suite']}  config {json.dumps(d['config'], sort_keys=True)}"]
    for c in d["checks"]:
        lines.append(f"{indent}  [{c['verdict'].upper()}] {c['name']}  <{c['anchor']}>")
        lines.append(f"{indent}      expected {c['expected']}")
        lines.append(f"{indent}      computed {c['computed']}")
        if c["residual"]:
            lines.append(f"{indent}      residual {c['residual']}")
    for sub in d.get("reports", []):
        lines += _text_lines(sub, indent + "  ")
    s = d["summary"]
    lines.append(f"{indent}{s['passed']}/{s['total']} passed, {s['failed']} failed "
                 f"({d['wall_clock_s']} s, version {d['version']})")
    return lines


def emit_report(r: Report, fmt: str = "json") -> str:
    d = r.as_dict()
    if fmt == "json":
        return json.dumps(d, indent=2) + "\n"
    if fmt == "text":
        return "\n".join(_text_lines(d)) + "\n"
    raise ConfigError(f"unknown format {fmt!r}")


# ---- command line -------------------------------------------------------------

def _options(f):
    f = click.option("--config", "config_path", default=None, help="File of key = value lines.")(f)
    f = click.option("--format", "fmt", default=None, help="json (default) or text.")(f)
    f = click.option("--out", default=None, help="Write the report here instead of stdout.")(f)
    f = click.option("--max-degree", default=None, help="Degree window override.")(f)
    f = click.option("--epsilon", default=None, help="Tube radius a/b in (0, 1/4).")(f)
    f = click.option("--t", "t", default=None, help="Subgroup index t in 0..p.")(f)
    f = click.option("--p", "p", default=None, help="Prime 3, 5 or 7.")(f)
    return f


def _execute(suite: str, p, t, epsilon, max_degree, out, fmt, config_path) -> None:
    try:
        file_values = read_config_file(config_path) if config_path else {}
        cfg = make_config(suite, file_values, {"p": p, "t": t, "epsilon": epsilon,
                                               "max_degree": max_degree, "out": out, "format": fmt})
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    report = run_suite(cfg)
    text = emit_report(report, cfg.format)
    if cfg.out:
        try:
            Path(cfg.out).write_text(text)
        except OSError as exc:
            click.echo(f"cannot write {cfg.out}: {exc}", err=True)
            sys.exit(2)
    else:
        click.echo(text, nl=False)
    sys.exit(1 if report.failed else 0)


@click.group()
@click.version_option(__version__)
def main():
    """Exact verification suites for the obstruction computations."""


def _register(name: str, doc: str) -> None:
    @_options
    def command(p, t, epsilon, max_degree, out, fmt, config_path):
        _execute(name, p, t, epsilon, max_degree, out, fmt, config_path)

    command.__doc__ = doc
    main.command(name)(command)


for _name, _doc in (
    ("chern", "Chern, Pontrjagin and Wu classes over BH_t."),
    ("serre", "Serre spectral sequence kernels and the homology run."),
    ("emspace", "Eilenberg-MacLane table facts and their re-derivation."),
    ("steenrod", "Ext charts, the lifted chain map and permanent cycles."),
    ("oliver", "Cyclic-subgroup census and |D(ZG)|."),
    ("gl2", "GL_2(p)-span of the transfer seed."),
    ("construct3", "The p = 3 free action: exact verdicts and numeric cross-check."),
    ("all", "Every suite in order."),
):
    _register(_name, _doc)


if __name__ == "__main__":
    main()
