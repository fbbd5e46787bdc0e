"""Command-line entry point ``hardy-lab``.

Every scenario writes three kinds of artifacts into ``<out>/<scenario>/``:
``report.json`` (canonical, byte-stable), ``summary.txt`` and one
``spectrum_<name>.csv`` per singular value list.

Exit codes: 0 when every asserted check passes, 1 on a failed check
(artifacts are still written), 2 on an invalid configuration.
"""

import argparse
import difflib
import json
import math
import os
import re
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import kernel_lab
from .errors import ConfigInvalid, EndpointAlpha
from .toeplitz import write_spectrum_csv

SCHEMA = "hardy-lab/1"
OUT_ENV = "HARDY_LAB_OUT"

DEFAULTS = {
    "n": 4096,
    "m": 512,
    "tol": 1e-6,
    "seed": kernel_lab.DEFAULT_SEED,
    "out_dir": "hardy-lab-out",
    "jobs": 1,
}

SCENARIOS = {
    "sweep-alpha": "kernel dimension of T_{conj(g)/g} for g = (1-z)^alpha across alpha",
    "theorem1": "kernel of T_{conj(g)/g} equals f K_I for g built from a real Helson quotient",
    "lemma-hss": "projection identities P+(|f|^2 I k_lam) and P+(|f|^2 k_lam) on the example",
    "example-s4": "witness g = f k_{-1} (1 + I) in the kernel and orthogonal to f K_I",
    "complement-s5": "complement of M(a) in H(b0) spanned by the boundary kernel at -1",
    "theorem2-witness": "V g = I k_{-1}^{b0} linking the kernel and the M(a) complement",
}


@dataclass
class RunConfig:
    """Validated configuration of one scenario run."""

    scenario: str
    n: int = DEFAULTS["n"]
    m: int = DEFAULTS["m"]
    tol: float = DEFAULTS["tol"]
    seed: int = DEFAULTS["seed"]
    out_dir: str = DEFAULTS["out_dir"]
    jobs: int = DEFAULTS["jobs"]
    params: dict = field(default_factory=dict)

    def validate(self):
        if self.scenario not in SCENARIOS:
            near = difflib.get_close_matches(self.scenario, list(SCENARIOS), n=1, cutoff=0.0)
            hint = f"; did you mean {near[0]!r}?" if near else ""
            raise ConfigInvalid(f"unknown scenario {self.scenario!r}{hint}")
        if self.n < 64 or self.n & (self.n - 1):
            raise ConfigInvalid(f"n must be a power of two >= 64, got {self.n}")
        if self.m > self.n // 4:
            raise ConfigInvalid(f"m={self.m} exceeds n/4={self.n // 4}")
        if self.m < 1:
            raise ConfigInvalid("m must be positive")
        if not 1e-12 <= self.tol <= 1e-2:
            raise ConfigInvalid(f"tol must lie in [1e-12, 1e-2], got {self.tol}")
        if self.jobs < 1:
            raise ConfigInvalid("jobs must be >= 1")
        return self


# ---------------------------------------------------------------- execution


def _run_theorem1(cfg):
    names = cfg.params.get("instances", ["f1-z2", "fb-z"])
    merged = kernel_lab.ScenarioReport("theorem1", {"instances": names, "m": cfg.m, "n": cfg.n,
                                                     "tol": cfg.tol})
    for name in names:
        rep = kernel_lab.theorem1_check(*kernel_lab.theorem1_instance(name), m=cfg.m, n=cfg.n,
                                        tol=cfg.tol, label=name)
        merged.merge(rep, prefix=f"{name}.")
        merged.wall_time += rep.wall_time
    return merged


def execute(cfg):
    """Run the scenario described by `cfg` and return its report."""
    p = cfg.params
    if cfg.scenario == "sweep-alpha":
        return kernel_lab.sweep_alpha(
            p.get("alphas", (0.3, 1.0, 1.4, 1.7, 2.3, 2.7)), m=cfg.m, tol=cfg.tol, n=cfg.n,
            m_check=p.get("m_check", cfg.m // 2), jobs=cfg.jobs,
            endpoint_margin=p.get("endpoint_margin", 0.2))
    if cfg.scenario == "theorem1":
        return _run_theorem1(cfg)
    if cfg.scenario == "lemma-hss":
        return kernel_lab.lemma_hss_check(p.get("blaschke", 1),
                                          p.get("lambdas", (0.0, 0.3, -0.5j)), base_n=cfg.n)
    if cfg.scenario == "example-s4":
        return kernel_lab.example_s4(p.get("blaschke", 1), m=cfg.m,
                                     lambdas=p.get("lambdas", (0.0, 0.3, -0.4)), tol=cfg.tol,
                                     base_n=cfg.n)
    if cfg.scenario == "complement-s5":
        return kernel_lab.complement_s5(p.get("d", 32), m=cfg.m, n=cfg.n,
                                        basis=p.get("basis", 64), seed=cfg.seed,
                                        n_poly=p.get("n_poly", 10))
    if cfg.scenario == "theorem2-witness":
        return kernel_lab.theorem2_witness(p.get("blaschke", 1), d=p.get("d", 32), m=cfg.m,
                                           base_n=cfg.n)
    raise ConfigInvalid(f"unknown scenario {cfg.scenario!r}")


# ---------------------------------------------------------------- serialization


def _canon(x):
    """JSON-ready value with floats rounded to 10 significant digits."""
    if isinstance(x, dict):
        return {str(k): _canon(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_canon(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return float(f"{x:.10g}")
    if isinstance(x, complex):
        return [_canon(x.real), _canon(x.imag)]
    return x


def _slug(name):
    return re.sub(r"[^A-Za-z0-9._=-]+", "_", name).strip("_")


def report_document(cfg, report):
    """Canonical report dictionary (no timing, so it is byte-stable)."""
    config = asdict(cfg)
    config.pop("out_dir")
    config.pop("jobs")
    return _canon({
        "schema": SCHEMA,
        "scenario": report.scenario,
        "config": config,
        "parameters": report.parameters,
        "passed": report.passed,
        "checks": [c.as_dict() for c in report.checks],
        "metrics": report.metrics,
        "spectra": {k: f"spectrum_{_slug(k)}.csv" for k in sorted(report.spectra)},
    })


def summary_text(report):
    lines = [f"scenario: {report.scenario}",
             f"result: {'PASS' if report.passed else 'FAIL'}",
             f"wall time: {report.wall_time:.3f} s", ""]
    for c in report.checks:
        tol = "" if c.tolerance is None else f" (want {c.op} {c.tolerance})"
        value = f"{c.value:.3e}" if isinstance(c.value, float) else str(c.value)
        lines.append(f"[{c.verdict:>11}] {c.name} = {value}{tol}")
    return "\n".join(lines) + "\n"


def write_artifacts(cfg, report):
    out = Path(cfg.out_dir) / report.scenario
    out.mkdir(parents=True, exist_ok=True)
    doc = report_document(cfg, report)
    (out / "report.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    (out / "summary.txt").write_text(summary_text(report))
    for name, sigma in report.spectra.items():
        write_spectrum_csv(out / f"spectrum_{_slug(name)}.csv", sigma)
    return out


def run(cfg):
    """Validate, execute and write artifacts; returns the exit code."""
    cfg.validate()
    try:
        report = execute(cfg)
    except EndpointAlpha as exc:
        raise ConfigInvalid(f"EndpointAlpha: {exc}") from exc
    out = write_artifacts(cfg, report)
    print(summary_text(report), end="")
    print(f"artifacts: {out}")
    return 0 if report.passed else 1


# ---------------------------------------------------------------- argument parsing


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _complexes(text):
    try:
        return [complex(x.replace(" ", "")) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _common(p):
    p.add_argument("--n", type=int, default=DEFAULTS["n"], help="grid size (power of two)")
    p.add_argument("--m", type=int, default=DEFAULTS["m"], help="truncation order")
    p.add_argument("--tol", type=float, default=DEFAULTS["tol"], help="relative SVD tolerance")
    p.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    p.add_argument("--out", default=None,
                   help=f"output directory (default ${OUT_ENV} or {DEFAULTS['out_dir']})")
    p.add_argument("--jobs", type=int, default=DEFAULTS["jobs"], help="parallel workers")


def build_parser():
    parser = argparse.ArgumentParser(prog="hardy-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="list scenarios")
    p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("run", help="run a scenario by name with defaults")
    p.add_argument("name")
    _common(p)

    p = sub.add_parser("sweep-alpha", help=SCENARIOS["sweep-alpha"])
    _common(p)
    p.add_argument("--alphas", type=_floats, default=None)
    p.add_argument("--m-check", type=int, default=None, help="second order for stability")
    p.add_argument("--endpoint-margin", type=float, default=0.2)

    p = sub.add_parser("theorem1", help=SCENARIOS["theorem1"])
    _common(p)
    p.add_argument("--instance", choices=["f1-z2", "fb-z", "all"], default="all")

    for name in ("lemma-hss", "example-s4"):
        p = sub.add_parser(name, help=SCENARIOS[name])
        _common(p)
        p.add_argument("--blaschke", type=int, default=1, help="number of Blaschke factors")
        p.add_argument("--lambdas", type=_complexes, default=None)

    p = sub.add_parser("complement-s5", help=SCENARIOS["complement-s5"])
    _common(p)
    p.add_argument("--d", type=int, default=32, help="basis cutoff")
    p.add_argument("--basis", type=int, default=64, help="polynomial basis size for Y*")
    p.add_argument("--n-poly", type=int, default=10)

    p = sub.add_parser("theorem2-witness", help=SCENARIOS["theorem2-witness"])
    _common(p)
    p.add_argument("--blaschke", type=int, default=1)
    p.add_argument("--d", type=int, default=32)
    return parser


def config_from_args(args):
    scenario = args.name if args.command == "run" else args.command
    out = args.out or os.environ.get(OUT_ENV) or DEFAULTS["out_dir"]
    params = {}
    if args.command == "sweep-alpha":
        if args.alphas is not None:
            params["alphas"] = args.alphas
        if args.m_check is not None:
            params["m_check"] = args.m_check
        params["endpoint_margin"] = args.endpoint_margin
    elif args.command == "theorem1":
        params["instances"] = ["f1-z2", "fb-z"] if args.instance == "all" else [args.instance]
    elif args.command in ("lemma-hss", "example-s4"):
        params["blaschke"] = args.blaschke
        if args.lambdas is not None:
            params["lambdas"] = args.lambdas
    elif args.command == "complement-s5":
        params.update(d=args.d, basis=args.basis, n_poly=args.n_poly)
        if args.d < 16:
            raise ConfigInvalid(f"d must be >= 16, got {args.d}")
    elif args.command == "theorem2-witness":
        params.update(blaschke=args.blaschke, d=args.d)
    if params.get("blaschke", 1) < 0:
        raise ConfigInvalid("--blaschke must be >= 0")
    return RunConfig(scenario, args.n, args.m, args.tol, args.seed, out, args.jobs, params)


def list_scenarios(as_json=False):
    if as_json:
        print(json.dumps([{"id": k, "anchor": v} for k, v in SCENARIOS.items()], indent=2))
    else:
        width = max(map(len, SCENARIOS))
        for k, v in SCENARIOS.items():
            print(f"{k:<{width}}  {v}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "list":
        list_scenarios(args.json)
        return 0
    try:
        return run(config_from_args(args))
    except ConfigInvalid as exc:
        print(f"ConfigInvalid: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
