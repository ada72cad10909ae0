"""Sweep harness: expand a config into check tasks, run them (optionally
across processes), and write reports whose bytes do not depend on the
degree of parallelism.

Each task is a plain dict (check name + JSON parameters), so it is
picklable and pure: the same task always produces the same rows.  Rows
are ordered canonically by (check, parameter JSON) before writing.
"""

from __future__ import annotations

import csv
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .checks import CHECK_REGISTRY, DEFAULT_TOLS, run_check
from .report import InequalityReport


class ConfigError(ValueError):
    """Malformed suite configuration; raised before any computation."""


ALPHA_GRID = [i / 10 for i in range(11)]

# stable indices for seeding the per-check random streams
_CHECK_INDEX = {name: i for i, name in enumerate(CHECK_REGISTRY)}

_CONFIG_KEYS = {
    "seed", "dim", "alphas", "measures", "functions", "checks",
    "random_sweeps", "tolerances", "quad_order", "mc_count", "negate", "out",
}


@dataclass
class SuiteConfig:
    seed: int = 0
    dim: int | None = None
    alphas: list = field(default_factory=lambda: list(ALPHA_GRID))
    measures: list = field(default_factory=list)
    functions: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    random_sweeps: int = 0
    tolerances: dict = field(default_factory=dict)
    quad_order: int | None = None
    mc_count: int = 100_000
    negate: bool = False
    out: str | None = None

    @classmethod
    def from_json_dict(cls, data: dict) -> "SuiteConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self):
        for name in self.checks:
            if name not in CHECK_REGISTRY:
                raise ConfigError(f"unknown check {name!r}; see list-checks")
        for a in self.alphas:
            if not 0.0 <= a <= 1.0:
                raise ConfigError(f"alpha {a} outside [0, 1]")
        bad = set(self.tolerances) - set(DEFAULT_TOLS)
        if bad:
            raise ConfigError(f"unknown tolerance keys: {', '.join(sorted(bad))}")
        if self.random_sweeps < 0:
            raise ConfigError("random_sweeps must be >= 0")
        if self.mc_count < 2:
            raise ConfigError("mc_count must be >= 2")
        from .checks import function_from_json
        from .measures import DiscreteMeasure
        try:
            for m in self.measures:
                DiscreteMeasure.from_json_dict(m)
            for f in self.functions:
                function_from_json(f)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"bad measure or function spec: {exc}") from exc


def load_config(path) -> SuiteConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    return SuiteConfig.from_json_dict(data)


def _fn_kind(data: dict) -> str:
    kind = data.get("kind")
    if kind is None:
        terms = data.get("terms", [])
        kind = "chaos" if terms and "m" in terms[0] else "exp"
    return kind


def _exp_functions(cfg):
    return [f for f in cfg.functions if _fn_kind(f) == "exp"]


def _chaos_functions(cfg):
    return [f for f in cfg.functions if _fn_kind(f) == "chaos"]


def _positive_tests(cfg, dim):
    """Nonnegative test functions matching dim: constant 1 plus any
    positive-weight exponential combos from the config."""
    tests = [{"kind": "exp", "dim": dim, "terms": [{"coef": 1.0, "h": [0.0] * dim}]}]
    for f in _exp_functions(cfg):
        if f["dim"] == dim and all(t["coef"] >= 0 for t in f["terms"]):
            tests.append(f)
    return tests


def _pairs(seq):
    return [(a, b) for i, a in enumerate(seq) for b in seq[i:]]


def _grid_tasks(cfg: SuiteConfig, name: str) -> list[dict]:
    tasks = []
    if name in ("beckner_deficit", "left_positivity"):
        for f in cfg.functions:
            for nu in cfg.measures:
                if f["dim"] != nu["dim"]:
                    continue
                for a in cfg.alphas:
                    tasks.append({"alpha": a, "f": f, "nu": nu})
    elif name == "ab_psd":
        for f in _exp_functions(cfg):
            hs = [t["h"] for t in f["terms"]]
            for nu in cfg.measures:
                if f["dim"] != nu["dim"]:
                    continue
                for a in cfg.alphas:
                    tasks.append({"alpha": a, "hs": hs, "nu": nu})
    elif name == "char_gram_psd":
        for f in _exp_functions(cfg):
            hs = [t["h"] for t in f["terms"]]
            for nu in cfg.measures:
                if f["dim"] == nu["dim"]:
                    tasks.append({"hs": hs, "nu": nu})
    elif name == "holder":
        for f in _exp_functions(cfg):
            for a in cfg.alphas:
                tasks.append({"alpha": a, "f": f})
    elif name == "classic_beckner":
        for f in _chaos_functions(cfg):
            for a in cfg.alphas:
                tasks.append({"alpha": a, "f": f})
    elif name == "strong_positivity":
        for nu in cfg.measures:
            for phi in _positive_tests(cfg, nu["dim"]):
                for a in cfg.alphas:
                    if a > 0:
                        tasks.append({"alpha": a, "nu": nu, "phi": phi})
    elif name == "covariance":
        for nu1, nu2 in _pairs(cfg.measures):
            if nu1["dim"] != nu2["dim"]:
                continue
            for phi in _positive_tests(cfg, nu1["dim"]):
                tasks.append({"nu1": nu1, "nu2": nu2, "phi": phi})
    elif name == "wick_density_identity":
        for nu1, nu2 in _pairs(cfg.measures):
            if nu1["dim"] == nu2["dim"]:
                tasks.append({"nu1": nu1, "nu2": nu2})
    elif name == "g_lambda_bound":
        for nu in cfg.measures:
            for a in cfg.alphas:
                tasks.append({"nu": nu, "lambda": float(np.sqrt(2.0 / (1.0 + a)))})
    elif name == "oracle_triangle":
        for idx, f in enumerate(_exp_functions(cfg)):
            for jdx, nu in enumerate(cfg.measures):
                if f["dim"] != nu["dim"] or f["dim"] > 2:
                    continue
                for a in cfg.alphas:
                    tasks.append({
                        "alpha": a, "f": f, "nu": nu,
                        "quad_order": cfg.quad_order, "mc_count": cfg.mc_count,
                        "mc_seed": [cfg.seed, 9000 + idx, jdx],
                    })
    return [{"check": name, "params": p} for p in tasks]


# --- random sweep parameter generators -------------------------------------

COORD_SCALE = 1.5


def _rand_alpha(rng, low_index=0) -> float:
    return int(rng.integers(low_index, 11)) / 10


def _rand_dim(rng, cfg, cap=3) -> int:
    if cfg.dim is not None:
        return min(cfg.dim, cap)
    return int(rng.integers(1, cap + 1))


def _rand_nu_json(rng, n, max_atoms=5, scale=COORD_SCALE) -> dict:
    count = int(rng.integers(1, max_atoms + 1))
    atoms = rng.uniform(-scale, scale, size=(count, n))
    weights = rng.dirichlet(np.ones(count))
    return {"dim": n, "atoms": atoms.tolist(), "weights": weights.tolist()}


def _rand_exp_json(rng, n, max_terms=4, scale=COORD_SCALE, positive=False) -> dict:
    count = int(rng.integers(1, max_terms + 1))
    dirs = rng.uniform(-scale, scale, size=(count, n))
    lo = 0.1 if positive else -1.5
    coefs = rng.uniform(lo, 1.5, size=count)
    return {
        "kind": "exp", "dim": n,
        "terms": [{"coef": float(c), "h": d.tolist()} for c, d in zip(coefs, dirs)],
    }


def _rand_chaos_json(rng, n, max_terms=10, max_degree=8) -> dict:
    count = int(rng.integers(1, max_terms + 1))
    terms = []
    for _ in range(count):
        degree = int(rng.integers(0, max_degree + 1))
        m = rng.multinomial(degree, np.full(n, 1.0 / n))
        terms.append({"m": [int(x) for x in m], "c": float(rng.uniform(-1.0, 1.0))})
    return {"kind": "chaos", "dim": n, "terms": terms}


def _rand_vectors(rng, n, max_count=6, scale=COORD_SCALE) -> list:
    count = int(rng.integers(1, max_count + 1))
    return rng.uniform(-scale, scale, size=(count, n)).tolist()


def _random_params(name: str, rng, cfg: SuiteConfig, sweep: int) -> dict | None:
    if name in ("beckner_deficit", "left_positivity"):
        n = _rand_dim(rng, cfg)
        return {"alpha": _rand_alpha(rng), "f": _rand_exp_json(rng, n),
                "nu": _rand_nu_json(rng, n)}
    if name == "ab_psd":
        n = _rand_dim(rng, cfg)
        return {"alpha": _rand_alpha(rng), "hs": _rand_vectors(rng, n),
                "nu": _rand_nu_json(rng, n)}
    if name == "char_gram_psd":
        n = _rand_dim(rng, cfg)
        return {"hs": _rand_vectors(rng, n), "nu": _rand_nu_json(rng, n)}
    if name == "holder":
        # quadrature enters through the p/q norms: keep n <= 2 and the
        # directions short so the integrands stay well inside the grid
        n = _rand_dim(rng, cfg, cap=2)
        return {"alpha": _rand_alpha(rng, low_index=1),
                "f": _rand_exp_json(rng, n, max_terms=3, scale=0.75),
                "g": _rand_exp_json(rng, n, max_terms=3, scale=0.75)}
    if name == "classic_beckner":
        n = _rand_dim(rng, cfg)
        return {"alpha": _rand_alpha(rng), "f": _rand_chaos_json(rng, n)}
    if name == "strong_positivity":
        n = _rand_dim(rng, cfg)
        return {"alpha": _rand_alpha(rng, low_index=1), "nu": _rand_nu_json(rng, n),
                "phi": _rand_exp_json(rng, n, positive=True)}
    if name == "covariance":
        n = _rand_dim(rng, cfg)
        params = {"nu1": _rand_nu_json(rng, n, max_atoms=4),
                  "nu2": _rand_nu_json(rng, n, max_atoms=4)}
        if rng.integers(0, 2):
            phi = {"kind": "exp", "dim": n,
                   "terms": [{"coef": 1.0, "h": rng.uniform(-COORD_SCALE, COORD_SCALE, n).tolist()}]}
        else:
            phi = {"kind": "exp", "dim": n, "terms": [{"coef": 1.0, "h": [0.0] * n}]}
        params["phi"] = phi
        return params
    if name == "wick_density_identity":
        n = _rand_dim(rng, cfg)
        return {"nu1": _rand_nu_json(rng, n, max_atoms=4),
                "nu2": _rand_nu_json(rng, n, max_atoms=4)}
    if name == "g_lambda_bound":
        n = _rand_dim(rng, cfg)
        return {"nu": _rand_nu_json(rng, n), "lambda": float(rng.uniform(1.0, 2.0))}
    if name == "oracle_triangle":
        n = _rand_dim(rng, cfg, cap=2)
        return {"alpha": _rand_alpha(rng),
                "f": _rand_exp_json(rng, n, max_terms=3, scale=1.0),
                "nu": _rand_nu_json(rng, n, max_atoms=3, scale=1.0),
                "quad_order": cfg.quad_order, "mc_count": cfg.mc_count,
                "mc_seed": [cfg.seed, _CHECK_INDEX[name], sweep, 7]}
    return None


def _random_tasks(cfg: SuiteConfig, name: str) -> list[dict]:
    tasks = []
    for sweep in range(cfg.random_sweeps):
        rng = np.random.default_rng([cfg.seed, _CHECK_INDEX[name], sweep])
        params = _random_params(name, rng, cfg, sweep)
        if params is not None:
            params["sweep"] = sweep
            tasks.append({"check": name, "params": params})
    return tasks


def build_tasks(cfg: SuiteConfig) -> list[dict]:
    tasks = []
    for name in cfg.checks:
        tasks.extend(_grid_tasks(cfg, name))
        tasks.extend(_random_tasks(cfg, name))
    return tasks


def _task_key(task: dict) -> tuple:
    return task["check"], json.dumps(task["params"], sort_keys=True, separators=(",", ":"))


def _run_task(args):
    task, tols, negate = args
    rows = run_check(task["check"], task["params"], tols)
    if negate:
        rows = [r.negated() for r in rows]
    return _task_key(task), rows


def run_suite(cfg: SuiteConfig, jobs: int = 1) -> tuple[list[InequalityReport], int]:
    """Run all tasks; returns (rows in canonical order, exit code 0 or 1)."""
    tasks = build_tasks(cfg)
    tols = {**DEFAULT_TOLS, **cfg.tolerances}
    args = [(t, tols, cfg.negate) for t in tasks]
    if jobs <= 1:
        results = [_run_task(a) for a in args]
    else:
        chunk = max(1, len(args) // (4 * jobs)) if args else 1
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, args, chunksize=chunk))
    results.sort(key=lambda item: item[0])
    reports = [row for _, rows in results for row in rows]
    exit_code = 0 if all(r.passed for r in reports) else 1
    return reports, exit_code


def write_reports(reports, out_dir) -> tuple[str, str]:
    """Write report.json and report.csv; byte-deterministic for given rows."""
    os.makedirs(out_dir, exist_ok=True)
    json_path = os.path.join(out_dir, "report.json")
    csv_path = os.path.join(out_dir, "report.csv")
    with open(json_path, "w") as fh:
        json.dump([r.as_dict() for r in reports], fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["check", "params", "lhs", "rhs", "gap", "tol", "pass", "method"])
        for r in reports:
            writer.writerow([
                r.check,
                json.dumps(r.params, sort_keys=True, separators=(",", ":")),
                repr(r.lhs), repr(r.rhs), repr(r.gap), repr(r.tolerance),
                "true" if r.passed else "false",
                r.method,
            ])
    return json_path, csv_path
