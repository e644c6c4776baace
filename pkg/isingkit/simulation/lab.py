# -*- coding: utf-8 -*-
"""
Simulation study of the Curie-Weiss clique approximation.

Per replication, clique parameters are drawn around common means
(thresholds with sd sigma/k, interactions with sd sigma/sqrt(k)); the
Curie-Weiss normaliser at the sample averages is compared with the one at
the true means, or with exact enumeration of the heterogeneous clique for
small k. A Monte Carlo check of the Hoeffding radius for the averaged
interaction sits alongside.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Iterable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, ValidationError, field_validator

from isingkit.common.errors import EnumerationCapError, InputError
from isingkit.common.logger import get_logger
from isingkit.config import (
    DEFAULT_CLIQUE_SIZES,
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_REPS,
    DEFAULT_SEED,
    DEFAULT_SIGMAS,
    DEFAULT_WORKERS,
    SimulationSettings,
)
from isingkit.graph.core import complete_graph, maximal_cliques
from isingkit.intervention.spec import InterventionSpec
from isingkit.model.ising import IsingModel, assign_potentials, induced_model
from isingkit.partition.base import safe_exp
from isingkit.partition.conditional import exact_conditional_partition
from isingkit.partition.curie_weiss import CurieWeissParams, Theta1Mode, curie_weiss_partition, reduce_clique
from isingkit.partition.enumeration import exact_partition
from isingkit.simulation.rng import HOEFFDING_STREAM, substream

log = get_logger("simulation.lab")

# Hoeffding replications drawn per batch
HOEFFDING_CHUNK = 1000

MIN_HOEFFDING_REPS = 100


class SimulationConfig(BaseModel):
    clique_sizes: List[int] = Field(default_factory=lambda: list(DEFAULT_CLIQUE_SIZES), description="Clique sizes k")
    sigmas: List[float] = Field(default_factory=lambda: list(DEFAULT_SIGMAS), description="Sub-Gaussian parameters")
    reps: int = Field(default=DEFAULT_REPS, ge=1, description="Replications per (k, sigma) cell")
    theta0: float = Field(default=0.0, description="Common threshold mean")
    theta1: float = Field(default=0.0, description="Common interaction mean")
    delta: float = Field(default=0.05, gt=0.0, lt=1.0, description="Failure probability of the concentration bound")
    seed: int = Field(default=DEFAULT_SEED, ge=0)
    nu: Optional[float] = Field(default=None, ge=0.0, description="Neighbour count; None uses k - 1")
    workers: int = Field(default=DEFAULT_WORKERS, ge=1, description="Processes, one (k) cell each")

    @field_validator("clique_sizes")
    @classmethod
    def _check_sizes(cls, v: List[int]) -> List[int]:
        if not v:
            raise ValueError("clique_sizes must not be empty")
        if any(k < 2 for k in v):
            raise ValueError(f"clique sizes must be >= 2, got {v}")
        return v

    @field_validator("sigmas")
    @classmethod
    def _check_sigmas(cls, v: List[float]) -> List[float]:
        if not v:
            raise ValueError("sigmas must not be empty")
        if any(not math.isfinite(s) or s < 0 for s in v):
            raise ValueError(f"sigmas must be finite and >= 0, got {v}")
        return v

    @classmethod
    def create(cls, **values) -> "SimulationConfig":
        """Validate, turning pydantic errors into InputError."""
        try:
            return cls(**values)
        except ValidationError as exc:
            raise InputError(f"invalid simulation config: {exc}") from exc

    @classmethod
    def from_settings(cls, settings: SimulationSettings, **overrides) -> "SimulationConfig":
        values = settings.model_dump()
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls.create(**values)

    def nu_for(self, k: int) -> float:
        return float(k - 1) if self.nu is None else float(self.nu)


class ErrorRecord(BaseModel):
    k: int
    sigma: float
    rep: int
    zbar_log: float = Field(description="log of the Curie-Weiss value at the sample averages")
    z_log: float = Field(description="log of the reference normaliser")
    diff: float = Field(description="zbar - z; may be +-inf beyond double range")
    ratio: float = Field(description="zbar / z; may be inf beyond double range")
    theta0_bar: float
    theta1_bar: float

    @property
    def zbar(self) -> float:
        return safe_exp(self.zbar_log)

    @property
    def z(self) -> float:
        return safe_exp(self.z_log)

    @property
    def log_ratio(self) -> float:
        return self.zbar_log - self.z_log


class HoeffdingReport(BaseModel):
    k: int
    sigma: float
    delta: float
    n_reps: int
    t_bound: float = Field(description="Hoeffding radius for the mean of k(k-1)/2 interactions")
    t_stated: float = Field(description="sigma * sqrt(log(2/delta) / (2 k^2 (k-1)))")
    empirical_violation_rate: float = Field(ge=0.0, le=1.0)
    stated_violation_rate: float = Field(ge=0.0, le=1.0)
    slack: float = Field(description="3 * sqrt(delta (1 - delta) / reps)")
    passed: bool


class CellSummary(BaseModel):
    k: int
    sigma: float
    n: int
    mean_diff: float
    std_diff: float
    mean_abs_ratio_error: float
    median_abs_ratio_error: float


def make_record(k: int, sigma: float, rep: int, zbar_log: float, z_log: float, theta0_bar: float, theta1_bar: float) -> ErrorRecord:
    """diff and ratio are derived from the logs so they stay exact while in range."""
    d = zbar_log - z_log
    if d == 0.0:
        diff = 0.0
    else:
        try:
            diff = safe_exp(z_log) * math.expm1(d)
        except OverflowError:
            diff = math.inf
    return ErrorRecord(
        k=k,
        sigma=sigma,
        rep=rep,
        zbar_log=zbar_log,
        z_log=z_log,
        diff=diff,
        ratio=safe_exp(d),
        theta0_bar=theta0_bar,
        theta1_bar=theta1_bar,
    )


def standard_draws(k: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Unit normals for k thresholds and k(k-1)/2 interactions, in that order."""
    return rng.standard_normal(k), rng.standard_normal(k * (k - 1) // 2)


def scale_draws(
    draws: Tuple[np.ndarray, np.ndarray], k: int, sigma: float, theta0: float, theta1: float
) -> Tuple[np.ndarray, np.ndarray]:
    z_t, z_w = draws
    return theta0 + (sigma / k) * z_t, theta1 + (sigma / math.sqrt(k)) * z_w


def sample_clique_params(
    k: int, sigma: float, theta0: float, theta1: float, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Thresholds ~ N(theta0, (sigma/k)^2) and interactions ~ N(theta1, (sigma/sqrt(k))^2).

    Interactions are listed in itertools.combinations(range(k), 2) order.
    """
    if k < 2:
        raise InputError(f"clique size must be >= 2, got {k}")
    if sigma < 0:
        raise InputError(f"sigma must be >= 0, got {sigma}")
    return scale_draws(standard_draws(k, rng), k, sigma, theta0, theta1)


def centered_mean(values: np.ndarray, center: float) -> float:
    # exact when every value equals the center
    return center + float(np.mean(values - center))


def _k_cell(cfg: SimulationConfig, k: int) -> List[ErrorRecord]:
    nu = cfg.nu_for(k)
    z_log = curie_weiss_partition(CurieWeissParams(k=k, nu=nu, theta0=cfg.theta0, theta1=cfg.theta1)).log_value
    records = []
    for rep in range(cfg.reps):
        draws = standard_draws(k, substream(cfg.seed, k, rep))
        for sigma in cfg.sigmas:
            thresholds, weights = scale_draws(draws, k, sigma, cfg.theta0, cfg.theta1)
            t0 = centered_mean(thresholds, cfg.theta0)
            t1 = centered_mean(weights, cfg.theta1)
            zbar_log = curie_weiss_partition(CurieWeissParams(k=k, nu=nu, theta0=t0, theta1=t1)).log_value
            records.append(make_record(k, sigma, rep, zbar_log, z_log, t0, t1))
    log.debug("k={} done: {} records", k, len(records))
    return records


def _run_cells(cfg: SimulationConfig, cell) -> List[ErrorRecord]:
    if cfg.workers <= 1 or len(cfg.clique_sizes) == 1:
        batches = [cell(cfg, k) for k in cfg.clique_sizes]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            batches = list(pool.map(cell, [cfg] * len(cfg.clique_sizes), cfg.clique_sizes))
    records = [r for batch in batches for r in batch]
    records.sort(key=lambda r: (r.k, r.sigma, r.rep))
    return records


def error_experiment(cfg: SimulationConfig) -> List[ErrorRecord]:
    """
    Curie-Weiss value at the sample averages against the value at the true means.

    Returns |clique_sizes| * |sigmas| * reps records sorted by (k, sigma, rep);
    identical for a given seed whatever the worker count.
    """
    log.info(
        "error experiment: {} sizes x {} sigmas x {} reps, seed={}",
        len(cfg.clique_sizes), len(cfg.sigmas), cfg.reps, cfg.seed,
    )
    return _run_cells(cfg, _k_cell)


def heterogeneous_clique(thresholds: np.ndarray, weights: np.ndarray) -> IsingModel:
    """Complete graph on len(thresholds) nodes, weights in combinations order."""
    k = len(thresholds)
    pairs = combinations(range(k), 2)
    return IsingModel.create(complete_graph(k), thresholds, dict(zip(pairs, weights)))


def _exact_k_cell(cfg: SimulationConfig, k: int) -> List[ErrorRecord]:
    nu = float(k - 1)
    records = []
    for rep in range(cfg.reps):
        draws = standard_draws(k, substream(cfg.seed, k, rep))
        for sigma in cfg.sigmas:
            thresholds, weights = scale_draws(draws, k, sigma, cfg.theta0, cfg.theta1)
            t0 = centered_mean(thresholds, cfg.theta0)
            t1 = centered_mean(weights, cfg.theta1)
            z_log = exact_partition(heterogeneous_clique(thresholds, weights), cap=k).log_value
            zbar_log = curie_weiss_partition(CurieWeissParams(k=k, nu=nu, theta0=t0, theta1=t1)).log_value
            records.append(make_record(k, sigma, rep, zbar_log, z_log, t0, t1))
    return records


def small_k_exact_comparison(cfg: SimulationConfig, cap: Optional[int] = None) -> List[ErrorRecord]:
    """
    Curie-Weiss value at the sample averages against exact enumeration of the
    sampled heterogeneous clique. nu is always k - 1 here since the clique is complete.

    Raises:
        EnumerationCapError: a clique size exceeds the cap.
    """
    limit = DEFAULT_ENUMERATION_CAP if cap is None else cap
    largest = max(cfg.clique_sizes)
    if largest > limit:
        raise EnumerationCapError(largest, limit)
    log.info("exact comparison: sizes {} x {} sigmas x {} reps", cfg.clique_sizes, len(cfg.sigmas), cfg.reps)
    return _run_cells(cfg, _exact_k_cell)


def clamped_clique_error(
    m: IsingModel,
    clique: Iterable[int],
    iv: InterventionSpec,
    theta1_mode: Theta1Mode = Theta1Mode.FREE,
    cap: Optional[int] = None,
) -> ErrorRecord:
    """
    Reduced Curie-Weiss normaliser of one conditioned clique against its exact
    conditional normaliser. Only the clique's own parameters take part; k is the
    number of free clique nodes.
    """
    sub, kept = induced_model(m, clique)
    cliques = maximal_cliques(sub.graph)
    if len(cliques) != 1:
        raise InputError(f"{list(kept)} is not a clique")
    position = {old: new for new, old in enumerate(kept)}
    local = InterventionSpec.of({position[v]: x for v, x in iv.assignments if v in position})

    params = reduce_clique(sub, cliques[0], assign_potentials(cliques, sub.n), local, theta1_mode)
    zbar_log = curie_weiss_partition(params).log_value
    z_log = exact_conditional_partition(sub, local, cap=cap).log_value
    return make_record(params.k, 0.0, 0, zbar_log, z_log, params.theta0, params.theta1)


def hoeffding_radii(k: int, sigma: float, delta: float) -> Tuple[float, float]:
    """(t_bound, t_stated) for the average of k(k-1)/2 interactions with sd sigma/sqrt(k)."""
    pairs = k * (k - 1) / 2.0
    log_term = math.log(2.0 / delta)
    t_bound = (sigma / math.sqrt(k)) * math.sqrt(2.0 * log_term / pairs)
    t_stated = sigma * math.sqrt(log_term / (2.0 * k * k * (k - 1)))
    return t_bound, t_stated


def hoeffding_slack(delta: float, reps: int) -> float:
    """Three binomial standard errors of a violation rate delta over reps draws."""
    return 3.0 * math.sqrt(delta * (1.0 - delta) / reps)


def hoeffding_check(
    k: int,
    sigma: float,
    delta: float,
    reps: int,
    rng: Optional[np.random.Generator] = None,
    seed: int = DEFAULT_SEED,
    theta1: float = 0.0,
) -> HoeffdingReport:
    """
    Fraction of replications with |theta1_bar - theta1| above the Hoeffding radius.

    Passes when that fraction is at most delta + 3 sqrt(delta (1 - delta) / reps).
    The rate at the narrower stated radius is reported next to it.
    """
    if reps < MIN_HOEFFDING_REPS:
        raise InputError(f"hoeffding check needs at least {MIN_HOEFFDING_REPS} replications, got {reps}")
    if k < 2:
        raise InputError(f"clique size must be >= 2, got {k}")
    if sigma < 0:
        raise InputError(f"sigma must be >= 0, got {sigma}")
    if not 0.0 < delta < 1.0:
        raise InputError(f"delta must lie in (0, 1), got {delta}")

    rng = substream(seed, HOEFFDING_STREAM, k) if rng is None else rng
    t_bound, t_stated = hoeffding_radii(k, sigma, delta)
    pairs = k * (k - 1) // 2
    scale = sigma / math.sqrt(k)

    over_bound = over_stated = 0
    done = 0
    while done < reps:
        size = min(HOEFFDING_CHUNK, reps - done)
        weights = theta1 + scale * rng.standard_normal((size, pairs))
        deviation = np.abs((weights - theta1).mean(axis=1))
        over_bound += int((deviation > t_bound).sum())
        over_stated += int((deviation > t_stated).sum())
        done += size

    rate = over_bound / reps
    slack = hoeffding_slack(delta, reps)
    report = HoeffdingReport(
        k=k,
        sigma=sigma,
        delta=delta,
        n_reps=reps,
        t_bound=t_bound,
        t_stated=t_stated,
        empirical_violation_rate=rate,
        stated_violation_rate=over_stated / reps,
        slack=slack,
        passed=rate <= delta + slack,
    )
    log.info("hoeffding k={} sigma={}: rate={} (bound {}), stated rate={}", k, sigma, rate, t_bound, report.stated_violation_rate)
    return report


def summarize(records: Iterable[ErrorRecord]) -> List[CellSummary]:
    """Mean and sd of diff, mean and median of |ratio - 1|, per (k, sigma) cell."""
    cells = {}
    for r in records:
        cells.setdefault((r.k, r.sigma), []).append(r)

    summaries = []
    for (k, sigma), rows in sorted(cells.items()):
        diffs = np.array([r.diff for r in rows])
        ratio_errors = np.abs(np.array([r.ratio for r in rows]) - 1.0)
        summaries.append(
            CellSummary(
                k=k,
                sigma=sigma,
                n=len(rows),
                mean_diff=float(diffs.mean()),
                std_diff=float(diffs.std(ddof=1)) if len(rows) > 1 else 0.0,
                mean_abs_ratio_error=float(ratio_errors.mean()),
                median_abs_ratio_error=float(np.median(ratio_errors)),
            )
        )
    return summaries
