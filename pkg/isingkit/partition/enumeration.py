# -*- coding: utf-8 -*-
"""
Exact enumeration engine.

The index range [0, 2^n) is cut into disjoint blocks of 2^block_bits
configurations. Each block reports its maximum log weight and the sum of
exp(log w - max); blocks are merged with a log-sum-exp. Blocks may run on a
thread pool (numpy releases the GIL); results are merged in block order, so
the value does not depend on the number of workers.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from scipy.special import logsumexp

from isingkit.common.errors import EnumerationCapError
from isingkit.common.logger import get_logger
from isingkit.config import DEFAULT_BLOCK_BITS, DEFAULT_ENUMERATION_CAP, DEFAULT_WORKERS
from isingkit.model.ising import IsingModel
from isingkit.partition.base import PartitionEstimate, PartitionMethod

log = get_logger("partition.enumeration")

# Configuration indices are uint64
_HARD_LIMIT = 62


@dataclass(frozen=True)
class _BlockStats:
    max_log_weight: float
    scaled_sum: float
    scaled_marginals: Optional[np.ndarray]


def _check_cap(n: int, cap: Optional[int]) -> None:
    cap = DEFAULT_ENUMERATION_CAP if cap is None else cap
    if n > cap or n > _HARD_LIMIT:
        raise EnumerationCapError(n, min(cap, _HARD_LIMIT))


def _block_ranges(n: int, block_bits: int) -> List[Tuple[int, int]]:
    total = 1 << n
    size = 1 << block_bits
    return [(start, min(start + size, total)) for start in range(0, total, size)]


def block_configurations(start: int, stop: int, n: int) -> np.ndarray:
    """0/1 matrix of configurations start..stop-1 (row r is index start + r)."""
    idx = np.arange(start, stop, dtype=np.uint64)
    shifts = np.arange(n, dtype=np.uint64)
    return ((idx[:, None] >> shifts) & np.uint64(1)).astype(np.float64)


def block_log_weights(m: IsingModel, bits: np.ndarray) -> np.ndarray:
    return bits @ m.theta + np.einsum("bi,bi->b", bits @ m.upper_weights, bits)


def _block_stats(m: IsingModel, start: int, stop: int, marginals: bool) -> _BlockStats:
    bits = block_configurations(start, stop, m.n)
    lw = block_log_weights(m, bits)
    peak = float(lw.max())
    scaled = np.exp(lw - peak)
    return _BlockStats(
        max_log_weight=peak,
        scaled_sum=float(scaled.sum()),
        scaled_marginals=scaled @ bits if marginals else None,
    )


def _run_blocks(m: IsingModel, marginals: bool, workers: Optional[int], block_bits: Optional[int]) -> List[_BlockStats]:
    workers = DEFAULT_WORKERS if workers is None else workers
    block_bits = DEFAULT_BLOCK_BITS if block_bits is None else block_bits
    ranges = _block_ranges(m.n, block_bits)
    log.debug("enumerating 2^{} configurations in {} blocks, workers={}", m.n, len(ranges), workers)

    if workers <= 1 or len(ranges) == 1:
        return [_block_stats(m, start, stop, marginals) for start, stop in ranges]

    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="enum") as pool:
        return list(pool.map(lambda r: _block_stats(m, r[0], r[1], marginals), ranges))


def exact_partition(
    m: IsingModel,
    cap: Optional[int] = None,
    workers: Optional[int] = None,
    block_bits: Optional[int] = None,
) -> PartitionEstimate:
    """
    log Z by brute force over {0,1}^n.

    Raises:
        EnumerationCapError: n exceeds the cap. Never falls back to an approximation.
    """
    _check_cap(m.n, cap)
    stats = _run_blocks(m, False, workers, block_bits)
    peaks = np.array([s.max_log_weight for s in stats])
    sums = np.array([s.scaled_sum for s in stats])
    log_z = float(logsumexp(peaks, b=sums))
    log.debug("exact partition over {} nodes: logZ={}", m.n, log_z)
    return PartitionEstimate(log_value=log_z, method=PartitionMethod.EXACT)


def exact_marginals(
    m: IsingModel,
    cap: Optional[int] = None,
    workers: Optional[int] = None,
    block_bits: Optional[int] = None,
) -> Tuple[float, np.ndarray]:
    """
    log Z and P(x_i = 1) for every node, from one enumeration pass.
    """
    _check_cap(m.n, cap)
    stats = _run_blocks(m, True, workers, block_bits)
    top = max(s.max_log_weight for s in stats)
    total = 0.0
    accumulated = np.zeros(m.n)
    for s in stats:
        scale = np.exp(s.max_log_weight - top)
        total += s.scaled_sum * scale
        accumulated += s.scaled_marginals * scale
    return top + float(np.log(total)), accumulated / total


def all_log_weights(m: IsingModel, cap: Optional[int] = None) -> np.ndarray:
    """Log weight of every configuration, in index order."""
    _check_cap(m.n, cap)
    return block_log_weights(m, block_configurations(0, 1 << m.n, m.n))
