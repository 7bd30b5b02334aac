"""Arithmetic-cost accounting and the complexity/performance trade-off sweep.

Separable R-dimensional transforms inherit their cost from the per-axis fast
algorithms: each axis-i pass runs once per combination of the other indices,
so its 1-D cost is weighted by the product of the remaining axis lengths.

The trade-off figure of merit blends normalised arithmetic cost with
normalised coding performance:

    f = gamma * cost / cost_max + (1 - gamma) * (cg_max - cg) / (cg_max - cg_min)

with cost = mult + beta * add + beta_prime * shift and beta_prime fixed to 0
(bit-shifts are close to free in both hardware and software).  Lower f is
better; cost_max and the coding-gain extremes are taken over the compared
population.  Ties are broken by registry order, which is deterministic and
documented rather than meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .kernels import KERNEL_IDS, CostPoint, get_kernel
from .metrics import Ar1Model, coding_gain, transform_efficiency

#: Cost of the direct (vector-radix decimation-in-frequency) exact 3-D DCT,
#: the reference point for every percent-reduction figure.
VR_DIF_COST_3D = CostPoint(1344, 5568, 0)


@dataclass(frozen=True)
class CostModel:
    """Weights of the trade-off cost function."""

    gamma: float
    beta: float
    beta_prime: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be in [0, 1], got {self.gamma}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must be in [0, 1], got {self.beta}")
        if self.beta_prime != 0.0:
            raise ValueError("beta_prime is fixed to 0")


@dataclass(frozen=True)
class MethodEntry:
    """One method in the comparison population."""

    kernel_id: str
    cost_3d: CostPoint
    cg_db: float
    eta_pct: float


@dataclass(frozen=True)
class ReductionReport:
    """Percent reductions relative to a reference method (positive = cheaper/worse)."""

    cg_pct: float
    eta_pct: float
    mult_pct: float
    add_pct: float
    total_pct: float


def complexity_rd(costs_1d: Sequence[CostPoint], dims: Sequence[int]) -> CostPoint:
    """Total cost of an R-dimensional separable transform.

    The axis-i 1-D cost is weighted by the product of the other axis lengths
    (weight 1 when R = 1).
    """
    if len(costs_1d) != len(dims) or not costs_1d:
        raise ValueError("need one 1-D cost per axis")
    mult = add = shift = 0
    for i, cost in enumerate(costs_1d):
        weight = 1
        if len(dims) > 1:
            for j, n in enumerate(dims):
                if j != i:
                    weight *= n
        mult += weight * cost.mult
        add += weight * cost.add
        shift += weight * cost.shift
    return CostPoint(mult, add, shift)


def complexity_uniform(cost_1d: CostPoint, n: int, r: int) -> CostPoint:
    """Cost of an order-r transform with the same kernel on every axis
    of common length n: r * n^(r-1) times the 1-D cost."""
    if r < 1:
        raise ValueError(f"tensor order must be >= 1, got {r}")
    if r == 1:
        return complexity_rd([cost_1d], [n])
    weight = r * n ** (r - 1)
    return CostPoint(weight * cost_1d.mult, weight * cost_1d.add,
                     weight * cost_1d.shift)


def arithmetic_cost(cost: CostPoint, model: CostModel) -> float:
    """Scalar cost mult + beta * add + beta_prime * shift."""
    return cost.mult + model.beta * cost.add + model.beta_prime * cost.shift


def method_table(rho: float = 0.95) -> tuple[MethodEntry, ...]:
    """All nine methods in registry order with 3-D costs and quality metrics.

    The exact DCT enters with the direct 3-D algorithm cost
    (:data:`VR_DIF_COST_3D`); every approximation's 3-D cost follows from its
    declared 1-D cost.
    """
    entries = []
    for kernel_id in KERNEL_IDS:
        kernel = get_kernel(kernel_id, 8)
        model = Ar1Model(rho=rho, size=8)
        if kernel_id == "DCT":
            cost_3d = VR_DIF_COST_3D
        else:
            cost_3d = complexity_uniform(kernel.cost_1d, 8, 3)
        entries.append(
            MethodEntry(
                kernel_id=kernel_id,
                cost_3d=cost_3d,
                cg_db=coding_gain(kernel, model),
                eta_pct=transform_efficiency(kernel, model),
            )
        )
    return tuple(entries)


def percent_reduction(method: MethodEntry, reference: MethodEntry) -> ReductionReport:
    """Percent reduction of every figure relative to ``reference``."""
    ref_total = reference.cost_3d.total
    if reference.cost_3d.mult == 0 or reference.cost_3d.add == 0 or ref_total == 0:
        raise ValueError("reference cost totals must be non-zero")
    if reference.cg_db == 0.0 or reference.eta_pct == 0.0:
        raise ValueError("reference quality figures must be non-zero")
    return ReductionReport(
        cg_pct=100.0 * (reference.cg_db - method.cg_db) / reference.cg_db,
        eta_pct=100.0 * (reference.eta_pct - method.eta_pct) / reference.eta_pct,
        mult_pct=100.0 * (1.0 - method.cost_3d.mult / reference.cost_3d.mult),
        add_pct=100.0 * (1.0 - method.cost_3d.add / reference.cost_3d.add),
        total_pct=100.0 * (1.0 - method.cost_3d.total / ref_total),
    )


def figure_of_merit(entry: MethodEntry, model: CostModel,
                    population: Sequence[MethodEntry]) -> float:
    """Convex combination of normalised cost and normalised performance.

    Cost is normalised by the population maximum; performance maps the best
    coding gain to 0 and the worst to 1 (0 for everyone when all gains tie).
    """
    if not population:
        raise ValueError("population must not be empty")
    cost_max = max(arithmetic_cost(e.cost_3d, model) for e in population)
    cg_values = [e.cg_db for e in population]
    cg_max, cg_min = max(cg_values), min(cg_values)
    cost_term = 0.0
    if cost_max > 0.0:
        cost_term = arithmetic_cost(entry.cost_3d, model) / cost_max
    perf_term = 0.0
    if cg_max > cg_min:
        perf_term = (cg_max - entry.cg_db) / (cg_max - cg_min)
    return model.gamma * cost_term + (1.0 - model.gamma) * perf_term


def _registry_rank(kernel_id: str) -> int:
    return KERNEL_IDS.index(kernel_id) if kernel_id in KERNEL_IDS else len(KERNEL_IDS)


def tradeoff_winner(model: CostModel,
                    population: Sequence[MethodEntry]) -> str:
    """Method with minimal figure of merit; ties resolved by registry order."""
    ranked = sorted(population, key=lambda e: _registry_rank(e.kernel_id))
    best_id = None
    best_f = None
    for entry in ranked:
        f = figure_of_merit(entry, model, population)
        if best_f is None or f < best_f:
            best_id, best_f = entry.kernel_id, f
    return best_id


def tradeoff_sweep(grid_steps: int,
                   population: Sequence[MethodEntry]) -> list[tuple[float, float, str]]:
    """Winner on a uniform (gamma, beta) grid over [0, 1]^2, gamma-major."""
    if grid_steps < 2:
        raise ValueError(f"grid needs at least 2 steps per axis, got {grid_steps}")
    values = np.linspace(0.0, 1.0, grid_steps)
    rows = []
    for gamma in values:
        for beta in values:
            winner = tradeoff_winner(CostModel(gamma=float(gamma), beta=float(beta)),
                                     population)
            rows.append((float(gamma), float(beta), winner))
    return rows


def sweep_to_csv(rows: Iterable[tuple[float, float, str]]) -> str:
    lines = ["gamma,beta,winner"]
    lines.extend(f"{g:.6f},{b:.6f},{w}" for g, b, w in rows)
    return "\n".join(lines) + "\n"
