"""Binary-PSO search for low-residue, high-volume submatrices.

A particle is a 0/1 membership vector over the matrix rows followed by the
matrix columns. Velocities update exactly as in the real-valued engine; a bit
then becomes 1 when a fresh uniform draw falls below sigmoid(velocity).
Fitness is the mean squared residue minus a volume reward, so minimization
prefers coherent AND large submatrices. The swarm is seeded from clusterings
of the rows and of the columns.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from . import metrics
from .pso import PsoConfig
from .psokmeans import pso_kmeans

VELOCITY_CLAMP = 4.0
DEFAULT_LAMBDA_SCALE = 0.1
MAX_PARTICLES = 100


@dataclass(frozen=True)
class Bicluster:
    rows: tuple
    cols: tuple
    msr: float
    volume: int


def make_bicluster(matrix, rows, cols) -> Bicluster:
    rows = tuple(sorted(int(r) for r in rows))
    cols = tuple(sorted(int(c) for c in cols))
    if not rows or not cols:
        raise ContractError("bicluster needs non-empty row and column sets")
    return Bicluster(
        rows=rows,
        cols=cols,
        msr=metrics.msr(matrix, rows, cols),
        volume=len(rows) * len(cols),
    )


def default_lambda(matrix) -> float:
    """Volume-reward weight scaled to the whole matrix's residue."""
    m = np.asarray(matrix, dtype=float)
    full = metrics.msr(m, range(m.shape[0]), range(m.shape[1]))
    return DEFAULT_LAMBDA_SCALE * full


def seed_biclusters(matrix, k_rows: int, k_cols: int, cfg: PsoConfig | None = None):
    """Cluster the rows and the columns separately, then cross the two
    partitions into k_rows * k_cols seed biclusters (empty cells dropped)."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] < 2 or m.shape[1] < 2:
        raise ContractError("matrix must have at least 2 rows and 2 columns")
    if not (1 <= k_rows <= m.shape[0] and 1 <= k_cols <= m.shape[1]):
        raise ContractError("k_rows/k_cols out of range for matrix")
    if cfg is None:
        cfg = PsoConfig(n_particles=20, max_iter=100)

    row_cs = pso_kmeans(m, k_rows, cfg)
    # Column run gets the next seed so the two searches are decorrelated.
    col_cfg = PsoConfig(
        n_particles=cfg.n_particles, max_iter=cfg.max_iter,
        w=cfg.w, c1=cfg.c1, c2=cfg.c2, seed=cfg.seed + 1,
    )
    col_cs = pso_kmeans(m.T, k_cols, col_cfg)

    seeds = []
    for i in range(k_rows):
        rows = row_cs.members(i)
        if rows.size == 0:
            continue
        for j in range(k_cols):
            cols = col_cs.members(j)
            if cols.size == 0:
                continue
            seeds.append(make_bicluster(m, rows, cols))
    return seeds


def _sigmoid(v):
    return 1.0 / (1.0 + np.exp(-v))


def _decode(bits_row, n_rows):
    rows = np.flatnonzero(bits_row[:n_rows])
    cols = np.flatnonzero(bits_row[n_rows:])
    return rows, cols


def _repair(bits, velocities, n_rows):
    """Keep both halves of every membership vector non-empty by switching on
    the highest-velocity bit of any empty half."""
    for half in (slice(0, n_rows), slice(n_rows, bits.shape[1])):
        dead = ~bits[:, half].any(axis=1)
        for p in np.flatnonzero(dead):
            bits[p, half][int(velocities[p, half].argmax())] = 1


def pso_bicluster(matrix, cfg: PsoConfig, seeds, lam: float | None = None,
                  callback=None, rng=None):
    """Refine seed biclusters by binary PSO; minimizes msr - lam*volume_share.

    Returns the best bicluster found followed by every distinct personal
    best, ordered by fitness ascending. callback(iteration, gbest_fitness)
    fires once per iteration; rng overrides the cfg.seed generator.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ContractError("matrix must be 2-dimensional and non-empty")
    n_rows, n_cols = m.shape
    if not seeds:
        raise ContractError("at least one seed bicluster required")
    for s in seeds:
        if not s.rows or not s.cols:
            raise ContractError("seed with empty row or column set")
        if max(s.rows) >= n_rows or max(s.cols) >= n_cols:
            raise ContractError("seed indices outside matrix")
    # One particle per seed; extra capacity recycles the seed list.
    n_wanted = min(max(cfg.n_particles, len(seeds)), MAX_PARTICLES)
    seeds = [seeds[i % len(seeds)] for i in range(n_wanted)]
    if lam is None:
        lam = default_lambda(m)
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    clamp = cfg.v_max if cfg.v_max is not None else VELOCITY_CLAMP

    n = len(seeds)
    n_bits = n_rows + n_cols
    bits = np.zeros((n, n_bits), dtype=bool)
    for p, s in enumerate(seeds):
        bits[p, list(s.rows)] = True
        bits[p, [n_rows + c for c in s.cols]] = True
    # Random speeds, signed to lean toward keeping the seed's bits; a fully
    # signless start would scramble the seeds on the first move.
    velocities = rng.uniform(1.0, 3.0, size=(n, n_bits)) * np.where(bits, 1.0, -1.0)

    total = n_rows * n_cols

    def evaluate(bits_row, p, iteration):
        rows, cols = _decode(bits_row, n_rows)
        value = metrics.msr(m, rows, cols) - lam * (rows.size * cols.size) / total
        if not np.isfinite(value):
            raise ContractError(
                f"non-finite fitness {value} from particle {p} at iteration {iteration}"
            )
        return value

    pbest_bits = bits.copy()
    pbest_fit = np.full(n, np.inf)
    gbest_bits = bits[0].copy()
    gbest_fit = np.inf
    history = []

    for iteration in range(1, cfg.max_iter + 1):
        for p in range(n):
            value = evaluate(bits[p], p, iteration)
            if value < pbest_fit[p]:
                pbest_fit[p] = value
                pbest_bits[p] = bits[p].copy()
        best = int(pbest_fit.argmin())
        if pbest_fit[best] < gbest_fit:
            gbest_fit = float(pbest_fit[best])
            gbest_bits = pbest_bits[best].copy()
        history.append(gbest_fit)
        if callback is not None:
            callback(iteration, gbest_fit)

        x = bits.astype(float)
        r1 = rng.random((n, n_bits))
        r2 = rng.random((n, n_bits))
        velocities = (
            cfg.w * velocities
            + cfg.c1 * r1 * (pbest_bits.astype(float) - x)
            + cfg.c2 * r2 * (gbest_bits.astype(float) - x)
        )
        velocities = np.clip(velocities, -clamp, clamp)
        bits = rng.random((n, n_bits)) < _sigmoid(velocities)
        _repair(bits, velocities, n_rows)

    def to_bicluster(bits_row):
        rows, cols = _decode(bits_row, n_rows)
        return make_bicluster(m, rows, cols)

    out = [to_bicluster(gbest_bits)]
    seen = {(out[0].rows, out[0].cols)}
    candidates = []
    for p in range(n):
        b = to_bicluster(pbest_bits[p])
        key = (b.rows, b.cols)
        if key not in seen:
            seen.add(key)
            candidates.append((float(pbest_fit[p]), b))
    candidates.sort(key=lambda t: (t[0], t[1].rows, t[1].cols))
    out.extend(b for _, b in candidates)
    return out
