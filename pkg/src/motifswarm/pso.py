"""Particle swarm optimization over real vectors (minimization).

One iteration is: evaluate fitness, refresh personal/global bests, then move
every particle with the inertia-weight update

    v <- w*v + c1*r1*(pbest - x) + c2*r2*(gbest - x)
    x <- x + v

where r1, r2 are fresh uniform[0,1] draws per dimension per step.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError

MAX_PARTICLES = 100


@dataclass
class PsoConfig:
    n_particles: int
    max_iter: int
    w: float = 0.72
    c1: float = 1.49
    c2: float = 1.49
    v_max: float | None = None
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.n_particles <= MAX_PARTICLES:
            raise ContractError(
                f"n_particles={self.n_particles} outside [1, {MAX_PARTICLES}]"
            )
        if self.max_iter < 1:
            raise ContractError("max_iter must be >= 1")
        for name in ("w", "c1", "c2"):
            if not np.isfinite(getattr(self, name)):
                raise ContractError(f"{name} must be finite")
        if self.v_max is not None and not np.all(np.asarray(self.v_max) > 0):
            raise ContractError("v_max must be positive when set")


@dataclass
class Particle:
    position: np.ndarray
    velocity: np.ndarray
    pbest_position: np.ndarray
    pbest_fitness: float
    current_fitness: float


@dataclass
class Swarm:
    particles: list[Particle]
    gbest_position: np.ndarray
    gbest_fitness: float
    iteration: int
    history: list[float] = field(default_factory=list)


def pso_optimize(
    fitness,
    init_positions,
    cfg: PsoConfig,
    init_velocities=None,
    rng=None,
    callback=None,
):
    """Minimize fitness from the given start positions; returns (Swarm, best).

    Velocities start at zero unless init_velocities is given. rng overrides
    the default generator seeded from cfg.seed. callback, when set, is called
    as callback(iteration, gbest_fitness) once per iteration.
    """
    rows = [np.asarray(p, dtype=float).ravel() for p in init_positions]
    if not rows or any(r.shape != rows[0].shape for r in rows):
        raise ContractError("init_positions must be a non-empty list of equal-length vectors")
    positions = np.stack(rows)
    if positions.shape[0] != cfg.n_particles:
        raise ContractError(
            f"{positions.shape[0]} init positions for n_particles={cfg.n_particles}"
        )
    n, dim = positions.shape
    if init_velocities is None:
        velocities = np.zeros((n, dim))
    else:
        vrows = [np.asarray(v, dtype=float).ravel() for v in init_velocities]
        if len(vrows) != n or any(v.shape != (dim,) for v in vrows):
            raise ContractError("init_velocities shape must match init_positions")
        velocities = np.stack(vrows)
    if rng is None:
        rng = np.random.default_rng(cfg.seed)

    pbest_pos = positions.copy()
    pbest_fit = np.full(n, np.inf)
    gbest_pos = positions[0].copy()
    gbest_fit = np.inf
    history: list[float] = []
    current = np.full(n, np.inf)

    for iteration in range(1, cfg.max_iter + 1):
        for i in range(n):
            value = float(fitness(positions[i]))
            if not np.isfinite(value):
                raise ContractError(
                    f"non-finite fitness {value} from particle {i} at iteration {iteration}"
                )
            current[i] = value
            if value < pbest_fit[i]:
                pbest_fit[i] = value
                pbest_pos[i] = positions[i].copy()
        best = int(pbest_fit.argmin())
        if pbest_fit[best] < gbest_fit:
            gbest_fit = float(pbest_fit[best])
            gbest_pos = pbest_pos[best].copy()
        history.append(gbest_fit)
        if callback is not None:
            callback(iteration, gbest_fit)

        r1 = rng.random((n, dim))
        r2 = rng.random((n, dim))
        velocities = (
            cfg.w * velocities
            + cfg.c1 * r1 * (pbest_pos - positions)
            + cfg.c2 * r2 * (gbest_pos - positions)
        )
        if cfg.v_max is not None:
            velocities = np.clip(velocities, -cfg.v_max, cfg.v_max)
        positions = positions + velocities

    particles = [
        Particle(
            position=positions[i],
            velocity=velocities[i],
            pbest_position=pbest_pos[i],
            pbest_fitness=float(pbest_fit[i]),
            current_fitness=float(current[i]),
        )
        for i in range(n)
    ]
    swarm = Swarm(
        particles=particles,
        gbest_position=gbest_pos,
        gbest_fitness=gbest_fit,
        iteration=cfg.max_iter,
        history=history,
    )
    return swarm, gbest_pos
