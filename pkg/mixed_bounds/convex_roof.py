# mixed_bounds/convex_roof.py
"""Upper bounds on convex-roof measures by searching pure-state decompositions.

Every decomposition of rho with at most m members can be written as
Psi = Phi W, where Phi holds the eigenvectors scaled by sqrt(eigenvalue)
and W is an r x m matrix with orthonormal rows. Column j of Psi is
sqrt(p_j)|psi_j>. Any such W gives an admissible ensemble, so the ensemble
average of the pure-state measure is an upper bound on the infimum.
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import minimize_scalar

from measures.concurrence import evaluate
from measures.spec import MeasureSpec
from tensor_core.sampling import haar_isometry
from tensor_core.states import DensityMatrix, PureState
from utils.config import (DEFAULT_REFINE_ITERS, DEFAULT_RESTARTS, DEFAULT_SEARCH_TOLERANCE, ENSEMBLE_TOL, RANK_TOL,
                          RECONSTRUCTION_TOL, REFINE_STOP_RTOL)
from utils.errors import InvalidParam, InvalidState

# Members lighter than this are dropped from a generated ensemble.
_WEIGHT_FLOOR = 1e-14


class SearchConfig(BaseModel):
    """
    Parameters:
      - seed: Root seed; restart i draws from the stream (seed, 0, i).
      - ensemble_sizes: Ensemble sizes cycled over restarts (default rank..rank+2).
      - restarts: Number of random isometries tried.
      - refine_iters: Two-column rotations (each a golden-section line search) per start.
      - tolerance: Slack allowed when checking bound relations.
      - n_jobs: Worker threads for the restarts.
    """

    model_config = ConfigDict(frozen=True)

    seed: int = Field(0, ge=0)
    ensemble_sizes: Optional[List[int]] = None
    restarts: int = Field(DEFAULT_RESTARTS, ge=1)
    refine_iters: int = Field(DEFAULT_REFINE_ITERS, ge=0)
    tolerance: float = Field(DEFAULT_SEARCH_TOLERANCE, gt=0)
    n_jobs: int = Field(1, ge=1)

    def sizes_for(self, rank: int) -> List[int]:
        sizes = self.ensemble_sizes or [rank, rank + 1, rank + 2]
        if any(size < rank for size in sizes):
            raise InvalidParam(f"ensemble sizes {sizes} must all be >= rank {rank}")
        return list(sizes)


@dataclass(frozen=True)
class DecompositionEnsemble:
    entries: Tuple[Tuple[float, PureState], ...]

    def __post_init__(self):
        if not self.entries:
            raise InvalidState("an ensemble needs at least one member")
        probabilities = [p for p, _ in self.entries]
        if min(probabilities) <= 0:
            raise InvalidState("ensemble probabilities must be positive")
        if abs(math.fsum(probabilities) - 1.0) > ENSEMBLE_TOL:
            raise InvalidState(f"ensemble probabilities sum to {math.fsum(probabilities)!r}")

    @classmethod
    def uniform(cls, states: Sequence[PureState]) -> "DecompositionEnsemble":
        return cls(tuple((1.0 / len(states), state) for state in states))

    @property
    def probabilities(self) -> np.ndarray:
        return np.array([p for p, _ in self.entries])

    @property
    def states(self) -> List[PureState]:
        return [state for _, state in self.entries]

    def __len__(self) -> int:
        return len(self.entries)

    def density(self) -> np.ndarray:
        amps = np.stack([np.sqrt(p) * state.amps for p, state in self.entries], axis=1)
        return amps @ amps.conj().T

    def reconstruction_error(self, rho: DensityMatrix) -> float:
        return float(np.max(np.abs(self.density() - rho.mat)))

    def average(self, spec: MeasureSpec) -> float:
        return math.fsum(p * evaluate(state, spec).value for p, state in self.entries)


class _EnsembleObjective:
    def __init__(self, phi: np.ndarray, dims: Tuple[int, ...], spec: MeasureSpec):
        self.phi = phi
        self.dims = dims
        self.spec = spec

    def ensemble(self, w: np.ndarray) -> DecompositionEnsemble:
        columns = self.phi @ w
        weights = np.sum(np.abs(columns) ** 2, axis=0)
        keep = np.flatnonzero(weights > _WEIGHT_FLOOR)
        total = weights[keep].sum()
        return DecompositionEnsemble(tuple(
            (float(weights[j] / total), PureState(self.dims, columns[:, j] / np.sqrt(weights[j]))) for j in keep
        ))

    def __call__(self, w: np.ndarray) -> float:
        return self.ensemble(w).average(self.spec)


def _rotate(w: np.ndarray, j: int, l: int, theta: float, phase: complex) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    out = w.copy()
    out[:, j] = c * w[:, j] - phase * s * w[:, l]
    out[:, l] = np.conj(phase) * s * w[:, j] + c * w[:, l]
    return out


def _refine(objective: _EnsembleObjective, w: np.ndarray, rng: np.random.Generator, iters: int) -> Tuple[float, np.ndarray]:
    """Pairwise two-column rotations of W, each optimized by a golden-section line search."""
    current = objective(w)
    m = w.shape[1]
    if m < 2 or iters == 0:
        return current, w
    pairs = list(itertools.combinations(range(m), 2))
    sweep_start = current
    for it in range(iters):
        j, l = pairs[it % len(pairs)]
        phase = np.exp(2j * np.pi * rng.random())
        try:
            res = minimize_scalar(lambda theta: objective(_rotate(w, j, l, theta, phase)),
                                  bracket=(0.0, 0.1), method="golden", options={"xtol": 1e-6, "maxiter": 60})
        except (RuntimeError, ValueError) as e:
            logging.debug(f"line search on columns ({j}, {l}) skipped: {e}")
            continue
        if res.fun < current:
            w = _rotate(w, j, l, float(res.x), phase)
            current = float(res.fun)
        if (it + 1) % len(pairs) == 0:
            if sweep_start - current <= REFINE_STOP_RTOL * max(abs(sweep_start), 1e-300):
                logging.debug(f"refinement converged after {it + 1} rotations at {current:.12g}")
                break
            sweep_start = current
    return current, w


def _orthonormal_rows(w: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(w, full_matrices=False)
    return u @ vh


def _run_start(objective, w, seed_key, iters):
    rng = np.random.default_rng(seed_key)
    return _refine(objective, w, rng, iters)


def _run_restart(objective, rank, size, seed_key, iters):
    rng = np.random.default_rng(seed_key)
    return _refine(objective, haar_isometry(rank, size, rng), rng, iters)


def convex_roof_upper_bound(rho: Union[DensityMatrix, PureState], spec: MeasureSpec,
                            cfg: Optional[SearchConfig] = None,
                            seeds: Optional[Sequence[DecompositionEnsemble]] = None) -> Tuple[float, DecompositionEnsemble]:
    """Smallest ensemble average found for ``spec`` over decompositions of ``rho``.

    Seed ensembles are evaluated first and also refined; the eigen-decomposition
    is always a start; then ``cfg.restarts`` random isometries are refined.
    The result is an upper bound on the convex-roof value and never exceeds the
    best seed's average.
    """
    cfg = cfg or SearchConfig()
    if isinstance(rho, PureState):
        rho = rho.to_density()
    spec.validate(rho.n)

    eigenvalues, eigenvectors = rho.eigh()
    keep = eigenvalues > RANK_TOL
    rank = int(np.count_nonzero(keep))
    if rank == 0:
        raise InvalidState("density matrix has rank 0")
    phi = eigenvectors[:, keep] * np.sqrt(eigenvalues[keep])
    objective = _EnsembleObjective(phi, rho.dims, spec)

    candidates: List[Tuple[float, DecompositionEnsemble]] = []
    starts = [np.eye(rank, dtype=np.complex128)]
    pinv = (eigenvectors[:, keep] / np.sqrt(eigenvalues[keep])).conj().T
    for seed in seeds or ():
        error = seed.reconstruction_error(rho)
        if error > RECONSTRUCTION_TOL:
            raise InvalidState(f"seed ensemble does not reconstruct rho (max deviation {error:.3g})")
        candidates.append((seed.average(spec), seed))
        columns = np.stack([np.sqrt(p) * state.amps for p, state in seed.entries], axis=1)
        starts.append(_orthonormal_rows(pinv @ columns))

    if rank == 1:
        ensemble = objective.ensemble(starts[0])
        candidates.append((ensemble.average(spec), ensemble))
    else:
        sizes = cfg.sizes_for(rank)
        jobs = [delayed(_run_start)(objective, w, [cfg.seed, 1, j], cfg.refine_iters) for j, w in enumerate(starts)]
        jobs += [delayed(_run_restart)(objective, rank, sizes[i % len(sizes)], [cfg.seed, 0, i], cfg.refine_iters)
                 for i in range(cfg.restarts)]
        results = Parallel(n_jobs=cfg.n_jobs, prefer="threads")(jobs)
        for value, w in results:
            candidates.append((value, objective.ensemble(w)))

    best_value, best = min(candidates, key=lambda item: item[0])
    logging.info(f"convex-roof search for {spec}: rank {rank}, {len(candidates)} candidates, best {best_value:.12g}")
    return best_value, best
