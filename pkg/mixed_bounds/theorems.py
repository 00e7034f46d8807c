# mixed_bounds/theorems.py
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from measures.concurrence import measure_value
from measures.spec import Family, MeasureSpec, me_counterpart
from mixed_bounds.convex_roof import DecompositionEnsemble, SearchConfig, convex_roof_upper_bound
from tensor_core.operations import permute_subsystems, pi_part, subsystem_permutations
from tensor_core.sampling import apply_local_unitaries, local_unitaries
from tensor_core.states import DensityMatrix, PureState
from utils.errors import IncompatibleDims, InvalidParam

# Tolerance of the sqrt(2) q-k-ME relation.
SQRT2_BOUND_TOL = 1e-10


@dataclass(frozen=True)
class KmeRelation:
    """k-GM value against its k-ME lower bound.

    ``certified`` is True for pure input, where gm >= me is exact. For mixed
    input gm and me are both convex-roof upper bounds and only
    gm >= ensemble_me (the k-ME average over the best k-GM ensemble) is certified.
    """

    gm: float
    me: float
    certified: bool
    ensemble_me: Optional[float] = None

    @property
    def slack(self) -> float:
        return self.gm - (self.me if self.certified else self.ensemble_me)

    def holds(self, tol: float = 1e-10) -> bool:
        return self.slack >= -tol


def kme_lower_bound(rho_or_psi: Union[PureState, DensityMatrix], spec: MeasureSpec,
                    cfg: Optional[SearchConfig] = None) -> KmeRelation:
    if spec.family != Family.KGM:
        raise InvalidParam(f"kme_lower_bound needs a kgm spec, got {spec.family.value}")
    me_spec = me_counterpart(spec)
    if isinstance(rho_or_psi, PureState):
        return KmeRelation(measure_value(rho_or_psi, spec), measure_value(rho_or_psi, me_spec), True)
    gm, ensemble = convex_roof_upper_bound(rho_or_psi, spec, cfg)
    me, _ = convex_roof_upper_bound(rho_or_psi, me_spec, cfg)
    return KmeRelation(gm, me, False, ensemble.average(me_spec))


@dataclass(frozen=True)
class PiSample:
    index: int
    direct: float
    upper_bound: float

    @property
    def slack(self) -> float:
        return self.direct - self.upper_bound


@dataclass(frozen=True)
class PiBoundReport:
    value: float
    samples: Tuple[PiSample, ...]
    tolerance: float

    @property
    def max_upper_bound(self) -> float:
        return max(s.upper_bound for s in self.samples)

    @property
    def worst_slack(self) -> float:
        return min(s.slack for s in self.samples)

    @property
    def passed(self) -> bool:
        return self.worst_slack >= -self.tolerance


def symmetrized_ensemble(psi: PureState) -> DecompositionEnsemble:
    """{1/n!, Pi_j|psi>} over all subsystem permutations; it decomposes pi_part(|psi><psi|)."""
    return DecompositionEnsemble.uniform([permute_subsystems(psi, perm) for perm in subsystem_permutations(psi.n)])


def pi_lower_bound_check(psi: PureState, spec: MeasureSpec, cfg: Optional[SearchConfig] = None,
                         unitary_samples: int = 1) -> PiBoundReport:
    """Check UB(G(rho_U^PI)) <= G(U|psi>) over sampled local unitaries U, identity first.

    The seed ensemble {1/n!, Pi_j U|psi>} has average G(U|psi>) exactly, so each
    search starts from a point that already meets the bound.
    """
    cfg = cfg or SearchConfig()
    if unitary_samples < 1:
        raise InvalidParam(f"unitary_samples must be >= 1, got {unitary_samples}")
    if len(set(psi.dims)) != 1:
        raise IncompatibleDims(f"PI part needs equal subsystem dims, got {list(psi.dims)}")
    spec.validate(psi.n)
    rng = np.random.default_rng([cfg.seed, 2])
    samples = []
    for index in range(unitary_samples):
        rotated = psi if index == 0 else apply_local_unitaries(psi, local_unitaries(psi.dims, rng))
        rho_pi = pi_part(rotated.to_density())
        upper, _ = convex_roof_upper_bound(rho_pi, spec, cfg, seeds=[symmetrized_ensemble(rotated)])
        direct = measure_value(rotated, spec)
        if upper > direct + cfg.tolerance:
            logging.warning(f"PI bound violated for {spec} at sample {index}: {upper:.12g} > {direct:.12g}")
        samples.append(PiSample(index, direct, upper))
    return PiBoundReport(measure_value(psi, spec), tuple(samples), cfg.tolerance)


def sqrt2_qkme_bound(psi: PureState, k: int, q: float) -> Tuple[float, float]:
    """(q-k-GM, sqrt(2) * q-k-ME); the first is never below the second."""
    g = measure_value(psi, MeasureSpec(Family.QKGM, k, q))
    bound = math.sqrt(2.0) * measure_value(psi, MeasureSpec(Family.QKME, k, q))
    if g < bound - SQRT2_BOUND_TOL:
        logging.warning(f"sqrt2 q-k-ME relation fails for k={k}, q={q}: {g:.12g} < {bound:.12g}")
    return g, bound
