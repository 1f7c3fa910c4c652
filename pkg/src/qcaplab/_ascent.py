"""Multi-restart adaptive-step gradient ascent over flat parameter vectors.

Shared by every optimizer in the package.  The caller supplies the
objective, its gradient, and a per-restart initializer; restart r draws
from the r-th generator spawned off the master seed, so results are
reproducible and the first k restarts of a 2k-restart run match a
k-restart run exactly.
"""

import numpy as np

from .numerics import spawn_rngs

MIN_STEP = 1e-9


def ascend(objective, gradient, init, restarts, max_iters, step_init,
           conv_tol, seed):
    """Maximize objective(params) and return (value, params, converged).

    init(r, rng) produces the r-th starting vector.  Each iteration moves
    along the normalized gradient with an adaptive step: accepted moves
    grow the step by 1.5, rejected ones halve it, and a restart stops when
    the gradient norm drops below conv_tol or the step collapses below
    MIN_STEP.  Ties between restarts keep the lowest restart index.
    """
    rngs = spawn_rngs(seed, restarts)
    best_value = -np.inf
    best_params = None
    best_converged = False
    for r in range(restarts):
        params = np.asarray(init(r, rngs[r]), dtype=np.float64).copy()
        value = float(objective(params))
        step = float(step_init)
        converged = False
        for _ in range(max_iters):
            grad = gradient(params)
            norm = float(np.linalg.norm(grad))
            if norm < conv_tol:
                converged = True
                break
            moved = False
            while step >= MIN_STEP:
                candidate = params + (step / norm) * grad
                cand_value = float(objective(candidate))
                if cand_value > value:
                    params, value = candidate, cand_value
                    step *= 1.5
                    moved = True
                    break
                step *= 0.5
            if not moved:
                converged = True
                break
        if value > best_value:
            best_value = value
            best_params = params
            best_converged = converged
    return best_value, best_params, best_converged
