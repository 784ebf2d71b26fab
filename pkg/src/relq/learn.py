"""Learners recovering the greatest solution W of A ∘ W = B from samples.

Online weight-decrease rules for max-min and general sup-t systems, their
closed-form counterparts, and a smooth-derivative gradient variant.
Inputs are p×n (rows a_i), targets p×m (rows b_i), W is n×m.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grades import TOL, MIN, TNorm


@dataclass(frozen=True)
class TrainingSet:
    inputs: np.ndarray
    targets: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "inputs", np.atleast_2d(np.asarray(self.inputs, float)))
        object.__setattr__(self, "targets", np.atleast_2d(np.asarray(self.targets, float)))
        if self.inputs.shape[0] != self.targets.shape[0]:
            raise ValueError("inputs and targets must have the same number of rows")

    @property
    def p(self):
        return self.inputs.shape[0]

    @property
    def n(self):
        return self.inputs.shape[1]

    @property
    def m(self):
        return self.targets.shape[1]


@dataclass
class TrainerConfig:
    eta: float = 0.1
    epsilon: float = 1e-6
    max_epochs: int = 10_000
    tnorm: TNorm = field(default_factory=lambda: MIN)

    def __post_init__(self):
        if not 0.0 < self.eta <= 1.0:
            raise ValueError("eta must lie in (0, 1]")


@dataclass
class TrainResult:
    W: np.ndarray
    converged: bool
    epochs: int
    error_trace: list

    @property
    def error(self):
        return self.error_trace[-1] if self.error_trace else None


def _outputs(t: TNorm, a, W):
    """Row image a ∘ W under sup-t."""
    n, m = W.shape
    return np.array([max(t(a[k], W[k, j]) for k in range(n)) for j in range(m)])


def sup_t_image(t: TNorm, A, W):
    A = np.atleast_2d(np.asarray(A, float))
    return np.array([_outputs(t, a, W) for a in A])


def training_error(t: TNorm, ts: TrainingSet, W):
    return float(np.max(np.abs(sup_t_image(t, ts.inputs, W) - ts.targets)))


# ---------------------------------------------------------------------------
# Online weight-decrease rules
# ---------------------------------------------------------------------------

def _delta_rule(ts: TrainingSet, cfg: TrainerConfig, t: TNorm):
    W = np.ones((ts.n, ts.m))
    trace = []
    converged = False
    epoch = 0
    for epoch in range(1, cfg.max_epochs + 1):
        epoch_changed = False
        for i in range(ts.p):
            a = ts.inputs[i]
            b = ts.targets[i]
            for _ in range(cfg.max_epochs):
                out = _outputs(t, a, W)
                delta = out - b
                fired = False
                for j in range(ts.m):
                    if delta[j] <= cfg.epsilon:
                        continue
                    for k in range(ts.n):
                        if t(W[k, j], a[k]) > b[j] + TOL:
                            W[k, j] = max(0.0, W[k, j] - cfg.eta * delta[j])
                            fired = True
                if not fired:
                    break
                epoch_changed = True
        trace.append(training_error(t, ts, W))
        if trace[-1] <= cfg.epsilon or not epoch_changed:
            converged = trace[-1] <= cfg.epsilon or _solvable_limit(t, ts, W, cfg.epsilon)
            break
    return TrainResult(W, converged, epoch, trace)


def _solvable_limit(t, ts, W, eps):
    """Stable with no updates firing: outputs can only undershoot targets."""
    img = sup_t_image(t, ts.inputs, W)
    return bool(np.all(img <= ts.targets + eps))


def delta_rule_basic(ts: TrainingSet, cfg: TrainerConfig | None = None) -> TrainResult:
    """Max-min online rule: decrease every weight whose min with the input
    exceeds the target, by eta times the output error."""
    cfg = cfg or TrainerConfig()
    if cfg.tnorm.name != "min":
        raise ValueError("the basic rule is defined for the min t-norm")
    return _delta_rule(ts, cfg, MIN)


def delta_rule_J(ts: TrainingSet, cfg: TrainerConfig) -> TrainResult:
    """Same scheme with an arbitrary continuous t-norm."""
    if not cfg.tnorm.continuous:
        raise ValueError("rule J needs a continuous t-norm")
    return _delta_rule(ts, cfg, cfg.tnorm)


# ---------------------------------------------------------------------------
# Closed-form rules
# ---------------------------------------------------------------------------

def delta_rule_B(ts: TrainingSet) -> TrainResult:
    """One sweep per sample: w_kj = min of the targets b_ij over samples
    with a_ik > b_ij (empty set gives 1).  Order-free."""
    W = np.ones((ts.n, ts.m))
    for i in range(ts.p):
        a = ts.inputs[i]
        b = ts.targets[i]
        for k in range(ts.n):
            for j in range(ts.m):
                if a[k] > b[j] + TOL and b[j] < W[k, j]:
                    W[k, j] = b[j]
    err = training_error(MIN, ts, W)
    return TrainResult(W, err <= TOL, ts.p, [err])


@dataclass
class RuleKResult(TrainResult):
    fallback_cells: list = field(default_factory=list)


def delta_rule_K(ts: TrainingSet, t: TNorm) -> RuleKResult:
    """One pass per sample: a violating weight snaps to the largest w with
    t(w, a_ik) = b_ij.  Converges to the greatest solution when solvable."""
    if not t.continuous:
        raise ValueError("rule K needs a continuous t-norm")
    W = np.ones((ts.n, ts.m))
    fallback = []
    for i in range(ts.p):
        a = ts.inputs[i]
        b = ts.targets[i]
        for k in range(ts.n):
            for j in range(ts.m):
                cand = t.residuum(a[k], b[j])
                if t(W[k, j], a[k]) > b[j] + TOL and \
                        abs(t(cand, a[k]) - b[j]) > 1e-7:
                    fallback.append((i, k, j))
                # clamp on the residuum itself rather than on the violation
                # test so the final weight is bit-for-bit the minimum of the
                # per-sample residua (the greatest solution)
                if cand < W[k, j]:
                    W[k, j] = cand
    err = training_error(t, ts, W)
    return RuleKResult(W, err <= 1e-7, ts.p, [err], fallback)


# ---------------------------------------------------------------------------
# Smooth-derivative gradient trainer (max-min network)
# ---------------------------------------------------------------------------

def _smooth_coefficient(x_s, w_sj, max2):
    if x_s < w_sj:
        return x_s if x_s >= max2 else x_s * x_s
    return 1.0 if w_sj >= max2 else w_sj


def smooth_derivative_train(ts: TrainingSet, cfg: TrainerConfig | None = None) -> TrainResult:
    """Gradient descent on E = 1/2 Σ (T_j − O_j)² for O_j = max_k min(x_k, w_kj),
    using a smoothed case-split derivative so plateaus still move."""
    cfg = cfg or TrainerConfig()
    if cfg.tnorm.name != "min":
        raise ValueError("the smooth-derivative trainer is defined for max-min")
    W = np.ones((ts.n, ts.m))
    trace = []
    converged = False
    epoch = 0
    for epoch in range(1, cfg.max_epochs + 1):
        for i in range(ts.p):
            x = ts.inputs[i]
            targ = ts.targets[i]
            for j in range(ts.m):
                vals = np.minimum(x, W[:, j])
                O_j = float(np.max(vals))
                delta_j = targ[j] - O_j
                if abs(delta_j) <= cfg.epsilon:
                    continue
                for s in range(ts.n):
                    others = np.delete(vals, s)
                    max2 = float(np.max(others)) if others.size else 0.0
                    C = _smooth_coefficient(x[s], W[s, j], max2)
                    W[s, j] = min(1.0, max(0.0, W[s, j] + cfg.eta * delta_j * C))
        trace.append(training_error(MIN, ts, W))
        if trace[-1] <= cfg.epsilon:
            converged = True
            break
    return TrainResult(W, converged, epoch, trace)


# ---------------------------------------------------------------------------
# Error measures
# ---------------------------------------------------------------------------

def equality_error(F, B):
    """Hamming distance Σ |F_i − B_i| (sum of equality-index complements)."""
    F = np.asarray(F, float).ravel()
    B = np.asarray(B, float).ravel()
    if F.shape != B.shape:
        raise ValueError("length mismatch")
    return float(np.sum(np.abs(F - B)))
