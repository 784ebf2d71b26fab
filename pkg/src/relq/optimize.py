"""Optimization over fuzzy relational equation solution sets.

Linear objectives are minimized exactly by problem reduction plus a 0-1
assignment search with branch and bound.  Nonlinear objectives run through a
feasibility-preserving genetic algorithm.  Multi-objective search keeps a
Pareto archive, with fuzzy c-means available to cluster the efficient set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .grades import TOL
from .relations import MaxMin, as_grid
from .solve import (
    FreProblem, InfeasibleError, attain_value, binding_sets, max_solution,
)


# ---------------------------------------------------------------------------
# Linear objective
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearFreProblem:
    base: FreProblem
    c: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "c", np.asarray(self.c, float).ravel())
        if self.c.shape[0] != self.base.m:
            raise ValueError(
                f"cost vector has {self.c.shape[0]} entries for {self.base.m} rows"
            )


def split_costs(c):
    """c = c_plus + c_minus with c_plus >= 0 >= c_minus."""
    c = np.asarray(c, float)
    return np.maximum(c, 0.0), np.minimum(c, 0.0)


@dataclass
class ReductionState:
    fixed: dict
    removed_constraints: list
    forced_constraints: list
    subproblems: list
    x_hat: np.ndarray
    index_sets: list


def reduce_problem(p: LinearFreProblem) -> ReductionState:
    """Fix what can be fixed before searching.

    Non-positive-cost rows take their maximum-solution value; constraints
    they already attain drop out.  Constraints with a single binding row
    force that row.  Surviving constraints split into independent
    subproblems by binding-set overlap.
    """
    base, c = p.base, p.c
    x_hat = max_solution(base)
    if x_hat is None:
        raise InfeasibleError("base system is infeasible")
    sets = binding_sets(base, x_hat)
    fixed = {}
    removed = []
    for i in range(base.m):
        if c[i] <= 0.0:
            fixed[i] = x_hat[i]
    for j in range(base.n):
        if any(i in fixed for i in sets[j]):
            removed.append(j)
    pending = [j for j in range(base.n) if j not in removed]
    forced = []
    changed = True
    while changed:
        changed = False
        for j in list(pending):
            live = [i for i in sets[j] if i not in fixed]
            sat = any(
                i in fixed and fixed[i] >= attain_value(base, i, j) - TOL
                for i in sets[j]
            )
            if sat:
                pending.remove(j)
                removed.append(j)
                changed = True
            elif len(live) == 1:
                i = live[0]
                fixed[i] = max(fixed.get(i, 0.0), attain_value(base, i, j))
                pending.remove(j)
                forced.append(j)
                changed = True
    # connected components of the surviving constraints by shared rows
    subproblems = []
    todo = list(pending)
    while todo:
        comp = [todo.pop()]
        rows = set(i for i in sets[comp[0]] if i not in fixed)
        grew = True
        while grew:
            grew = False
            for j in list(todo):
                jr = set(i for i in sets[j] if i not in fixed)
                if jr & rows:
                    comp.append(j)
                    todo.remove(j)
                    rows |= jr
                    grew = True
        subproblems.append((sorted(comp), sorted(rows)))
    return ReductionState(fixed, sorted(removed), forced, subproblems, x_hat, sets)


def _assemble(p: LinearFreProblem, f, x_hat, sets, vals):
    """Candidate solution: x_hat on negative-cost rows, chosen binding
    values elsewhere."""
    x = np.zeros(p.base.m)
    for i in range(p.base.m):
        if p.c[i] < 0.0:
            x[i] = x_hat[i]
    for j, i in enumerate(f):
        x[i] = max(x[i], vals[(i, j)])
    return x


def optimize_linear(p: LinearFreProblem, use_bound=True):
    """Exact minimum of c·x over the solution set.

    Negative-cost rows sit at the maximum solution; the remaining choice of
    one binding row per constraint is searched depth-first with a running
    lower bound (the already-committed cost; valid because uncommitted rows
    contribute non-negatively).
    """
    base, c = p.base, p.c
    x_hat = max_solution(base)
    if x_hat is None:
        raise InfeasibleError("infeasible")
    sets = binding_sets(base, x_hat)
    vals = {(i, j): attain_value(base, i, j) for j, s in enumerate(sets) for i in s}
    neg = c < 0.0
    x0 = np.where(neg, x_hat, 0.0)
    # constraints already attained by the negative-cost block
    t = base.tnorm()

    def attained(x, j):
        return any(
            abs(t(x[i], base.A[i, j]) - base.b[j]) <= TOL for i in range(base.m)
        )

    open_js = [j for j in range(base.n) if not attained(x0, j)]
    open_js.sort(key=lambda j: len(sets[j]))
    best = {"x": None, "z": np.inf}

    def walk(pos, x, cost):
        if use_bound and cost >= best["z"] - 1e-12:
            return
        while pos < len(open_js) and attained(x, open_js[pos]):
            pos += 1
        if pos == len(open_js):
            if cost < best["z"] - 1e-12:
                best["z"] = cost
                best["x"] = x.copy()
            return
        j = open_js[pos]
        for i in sets[j]:
            if c[i] < 0.0:
                # already at x_hat, attains j for free
                walk(pos + 1, x, cost)
                continue
            old = x[i]
            v = vals[(i, j)]
            if v > old:
                x[i] = v
                walk(pos + 1, x, cost + c[i] * (v - old))
                x[i] = old
            else:
                walk(pos + 1, x, cost)

    base_cost = float(np.sum(c[neg] * x_hat[neg]))
    walk(0, x0.copy(), base_cost)
    x_star = best["x"]
    if x_star is None:
        raise InfeasibleError("no assembled candidate found")
    return x_star, float(np.dot(c, x_star))


def brute_force_linear(p: LinearFreProblem, cap=10 ** 4):
    """Oracle: enumerate every binding combination and take the best."""
    base = p.base
    x_hat = max_solution(base)
    if x_hat is None:
        raise InfeasibleError("infeasible")
    sets = binding_sets(base, x_hat)
    size = 1
    for s in sets:
        size *= max(len(s), 1)
    if size > cap:
        raise RuntimeError(f"combination count {size} exceeds cap {cap}")
    vals = {(i, j): attain_value(base, i, j) for j, s in enumerate(sets) for i in s}
    best_x, best_z = None, np.inf
    for f in itertools.product(*sets):
        x = _assemble(p, f, x_hat, sets, vals)
        z = float(np.dot(p.c, x))
        if z < best_z - 1e-12:
            best_x, best_z = x, z
    return best_x, best_z


# ---------------------------------------------------------------------------
# Structure helpers
# ---------------------------------------------------------------------------

def pseudo_char_matrix(A, b):
    """Sign pattern of A against b: 1 / 0 / -1 per cell."""
    A = as_grid(A)
    b = np.asarray(b, float).ravel()
    out = np.zeros(A.shape, dtype=int)
    out[A > b[None, :] + TOL] = 1
    out[A < b[None, :] - TOL] = -1
    return out


def equivalence_reduce(A, b):
    """Zero the unusable high cells: if b_j1 > b_j2, a_ij1 >= b_j1 and
    a_ij2 > b_j2 then row i can never serve constraint j1, so a_ij1 is
    equivalently 0.  Solution set is preserved (max-min)."""
    A = as_grid(A).copy()
    b = np.asarray(b, float).ravel()
    m, n = A.shape
    changed = True
    while changed:
        changed = False
        for i in range(m):
            for j1 in range(n):
                if A[i, j1] < b[j1] - TOL or A[i, j1] <= TOL:
                    continue
                for j2 in range(n):
                    if b[j1] > b[j2] + TOL and A[i, j2] > b[j2] + TOL:
                        A[i, j1] = 0.0
                        changed = True
                        break
    return A


# ---------------------------------------------------------------------------
# Genetic algorithm (feasibility preserving, max-min systems)
# ---------------------------------------------------------------------------

@dataclass
class GaConfig:
    population_size: int = 40
    generations: int = 200
    selection_q: float = 0.1
    mutation_prob: float = 0.3
    crossover_prob: float = 0.7
    rng_seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.selection_q < 1.0:
            raise ValueError("selection_q must lie in (0, 1)")
        for p in (self.mutation_prob, self.crossover_prob):
            if not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")


def _require_maxmin(p: FreProblem):
    if not isinstance(p.composition, MaxMin):
        raise ValueError("genetic operators are defined for max-min systems only")


def _repair(x, p: FreProblem, x_hat, sets, vals, rng):
    """Project a vector into the solution set: clamp into [0, x_hat] and
    raise a binding row for every unattained constraint."""
    x = np.clip(x, 0.0, x_hat)
    t = p.tnorm()
    for j in range(p.n):
        if not any(abs(t(x[i], p.A[i, j]) - p.b[j]) <= TOL for i in range(p.m)):
            i = sets[j][int(rng.integers(len(sets[j])))]
            x[i] = max(x[i], vals[(i, j)])
    return x


class _GaContext:
    def __init__(self, p: FreProblem):
        _require_maxmin(p)
        x_hat = max_solution(p)
        if x_hat is None:
            raise InfeasibleError("infeasible")
        A_red = equivalence_reduce(p.A, p.b)
        self.problem = p
        self.reduced = FreProblem(A_red, p.b, MaxMin())
        self.x_hat = x_hat
        self.sets = binding_sets(self.reduced, x_hat)
        self.vals = {
            (i, j): attain_value(self.reduced, i, j)
            for j, s in enumerate(self.sets) for i in s
        }
        lb = np.zeros(p.m)
        for i in range(p.m):
            cand = [p.b[j] for j in range(p.n) if A_red[i, j] >= p.b[j] - TOL]
            lb[i] = max(cand) if cand else 0.0
        self.lb_max = np.minimum(lb, x_hat)

    def repair(self, x, rng):
        return _repair(x, self.problem, self.x_hat, self.sets, self.vals, rng)


def ga_initialize(p: FreProblem, cfg: GaConfig):
    """Population sampled in the box [LB_max, x_hat] (after equivalence
    reduction every such point is feasible); repaired as a safety net."""
    ctx = _GaContext(p)
    rng = np.random.default_rng(cfg.rng_seed)
    pop = []
    for _ in range(cfg.population_size):
        u = rng.random(p.m)
        x = ctx.lb_max + u * (ctx.x_hat - ctx.lb_max)
        if not p.is_solution(x):
            x = ctx.repair(x, rng)
        pop.append(x)
    return pop


def ga_mutate(x, p: FreProblem, rng, ctx: _GaContext | None = None):
    """Feasible mutation: drop one coordinate that other rows can cover,
    then repair any broken constraint by raising a covering row."""
    ctx = ctx or _GaContext(p)
    decrease = sorted({
        i for j, s in enumerate(ctx.sets) if len(s) > 1 for i in s
    })
    if not decrease:
        return np.asarray(x, float).copy()
    x = np.asarray(x, float).copy()
    k = decrease[int(rng.integers(len(decrease)))]
    x[k] = x[k] * rng.random()
    # repair broken constraints, preferring rows other than the decreased one
    t = p.tnorm()
    for j in range(p.n):
        if not any(abs(t(x[i], p.A[i, j]) - p.b[j]) <= TOL for i in range(p.m)):
            pool = [i for i in ctx.sets[j] if i != k] or ctx.sets[j]
            i = pool[int(rng.integers(len(pool)))]
            x[i] = max(x[i], ctx.vals[(i, j)])
    if not p.is_solution(x):
        x = ctx.repair(x, rng)
    return x


def ga_crossover(x1, x2, superpoint, rng, p: FreProblem | None = None,
                 ctx: _GaContext | None = None):
    """Contraction of x1 toward the superpoint, extraction of x2 away from
    its partner; both children repaired to feasibility."""
    x1 = np.asarray(x1, float)
    x2 = np.asarray(x2, float)
    superpoint = np.asarray(superpoint, float)
    lam = rng.random()
    child1 = lam * x1 + (1.0 - lam) * superpoint
    gamma = 1.0 + rng.random()
    child2 = np.clip(gamma * x2 - (gamma - 1.0) * x1, 0.0, 1.0)
    if ctx is None and p is not None:
        ctx = _GaContext(p)
    if ctx is not None:
        if not ctx.problem.is_solution(child1):
            child1 = ctx.repair(child1, rng)
        if not ctx.problem.is_solution(child2):
            child2 = ctx.repair(child2, rng)
    return child1, child2


def _rank_probabilities(n, q):
    qp = q / (1.0 - (1.0 - q) ** n)
    probs = np.array([qp * (1.0 - q) ** r for r in range(n)])
    return probs / probs.sum()


def optimize_nonlinear_ga(p: FreProblem, f, cfg: GaConfig | None = None):
    """Minimize an arbitrary objective over the solution set by GA."""
    cfg = cfg or GaConfig()
    ctx = _GaContext(p)
    rng = np.random.default_rng(cfg.rng_seed)
    pop = []
    for _ in range(cfg.population_size):
        u = rng.random(p.m)
        x = ctx.lb_max + u * (ctx.x_hat - ctx.lb_max)
        if not p.is_solution(x):
            x = ctx.repair(x, rng)
        pop.append(x)
    fit = [float(f(x)) for x in pop]
    best_i = int(np.argmin(fit))
    best_x, best_f = pop[best_i].copy(), fit[best_i]
    probs = _rank_probabilities(cfg.population_size, cfg.selection_q)
    for _ in range(cfg.generations):
        order = np.argsort(fit)
        nxt = [best_x.copy()]
        while len(nxt) < cfg.population_size:
            a = pop[order[int(rng.choice(cfg.population_size, p=probs))]]
            b = pop[order[int(rng.choice(cfg.population_size, p=probs))]]
            if rng.random() < cfg.crossover_prob:
                c1, c2 = ga_crossover(a, b, ctx.x_hat, rng, ctx=ctx)
            else:
                c1, c2 = a.copy(), b.copy()
            for child in (c1, c2):
                if rng.random() < cfg.mutation_prob:
                    child = ga_mutate(child, p, rng, ctx=ctx)
                nxt.append(child)
        pop = nxt[:cfg.population_size]
        fit = [float(f(x)) for x in pop]
        gen_i = int(np.argmin(fit))
        if fit[gen_i] < best_f:
            best_f = fit[gen_i]
            best_x = pop[gen_i].copy()
    return best_x, best_f


# ---------------------------------------------------------------------------
# Multi-objective search
# ---------------------------------------------------------------------------

def dominates(z1, z2, tol=1e-12):
    """z1 dominates z2 iff z1 <= z2 component-wise and z1 != z2."""
    z1 = np.asarray(z1, float)
    z2 = np.asarray(z2, float)
    return bool(np.all(z1 <= z2 + tol) and np.any(z1 < z2 - tol))


class ParetoArchive:
    def __init__(self):
        self.points = []

    def add(self, x, z):
        z = np.asarray(z, float)
        if any(dominates(pz, z) or np.allclose(pz, z) for _, pz in self.points):
            return False
        self.points = [(px, pz) for px, pz in self.points if not dominates(z, pz)]
        self.points.append((np.asarray(x, float).copy(), z))
        return True


def optimize_multiobjective(p: FreProblem, fs, cfg: GaConfig | None = None):
    """Evolve with random scalarizations, archiving non-dominated points."""
    if len(fs) < 2:
        raise ValueError("need at least two objectives")
    cfg = cfg or GaConfig()
    ctx = _GaContext(p)
    rng = np.random.default_rng(cfg.rng_seed)
    archive = ParetoArchive()

    def evaluate(x):
        z = np.array([float(g(x)) for g in fs])
        archive.add(x, z)
        return z

    pop = []
    for _ in range(cfg.population_size):
        u = rng.random(p.m)
        x = ctx.lb_max + u * (ctx.x_hat - ctx.lb_max)
        if not p.is_solution(x):
            x = ctx.repair(x, rng)
        pop.append(x)
    zs = [evaluate(x) for x in pop]
    probs = _rank_probabilities(cfg.population_size, cfg.selection_q)
    for _ in range(cfg.generations):
        w = rng.random(len(fs))
        w /= w.sum()
        scal = [float(np.dot(w, z)) for z in zs]
        order = np.argsort(scal)
        nxt = []
        while len(nxt) < cfg.population_size:
            a = pop[order[int(rng.choice(cfg.population_size, p=probs))]]
            b = pop[order[int(rng.choice(cfg.population_size, p=probs))]]
            if rng.random() < cfg.crossover_prob:
                c1, c2 = ga_crossover(a, b, ctx.x_hat, rng, ctx=ctx)
            else:
                c1, c2 = a.copy(), b.copy()
            for child in (c1, c2):
                if rng.random() < cfg.mutation_prob:
                    child = ga_mutate(child, p, rng, ctx=ctx)
                nxt.append(child)
        pop = nxt[:cfg.population_size]
        zs = [evaluate(x) for x in pop]
    return archive


# ---------------------------------------------------------------------------
# Fuzzy c-means
# ---------------------------------------------------------------------------

@dataclass
class FcmResult:
    centers: np.ndarray
    memberships: np.ndarray
    objective: float
    iterations: int


def fuzzy_c_means(points, C, m=2.0, tol=1e-6, max_iter=300, rng_seed=0):
    """Alternating optimization of the fuzzy c-partition objective."""
    X = np.asarray(points, float)
    P = X.shape[0]
    if C > P:
        raise ValueError("more clusters than points")
    if m <= 1.0:
        raise ValueError("fuzzifier m must exceed 1")
    rng = np.random.default_rng(rng_seed)
    U = rng.random((C, P))
    U /= U.sum(axis=0, keepdims=True)
    centers = np.zeros((C, X.shape[1]))
    it = 0
    for it in range(1, max_iter + 1):
        Um = U ** m
        centers_new = (Um @ X) / Um.sum(axis=1, keepdims=True)
        d2 = np.maximum(
            ((X[None, :, :] - centers_new[:, None, :]) ** 2).sum(axis=2), 0.0
        )
        U_new = np.zeros_like(U)
        for pidx in range(P):
            zero = np.where(d2[:, pidx] <= 1e-18)[0]
            if zero.size:
                U_new[zero[0], pidx] = 1.0
            else:
                inv = (1.0 / d2[:, pidx]) ** (1.0 / (m - 1.0))
                U_new[:, pidx] = inv / inv.sum()
        moved = float(np.max(np.abs(centers_new - centers)))
        centers, U = centers_new, U_new
        if moved < tol:
            break
    objective = float(((U ** m) * np.maximum(
        ((X[None, :, :] - centers[:, None, :]) ** 2).sum(axis=2), 0.0
    )).sum())
    return FcmResult(centers, U, objective, it)
