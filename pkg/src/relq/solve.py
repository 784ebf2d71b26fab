"""Resolution of fuzzy relational equations x∘A = b and R∘U = T.

Greatest (maximum) solution, feasibility, minimal-solution enumeration by
three methods, fast solvability/uniqueness certificates, attainability
classification, constrained greatest solutions, defuzzified rule extraction,
and the specificity-shift estimator.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

import numpy as np

from .grades import (
    TOL, MIN, PRODUCT, TNorm, godel, sigma_alpha,
)
from .relations import (
    MaxMin, MaxProduct, SupT, Relation, as_grid, compose,
)

DEFAULT_CAP = 10 ** 6


def combinatorial_cap():
    """Default cap on enumerated binding combinations (env RELQ_CAP overrides)."""
    env = os.environ.get("RELQ_CAP")
    if env:
        return int(env)
    return DEFAULT_CAP


class CapExceeded(RuntimeError):
    pass


class InfeasibleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Problem container
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FreProblem:
    """The system x ∘ A = b: x is 1×m, A is m×n, b has length n."""

    A: np.ndarray
    b: np.ndarray
    composition: object = field(default_factory=MaxMin)

    def __post_init__(self):
        object.__setattr__(self, "A", np.asarray(as_grid(self.A), dtype=float))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=float).ravel())
        if self.A.shape[1] != self.b.shape[0]:
            raise ValueError(
                f"A has {self.A.shape[1]} columns but b has {self.b.shape[0]} entries"
            )

    @property
    def m(self):
        return self.A.shape[0]

    @property
    def n(self):
        return self.A.shape[1]

    def tnorm(self) -> TNorm:
        comp = self.composition
        if isinstance(comp, MaxMin):
            return MIN
        if isinstance(comp, MaxProduct):
            return PRODUCT
        if isinstance(comp, SupT):
            if not comp.tnorm.continuous:
                raise ValueError("solver compositions require a continuous t-norm")
            return comp.tnorm
        raise ValueError(f"unsupported composition {comp!r}")

    def lhs(self, x):
        """Evaluate x ∘ A."""
        return compose(self.composition, np.asarray(x, float).reshape(1, -1), self.A).cells[0]

    def is_solution(self, x, tol=TOL):
        return bool(np.all(np.abs(self.lhs(x) - self.b) <= tol))


@dataclass
class SolutionSet:
    feasible: bool
    x_hat: np.ndarray | None
    minimals: list
    index_sets: list

    def contains(self, x, tol=TOL):
        """Membership via the interval characterization ∪ [minimal, x_hat]."""
        if not self.feasible:
            return False
        x = np.asarray(x, float)
        if np.any(x > self.x_hat + tol):
            return False
        return any(np.all(x >= m - tol) for m in self.minimals)


# ---------------------------------------------------------------------------
# Maximum solution and binding structure
# ---------------------------------------------------------------------------

def max_solution(p: FreProblem, tol=TOL):
    """Sanchez greatest-solution candidate; None when the system is infeasible."""
    t = p.tnorm()
    x_hat = np.empty(p.m)
    for i in range(p.m):
        x_hat[i] = min(t.residuum(p.A[i, j], p.b[j]) for j in range(p.n))
    if p.is_solution(x_hat, tol):
        return x_hat
    return None


def binding_sets(p: FreProblem, x_hat, tol=TOL):
    """I_j = rows that attain constraint j at equality under x_hat."""
    t = p.tnorm()
    sets = []
    for j in range(p.n):
        sets.append(
            [i for i in range(p.m) if abs(t(x_hat[i], p.A[i, j]) - p.b[j]) <= tol]
        )
    return sets


def attain_value(p: FreProblem, i, j):
    """Smallest x_i with t(x_i, a_ij) = b_j (row i must be able to attain j)."""
    t = p.tnorm()
    return t.min_section_solution(p.A[i, j], p.b[j])


def _dominance_filter(cands, tol=TOL):
    """Keep the cell-wise minimal elements, deduped, canonically sorted."""
    out = []
    for c in sorted(cands, key=lambda v: tuple(v)):
        if not any(np.all(o <= c + tol) for o in out):
            out.append(np.asarray(c, float))
    # float jitter can sort a dominated vector before its dominator, letting
    # it slip past the forward pass; sweep the (small) survivor set backwards
    final = []
    for c in reversed(out):
        if not any(np.all(o <= c + tol) for o in final):
            final.insert(0, c)
    return final


# ---------------------------------------------------------------------------
# Minimal solutions: binding-combination enumeration
# ---------------------------------------------------------------------------

def minimal_solutions_lambda(p: FreProblem, cap=None) -> SolutionSet:
    """Enumerate all binding-row combinations f ∈ I_1×…×I_n and filter."""
    cap = combinatorial_cap() if cap is None else cap
    x_hat = max_solution(p)
    if x_hat is None:
        raise InfeasibleError("system is infeasible")
    sets = binding_sets(p, x_hat)
    size = 1
    for s in sets:
        size *= max(len(s), 1)
        if size > cap:
            raise CapExceeded(f"binding combinations exceed cap {cap}")
    vals = {(i, j): attain_value(p, i, j) for j, s in enumerate(sets) for i in s}
    cands = []
    for f in itertools.product(*sets):
        x = np.zeros(p.m)
        for j, i in enumerate(f):
            v = vals[(i, j)]
            if v > x[i]:
                x[i] = v
        cands.append(x)
    minimals = _dominance_filter(cands)
    return SolutionSet(True, x_hat, minimals, sets)


# ---------------------------------------------------------------------------
# Minimal solutions: matrix-pattern branching
# ---------------------------------------------------------------------------

def minimal_solutions_matrix_pattern(p: FreProblem, cap=None) -> SolutionSet:
    """Walk constraints in decreasing right-hand-side order, branching over
    every marked row of the current column; a column already covered by the
    partial assignment is skipped."""
    cap = combinatorial_cap() if cap is None else cap
    x_hat = max_solution(p)
    if x_hat is None:
        raise InfeasibleError("system is infeasible")
    sets = binding_sets(p, x_hat)
    vals = {(i, j): attain_value(p, i, j) for j, s in enumerate(sets) for i in s}
    order = sorted(range(p.n), key=lambda j: -p.b[j])
    leaves = []
    budget = [cap]

    def covered(x, j):
        return any(x[i] >= vals[(i, j)] - TOL for i in sets[j])

    def walk(pos, x):
        while pos < len(order) and covered(x, order[pos]):
            pos += 1
        if pos == len(order):
            leaves.append(x.copy())
            budget[0] -= 1
            if budget[0] < 0:
                raise CapExceeded(f"matrix-pattern branches exceed cap {cap}")
            return
        j = order[pos]
        for i in sets[j]:
            old = x[i]
            x[i] = max(x[i], vals[(i, j)])
            walk(pos + 1, x)
            x[i] = old

    walk(0, np.zeros(p.m))
    return SolutionSet(True, x_hat, _dominance_filter(leaves), sets)


# ---------------------------------------------------------------------------
# Minimal solutions: constraint-by-constraint concatenation (Archimedean)
# ---------------------------------------------------------------------------

def minimal_solutions_archimedean(p: FreProblem, cap=None) -> SolutionSet:
    """Pseudo-polynomial build-up: per-constraint unique scalar solutions are
    concatenated one constraint at a time with dominance simplification."""
    t = p.tnorm()
    if not t.archimedean:
        raise ValueError(f"requires an Archimedean t-norm, got {t.name}")
    cap = combinatorial_cap() if cap is None else cap
    x_hat = max_solution(p)
    if x_hat is None:
        raise InfeasibleError("system is infeasible")
    sets = binding_sets(p, x_hat)
    partial = [np.zeros(p.m)]
    for j in range(p.n):
        nxt = []
        for base in partial:
            for i in sets[j]:
                x = base.copy()
                x[i] = max(x[i], attain_value(p, i, j))
                nxt.append(x)
        partial = _dominance_filter(nxt)
        if len(partial) > cap:
            raise CapExceeded(f"candidate set exceeds cap {cap}")
    return SolutionSet(True, x_hat, _dominance_filter(partial), sets)


_METHODS = {
    "lambda": minimal_solutions_lambda,
    "pattern": minimal_solutions_matrix_pattern,
    "archimedean": minimal_solutions_archimedean,
}


def solve(p: FreProblem, method="lambda", cap=None) -> SolutionSet:
    try:
        fn = _METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}; choose from {sorted(_METHODS)}") from None
    return fn(p, cap=cap)


# ---------------------------------------------------------------------------
# Fast solvability / uniqueness certificate (orientation A ⊗ x = b)
# ---------------------------------------------------------------------------

@dataclass
class GavalecCertificate:
    solvable: bool
    unique: bool
    x_bar: np.ndarray
    I: list
    K: list
    cell_touches: int


def gavalec_certificate(A, b) -> GavalecCertificate:
    """Linear-time solvability and uniqueness flags for A ⊗ x = b (max-min),
    A of shape m×n, x of length n, b of length m.

    Per column j: M_j = {i : a_ij > b_i}; x̄_j = min b over M_j (1 when
    empty); I_j = {i : a_ij >= b_i = x̄_j}; K_j = {i : a_ij = b_i < x̄_j}.
    Solvable iff every row is covered by some I_j ∪ K_j; unique iff,
    additionally, every column with x̄_j > 0 owns a row coverable only
    through that column's I_j.
    """
    A = as_grid(A)
    b = np.asarray(b, float).ravel()
    m, n = A.shape
    if b.shape[0] != m:
        raise ValueError(f"A has {m} rows but b has {b.shape[0]} entries")
    touches = 0
    x_bar = np.ones(n)
    for j in range(n):
        for i in range(m):
            touches += 1
            if A[i, j] > b[i] + TOL and b[i] < x_bar[j]:
                x_bar[j] = b[i]
    I, K = [], []
    for j in range(n):
        Ij, Kj = [], []
        for i in range(m):
            touches += 1
            if A[i, j] >= b[i] - TOL and abs(b[i] - x_bar[j]) <= TOL:
                Ij.append(i)
            elif abs(A[i, j] - b[i]) <= TOL and b[i] < x_bar[j] - TOL:
                Kj.append(i)
        I.append(Ij)
        K.append(Kj)
    covered = [False] * m
    in_k = [False] * m
    i_count = [0] * m
    for j in range(n):
        for i in I[j]:
            covered[i] = True
            i_count[i] += 1
        for i in K[j]:
            covered[i] = True
            in_k[i] = True
    solvable = all(covered)
    unique = solvable
    if solvable:
        for j in range(n):
            if x_bar[j] <= TOL:
                continue
            if not any(i_count[i] == 1 and not in_k[i] for i in I[j]):
                unique = False
                break
    return GavalecCertificate(solvable, unique, x_bar, I, K, touches)


# ---------------------------------------------------------------------------
# Attainability
# ---------------------------------------------------------------------------

def classify_attainability(x, p: FreProblem, tol=TOL):
    """Per-constraint attainability labels plus the overall classification."""
    x = np.asarray(x, float)
    if not p.is_solution(x, tol):
        raise ValueError("x is not a solution of the system")
    t = p.tnorm()
    labels = []
    for j in range(p.n):
        hit = any(abs(t(x[i], p.A[i, j]) - p.b[j]) <= tol for i in range(p.m))
        labels.append("attainable" if hit else "unattainable")
    if all(l == "attainable" for l in labels):
        overall = "attainable"
    elif all(l == "unattainable" for l in labels):
        overall = "unattainable"
    else:
        overall = "partially-attainable"
    return labels, overall


# ---------------------------------------------------------------------------
# Greatest solutions of R ∘ U = T with structural constraints
# ---------------------------------------------------------------------------

def _godel_left_division(R, T):
    """U[x,z] = min_y godel(R[y,x], T[y,z])."""
    R, T = as_grid(R), as_grid(T)
    ny, nx = R.shape
    nz = T.shape[1]
    U = np.empty((nx, nz))
    for x in range(nx):
        for z in range(nz):
            U[x, z] = min(godel(R[y, x], T[y, z]) for y in range(ny))
    return U


def greatest_solution_relation(R, T):
    """Greatest U with R∘U = T (max-min); None when infeasible."""
    R, T = as_grid(R), as_grid(T)
    if R.shape[0] != T.shape[0]:
        raise ValueError(f"row mismatch: {R.shape} vs {T.shape}")
    U = _godel_left_division(R, T)
    if np.all(np.abs(compose(MaxMin(), R, U).cells - T) <= TOL):
        return Relation(U)
    return None


def constrained_greatest(R, T, constraint):
    """Greatest irreflexive / symmetric / transitive solution of R∘U = T,
    when one exists; None otherwise."""
    R, T = as_grid(R), as_grid(T)
    U = _godel_left_division(R, T)
    if constraint == "irreflexive":
        cand = U.copy()
        np.fill_diagonal(cand, 0.0)
    elif constraint == "symmetric":
        cand = np.minimum(U, U.T)
    elif constraint == "transitive":
        cand = np.minimum(_godel_left_division(T, T), U)
    else:
        raise ValueError(f"unknown constraint {constraint!r}")
    if np.all(np.abs(compose(MaxMin(), R, cand).cells - T) <= TOL):
        return Relation(cand)
    return None


def irreflexivity_condition(R, T):
    """True when every diagonal cell is forced to 0 in any solution:
    for every x there is y with R[y,x] > 0 and T[y,x] = 0."""
    R, T = as_grid(R), as_grid(T)
    n = R.shape[1]
    return all(
        any(R[y, x] > TOL and T[y, x] <= TOL for y in range(R.shape[0]))
        for x in range(n)
    )


# ---------------------------------------------------------------------------
# Defuzzified rule extraction from (pattern, selected element) pairs
# ---------------------------------------------------------------------------

def kagei_type1(pairs, size, caps=None):
    """Largest weight vector R with max_x(p(x) ∧ R(x)) = p(x*) ∧ R(x*)
    for every pair; closed-form cell-wise meet of per-pair solutions."""
    R = np.ones(size)
    for p_vec, x_star in pairs:
        p_vec = np.asarray(p_vec, float)
        if not 0 <= x_star < size:
            raise ValueError(f"selected index {x_star} out of range")
        target = p_vec[x_star]
        if caps is not None:
            target = min(target, caps[x_star])
        for x in range(size):
            val = sigma_alpha(p_vec[x], target)
            if caps is not None:
                val = min(val, caps[x])
            R[x] = min(R[x], val)
    return R


def kagei_type1_iterative(pairs, size, max_sweeps=100):
    """Fixpoint form of the same computation (reduce violating cells)."""
    R = np.ones(size)
    for _ in range(max_sweeps):
        changed = False
        for p_vec, x_star in pairs:
            p_vec = np.asarray(p_vec, float)
            bound = min(p_vec[x_star], R[x_star])
            for x in range(size):
                if x != x_star and min(p_vec[x], R[x]) > bound + TOL:
                    R[x] = bound
                    changed = True
        if not changed:
            break
    return R


def kagei_type2_unique(pairs, xdim, ydim, slack=1e-6, max_sweeps=1000):
    """Quasi-largest relation R(x,y) whose max-min image of each training
    pattern peaks strictly at the selected output (strictness via slack)."""
    pairs = [(np.asarray(p, float), y) for p, y in pairs]
    for (p1, y1), (p2, y2) in itertools.combinations(pairs, 2):
        if y1 != y2 and np.all(np.abs(p1 - p2) <= TOL):
            raise ValueError("contradictory pairs: identical pattern, different outputs")
    R = np.ones((xdim, ydim))
    for _ in range(max_sweeps):
        changed = False
        for p_vec, y_star in pairs:
            bound = max(min(p_vec[x], R[x, y_star]) for x in range(xdim))
            new = max(0.0, bound - slack)
            for x in range(xdim):
                for y in range(ydim):
                    if y != y_star and min(p_vec[x], R[x, y]) >= bound - 1e-12 \
                            and R[x, y] > new:
                        R[x, y] = new
                        changed = True
        if not changed:
            break
    return R


# ---------------------------------------------------------------------------
# Specificity shift estimation
# ---------------------------------------------------------------------------

def _phi(u, alpha):
    return max(0.0, (u - alpha) / (1.0 - alpha))


def _psi(u, beta):
    return min(1.0, u / beta)


def specificity_shift_fit(data, t: TNorm, alpha_grid, beta_grid):
    """Fit R = ∩_k (φ_α[x(k)] → ψ_β[y(k)]) by grid search over (α, β),
    scoring with Σ_k ||y(k) − x(k) ∘ R||².  The identity pair (0, 1) is
    always scored so the result never regresses below the plain fit."""
    if not data:
        raise ValueError("empty data")
    data = [(np.asarray(x, float), np.asarray(y, float)) for x, y in data]
    nx = data[0][0].shape[0]
    ny = data[0][1].shape[0]
    alphas = sorted({0.0} | {float(a) for a in alpha_grid})
    betas = sorted({1.0} | {float(b) for b in beta_grid})
    for a in alphas:
        if not 0.0 <= a < 1.0:
            raise ValueError("alpha values must lie in [0, 1)")
    for b in betas:
        if not 0.0 < b <= 1.0:
            raise ValueError("beta values must lie in (0, 1]")
    best = None
    for alpha in alphas:
        for beta in betas:
            R = np.ones((nx, ny))
            for xv, yv in data:
                for i in range(nx):
                    fi = _phi(xv[i], alpha)
                    for j in range(ny):
                        R[i, j] = min(R[i, j], t.residuum(fi, _psi(yv[j], beta)))
            mse = 0.0
            for xv, yv in data:
                pred = compose(SupT(t), xv.reshape(1, -1), R).cells[0]
                mse += float(np.sum((yv - pred) ** 2))
            if best is None or mse < best[3] - 1e-15:
                best = (Relation(R), alpha, beta, mse)
    return best


# ---------------------------------------------------------------------------
# Solvability criteria for systems of relational premises
# ---------------------------------------------------------------------------

def sre_solvability_criteria(premises, mode):
    """Sufficient solvability tests for premise systems.

    'sup-t': every premise needs exclusive support points realizing each of
    its distinct support values; 'inf-rho': every premise needs at least one
    exclusive support point.  False means "criterion not met".
    """
    premises = [np.asarray(a, float) for a in premises]
    if mode not in ("sup-t", "inf-rho"):
        raise ValueError(f"unknown mode {mode!r}")
    for idx, a in enumerate(premises):
        others = [o for k, o in enumerate(premises) if k != idx]
        exclusive = [
            s for s in range(a.shape[0])
            if a[s] > TOL and all(o[s] <= TOL for o in others)
        ]
        if mode == "inf-rho":
            if not exclusive:
                return False
        else:
            support_vals = {round(float(a[s]), 12) for s in range(a.shape[0]) if a[s] > TOL}
            excl_vals = {round(float(a[s]), 12) for s in exclusive}
            if not support_vals <= excl_vals:
                return False
    return True
