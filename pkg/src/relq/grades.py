"""Scalar truth-value algebra on the unit interval.

t-norms (with residua and Archimedean generators), implication operators,
the residuation-style solution operators used to build greatest solutions
of relational equations, scalar equation solving, equality indices and the
distinguishability metric Q_t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TOL = 1e-9


def _check_unit(x, name="value"):
    if not (-TOL <= x <= 1 + TOL):
        raise ValueError(f"{name} {x!r} outside [0, 1]")
    return min(1.0, max(0.0, float(x)))


# ---------------------------------------------------------------------------
# t-norms
# ---------------------------------------------------------------------------

class TNorm:
    """Base class: a commutative, associative, monotone op with unit 1."""

    name = "abstract"
    continuous = True
    archimedean = False

    def __call__(self, a, b):
        raise NotImplementedError

    def residuum(self, a, b):
        """sup{x : t(a, x) <= b}, by bisection unless overridden."""
        if self(a, 1.0) <= b + TOL:
            return 1.0
        lo, hi = 0.0, 1.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if self(a, mid) <= b + 1e-15:
                lo = mid
            else:
                hi = mid
        return lo

    def min_section_solution(self, a, b):
        """Smallest x with t(a, x) >= b (requires a continuous section, a >= b)."""
        if b <= 0.0:
            return 0.0
        lo, hi = 0.0, 1.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if self(a, mid) >= b - 1e-15:
                hi = mid
            else:
                lo = mid
        return hi

    def __repr__(self):
        return f"<tnorm {self.name}>"


class MinTNorm(TNorm):
    name = "min"

    def __call__(self, a, b):
        return a if a < b else b

    def residuum(self, a, b):
        return 1.0 if a <= b + TOL else b

    def min_section_solution(self, a, b):
        return b


class ProductTNorm(TNorm):
    name = "product"
    archimedean = True

    def __call__(self, a, b):
        return a * b

    def residuum(self, a, b):
        if a <= b + TOL:
            return 1.0
        return b / a

    def min_section_solution(self, a, b):
        if b <= 0.0:
            return 0.0
        return min(1.0, b / a) if a > 0 else 1.0


class LukasiewiczTNorm(TNorm):
    name = "lukasiewicz"
    archimedean = True

    def __call__(self, a, b):
        return max(0.0, a + b - 1.0)

    def residuum(self, a, b):
        return min(1.0, 1.0 - a + b)

    def min_section_solution(self, a, b):
        if b <= 0.0:
            return 0.0
        return min(1.0, 1.0 - a + b)


class DrasticTNorm(TNorm):
    """t(a,b) = min(a,b) when max(a,b)=1, else 0.  Not continuous."""

    name = "drastic"
    continuous = False

    def __call__(self, a, b):
        if a >= 1.0 - 1e-15:
            return b
        if b >= 1.0 - 1e-15:
            return a
        return 0.0

    def residuum(self, a, b):
        # For a < 1 every x < 1 satisfies t(a,x)=0 <= b, so the sup is 1.
        return b if a >= 1.0 - 1e-15 and a > b + TOL else 1.0


class GeneratorTNorm(TNorm):
    """Archimedean t-norm from a decreasing generator f with f(1)=0.

    t(a,b) = f^(-1)(f(a) + f(b)) where f^(-1) is the pseudo-inverse
    (clamps arguments above f(0) to 0).
    """

    name = "generator"
    archimedean = True

    def __init__(self, f, f_inv=None, f_zero=None, name=None):
        self.f = f
        if name:
            self.name = name
        if f_zero is None:
            try:
                f_zero = f(0.0)
            except (ValueError, ZeroDivisionError, OverflowError):
                f_zero = math.inf
        self.f_zero = f_zero
        self._f_inv = f_inv

    def pseudo_inverse(self, y):
        if y <= 0.0:
            return 1.0
        if y >= self.f_zero:
            return 0.0
        if self._f_inv is not None:
            return min(1.0, max(0.0, self._f_inv(y)))
        lo, hi = 0.0, 1.0  # f decreasing: f(hi)=0 <= y <= f(lo)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if self.f(mid) > y:
                lo = mid
            else:
                hi = mid
        return hi

    def __call__(self, a, b):
        fa = self.f(a) if a > 0.0 else self.f_zero
        fb = self.f(b) if b > 0.0 else self.f_zero
        return self.pseudo_inverse(fa + fb)


MIN = MinTNorm()
PRODUCT = ProductTNorm()
LUKASIEWICZ = LukasiewiczTNorm()
DRASTIC = DrasticTNorm()

_TNORMS = {
    "min": MIN,
    "product": PRODUCT,
    "lukasiewicz": LUKASIEWICZ,
    "drastic": DRASTIC,
}


def tnorm_by_name(name):
    try:
        return _TNORMS[name.lower()]
    except KeyError:
        raise ValueError(
            f"unknown t-norm {name!r}; choose from {sorted(_TNORMS)}"
        ) from None


def tnorm_apply(t: TNorm, a, b):
    a = _check_unit(a, "a")
    b = _check_unit(b, "b")
    return t(a, b)


# ---------------------------------------------------------------------------
# Implications
# ---------------------------------------------------------------------------

def godel(a, b):
    """Goedel implication: 1 if a <= b else b."""
    return 1.0 if a <= b + TOL else b


def lukasiewicz_implication(a, b):
    return min(1.0, 1.0 - a + b)


def kleene_dienes(a, b):
    return max(1.0 - a, b)


def crisp_material(a, b):
    """Material implication on {0, 1} only."""
    for v in (a, b):
        if abs(v) > TOL and abs(v - 1.0) > TOL:
            raise ValueError(f"crisp material implication needs binary input, got {v!r}")
    return 0.0 if a > 0.5 and b < 0.5 else 1.0


class Residuum:
    """The adjoint implication of a t-norm: w_t(a,b) = sup{x : t(a,x) <= b}."""

    def __init__(self, t: TNorm):
        self.t = t

    def __call__(self, a, b):
        return self.t.residuum(a, b)

    def __repr__(self):
        return f"<residuum of {self.t.name}>"


_IMPLICATIONS = {
    "godel": godel,
    "lukasiewicz": lukasiewicz_implication,
    "kleene-dienes": kleene_dienes,
    "crisp": crisp_material,
}


def implication_by_name(name, tnorm=None):
    name = name.lower()
    if name == "residuum":
        if tnorm is None:
            raise ValueError("residuum implication needs a t-norm")
        return Residuum(tnorm)
    try:
        return _IMPLICATIONS[name]
    except KeyError:
        raise ValueError(
            f"unknown implication {name!r}; choose from {sorted(_IMPLICATIONS)} or 'residuum'"
        ) from None


def implication_apply(imp, a, b):
    a = _check_unit(a, "a")
    b = _check_unit(b, "b")
    return imp(a, b)


# ---------------------------------------------------------------------------
# Solution operators
# ---------------------------------------------------------------------------

def sigma_alpha(a, b):
    """Greatest-solution operator for max-min: 1 if a <= b else b."""
    return 1.0 if a <= b + TOL else b


def beta_op(a, b):
    """Strict variant: 1 if a < b else b."""
    return 1.0 if a < b - TOL else b


def at_op(composition, a, b):
    """Greatest scalar x with comp(x, a) <= b, for max-min / max-product.

    composition: "max-min" or "max-product".
    """
    if composition == "max-min":
        return sigma_alpha(a, b)
    if composition == "max-product":
        if a <= b + TOL:
            return 1.0
        return b / a
    raise ValueError(f"at_op supports max-min/max-product, got {composition!r}")


# ---------------------------------------------------------------------------
# Scalar equation t(a, x) = b
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NoSolution:
    pass


@dataclass(frozen=True)
class Unique:
    value: float


@dataclass(frozen=True)
class Interval:
    max_so: float
    min_so: float


def solve_scalar_t(t: TNorm, a, b):
    """Solve t(a, x) = b for x.

    Returns NoSolution when a < b; Interval(max, min) when the solution set
    is an interval (always for min; for b = 0 on Archimedean norms);
    Unique(x) for Archimedean norms with b > 0.
    """
    if not t.continuous:
        raise ValueError(f"solve_scalar_t requires a continuous t-norm, got {t.name}")
    a = _check_unit(a, "a")
    b = _check_unit(b, "b")
    if a < b - TOL:
        return NoSolution()
    if isinstance(t, MinTNorm):
        if a <= b + TOL:           # a == b: every x >= b solves min(a,x)=b
            return Interval(max_so=1.0, min_so=b)
        return Interval(max_so=b, min_so=b)
    max_so = t.residuum(a, b)      # continuity: t(a, max_so) = b when a >= b
    min_so = t.min_section_solution(a, b)
    if abs(max_so - min_so) <= TOL:
        return Unique(max_so)
    return Interval(max_so=max_so, min_so=min_so)


# ---------------------------------------------------------------------------
# Equality index and distinguishability metric
# ---------------------------------------------------------------------------

def equality_index(f, b):
    """Degree to which two grades are equal: 1 - |f - b|."""
    f = _check_unit(f, "f")
    b = _check_unit(b, "b")
    return 1.0 - abs(f - b)


def subsethood(t: TNorm, A, B):
    """inf_x w_t(A(x), B(x)) — graded inclusion of A in B."""
    if len(A) != len(B):
        raise ValueError(f"length mismatch: {len(A)} vs {len(B)}")
    deg = 1.0
    for a, b in zip(A, B):
        deg = min(deg, t.residuum(float(a), float(b)))
    return deg


def q_metric(t: TNorm, A, B):
    """Distinguishability Q_t(A,B) = 1 - t([A in B], [B in A])."""
    return 1.0 - t(subsethood(t, A, B), subsethood(t, B, A))
