"""Dense fuzzy relations: compositions, joins, cuts, structural properties.

A Relation is a thin immutable wrapper around a float matrix with all cells
in [0, 1].  Compositions are parameterized: max-min, max-product, sup-t for
an arbitrary t-norm, and inf-implication.
"""

from __future__ import annotations

import json

import numpy as np

from .grades import TOL, TNorm, MIN, godel

__all__ = [
    "Relation", "MaxMin", "MaxProduct", "SupT", "InfImplication",
    "composition_by_name", "compose", "relational_join", "transpose",
    "alpha_cut", "relation_properties", "transitive_closure", "identity",
]


class Relation:
    """Immutable dense matrix of grades in [0, 1]."""

    __slots__ = ("cells",)

    def __init__(self, cells):
        arr = np.array(cells, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"relation must be a 2-d grid, got shape {arr.shape}")
        if np.any(arr < -TOL) or np.any(arr > 1 + TOL):
            raise ValueError("relation cells must lie in [0, 1]")
        arr = np.clip(arr, 0.0, 1.0)
        arr.flags.writeable = False
        object.__setattr__(self, "cells", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Relation is immutable")

    @property
    def rows(self):
        return self.cells.shape[0]

    @property
    def cols(self):
        return self.cells.shape[1]

    @property
    def shape(self):
        return self.cells.shape

    def __getitem__(self, idx):
        return self.cells[idx]

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(np.abs(self.cells - other.cells) <= TOL))

    def __repr__(self):
        return f"Relation({self.cells.tolist()!r})"

    # -- codecs -------------------------------------------------------------

    def to_csv(self):
        return "\n".join(
            ",".join(repr(float(v)) for v in row) for row in self.cells
        ) + "\n"

    @classmethod
    def from_csv(cls, text):
        rows = []
        for line in text.strip().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([float(tok) for tok in line.split(",")])
        return cls(rows)

    def to_json(self):
        return json.dumps(
            {"rows": self.rows, "cols": self.cols, "cells": self.cells.tolist()}
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        rel = cls(data["cells"])
        if rel.rows != data.get("rows", rel.rows) or rel.cols != data.get("cols", rel.cols):
            raise ValueError("json rows/cols fields disagree with the cell grid")
        return rel


def as_grid(R):
    """Accept a Relation, array, or nested list; return the ndarray view."""
    if isinstance(R, Relation):
        return R.cells
    arr = np.asarray(R, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return arr


def identity(n):
    return Relation(np.eye(n))


# ---------------------------------------------------------------------------
# Composition specs
# ---------------------------------------------------------------------------

class MaxMin:
    kind = "max-min"

    def __repr__(self):
        return "MaxMin"


class MaxProduct:
    kind = "max-product"

    def __repr__(self):
        return "MaxProduct"


class SupT:
    kind = "sup-t"

    def __init__(self, tnorm: TNorm):
        self.tnorm = tnorm

    def __repr__(self):
        return f"SupT({self.tnorm.name})"


class InfImplication:
    kind = "inf-implication"

    def __init__(self, implication=godel):
        self.implication = implication

    def __repr__(self):
        return "InfImplication"


def composition_by_name(name):
    from .grades import tnorm_by_name

    if name == "max-min":
        return MaxMin()
    if name == "max-product":
        return MaxProduct()
    if name.startswith("sup-t:"):
        return SupT(tnorm_by_name(name.split(":", 1)[1]))
    raise ValueError(f"unknown composition {name!r}")


def compose(spec, P, Q):
    """Compose two relations: cell (i,k) = agg_j op(P[i,j], Q[j,k])."""
    P, Q = as_grid(P), as_grid(Q)
    if P.shape[1] != Q.shape[0]:
        raise ValueError(f"dimension mismatch: {P.shape} cannot compose with {Q.shape}")
    if isinstance(spec, MaxMin):
        out = np.max(np.minimum(P[:, :, None], Q[None, :, :]), axis=1)
    elif isinstance(spec, MaxProduct):
        out = np.max(P[:, :, None] * Q[None, :, :], axis=1)
    elif isinstance(spec, SupT):
        t = spec.tnorm
        if t.name == "min":
            out = np.max(np.minimum(P[:, :, None], Q[None, :, :]), axis=1)
        elif t.name == "product":
            out = np.max(P[:, :, None] * Q[None, :, :], axis=1)
        elif t.name == "lukasiewicz":
            out = np.max(np.maximum(0.0, P[:, :, None] + Q[None, :, :] - 1.0), axis=1)
        else:
            out = np.empty((P.shape[0], Q.shape[1]))
            for i in range(P.shape[0]):
                for k in range(Q.shape[1]):
                    out[i, k] = max(t(P[i, j], Q[j, k]) for j in range(P.shape[1]))
    elif isinstance(spec, InfImplication):
        imp = spec.implication
        out = np.empty((P.shape[0], Q.shape[1]))
        for i in range(P.shape[0]):
            for k in range(Q.shape[1]):
                out[i, k] = min(imp(P[i, j], Q[j, k]) for j in range(P.shape[1]))
    else:
        raise ValueError(f"unknown composition spec {spec!r}")
    return Relation(out)


def relational_join(P, Q):
    """3-axis join: J[x, y, z] = min(P[x, y], Q[y, z])."""
    P, Q = as_grid(P), as_grid(Q)
    if P.shape[1] != Q.shape[0]:
        raise ValueError(f"dimension mismatch: {P.shape} vs {Q.shape}")
    return np.minimum(P[:, :, None], Q[None, :, :])


def transpose(R):
    return Relation(as_grid(R).T)


def alpha_cut(R, alpha, strong=False):
    """Binary relation of cells with grade >= alpha (> alpha when strong)."""
    grid = as_grid(R)
    if strong:
        mask = grid > alpha + TOL
    else:
        mask = grid >= alpha - TOL
    return Relation(mask.astype(float))


def relation_properties(R, eps=0.5):
    """Structural flags of a square relation."""
    grid = as_grid(R)
    n, m = grid.shape
    if n != m:
        raise ValueError(f"relation_properties needs a square relation, got {grid.shape}")
    diag = np.diag(grid)
    off = ~np.eye(n, dtype=bool)
    square = compose(MaxMin(), grid, grid).cells
    return {
        "reflexive": bool(np.all(diag >= 1 - TOL)),
        "antireflexive": bool(np.all(diag <= TOL)),
        "eps_reflexive": bool(np.all(diag >= eps - TOL)),
        "symmetric": bool(np.all(np.abs(grid - grid.T) <= TOL)),
        "antisymmetric": bool(
            np.all((np.minimum(grid, grid.T) <= TOL) | ~off)
        ),
        "maxmin_transitive": bool(np.all(grid >= square - TOL)),
    }


def transitive_closure(R, t: TNorm = MIN):
    """Least t-transitive relation containing R (iterated composition)."""
    grid = as_grid(R)
    n, m = grid.shape
    if n != m:
        raise ValueError("transitive closure needs a square relation")
    spec = SupT(t)
    cur = grid
    for _ in range(n + 1):
        nxt = np.maximum(cur, compose(spec, cur, cur).cells)
        if np.all(np.abs(nxt - cur) <= TOL):
            break
        cur = nxt
    return Relation(cur)
