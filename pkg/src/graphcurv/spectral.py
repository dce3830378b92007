"""Normalized graph Laplacian, its spectrum and the heat semigroup ``exp(t * Laplacian)``.

The Laplacian is ``(Lf)(x) = (1/d_x) * sum_{z ~ x} (f(z) - f(x))``; it is
self-adjoint for the degree-weighted inner product, so the eigenproblem of
``-L`` is solved through the symmetric matrix ``I - D^{-1/2} A D^{-1/2}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import graph as gmod
from .errors import IsolatedVertex, NegativeTime
from .graph import Graph

ZERO_EIGENVALUE_CUTOFF = 1e-9
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class LaplacianView:
    graph: Graph
    exact: tuple[tuple[Fraction, ...], ...]

    def dense(self) -> np.ndarray:
        return np.array([[float(a) for a in row] for row in self.exact])


def laplacian(g: Graph) -> LaplacianView:
    rows = []
    for x in range(g.n):
        d = g.degree(x)
        if d == 0:
            raise IsolatedVertex(f"vertex {x} has no neighbours")
        row = [Fraction(0)] * g.n
        row[x] = Fraction(-1)
        for z in g.adjacency[x]:
            row[z] = Fraction(1, d)
        rows.append(tuple(row))
    return LaplacianView(g, tuple(rows))


def apply_laplacian(g: Graph, f: Sequence, x: int):
    d = g.degree(x)
    if d == 0:
        raise IsolatedVertex(f"vertex {x} has no neighbours")
    total = sum(f[z] - f[x] for z in g.adjacency[x])
    if isinstance(total, (int, Fraction)):
        return Fraction(total) / d
    return total / d


def laplacian_apply(g: Graph, f: Sequence) -> list:
    """The whole function ``Lf``; exact when ``f`` is rational."""
    return [apply_laplacian(g, f, x) for x in range(g.n)]


def average_operator(g: Graph, f: Sequence, p) -> list:
    """``M_p f(x) = p f(x) + (1-p)/d_x * sum_{z ~ x} f(z)``, the mean of ``f`` under the lazy walk."""
    p = Fraction(p)
    exact = all(isinstance(v, (int, Fraction)) for v in f)
    if not exact:
        p = float(p)
    out = []
    for x in range(g.n):
        d = g.degree(x)
        if d == 0:
            raise IsolatedVertex(f"vertex {x} has no neighbours")
        out.append(p * f[x] + (1 - p) / d * sum(f[z] for z in g.adjacency[x]))
    if exact:
        lf = laplacian_apply(g, f)
        assert all(out[x] == f[x] + (1 - p) * lf[x] for x in range(g.n))
    return out


@dataclass(frozen=True)
class Spectrum:
    """Eigenpairs of ``-L``; ``vectors[:, k]`` has unit degree-weighted norm."""

    values: np.ndarray
    vectors: np.ndarray
    degrees: np.ndarray

    @property
    def lambda1(self) -> float:
        nonzero = self.values[self.values > ZERO_EIGENVALUE_CUTOFF]
        return float(nonzero[0])

    def heat_operator(self, t: float) -> np.ndarray:
        """Matrix of ``P_t`` acting on column vectors."""
        if t < 0:
            raise NegativeTime(f"t = {t} is negative")
        phi = self.vectors
        return (phi * np.exp(-t * self.values)) @ (phi.T * self.degrees)


@lru_cache(maxsize=64)
def spectrum(g: Graph) -> Spectrum:
    gmod.require_connected(g)
    if g.n == 1:
        raise IsolatedVertex("a single vertex has no Laplacian")
    deg = np.array(g.degrees, dtype=float)
    adj = np.zeros((g.n, g.n))
    for u, v in g.edges():
        adj[u, v] = adj[v, u] = 1.0
    s = 1.0 / np.sqrt(deg)
    sym = np.eye(g.n) - s[:, None] * adj * s[None, :]
    values, u = np.linalg.eigh(sym)
    phi = s[:, None] * u
    minus_lap = -laplacian(g).dense()
    resid = np.abs(minus_lap @ phi - phi * values).max()
    if resid > RESIDUAL_TOL:
        raise ArithmeticError(f"eigen residual {resid:.3e} exceeds {RESIDUAL_TOL}")
    values = np.clip(values, 0.0, 2.0)
    values[0] = 0.0
    return Spectrum(values, phi, deg)


def heat_apply(g: Graph, f: Sequence[float], t: float) -> np.ndarray:
    """``P_t f`` for ``t >= 0``."""
    if t < 0:
        raise NegativeTime(f"t = {t} is negative")
    return spectrum(g).heat_operator(t) @ np.asarray(f, dtype=float)
