"""Gamma calculus and Bakry-Emery curvature ``K(x, n)`` of the normalized Laplacian.

``K(x, n)`` is the largest ``K`` with

    Gamma_2(f)(x) >= (1/n) (Lf(x))^2 + K Gamma(f)(x)    for all f.

Both sides only see ``f`` on the 2-ball around ``x`` and are invariant under
adding constants, so pinning ``f(x) = 0`` turns the problem into a pencil of
quadratic forms ``(A, B)`` on ``B_2(x) \\ {x}``.  ``B`` is positive definite on
the 1-sphere and vanishes on the 2-sphere; the 2-sphere coordinates are
eliminated with a Schur complement and ``K`` is the smallest generalized
eigenvalue of what is left.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg

from . import graph as gmod
from .errors import DegenerateKernel
from .graph import Graph
from .spectral import apply_laplacian

INF = math.inf
KERNEL_TOL = 1e-9
PINV_RCOND = 1e-9


# ---------------------------------------------------------------------------
# Gamma and Gamma_2 on explicit functions
# ---------------------------------------------------------------------------


def _lap(g: Graph, f, x):
    d = g.degree(x)
    return sum((f[z] - f[x] for z in g.adjacency[x]), Fraction(0)) / d


def gamma(g: Graph, f: Sequence, h: Sequence, x: int) -> Fraction:
    """``Gamma(f, h)(x)`` from ``2 Gamma(f,h) = L(fh) - f Lh - h Lf``.

    The neighbour-sum form ``(1/2d_x) sum (f(z)-f(x))(h(z)-h(x))`` is computed
    as well and must agree exactly.
    """
    fh = _Product(f, h)
    definitional = (_lap(g, fh, x) - f[x] * _lap(g, h, x) - _lap(g, f, x) * h[x]) / 2
    d = g.degree(x)
    summed = sum(((f[z] - f[x]) * (h[z] - h[x]) for z in g.adjacency[x]), Fraction(0)) / (2 * d)
    assert definitional == summed, (definitional, summed)
    return summed


class _Product:
    """Lazy pointwise product ``f * h`` indexable by vertex."""

    def __init__(self, f, h):
        self.f, self.h = f, h

    def __getitem__(self, v):
        return self.f[v] * self.h[v]


class _Local(dict):
    """A vertex function known on a few vertices (a dict indexed like a list)."""


def gamma2(g: Graph, f: Sequence, h: Sequence, x: int) -> Fraction:
    """``Gamma_2(f, h)(x)`` from ``2 Gamma_2(f,h) = L Gamma(f,h) - Gamma(f, Lh) - Gamma(Lf, h)``."""
    ball1 = (x, *g.adjacency[x])
    gam = _Local({y: gamma(g, f, h, y) for y in ball1})
    lf = _Local({y: apply_laplacian(g, f, y) for y in ball1})
    lh = _Local({y: apply_laplacian(g, h, y) for y in ball1})
    return (_lap(g, gam, x) - gamma(g, f, lh, x) - gamma(g, lf, h, x)) / 2


# ---------------------------------------------------------------------------
# the curvature pencil
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BallIndex:
    """``B_2(x)`` ordered as centre, sorted 1-sphere, sorted 2-sphere."""

    center: int
    vertices: tuple[int, ...]
    sphere1_size: int

    @property
    def coordinates(self) -> tuple[int, ...]:
        """Vertices carrying a free coordinate once ``f(center) = 0``."""
        return self.vertices[1:]

    @property
    def in_ball1(self) -> tuple[bool, ...]:
        return tuple(i <= self.sphere1_size for i in range(len(self.vertices)))


def ball_index(g: Graph, x: int) -> BallIndex:
    s0, s1, s2 = gmod.ball(g, x, 2)
    return BallIndex(x, (x, *s1, *s2), len(s1))


@dataclass(frozen=True)
class CurvaturePencil:
    """Exact quadratic forms on ``B_2(x) \\ {x}`` (with ``f(x) = 0``).

    ``A``: ``f -> Gamma_2(f)(x) - (1/n)(Lf(x))^2``; ``B``: ``f -> Gamma(f)(x)``;
    ``dvec``: ``f -> Lf(x)``.
    """

    ball: BallIndex
    dimension: float
    A_exact: tuple[tuple[Fraction, ...], ...]
    B_exact: tuple[tuple[Fraction, ...], ...]
    dvec_exact: tuple[Fraction, ...]

    @property
    def A(self) -> np.ndarray:
        return np.array(self.A_exact, dtype=float).reshape(self.size, self.size)

    @property
    def B(self) -> np.ndarray:
        return np.array(self.B_exact, dtype=float).reshape(self.size, self.size)

    @property
    def dvec(self) -> np.ndarray:
        return np.array(self.dvec_exact, dtype=float)

    @property
    def size(self) -> int:
        return len(self.dvec_exact)


def _gamma_form(g: Graph, y: int, pos: Mapping[int, int], out: dict, scale: Fraction) -> None:
    """Accumulate ``scale * Gamma(., .)(y)`` as a symmetric matrix into ``out``."""
    c = scale / (2 * g.degree(y))
    iy = pos[y]
    for z in g.adjacency[y]:
        iz = pos[z]
        out[iz, iz] += c
        out[iy, iy] += c
        out[iz, iy] -= c
        out[iy, iz] -= c


def build_pencil(g: Graph, x: int, n: float = INF) -> CurvaturePencil:
    gmod.require_connected(g)
    bi = ball_index(g, x)
    pos = {v: i for i, v in enumerate(bi.vertices)}
    m = len(bi.vertices)
    ball1 = bi.vertices[: bi.sphere1_size + 1]

    # Laplacian rows of the 1-ball, columns in the 2-ball
    lap_rows: dict[int, dict[int, Fraction]] = {}
    for y in ball1:
        row = {pos[y]: Fraction(-1)}
        for z in g.adjacency[y]:
            row[pos[z]] = Fraction(1, g.degree(y))
        lap_rows[pos[y]] = row

    gam_x: dict = defaultdict(Fraction)
    _gamma_form(g, x, pos, gam_x, Fraction(1))

    # 2 Gamma_2 = sum_y L[x,y] Gamma_y - Gamma_x L - (Gamma_x L)^T
    two_g2: dict = defaultdict(Fraction)
    for j, coeff in lap_rows[pos[x]].items():
        _gamma_form(g, bi.vertices[j], pos, two_g2, coeff)
    gx_l: dict = defaultdict(Fraction)
    for (i, k), gik in gam_x.items():
        for j, lkj in lap_rows[k].items():
            gx_l[i, j] += gik * lkj
    for (i, j), v in gx_l.items():
        two_g2[i, j] -= v
        two_g2[j, i] -= v

    dvec_full = [lap_rows[0].get(i, Fraction(0)) for i in range(m)]
    inv_n = Fraction(0) if n == INF else 1 / Fraction(n)

    size = m - 1
    A = [[Fraction(0)] * size for _ in range(size)]
    B = [[Fraction(0)] * size for _ in range(size)]
    for (i, j), v in two_g2.items():
        if i and j:
            A[i - 1][j - 1] += v / 2
    for (i, j), v in gam_x.items():
        if i and j:
            B[i - 1][j - 1] += v
    dvec = dvec_full[1:]
    if inv_n:
        for i in range(size):
            for j in range(size):
                A[i][j] -= inv_n * dvec[i] * dvec[j]
    for i in range(size):
        for j in range(i):
            assert A[i][j] == A[j][i] and B[i][j] == B[j][i]
    return CurvaturePencil(bi, n, tuple(map(tuple, A)), tuple(map(tuple, B)), tuple(dvec))


def quadratic_forms(g: Graph, f: Sequence, x: int, n: float = INF) -> tuple[Fraction, Fraction]:
    """``(Gamma_2(f)(x) - (1/n)(Lf(x))^2, Gamma(f)(x))`` evaluated directly on ``f``."""
    g2 = gamma2(g, f, f, x)
    if n != INF:
        g2 -= apply_laplacian(g, f, x) ** 2 / Fraction(n)
    return g2, gamma(g, f, f, x)


@dataclass(frozen=True)
class BECurvatureResult:
    vertex: int
    dimension: float
    K: float
    minimizer: dict  # vertex -> value on B_2(x), centre pinned to 0
    certificate_slack: float


def _minimize_pencil(p: CurvaturePencil) -> tuple[float, np.ndarray]:
    A, B = p.A, p.B
    k1 = p.ball.sphere1_size
    A11, A12, A22 = A[:k1, :k1], A[:k1, k1:], A[k1:, k1:]
    B11 = B[:k1, :k1]
    if A22.size:
        w = np.linalg.eigvalsh(A22)
        if w.min() < -KERNEL_TOL:
            raise DegenerateKernel(f"2-sphere block has eigenvalue {w.min():.3e} at vertex {p.ball.center}")
        pinv = np.linalg.pinv(A22, rcond=PINV_RCOND, hermitian=True)
        # a kernel direction of A22 that A12 does not annihilate drives the form to -inf
        leak = A12 @ (np.eye(len(A22)) - pinv @ A22)
        if np.abs(leak).max() > KERNEL_TOL:
            return -INF, np.zeros(len(A))
        schur = A11 - A12 @ pinv @ A12.T
    else:
        pinv = np.zeros((0, 0))
        schur = A11
    schur = (schur + schur.T) / 2
    vals, vecs = scipy.linalg.eigh(schur, B11)
    f1 = vecs[:, 0]
    f2 = -pinv @ A12.T @ f1 if A22.size else np.zeros(0)
    return float(vals[0]), np.concatenate([f1, f2])


@lru_cache(maxsize=4096)
def be_curvature(g: Graph, x: int, n: float = INF) -> BECurvatureResult:
    p = build_pencil(g, x, n)
    K, f = _minimize_pencil(p)
    if K == -INF:
        return BECurvatureResult(x, n, K, {}, INF)
    qb = f @ p.B @ f
    f = f / math.sqrt(qb)
    slack = float(f @ p.A @ f - K * (f @ p.B @ f))
    minimizer = {x: 0.0}
    minimizer.update({v: float(val) for v, val in zip(p.ball.coordinates, f)})
    return BECurvatureResult(x, n, K, minimizer, slack)


def curvature_all(g: Graph, n: float = INF) -> list[BECurvatureResult]:
    gmod.require_connected(g)
    return [be_curvature(g, x, n) for x in range(g.n)]


def cd_constant(g: Graph, n: float = INF) -> float:
    """Largest ``K`` such that ``g`` satisfies ``CD(K, n)``."""
    return min(r.K for r in curvature_all(g, n))


def parse_dimension(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    value = float(Fraction(text))
    if value <= 0:
        raise ValueError("dimension must be positive")
    return value
