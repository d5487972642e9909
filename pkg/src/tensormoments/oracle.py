"""Numerical check on an explicit conserved symmetric rank-2 field in 3D.

T_ij = (delta_ij Laplacian - d_i d_j) phi is symmetric and divergence free
for any smooth phi.  phi is radial, phi(x) = g(|x - c|^2 / w^2), so every
derivative has a closed form in g', g'', g'''.  Moments are integrated
with a tensor-product Gauss-Legendre rule; the quadrature is the only
approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np

from .system import build_system
from .words import Word

DIM = 3
COMPONENTS = tuple(combinations_with_replacement(range(DIM), 2))

VANISH_TOL = 1e-8
RELATION_TOL = 1e-6
NONZERO_TOL = 1e-3
CALIBRATION_TOL = 1e-10


@dataclass(frozen=True)
class ScalarProfile:
    kind: str = "gaussian"
    width: float = 1.0
    center: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.kind not in ("gaussian", "bump"):
            raise ValueError(f"unknown profile {self.kind!r}")
        if not self.width > 0:
            raise ValueError("width must be positive")

    def radial(self, t: np.ndarray):
        """g, g', g'', g''' at t = |x-c|^2 / width^2."""
        if self.kind == "gaussian":
            g = np.exp(-0.5 * t)
            return g, -0.5 * g, 0.25 * g, -0.125 * g
        g = np.zeros_like(t)
        d1, d2, d3 = (np.zeros_like(t) for _ in range(3))
        # beyond s < 1e-3, exp(-1/s) underflows and powers of 1/s overflow
        inside = t < 1.0 - 1e-3
        s = 1.0 - t[inside]
        gi = np.exp(-1.0 / s)
        h1, h2, h3 = -1.0 / s**2, -2.0 / s**3, -6.0 / s**4
        g[inside] = gi
        d1[inside] = h1 * gi
        d2[inside] = (h2 + h1 * h1) * gi
        d3[inside] = (h3 + 3 * h1 * h2 + h1**3) * gi
        return g, d1, d2, d3


@dataclass(frozen=True)
class TensorField2:
    profile: ScalarProfile

    def _radial(self, x: np.ndarray):
        w2 = self.profile.width**2
        u = x - np.asarray(self.profile.center)
        t = np.einsum("...i,...i->...", u, u) / w2
        return w2, u, t, self.profile.radial(t)

    def hessian(self, x: np.ndarray) -> np.ndarray:
        w2, u, _, (_, g1, g2, _) = self._radial(x)
        outer = u[..., :, None] * u[..., None, :]
        return 4 * g2[..., None, None] * outer / w2**2 + 2 * g1[..., None, None] * np.eye(DIM) / w2

    def components(self, x: np.ndarray) -> np.ndarray:
        """T_ij at points ``x`` of shape (..., 3); result has shape (..., 3, 3)."""
        hess = self.hessian(x)
        lap = np.trace(hess, axis1=-2, axis2=-1)
        return lap[..., None, None] * np.eye(DIM) - hess

    def divergence(self, x: np.ndarray) -> np.ndarray:
        """sum_i d_i T_ij = d_j (Laplacian phi) - sum_i d_i d_i d_j phi; zero up to rounding.

        The first term comes from differentiating the radial Laplacian formula,
        the second from contracting the full third-derivative tensor.
        """
        w2, u, t, (_, _, g2, g3) = self._radial(x)
        eye = np.eye(DIM)
        third = 8 * g3[..., None, None, None] * np.einsum("...i,...j,...k->...ijk", u, u, u) / w2**3
        sym = (
            np.einsum("ik,...j->...ijk", eye, u)
            + np.einsum("jk,...i->...ijk", eye, u)
            + np.einsum("ij,...k->...ijk", eye, u)
        )
        third = third + 4 * g2[..., None, None, None] * sym / w2**2
        grad_lap = (2 * (10 * g2 + 4 * t * g3) / w2**2)[..., None] * u
        return grad_lap - np.einsum("...iij->...j", third)


def make_field(profile: ScalarProfile) -> TensorField2:
    return TensorField2(profile)


@dataclass(frozen=True)
class QuadratureGrid:
    extent: float
    points: int = 48
    center: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def axes(self):
        nodes, weights = np.polynomial.legendre.leggauss(self.points)
        return [(c + self.extent * nodes, self.extent * weights) for c in self.center]


def default_grid(profile: ScalarProfile, points: int = 48) -> QuadratureGrid:
    extent = 8 * profile.width if profile.kind == "gaussian" else profile.width
    return QuadratureGrid(extent, points, profile.center)


@lru_cache(maxsize=2)
def _sample(field: TensorField2, grid: QuadratureGrid):
    (x, wx), (y, wy), (z, wz) = grid.axes()
    X = np.stack(np.meshgrid(x, y, z, indexing="ij"), axis=-1)
    weights = wx[:, None, None] * wy[None, :, None] * wz[None, None, :]
    return X, weights, field.components(X)


def _integrand(field, w_L: Word, w_R: Word, grid):
    if len(w_R) != 2:
        raise ValueError("right word must have length 2")
    if any(a >= DIM for a in w_L.letters + w_R.letters):
        raise ValueError("letters must be among a, b, c")
    X, weights, T = _sample(field, grid)
    i, j = w_R.expand()
    f = T[..., i, j].copy()
    for a in w_L.expand():
        f *= X[..., a]
    return f, weights


def numeric_moment(field: TensorField2, w_L: Word, w_R: Word, grid: QuadratureGrid) -> float:
    """Quadrature value of the integral of x^{w_L} T_{w_R}."""
    f, weights = _integrand(field, w_L, w_R, grid)
    return float(np.sum(f * weights))


def moment_scale(field: TensorField2, w_L: Word, w_R: Word, grid: QuadratureGrid) -> float:
    """Integral of |x^{w_L} T_{w_R}|, the magnitude a vanishing moment cancels."""
    f, weights = _integrand(field, w_L, w_R, grid)
    return float(np.sum(np.abs(f) * weights))


def calibration_error(grid: QuadratureGrid) -> float:
    """Relative error integrating a Gaussian of width extent/8 centred on the grid."""
    s2 = (grid.extent / 8) ** 2
    total = 1.0
    for (nodes, w), c in zip(grid.axes(), grid.center):
        total *= float(np.sum(w * np.exp(-((nodes - c) ** 2) / (2 * s2))))
    exact = (2 * math.pi * s2) ** 1.5
    return abs(total - exact) / exact


def conservation_residual(field: TensorField2, samples: int = 100, seed: int = 0) -> dict:
    rng = np.random.default_rng(seed)
    pts = np.asarray(field.profile.center) + rng.normal(scale=field.profile.width, size=(samples, DIM))
    T = field.components(pts)
    div = field.divergence(pts)
    scale = float(np.max(np.abs(T)))
    return {
        "max |div| / max |T|": float(np.max(np.abs(div))) / scale if scale else 0.0,
        "symmetric": bool(np.array_equal(T, np.swapaxes(T, -1, -2))),
    }


def _words(order: int) -> list[Word]:
    return [Word.from_letters(c) for c in combinations_with_replacement(range(DIM), order)]


def _component_word(c: tuple[int, int]) -> Word:
    return Word.from_letters(c)


def oracle_report(field: TensorField2, grid: QuadratureGrid | None = None) -> dict:
    """Check the vanishing of low moments and the relations among second moments."""
    if grid is None:
        grid = default_grid(field.profile)
    report: dict = {
        "profile": {"kind": field.profile.kind, "width": field.profile.width, "center": list(field.profile.center)},
        "grid": {"extent": grid.extent, "points": grid.points},
        "calibration error": calibration_error(grid),
    }
    report["conservation"] = conservation_residual(field)

    low = []
    for order in (0, 1):
        for wl in _words(order):
            for comp in COMPONENTS:
                wr = _component_word(comp)
                value = numeric_moment(field, wl, wr, grid)
                scale = moment_scale(field, wl, wr, grid)
                low.append({"moment": f"({wl.text()};{wr.text()})", "value": value, "relative": abs(value) / scale})
    report["vanishing moments"] = low
    report["max relative (|w_L| <= 1)"] = max(e["relative"] for e in low)
    report["vanishing holds"] = report["max relative (|w_L| <= 1)"] <= VANISH_TOL

    second: dict[tuple[Word, Word], float] = {}
    rel2 = []
    for wl in _words(2):
        for comp in COMPONENTS:
            wr = _component_word(comp)
            value = numeric_moment(field, wl, wr, grid)
            second[(wl, wr)] = value
            rel2.append(abs(value) / moment_scale(field, wl, wr, grid))
    report["max relative (|w_L| = 2)"] = max(rel2)
    report["second moments nonzero"] = max(rel2) > NONZERO_TOL

    # every identity for combined words of length 4 must hold on the numbers
    # relative to the largest second moment: many rows only combine moments that vanish by symmetry
    size = max(abs(v) for v in second.values())
    worst = 0.0
    for W in _words(4):
        sys = build_system(W, 2)
        vals = [second[(m.left, m.right)] for m in sys.unknowns]
        for i in range(len(sys.rows)):
            total = sum(c * vals[j] for r, j, c in sys.triplets if r == i)
            worst = max(worst, abs(total) / size)
    report["max identity residual (|w_L| = 2)"] = worst

    pairs = []
    for a in range(DIM):
        for b in range(DIM):
            if a == b:
                continue
            aabb = second[(Word.from_letters([a, a]), Word.from_letters([b, b]))]
            abab = second[(Word.from_letters(sorted([a, b])), Word.from_letters(sorted([a, b])))]
            s1 = moment_scale(field, Word.from_letters([a, a]), Word.from_letters([b, b]), grid)
            s2 = moment_scale(field, Word.from_letters(sorted([a, b])), Word.from_letters(sorted([a, b])), grid)
            pairs.append(
                {
                    "a": a,
                    "b": b,
                    "(aa;bb)": aabb,
                    "(ab;ab)": abab,
                    "relative residual": abs(aabb + 2 * abab) / max(abs(aabb), abs(abab)),
                    "relative sizes": [abs(aabb) / s1, abs(abab) / s2],
                }
            )
    report["(aa;bb) + 2(ab;ab)"] = pairs
    report["relation holds"] = all(p["relative residual"] <= RELATION_TOL for p in pairs) and worst <= RELATION_TOL
    report["relation terms nonzero"] = all(min(p["relative sizes"]) > NONZERO_TOL for p in pairs)
    report["holds"] = bool(
        report["vanishing holds"]
        and report["relation holds"]
        and report["relation terms nonzero"]
        and report["second moments nonzero"]
        and report["conservation"]["symmetric"]
        and report["conservation"]["max |div| / max |T|"] <= 1e-12
    )
    return report


def convergence(field: TensorField2, points=(12, 24, 48)) -> list[dict]:
    """Largest relative low-order moment as the rule is refined."""
    out = []
    for p in points:
        grid = default_grid(field.profile, p)
        worst = 0.0
        for order in (0, 1):
            for wl in _words(order):
                for comp in COMPONENTS:
                    wr = _component_word(comp)
                    worst = max(worst, abs(numeric_moment(field, wl, wr, grid)) / moment_scale(field, wl, wr, grid))
        out.append({"points": p, "max relative": worst})
    return out

