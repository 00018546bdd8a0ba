"""Shared output grid and composite-Simpson inner products.

All L2 normalizations, biorthogonal scalings and Gram matrices in the
toolkit are taken with respect to one discrete inner product, so that
identities enforced at construction time (e.g. (phi, phi*) = 1) are exact
when re-checked later.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [0, 1] with composite Simpson weights.

    ``n`` is the number of intervals and must be even; the grid has n + 1
    points.  ``inner`` implements (f, g) = int <f(x), g(x)> dx where the
    bracket is the C^m inner product (conjugate-linear in g).
    """

    n: int
    points: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @classmethod
    def make(cls, n: int = 2048) -> "Grid":
        if n < 2 or n % 2 != 0:
            raise ValueError("grid interval count must be even and >= 2")
        x = np.linspace(0.0, 1.0, n + 1)
        h = 1.0 / n
        w = np.full(n + 1, 2.0)
        w[1::2] = 4.0
        w[0] = w[-1] = 1.0
        w *= h / 3.0
        return cls(n=n, points=x, weights=w)

    @property
    def size(self) -> int:
        return self.n + 1

    def inner(self, f: np.ndarray, g: np.ndarray) -> complex:
        """Simpson approximation of (f, g); f, g of shape (G,) or (G, m)."""
        prod = f * np.conjugate(g)
        if prod.ndim == 2:
            prod = prod.sum(axis=1)
        return complex(np.dot(self.weights, prod))

    def norm(self, f: np.ndarray) -> float:
        return float(np.sqrt(max(self.inner(f, f).real, 0.0)))

    def gram(self, fs: np.ndarray, gs: np.ndarray) -> np.ndarray:
        """Cross-Gram G[i, j] = (fs[i], gs[j]) for stacks (N, G[, m])."""
        a = fs.reshape(fs.shape[0], -1)
        b = gs.reshape(gs.shape[0], -1)
        w = np.repeat(self.weights, a.shape[1] // self.weights.shape[0])
        return (a * w) @ np.conjugate(b.T)
