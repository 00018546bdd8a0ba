"""Matrix potentials Q(x), their mean matrix, and oscillatory Fourier probes.

Three concrete representations are supported: trigonometric polynomials,
piecewise constants and sampled values with linear interpolation.  The
oscillatory probe integrals int b(x) e^{i theta x} dx are evaluated in
closed form per representation cell, which is exact for all three variants
(the trig path reduces to harmonic extraction when theta is a multiple of
2 pi).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Sequence

import numpy as np

from .boundary import GammaPair
from .errors import OutOfDomain

TRIG, PIECEWISE, SAMPLED = 0, 1, 2
_TAG_NAMES = {TRIG: "trig", PIECEWISE: "piecewise", SAMPLED: "sampled"}


def _osc_cell(theta: complex, x0: float, x1: float) -> complex:
    """int_{x0}^{x1} e^{i theta x} dx, stable for small theta."""
    if abs(theta) * (x1 - x0) < 1e-8:
        mid = 0.5 * (x0 + x1)
        return (x1 - x0) * np.exp(1j * theta * mid) * (
            1.0 + (1j * theta * (x1 - x0)) ** 2 / 24.0
        )
    it = 1j * theta
    return (np.exp(it * x1) - np.exp(it * x0)) / it


def _osc_cell_x(theta: complex, x0: float, x1: float) -> complex:
    """int_{x0}^{x1} x e^{i theta x} dx."""
    if abs(theta) * (x1 - x0) < 1e-8 and abs(theta) * max(abs(x0), abs(x1)) < 1e-6:
        return 0.5 * (x1 ** 2 - x0 ** 2) + 1j * theta * (x1 ** 3 - x0 ** 3) / 3.0
    it = 1j * theta
    e1, e0 = np.exp(it * x1), np.exp(it * x0)
    return (x1 * e1 - x0 * e0) / it - (e1 - e0) / (it * it)


@dataclass(frozen=True)
class MatrixPotential:
    """m x m matrix potential on [0, 1]."""

    m: int
    tag: int
    trig_n: np.ndarray = field(repr=False)       # (H,) int harmonics
    trig_q: np.ndarray = field(repr=False)       # (H, m, m)
    breaks: np.ndarray = field(repr=False)       # (K+1,) for piecewise
    values: np.ndarray = field(repr=False)       # (K, m, m) piecewise values
    samples: np.ndarray = field(repr=False)      # (P+1, m, m) for sampled

    # ---- constructors -----------------------------------------------------

    @classmethod
    def trig(cls, m: int, harmonics: Dict[int, np.ndarray]) -> "MatrixPotential":
        """Q(x) = sum_n Q_n e^{2 pi i n x} from a harmonic table."""
        ns = np.array(sorted(harmonics), dtype=np.int64)
        qs = np.array([np.asarray(harmonics[int(n)], dtype=complex).reshape(m, m)
                       for n in ns], dtype=complex)
        if qs.size and not np.all(np.isfinite(qs)):
            raise ValueError("harmonic entries must be finite")
        return cls(m=m, tag=TRIG, trig_n=ns, trig_q=qs,
                   breaks=np.zeros(0), values=np.zeros((0, m, m), dtype=complex),
                   samples=np.zeros((0, m, m), dtype=complex))

    @classmethod
    def piecewise(cls, breaks: Sequence[float], values: Sequence) -> "MatrixPotential":
        bks = np.asarray(breaks, dtype=float)
        vals = np.asarray(values, dtype=complex)
        if vals.ndim == 1:
            vals = vals.reshape(-1, 1, 1)
        m = vals.shape[1]
        if bks[0] != 0.0 or bks[-1] != 1.0 or np.any(np.diff(bks) <= 0):
            raise ValueError("breakpoints must increase from 0 to 1")
        if vals.shape[0] != bks.shape[0] - 1:
            raise ValueError("need one value block per interval")
        return cls(m=m, tag=PIECEWISE, trig_n=np.zeros(0, dtype=np.int64),
                   trig_q=np.zeros((0, m, m), dtype=complex), breaks=bks, values=vals,
                   samples=np.zeros((0, m, m), dtype=complex))

    @classmethod
    def sampled(cls, samples: Sequence) -> "MatrixPotential":
        smp = np.asarray(samples, dtype=complex)
        if smp.ndim == 1:
            smp = smp.reshape(-1, 1, 1)
        if smp.shape[0] < 2:
            raise ValueError("need at least two samples")
        m = smp.shape[1]
        return cls(m=m, tag=SAMPLED, trig_n=np.zeros(0, dtype=np.int64),
                   trig_q=np.zeros((0, m, m), dtype=complex),
                   breaks=np.zeros(0), values=np.zeros((0, m, m), dtype=complex),
                   samples=smp)

    @classmethod
    def constant(cls, matrix) -> "MatrixPotential":
        c = np.atleast_2d(np.asarray(matrix, dtype=complex))
        return cls.trig(c.shape[0], {0: c})

    @property
    def variant(self) -> str:
        return _TAG_NAMES[self.tag]

    # ---- evaluation -------------------------------------------------------

    def evaluate(self, x: float) -> np.ndarray:
        if x < 0.0 or x > 1.0:
            raise OutOfDomain(f"x = {x} outside [0, 1]")
        if self.tag == TRIG:
            out = np.zeros((self.m, self.m), dtype=complex)
            for n, q in zip(self.trig_n, self.trig_q):
                out += q * np.exp(2j * np.pi * n * x)
            return out
        if self.tag == PIECEWISE:
            idx = min(np.searchsorted(self.breaks, x, side="right") - 1,
                      self.values.shape[0] - 1)
            idx = max(idx, 0)
            return self.values[idx].copy()
        p = self.samples.shape[0] - 1
        u = x * p
        i0 = min(int(u), p - 1)
        w = u - i0
        return (1.0 - w) * self.samples[i0] + w * self.samples[i0 + 1]

    def mean(self) -> np.ndarray:
        """The mean matrix C = int_0^1 Q(x) dx."""
        if self.tag == TRIG:
            where = np.nonzero(self.trig_n == 0)[0]
            if where.size:
                return self.trig_q[where[0]].copy()
            return np.zeros((self.m, self.m), dtype=complex)
        if self.tag == PIECEWISE:
            widths = np.diff(self.breaks)
            return np.tensordot(widths, self.values, axes=(0, 0))
        p = self.samples.shape[0] - 1
        w = np.full(p + 1, 1.0 / p)
        w[0] = w[-1] = 0.5 / p
        return np.tensordot(w, self.samples, axes=(0, 0))

    # ---- oscillatory probes ------------------------------------------------

    def oscillatory_integral(self, theta: complex) -> np.ndarray:
        """Entrywise int_0^1 Q(x) e^{i theta x} dx, exact per representation."""
        if self.tag == TRIG:
            out = np.zeros((self.m, self.m), dtype=complex)
            for n, q in zip(self.trig_n, self.trig_q):
                out += q * _osc_cell(theta + 2.0 * np.pi * n, 0.0, 1.0)
            return out
        if self.tag == PIECEWISE:
            out = np.zeros((self.m, self.m), dtype=complex)
            for j in range(self.values.shape[0]):
                out += self.values[j] * _osc_cell(theta, self.breaks[j], self.breaks[j + 1])
            return out
        p = self.samples.shape[0] - 1
        out = np.zeros((self.m, self.m), dtype=complex)
        for j in range(p):
            x0, x1 = j / p, (j + 1) / p
            s0, s1 = self.samples[j], self.samples[j + 1]
            slope = (s1 - s0) * p
            const = s0 - slope * x0
            out += const * _osc_cell(theta, x0, x1) + slope * _osc_cell_x(theta, x0, x1)
        return out

    def probe_coefficient(self, s: int, i: int, k: int, gamma_r: complex,
                          sign: int) -> complex:
        """int_0^1 b_{s,i}(x) e^{+/- i (4 pi k + 2 gamma_r) x} dx (1-based s, i)."""
        if not (1 <= s <= self.m and 1 <= i <= self.m):
            raise ValueError("entry indices must lie in 1..m")
        theta = (1 if sign >= 0 else -1) * (4.0 * np.pi * k + 2.0 * gamma_r)
        return complex(self.oscillatory_integral(theta)[s - 1, i - 1])

    # ---- misc --------------------------------------------------------------

    def adjoint(self) -> "MatrixPotential":
        """Pointwise conjugate transpose, Q(x) -> Q(x)^H."""
        if self.tag == TRIG:
            table = {int(-n): np.conjugate(q.T) for n, q in zip(self.trig_n, self.trig_q)}
            return MatrixPotential.trig(self.m, table)
        if self.tag == PIECEWISE:
            return MatrixPotential.piecewise(self.breaks,
                                             np.conjugate(self.values.transpose(0, 2, 1)))
        return MatrixPotential.sampled(np.conjugate(self.samples.transpose(0, 2, 1)))

    def shifted(self, delta) -> "MatrixPotential":
        """Q(x) - delta (matrix or scalar), used for Q - C residual checks."""
        d = np.atleast_2d(np.asarray(delta, dtype=complex))
        if d.shape == (1, 1) and self.m > 1:
            d = d[0, 0] * np.eye(self.m)
        if self.tag == TRIG:
            table = {int(n): q.copy() for n, q in zip(self.trig_n, self.trig_q)}
            table[0] = table.get(0, np.zeros((self.m, self.m), dtype=complex)) - d
            return MatrixPotential.trig(self.m, table)
        if self.tag == PIECEWISE:
            return MatrixPotential.piecewise(self.breaks, self.values - d)
        return MatrixPotential.sampled(self.samples - d)

    def interior_breakpoints(self) -> np.ndarray:
        """Points where the integrand is non-smooth (integration panels split here)."""
        if self.tag == PIECEWISE:
            return self.breaks[1:-1].copy()
        return np.zeros(0)

    def scale(self) -> float:
        """Crude magnitude scale of Q, used in tolerance scalings."""
        if self.tag == TRIG:
            return float(sum(np.abs(q).max() for q in self.trig_q)) if self.trig_q.size else 0.0
        if self.tag == PIECEWISE:
            return float(np.abs(self.values).max()) if self.values.size else 0.0
        return float(np.abs(self.samples).max())

    def kernel_data(self):
        """Arrays consumed by the jitted integrator kernels."""
        return (np.int64(self.tag),
                np.ascontiguousarray(self.trig_n),
                np.ascontiguousarray(self.trig_q),
                np.ascontiguousarray(self.breaks),
                np.ascontiguousarray(self.values),
                np.ascontiguousarray(self.samples))


def mean_matrix(q: MatrixPotential) -> np.ndarray:
    return q.mean()


@dataclass(frozen=True)
class ProbeRecord:
    s: int
    i: int
    k: int
    r: int
    sign: int
    value: complex


@dataclass(frozen=True)
class AlphaSequence:
    """Error scale alpha_k = max |b^{+/-}_{s,i,2k,r}| with all probes kept."""

    ks: np.ndarray
    alphas: np.ndarray
    probes: tuple

    def alpha(self, k: int) -> float:
        idx = np.nonzero(self.ks == abs(int(k)))[0]
        if idx.size == 0:
            raise KeyError(f"alpha_k not computed for k = {k}")
        return float(self.alphas[idx[0]])


def alpha_sequence(q: MatrixPotential, gamma: GammaPair,
                   k_range: Iterable[int]) -> AlphaSequence:
    """alpha_k over the given k values (absolute values of labels)."""
    ks = sorted({abs(int(k)) for k in k_range})
    alphas = []
    probes = []
    for k in ks:
        worst = 0.0
        for r, g in ((1, gamma.gamma1), (2, gamma.gamma2)):
            for sign in (+1, -1):
                block = q.oscillatory_integral(
                    float(sign) * (4.0 * np.pi * k + 2.0 * g))
                for s in range(1, q.m + 1):
                    for i in range(1, q.m + 1):
                        val = complex(block[s - 1, i - 1])
                        probes.append(ProbeRecord(s=s, i=i, k=k, r=r, sign=sign, value=val))
                        worst = max(worst, abs(val))
        alphas.append(worst)
    return AlphaSequence(ks=np.array(ks, dtype=np.int64),
                        alphas=np.array(alphas), probes=tuple(probes))
