"""Truncated real trigonometric polynomials on [0, 2*pi).

A polynomial of degree N is f(t) = a0 + sum_{n=1..N} (a_n cos nt + b_n sin nt).
The constant coefficient is a0 itself (no 1/2 factor).  All values are
immutable; every operation returns a fresh TrigPoly.  Products and fits go
through an equal-weight uniform grid whose rectangle rule integrates any
polynomial of degree < M exactly, so arithmetic stays exact up to roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridTooCoarse, NonZeroMean

__all__ = [
    "TrigPoly",
    "QuadratureGrid",
    "derivative",
    "antiderivative_meanfree",
    "multiply",
    "integrate",
    "fit",
    "grid_for_degree",
]


@dataclass(frozen=True)
class TrigPoly:
    """Real trigonometric polynomial; coefficient arrays are copied and frozen."""

    cos_coeffs: np.ndarray  # a[0..N]
    sin_coeffs: np.ndarray  # b[1..N], empty when N = 0

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.cos_coeffs, dtype=float)).copy()
        b = np.atleast_1d(np.asarray(self.sin_coeffs, dtype=float)).copy() if np.size(self.sin_coeffs) else np.zeros(0)
        if a.size < 1:
            raise ValueError("cos_coeffs must contain at least a0")
        if b.size != a.size - 1:
            raise ValueError(f"sin_coeffs must have length {a.size - 1}, got {b.size}")
        a.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "cos_coeffs", a)
        object.__setattr__(self, "sin_coeffs", b)

    @property
    def degree(self) -> int:
        return self.cos_coeffs.size - 1

    @property
    def a0(self) -> float:
        return float(self.cos_coeffs[0])

    def __call__(self, theta):
        return self.eval(theta)

    def eval(self, theta):
        """Evaluate at a scalar or array of angles."""
        theta = np.asarray(theta, dtype=float)
        n = np.arange(1, self.degree + 1)
        ang = np.multiply.outer(theta, n)
        out = self.a0 + np.cos(ang) @ self.cos_coeffs[1:] + np.sin(ang) @ self.sin_coeffs
        return float(out) if out.ndim == 0 else out

    def coeff_norm(self) -> float:
        """Sup norm of the coefficient vector."""
        return max(float(np.max(np.abs(self.cos_coeffs))),
                   float(np.max(np.abs(self.sin_coeffs), initial=0.0)))

    def pad_to(self, N: int) -> "TrigPoly":
        if N < self.degree:
            raise ValueError("pad_to cannot reduce the degree")
        a = np.zeros(N + 1)
        b = np.zeros(N)
        a[: self.degree + 1] = self.cos_coeffs
        b[: self.degree] = self.sin_coeffs
        return TrigPoly(a, b)

    def truncate(self, N: int) -> "TrigPoly":
        """Drop coefficients above degree N (pads if N exceeds the degree)."""
        if N >= self.degree:
            return self.pad_to(N)
        return TrigPoly(self.cos_coeffs[: N + 1], self.sin_coeffs[:N])

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        N = max(self.degree, other.degree)
        f, g = self.pad_to(N), other.pad_to(N)
        return TrigPoly(f.cos_coeffs + g.cos_coeffs, f.sin_coeffs + g.sin_coeffs)

    def __sub__(self, other: "TrigPoly") -> "TrigPoly":
        return self + (-1.0) * other

    def __mul__(self, c):
        if isinstance(c, TrigPoly):
            return multiply(self, c)
        return TrigPoly(self.cos_coeffs * float(c), self.sin_coeffs * float(c))

    __rmul__ = __mul__

    def __neg__(self):
        return (-1.0) * self

    def meanfree(self) -> "TrigPoly":
        a = self.cos_coeffs.copy()
        a[0] = 0.0
        return TrigPoly(a, self.sin_coeffs)

    def is_meanfree(self, rtol: float = 1e-12) -> bool:
        return abs(self.a0) <= rtol * (1.0 + self.coeff_norm())

    def to_json_dict(self) -> dict:
        return {"N": self.degree,
                "a": [float(x) for x in self.cos_coeffs],
                "b": [float(x) for x in self.sin_coeffs]}

    @staticmethod
    def from_json_dict(d: dict) -> "TrigPoly":
        N = int(d["N"])
        a = np.asarray(d["a"], dtype=float)
        b = np.asarray(d["b"], dtype=float)
        if a.size != N + 1 or b.size != N:
            raise ValueError("coefficient arrays inconsistent with declared degree")
        return TrigPoly(a, b)

    @staticmethod
    def zero(N: int = 0) -> "TrigPoly":
        return TrigPoly(np.zeros(N + 1), np.zeros(N))

    @staticmethod
    def constant(c: float) -> "TrigPoly":
        return TrigPoly(np.array([float(c)]), np.zeros(0))

    @staticmethod
    def basis(kind: str, n: int, amplitude: float = 1.0) -> "TrigPoly":
        """The basis function cos(n t) ("cos") or sin(n t) ("sin"), scaled."""
        a = np.zeros(n + 1)
        b = np.zeros(n)
        if kind == "cos":
            a[n] = amplitude
        elif kind == "sin":
            if n < 1:
                raise ValueError("sin basis needs n >= 1")
            b[n - 1] = amplitude
        else:
            raise ValueError(f"unknown basis kind {kind!r}")
        return TrigPoly(a, b)


@dataclass(frozen=True)
class QuadratureGrid:
    """Uniform grid on [0, 2*pi) with the equal-weight rectangle rule."""

    size: int
    nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        M = int(self.size)
        if M < 1 or (M & (M - 1)):
            raise ValueError(f"grid size must be a power of two, got {M}")
        nodes = 2.0 * np.pi * np.arange(M) / M
        nodes.flags.writeable = False
        object.__setattr__(self, "size", M)
        object.__setattr__(self, "nodes", nodes)

    @property
    def weight(self) -> float:
        return 2.0 * np.pi / self.size

    def quad(self, samples) -> float:
        """Rectangle-rule integral; exact for TrigPolys of degree < size."""
        return float(np.sum(samples)) * self.weight


def grid_for_degree(total_degree: int, minimum: int = 4) -> QuadratureGrid:
    """Smallest power-of-two grid exact for the given total degree."""
    M = minimum
    while M < 2 * total_degree + 2:
        M *= 2
    return QuadratureGrid(M)


def derivative(f: TrigPoly) -> TrigPoly:
    n = np.arange(1, f.degree + 1)
    return TrigPoly(np.concatenate(([0.0], n * f.sin_coeffs)), -n * f.cos_coeffs[1:])


def antiderivative_meanfree(f: TrigPoly, rtol: float = 1e-12) -> TrigPoly:
    """Mean-free F with F' = f; requires f itself mean-free (periodicity)."""
    if not f.is_meanfree(rtol):
        raise NonZeroMean(f"no periodic antiderivative: a0 = {f.a0:g}",
                          operation="antiderivative_meanfree", a0=f.a0)
    n = np.arange(1, f.degree + 1)
    return TrigPoly(np.concatenate(([0.0], -f.sin_coeffs / n)), f.cos_coeffs[1:] / n)


def multiply(f: TrigPoly, g: TrigPoly) -> TrigPoly:
    """Exact product, degree deg(f) + deg(g), via sampling and refit."""
    N = f.degree + g.degree
    grid = grid_for_degree(N)
    return fit(f.eval(grid.nodes) * g.eval(grid.nodes), N, grid)


def integrate(f: TrigPoly) -> float:
    """Integral over [0, 2*pi); orthogonality kills everything but a0."""
    return 2.0 * np.pi * f.a0


def fit(samples, target_degree: int, grid: QuadratureGrid | None = None) -> TrigPoly:
    """Least-squares degree-N fit of grid samples by discrete Fourier analysis.

    Exact round trip for samples of a TrigPoly of degree <= N when the grid
    has at least 2N + 2 points.
    """
    samples = np.asarray(samples, dtype=float)
    M = samples.size
    if grid is not None and grid.size != M:
        raise ValueError("sample count does not match grid size")
    N = int(target_degree)
    if M < 2 * N + 2:
        raise GridTooCoarse(f"need M >= 2N+2 = {2 * N + 2} samples, got {M}",
                            operation="fit", M=M, N=N)
    F = np.fft.rfft(samples)
    a = np.empty(N + 1)
    a[0] = F[0].real / M
    a[1:] = 2.0 * F[1 : N + 1].real / M
    b = -2.0 * F[1 : N + 1].imag / M
    return TrigPoly(a, b)
