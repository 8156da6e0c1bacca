"""Otto's Riemannian inner product over the Fourier frame.

The quadrature value of int phi1' phi2' rho dtheta is authoritative; the
closed-form coefficient (delta_nm n^2 / 2, independent of rho) is kept as a
labeled evaluator and the discrepancy report quantifies where the two differ
at non-uniform densities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .calculus import laplace_mu
from .config import DEFAULT, SpectralConfig
from .measure import Density
from .trigpoly import TrigPoly, derivative, integrate, multiply

__all__ = ["BasisLabel", "GramMatrix", "basis_list", "otto_inner", "otto_norm",
           "paper_metric_coefficient", "gram", "metric_discrepancy_report"]


@dataclass(frozen=True, order=True)
class BasisLabel:
    """A frame direction: the potential cos(n t) ("cos") or sin(n t) ("sin")."""

    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in ("cos", "sin"):
            raise ValueError(f"kind must be 'cos' or 'sin', got {self.kind!r}")
        if self.index < 1:
            raise ValueError("basis index must be >= 1")

    def potential(self) -> TrigPoly:
        return TrigPoly.basis(self.kind, self.index)

    def __str__(self):
        return f"{'c' if self.kind == 'cos' else 's'}{self.index}"


def basis_list(N: int) -> list[BasisLabel]:
    """Interleaved frame (c1, s1, c2, s2, ..., cN, sN)."""
    out = []
    for n in range(1, N + 1):
        out.append(BasisLabel("cos", n))
        out.append(BasisLabel("sin", n))
    return out


@dataclass(frozen=True)
class GramMatrix:
    order: int
    entries: np.ndarray  # (2N, 2N), interleaved basis order
    base: Density

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float).copy()
        if e.shape != (2 * self.order, 2 * self.order):
            raise ValueError("entries must be a 2N x 2N matrix")
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    def labels(self) -> list[BasisLabel]:
        return basis_list(self.order)

    def to_csv(self) -> str:
        labels = [str(l) for l in self.labels()]
        lines = ["," + ",".join(labels)]
        for lab, row in zip(labels, self.entries):
            lines.append(lab + "," + ",".join(f"{x:.17g}" for x in row))
        return "\n".join(lines) + "\n"


def otto_inner(mu: Density, phi1: TrigPoly, phi2: TrigPoly) -> float:
    """int phi1' phi2' rho dtheta by exact quadrature."""
    return integrate(multiply(multiply(derivative(phi1), derivative(phi2)), mu.rho))


def otto_norm(mu: Density, phi: TrigPoly) -> float:
    return float(np.sqrt(max(otto_inner(mu, phi, phi), 0.0)))


def paper_metric_coefficient(label1: BasisLabel, label2: BasisLabel) -> float:
    """Closed-form coefficient delta_nm n^2/2 for matching kinds, 0 mixed."""
    if label1.kind != label2.kind or label1.index != label2.index:
        return 0.0
    return label1.index ** 2 / 2.0


def gram(mu: Density, N: int) -> GramMatrix:
    """Dense Gram matrix of otto_inner over the interleaved frame."""
    if N < 1:
        raise ValueError("N must be >= 1")
    labels = basis_list(N)
    pots = [l.potential() for l in labels]
    G = np.zeros((2 * N, 2 * N))
    for i in range(2 * N):
        for j in range(i, 2 * N):
            G[i, j] = G[j, i] = otto_inner(mu, pots[i], pots[j])
    return GramMatrix(N, G, mu)


def integration_by_parts_inner(mu: Density, phi1: TrigPoly, phi2: TrigPoly,
                               config: SpectralConfig = DEFAULT) -> float:
    """-int phi1 (laplace_mu phi2) rho dtheta; equals otto_inner analytically."""
    # (rho phi2')' stays polynomial, so no grid division is needed.
    lap_weighted = derivative(multiply(mu.rho, derivative(phi2)))
    return -integrate(multiply(phi1, lap_weighted))


def metric_discrepancy_report(mu: Density, N: int) -> dict:
    """Entrywise |quadrature - closed form| over the order-N frame."""
    G = gram(mu, N)
    labels = G.labels()
    entries = []
    max_abs = 0.0
    for i, li in enumerate(labels):
        for j, lj in enumerate(labels):
            if j < i:
                continue
            q = G.entries[i, j]
            p = paper_metric_coefficient(li, lj)
            d = abs(q - p)
            max_abs = max(max_abs, d)
            entries.append({"i": str(li), "j": str(lj), "quadrature": q,
                            "paper": p, "diff": d})
    return {"N": N, "max_abs": max_abs, "entries": entries}
