"""Fourier analysis on a finite group against a full dual.

The transform is fhat(sigma) = sum_g f(g) sigma(g)*, inverted by
f(g) = sum_sigma (d_sigma/|G|) tr(fhat(sigma) sigma(g)); the Plancherel
identity ||f||^2 = sum_sigma (d_sigma/|G|) ||fhat(sigma)||_HS^2 ties the
two normalizations together.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .duals import DualObject
from .errors import ShapeMismatch, SizeMismatch


@dataclass
class FourierCoefficients:
    """One d x d coefficient matrix per irrep label."""

    dual: DualObject
    blocks: dict

    def __getitem__(self, label: str) -> np.ndarray:
        return self.blocks[label]

    def hs_norm_sq(self) -> float:
        """Plancherel-weighted sum of squared Hilbert-Schmidt norms."""
        return float(
            sum(
                w * np.sum(np.abs(self.blocks[s.label]) ** 2)
                for w, s in zip(self.dual.plancherel_weight, self.dual.irreps)
            )
        )


def fourier(f, dual: DualObject) -> FourierCoefficients:
    f = np.asarray(f, dtype=complex)
    n = dual.group.order
    if f.shape != (n,):
        raise SizeMismatch(f"f must have shape ({n},), got {f.shape}")
    blocks = {}
    for s in dual.irreps:
        # sigma(g)* is the conjugate transpose
        blocks[s.label] = np.einsum("g,gji->ij", f, s.matrices.conj())
    return FourierCoefficients(dual, blocks)


def inverse_fourier(coeffs: FourierCoefficients, dual: DualObject) -> np.ndarray:
    n = dual.group.order
    out = np.zeros(n, dtype=complex)
    for w, s in zip(dual.plancherel_weight, dual.irreps):
        block = np.asarray(coeffs.blocks[s.label], dtype=complex)
        if block.shape != (s.dim, s.dim):
            raise ShapeMismatch(
                f"{s.label}: expected {(s.dim, s.dim)}, got {block.shape}"
            )
        out += w * np.einsum("ij,gji->g", block, s.matrices)
    return out


def plancherel_residual(f, dual: DualObject) -> float:
    """| ||f||^2 - weighted ||fhat||_HS^2 |, the finite Plancherel identity."""
    f = np.asarray(f, dtype=complex)
    lhs = float(np.sum(np.abs(f) ** 2))
    rhs = fourier(f, dual).hs_norm_sq()
    return abs(lhs - rhs) / max(1.0, lhs)
