"""Quasi-invariant measures and the Weil formula on finite actions.

With counting measure on the group, a weighted action carries the cocycle
lambda_g(x) = w(g x)/w(x) and a positive function q built from a Bruhat
function beta by

    q(x) = sum_g beta(g^-1 x) * lambda_{g^-1}(x).

The orbit-space measure solving

    sum_x f(x) q(x) w(x) = sum_orbits  mu(O) * A f(O)

is found exactly by plugging in delta functions at the orbit
representatives; A is the orbital mean  A f(O) = sum_g f(g^-1 x_O).
The fundamental-domain measure is the same numbers transported to the
representatives.  For unit weights everything collapses to
mu(O) = 1/|stabilizer|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .actions import GroupAction, OrbitDecomposition, orbits
from .errors import SizeMismatch

ATOL = 1e-12


@dataclass
class Cocycle:
    """lambda_g(x) as an (order, npoints) array plus the positive function q."""

    lam: np.ndarray
    q: np.ndarray


def bruhat_function(action: GroupAction, decomp: OrbitDecomposition | None = None) -> np.ndarray:
    """beta with orbital mean 1: indicator of the fundamental domain over |G_x|."""
    decomp = decomp or orbits(action)
    beta = np.zeros(action.npoints)
    for oid, rep in enumerate(decomp.representatives):
        beta[rep] = 1.0 / decomp.stabilizer_sizes[oid]
    return beta


def cocycle(action: GroupAction, decomp: OrbitDecomposition | None = None) -> Cocycle:
    """Weight cocycle lambda and the function q solving the Weil identity."""
    group = action.group
    w = action.weights
    # lam[g, x] = w(g x) / w(x)
    lam = w[action.perm] / w[None, :]
    beta = bruhat_function(action, decomp)
    inv_perm = action.perm[group.inverses]          # inv_perm[g, x] = g^-1 x
    lam_inv_at = np.array([lam[group.inv(g)] for g in group.elements()])
    q = np.einsum("gx,gx->x", beta[inv_perm], lam_inv_at)

    # cocycle identity (g2 lambda_{g1})(x) = lambda_{g1 g2^-1}(x) / lambda_{g2^-1}(x)
    for g1 in group.elements():
        for g2 in group.elements():
            lhs = lam[g1][inv_perm[g2]]
            rhs = lam[group.mul(g1, group.inv(g2))] / lam[group.inv(g2)]
            if np.max(np.abs(lhs - rhs)) > ATOL * max(1.0, np.max(np.abs(rhs))):
                raise AssertionError(f"cocycle identity fails at ({g1},{g2})")
    # functional equation q(g^-1 x) = q(x) / lambda_{g^-1}(x)
    resid = np.max(np.abs(q[inv_perm] * lam_inv_at - q[None, :]))
    if resid > ATOL * max(1.0, float(np.max(q))):
        raise AssertionError(f"q functional equation fails, residual {resid}")
    return Cocycle(lam, q)


def orbital_mean(action: GroupAction, f, coc: Cocycle | None = None) -> np.ndarray:
    """Per-orbit mean A f(O) = sum_g f(g^-1 x); q-weighted integrand if coc given.

    The value is computed at every point of the orbit and asserted equal,
    which is the finite form of well-definedness on the orbit space.
    """
    f = np.asarray(f, dtype=complex)
    if f.shape != (action.npoints,):
        raise SizeMismatch(f"f must have shape ({action.npoints},), got {f.shape}")
    decomp = orbits(action)
    inv_perm = action.perm[action.group.inverses]
    integrand = f if coc is None else f / coc.q
    per_point = integrand[inv_perm].sum(axis=0)     # A f at every base point
    out = np.empty(decomp.norbits, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(per_point))))
    for oid, pts in enumerate(decomp.members):
        vals = per_point[pts]
        if np.max(np.abs(vals - vals[0])) > 1e-12 * scale:
            raise AssertionError(f"orbital mean depends on the representative in orbit {oid}")
        out[oid] = per_point[decomp.representatives[oid]]
    return out


def weil_measures(action: GroupAction, coc: Cocycle, decomp: OrbitDecomposition | None = None) -> OrbitDecomposition:
    """Fill orbit and fundamental-domain measures by the delta-function solve."""
    decomp = decomp or orbits(action)
    inv_perm = action.perm[action.group.inverses]
    measures = np.empty(decomp.norbits)
    for oid, rep in enumerate(decomp.representatives):
        delta = np.zeros(action.npoints)
        delta[rep] = 1.0
        mean_at_rep = delta[inv_perm[:, rep]].sum()  # = |stabilizer of rep|
        measures[oid] = coc.q[rep] * action.weights[rep] / mean_at_rep
    fd = {rep: measures[oid] for oid, rep in enumerate(decomp.representatives)}
    return OrbitDecomposition(
        decomp.orbit_id,
        decomp.representatives,
        decomp.members,
        decomp.to_rep_element,
        decomp.stabilizer_sizes,
        orbit_measure=measures,
        fd_measure=fd,
    )


@dataclass
class WeilStructure:
    """Everything the transforms downstream need about one action."""

    action: GroupAction
    decomp: OrbitDecomposition
    cocycle: Cocycle

    @property
    def point_measure(self) -> np.ndarray:
        """q(x) w(x), the density of the invariant reference measure."""
        return self.cocycle.q * self.action.weights


def weil_structure(action: GroupAction) -> WeilStructure:
    decomp = orbits(action)
    coc = cocycle(action, decomp)
    return WeilStructure(action, weil_measures(action, coc, decomp), coc)


def weil_residual(action: GroupAction, f, structure: WeilStructure | None = None) -> float:
    """|sum f q w - sum mu(O) A f(O)|, normalized by the l1 norm of f."""
    s = structure or weil_structure(action)
    f = np.asarray(f, dtype=complex)
    lhs = np.sum(f * s.point_measure)
    rhs = np.sum(s.decomp.orbit_measure * orbital_mean(action, f))
    return float(abs(lhs - rhs) / max(1.0, np.sum(np.abs(f))))


def mackey_bruhat_residual(action: GroupAction, f, structure: WeilStructure | None = None) -> float:
    """|sum f w - sum mu(O) A_q f(O)| for the q-weighted orbital mean."""
    s = structure or weil_structure(action)
    f = np.asarray(f, dtype=complex)
    lhs = np.sum(f * action.weights)
    rhs = np.sum(s.decomp.orbit_measure * orbital_mean(action, f, s.cocycle))
    return float(abs(lhs - rhs) / max(1.0, np.sum(np.abs(f))))
