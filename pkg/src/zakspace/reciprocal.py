"""Reciprocal spaces of subgroups and Poisson summation.

For a subgroup H of G the reciprocal space collects the irreps whose
restriction to H contains the trivial representation; the witness is the
projector P = (1/|H|) sum_h sigma(h) onto the H-fixed subspace, whose
trace is the multiplicity.  The subgroup measure is normalized to total
mass one throughout, the dual carries weight d/|G| per irrep (1/|G| per
character in the abelian case), and with those conventions both Poisson
identities hold exactly on finite groups:

    (1/|H|) sum_H f  =  sum_{chi in H^perp} fhat(chi)/|G|            (abelian)
    (1/|H|) sum_H f  =  sum_{sigma in H^perp} (d/|G|) tr(P fhat)     (general)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .duals import DualObject, UnitaryIrrep, dual_abelian
from .errors import NotCosetFunction, SizeMismatch
from .fourier import fourier
from .groups import FiniteGroup, check_subgroup, left_cosets

MULT_ATOL = 1e-6


@dataclass
class ReciprocalSpace:
    """Members of H^perp with the fixed-space projector and multiplicity each."""

    dual: DualObject
    subgroup: list[int]
    members: list[str]
    projectors: dict  # label -> P, for every irrep (zero projector off H^perp)
    multiplicities: dict

    def __contains__(self, label: str) -> bool:
        return label in set(self.members)


def fixed_space_projector(irrep: UnitaryIrrep, subgroup_elems) -> np.ndarray:
    """Average of sigma over H: the orthogonal projector onto H-fixed vectors."""
    return irrep.matrices[list(subgroup_elems)].mean(axis=0)


def reciprocal_space(dual: DualObject, subgroup) -> ReciprocalSpace:
    """H^perp = irreps containing the trivial restriction component."""
    sub = check_subgroup(dual.group, subgroup)
    members, projectors, mults = [], {}, {}
    for s in dual.irreps:
        p = fixed_space_projector(s, sub)
        tr = np.trace(p)
        mult = int(round(tr.real))
        if abs(tr - mult) > MULT_ATOL:
            raise AssertionError(f"{s.label}: trace of projector {tr} is not near an integer")
        projectors[s.label] = p
        mults[s.label] = mult
        if mult >= 1:
            members.append(s.label)
    return ReciprocalSpace(dual, sub, members, projectors, mults)


def poisson_abelian_check(f, group: FiniteGroup, subgroup, seed_dual: DualObject | None = None):
    """Both sides and residual of abelian Poisson summation for H in G."""
    dual = seed_dual or dual_abelian(group)
    rec = reciprocal_space(dual, subgroup)
    f = np.asarray(f, dtype=complex)
    if f.shape != (group.order,):
        raise SizeMismatch(f"f must have shape ({group.order},)")
    lhs = f[rec.subgroup].sum() / len(rec.subgroup)
    fhat = fourier(f, dual)
    rhs = sum(fhat[label][0, 0] for label in rec.members) / group.order
    return lhs, rhs, float(abs(lhs - rhs))


def poisson_compact_check(f, group: FiniteGroup, subgroup, dual: DualObject):
    """Both sides and residual of Poisson summation for a compact quotient."""
    rec = reciprocal_space(dual, subgroup)
    f = np.asarray(f, dtype=complex)
    if f.shape != (group.order,):
        raise SizeMismatch(f"f must have shape ({group.order},)")
    lhs = f[rec.subgroup].sum() / len(rec.subgroup)
    fhat = fourier(f, dual)
    rhs = 0.0 + 0.0j
    for label in rec.members:
        s = dual.by_label[label]
        rhs += (s.dim / group.order) * np.trace(rec.projectors[label] @ fhat[label])
    return lhs, rhs, float(abs(lhs - rhs))


def quotient_fourier_check(f_on_quotient, group: FiniteGroup, subgroup, dual: DualObject) -> float:
    """Round-trip a function on G/H through the quotient dual; max error.

    Accepts either one value per coset gH or a function on G that is
    constant on cosets (NotCosetFunction otherwise).  The coefficients are
    taken against sigma_{G/H} = sigma P with quotient measure |H| per
    coset, and the reconstruction uses weights d/|G| on the reciprocal
    space.  Also asserts the support condition fhat = 0 off H^perp.
    """
    sub = check_subgroup(group, subgroup)
    cosets = left_cosets(group, sub)
    f_in = np.asarray(f_on_quotient, dtype=complex)
    if f_in.shape == (group.order,):
        f_coset = np.empty(len(cosets), dtype=complex)
        for i, coset in enumerate(cosets):
            vals = f_in[coset]
            if np.max(np.abs(vals - vals[0])) > 1e-12 * max(1.0, np.max(np.abs(vals))):
                raise NotCosetFunction(f"f is not constant on coset {coset}")
            f_coset[i] = vals[0]
    elif f_in.shape == (len(cosets),):
        f_coset = f_in
    else:
        raise SizeMismatch(
            f"expected {group.order} values on G or {len(cosets)} per coset"
        )

    rec = reciprocal_space(dual, sub)
    f_ext = np.empty(group.order, dtype=complex)
    for i, coset in enumerate(cosets):
        f_ext[coset] = f_coset[i]
    fhat = fourier(f_ext, dual)

    # support: coefficients vanish off the reciprocal space
    for s in dual.irreps:
        if s.label not in rec and np.max(np.abs(fhat[s.label])) > 1e-10 * max(
            1.0, float(np.max(np.abs(f_coset)))
        ):
            raise AssertionError(f"fhat({s.label}) does not vanish off H^perp")

    reps = [c[0] for c in cosets]
    err = 0.0
    for i, rep in enumerate(reps):
        val = 0.0 + 0.0j
        for label in rec.members:
            s = dual.by_label[label]
            sigma_quot = s.matrices[rep] @ rec.projectors[label]
            val += (s.dim / group.order) * np.trace(fhat[label] @ sigma_quot)
        err = max(err, abs(val - f_coset[i]))
    return float(err)


def invariance_support_residual(f, dual: DualObject, subgroup, side: str = "left") -> float:
    """Cor-type support law: H-invariance of f pins fhat to the projector.

    left:  f(h g) = f(g) for h in H  =>  fhat(sigma) P = fhat(sigma)
    right: f(g h) = f(g) for h in H  =>  P fhat(sigma) = fhat(sigma)
    """
    rec = reciprocal_space(dual, subgroup)
    fhat = fourier(np.asarray(f, dtype=complex), dual)
    resid = 0.0
    for s in dual.irreps:
        p = rec.projectors[s.label]
        block = fhat[s.label]
        delta = block @ p - block if side == "left" else p @ block - block
        resid = max(resid, float(np.max(np.abs(delta))))
    return resid
