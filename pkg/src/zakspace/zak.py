"""Zak transforms on finite weighted actions.

The transform of f at a fundamental-domain point x0 and irrep sigma is
the group Fourier coefficient of the orbit function g -> f(g^-1 x0):

    Z f(x0, sigma) = sum_g f(g^-1 x0) sigma(g)*.

Values vanish unless sigma lies in the reciprocal space of the stabilizer
of x0 and always satisfy Z P = Z against the stabilizer-fixed projector;
both facts are asserted at construction so bookkeeping bugs surface
immediately.  Inversion, the isometry law, equivariance in the first
argument, the intertwining law in the second, the character variant, and
the orbit-supported eigen-measures all live here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .actions import GroupAction
from .duals import DualObject
from .errors import (
    DualGroupMismatch,
    EquivarianceViolation,
    InvariantViolation,
    NotRepresentative,
    SizeMismatch,
)
from .reciprocal import fixed_space_projector
from .weil import WeilStructure, weil_structure


@dataclass
class VerificationReport:
    check: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tolerance

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": bool(self.passed),
        }


class ZakCoefficients:
    """Dense table of Z f(x0, sigma) matrices over (representative, irrep).

    Blocks outside the stabilizer reciprocal space are stored as explicit
    zeros rather than omitted, so violations of the support law are
    observable.  Scalars (abelian duals) are 1x1 matrices; use value().
    """

    def __init__(self, action, dual, structure, data, f_norm):
        self.action = action
        self.dual = dual
        self.structure = structure
        self.data = data  # (x0, label) -> (d, d) array
        self.f_norm = f_norm
        self.stab_projectors = {}
        self.stab_members = {}
        for x0 in structure.decomp.representatives:
            stab = [g for g in action.group.elements() if action.apply(g, x0) == x0]
            for s in dual.irreps:
                p = fixed_space_projector(s, stab)
                self.stab_projectors[(x0, s.label)] = p
                self.stab_members[(x0, s.label)] = int(round(np.trace(p).real)) >= 1

    def __getitem__(self, key):
        return self.data[key]

    def value(self, x0: int, label: str) -> complex:
        block = self.data[(x0, label)]
        if block.shape != (1, 1):
            raise SizeMismatch(f"{label} is {block.shape[0]}-dimensional, not scalar")
        return complex(block[0, 0])

    def check_invariants(self) -> None:
        """Assert stabilizer-support vanishing and the projection identity."""
        tol = 1e-12 * max(1.0, self.f_norm)
        for (x0, label), block in self.data.items():
            if not self.stab_members[(x0, label)]:
                if np.linalg.norm(block) > tol:
                    raise InvariantViolation(
                        f"Z({x0},{label}) = {np.linalg.norm(block):g} off the reciprocal space"
                    )
            p = self.stab_projectors[(x0, label)]
            if np.max(np.abs(block @ p - block)) > tol:
                raise InvariantViolation(f"Z({x0},{label}) P != Z({x0},{label})")

    def image_norm_sq(self) -> float:
        """sum over x0 of mu_F(x0) sum_sigma (d/|G|) ||Z||_HS^2."""
        total = 0.0
        order = self.action.group.order
        for x0 in self.structure.decomp.representatives:
            mu = self.structure.decomp.fd_measure[x0]
            for s in self.dual.irreps:
                total += mu * (s.dim / order) * float(
                    np.sum(np.abs(self.data[(x0, s.label)]) ** 2)
                )
        return total


def _check_dual(action: GroupAction, dual: DualObject) -> None:
    if dual.group is not action.group and not np.array_equal(
        dual.group.table, action.group.table
    ):
        raise DualGroupMismatch("dual was built for a different group")


def zak(action: GroupAction, f, dual: DualObject, structure: WeilStructure | None = None) -> ZakCoefficients:
    """Zak transform of f over the canonical fundamental domain."""
    _check_dual(action, dual)
    f = np.asarray(f, dtype=complex)
    if f.shape != (action.npoints,):
        raise SizeMismatch(f"f must have shape ({action.npoints},), got {f.shape}")
    s = structure or weil_structure(action)
    inv_perm = action.perm[action.group.inverses]
    data = {}
    for x0 in s.decomp.representatives:
        orbit_vals = f[inv_perm[:, x0]]  # g -> f(g^-1 x0)
        for irr in dual.irreps:
            data[(x0, irr.label)] = np.einsum("g,gji->ij", orbit_vals, irr.matrices.conj())
    coeffs = ZakCoefficients(action, dual, s, data, float(np.linalg.norm(f)))
    coeffs.check_invariants()
    return coeffs


def extended_zak(action: GroupAction, f, dual: DualObject, x: int) -> dict:
    """Zak matrices at an arbitrary point, computed two ways and compared.

    The defining sum at x must reproduce Z(x0, sigma) sigma(g) for the
    group element carrying x to its representative; a mismatch is an
    implementation bug, reported as EquivarianceViolation.
    """
    _check_dual(action, dual)
    f = np.asarray(f, dtype=complex)
    s = weil_structure(action)
    inv_perm = action.perm[action.group.inverses]
    orbit_vals = f[inv_perm[:, x]]
    direct = {
        irr.label: np.einsum("g,gji->ij", orbit_vals, irr.matrices.conj())
        for irr in dual.irreps
    }
    coeffs = zak(action, f, dual, s)
    x0 = s.decomp.rep_of(x)
    g = int(s.decomp.to_rep_element[x])  # g x = x0, so x = g^-1 x0
    tol = 1e-12 * max(1.0, float(np.linalg.norm(f)))
    for irr in dual.irreps:
        via_law = coeffs[(x0, irr.label)] @ irr.matrices[g]
        if np.max(np.abs(via_law - direct[irr.label])) > tol:
            raise EquivarianceViolation(
                f"extended Zak at x={x}, sigma={irr.label} disagrees with the equivariance law"
            )
    return direct


def zak_inverse(coeffs: ZakCoefficients) -> np.ndarray:
    """Pointwise inversion f(x) = sum_{sigma in perp} (d/|G|) tr(Z(x0,sigma) sigma(g)).

    g is any element carrying x to its representative; the choice is
    immaterial because Z absorbs the stabilizer on the right.
    """
    coeffs.check_invariants()
    action, dual = coeffs.action, coeffs.dual
    decomp = coeffs.structure.decomp
    order = action.group.order
    f = np.zeros(action.npoints, dtype=complex)
    for x in range(action.npoints):
        x0 = decomp.rep_of(x)
        g = int(decomp.to_rep_element[x])
        val = 0.0 + 0.0j
        for s in dual.irreps:
            if not coeffs.stab_members[(x0, s.label)]:
                continue
            val += (s.dim / order) * np.trace(coeffs[(x0, s.label)] @ s.matrices[g])
        f[x] = val
    return f


def character_zak(action: GroupAction, f, dual: DualObject) -> dict:
    """Scalar traces of the Zak matrices, computed twice and reconciled.

    The defining sum modulates f by the conjugated character; it must equal
    the entrywise trace of the matrix transform to near machine precision.
    """
    _check_dual(action, dual)
    f = np.asarray(f, dtype=complex)
    coeffs = zak(action, f, dual)
    inv_perm = action.perm[action.group.inverses]
    out = {}
    scale = max(1.0, float(np.linalg.norm(f)))
    for x0 in coeffs.structure.decomp.representatives:
        orbit_vals = f[inv_perm[:, x0]]
        for s in dual.irreps:
            direct = np.sum(orbit_vals * s.character().conj())
            via_trace = np.trace(coeffs[(x0, s.label)])
            if abs(direct - via_trace) > 1e-13 * scale:
                raise InvariantViolation(
                    f"character Zak at ({x0},{s.label}) disagrees with tr(Z)"
                )
            out[(x0, s.label)] = complex(via_trace)
    return out


def character_zak_reconstruct(action: GroupAction, f, dual: DualObject) -> tuple[np.ndarray, float]:
    """Rebuild f from the extended character transform; returns (f_rec, residual).

    Pointwise, f(x) = sum_sigma (d/|G|) sum_g f(g^-1 x) conj(tr sigma(g));
    only the extended transform retains enough phase to invert.
    """
    _check_dual(action, dual)
    f = np.asarray(f, dtype=complex)
    inv_perm = action.perm[action.group.inverses]
    order = action.group.order
    f_rec = np.zeros_like(f)
    for x in range(action.npoints):
        orbit_vals = f[inv_perm[:, x]]
        for s in dual.irreps:
            f_rec[x] += (s.dim / order) * np.sum(orbit_vals * s.character().conj())
    resid = float(np.max(np.abs(f_rec - f)) / max(1.0, np.max(np.abs(f))))
    return f_rec, resid


def zak_measure_eval(action: GroupAction, dual: DualObject, x0: int, label: str, phi) -> np.ndarray:
    """Evaluate the orbit-supported eigen-measure: sum_g phi(g^-1 x0) sigma(g).

    This equals the Zak transform of phi at (x0, conjugate sigma); acting
    by g on the measure twists the value by sigma(g) on the right.
    """
    _check_dual(action, dual)
    s = weil_structure(action)
    if x0 not in s.decomp.representatives:
        raise NotRepresentative(x0)
    phi = np.asarray(phi, dtype=complex)
    if phi.shape != (action.npoints,):
        raise SizeMismatch(f"phi must have shape ({action.npoints},)")
    inv_perm = action.perm[action.group.inverses]
    irr = dual.by_label[label]
    return np.einsum("g,gij->ij", phi[inv_perm[:, x0]], irr.matrices)


def zak_measure_eigenlaw_residual(action: GroupAction, dual: DualObject, x0: int, label: str, phi) -> float:
    """On-demand check of the eigen-measure law, max over the whole group.

    Acting by g on the measure (pulling phi back along g^-1) multiplies the
    value by sigma(g) on the right.
    """
    phi = np.asarray(phi, dtype=complex)
    base = zak_measure_eval(action, dual, x0, label, phi)
    irr = dual.by_label[label]
    worst = 0.0
    for g in action.group.elements():
        shifted = phi[action.perm[g]]  # phi(g y), i.e. the g^-1 pullback
        lhs = zak_measure_eval(action, dual, x0, label, shifted)
        worst = max(worst, float(np.max(np.abs(lhs - base @ irr.matrices[g]))))
    return worst


def weak_inversion_residual(action: GroupAction, f, phi, dual: DualObject) -> float:
    """Pairing of Z f with the eigen-measures recovers sum f phi q w."""
    s = weil_structure(action)
    coeffs = zak(action, f, dual, s)
    phi = np.asarray(phi, dtype=complex)
    order = action.group.order
    total = 0.0 + 0.0j
    for x0 in s.decomp.representatives:
        mu = s.decomp.fd_measure[x0]
        for irr in dual.irreps:
            delta = zak_measure_eval(action, dual, x0, irr.label, phi)
            total += mu * (irr.dim / order) * np.trace(coeffs[(x0, irr.label)] @ delta)
    direct = np.sum(np.asarray(f, dtype=complex) * phi * s.point_measure)
    return float(abs(total - direct) / max(1.0, abs(direct)))


def verify_unitarity(coeffs, f) -> VerificationReport:
    """Norm identity ||f||^2 = weighted image norm, as a report.

    Accepts finite ZakCoefficients (weights q w on the source side) or a
    LatticeZakGrid (dual weight 1/prod(N) per wave sample).
    """
    from .lattice import LatticeZakGrid

    f = np.asarray(f, dtype=complex)
    if isinstance(coeffs, LatticeZakGrid):
        lhs = float(np.sum(np.abs(f) ** 2))
        rhs = float(np.sum(np.abs(coeffs.values) ** 2)) / float(np.prod(coeffs.periods))
        return VerificationReport("zak_unitarity", abs(lhs - rhs) / max(1.0, lhs), 1e-10)
    lhs = float(np.sum(np.abs(f) ** 2 * coeffs.structure.point_measure))
    rhs = coeffs.image_norm_sq()
    resid = abs(lhs - rhs) / max(1.0, lhs)
    return VerificationReport("zak_unitarity", resid, 1e-10)


def verify_roundtrip(action: GroupAction, f, dual: DualObject) -> VerificationReport:
    f = np.asarray(f, dtype=complex)
    f_rec = zak_inverse(zak(action, f, dual))
    resid = float(np.max(np.abs(f_rec - f)) / max(1.0, float(np.max(np.abs(f)))))
    return VerificationReport("zak_roundtrip", resid, 1e-11)


def intertwining_residual(action: GroupAction, f, dual: DualObject) -> float:
    """max over g of || Z[g . f] - sigma(g) Z f ||, exhaustive in g."""
    s = weil_structure(action)
    base = zak(action, f, dual, s)
    worst = 0.0
    for g in action.group.elements():
        shifted = zak(action, action.pullback(g, f), dual, s)
        for x0 in s.decomp.representatives:
            for irr in dual.irreps:
                delta = shifted[(x0, irr.label)] - irr.matrices[g] @ base[(x0, irr.label)]
                worst = max(worst, float(np.max(np.abs(delta))))
    return worst


def heisenberg_consistency_residual(action: GroupAction, f, dual: DualObject) -> float:
    """Second evaluation path via the projective-representation sum.

    Summing the modulated translates xi_(g,chi) f(x0) = f(g^-1 x0) conj(chi(g))
    over the group must reproduce Z f(x0, chi) for every character chi.
    Only meaningful for abelian duals.
    """
    _check_dual(action, dual)
    f = np.asarray(f, dtype=complex)
    coeffs = zak(action, f, dual)
    inv_perm = action.perm[action.group.inverses]
    worst = 0.0
    for x0 in coeffs.structure.decomp.representatives:
        for irr in dual.irreps:
            if irr.dim != 1:
                raise SizeMismatch("projective-sum path applies to abelian duals")
            xi_sum = np.sum(f[inv_perm[:, x0]] * irr.matrices[:, 0, 0].conj())
            worst = max(worst, abs(xi_sum - coeffs.value(x0, irr.label)))
    return float(worst)
