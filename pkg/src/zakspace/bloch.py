"""Block diagonalization of invariant operators and band structures.

A Hermitian operator commuting with every permutation of an action is
unitarily equivalent to a direct sum of blocks, one block of size
(total multiplicity of sigma) repeated d_sigma times per irrep.  The
change of basis is assembled from the same data the Zak transform uses:
for each fundamental-domain point x0, each orthonormal vector u in the
stabilizer-fixed subspace of sigma, and each matrix row i, the column

    x -> sqrt(d |G_x0| / |G|) * u* sigma(g_x) e_i     on the orbit of x0,

with g_x carrying x to x0.  These are orthonormal because the unit-weight
Zak transform is unitary; rows of sigma index the d identical copies.

The 1-d tight-binding chain gets a dedicated fast path: the Bloch block
at wave index j is the M x M cell Hamiltonian with hopping phases
exp(-+ 2 pi i j / N) on the wrap-around bonds, and the union of all block
spectra is the spectrum of the full N*M ring.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .actions import GroupAction, make_action, orbits
from .duals import DualObject
from .errors import InvariantViolation, NotHermitian, NotInvariant, ShapeMismatch
from .reciprocal import fixed_space_projector
from .zak import ZakCoefficients, zak


@dataclass
class InvariantOperator:
    """Hermitian matrix commuting with every permutation of the action."""

    action: GroupAction
    matrix: np.ndarray


def check_invariance(action: GroupAction, matrix) -> InvariantOperator:
    h = np.asarray(matrix, dtype=complex)
    m = action.npoints
    if h.shape != (m, m):
        raise ShapeMismatch(f"operator must be {m}x{m}, got {h.shape}")
    scale = max(1.0, float(np.linalg.norm(h)))
    if np.max(np.abs(h - h.conj().T)) > 1e-10 * scale:
        raise NotHermitian("operator is not Hermitian")
    for g in action.group.elements():
        pg = action.permutation_matrix(g)
        if np.linalg.norm(h @ pg - pg @ h) > 1e-10 * scale:
            raise NotInvariant(g)
    return InvariantOperator(action, h)


@dataclass
class BlockDiagonalization:
    """Unitary U and the diagonal blocks of U* H U, grouped by irrep.

    blocks[label] is a list of d_sigma consecutive sub-blocks, identical up
    to the off-block tolerance; layout records (label, copy, offset, size).
    """

    unitary: np.ndarray
    blocks: dict
    layout: list
    off_block_residual: float

    def spectrum(self) -> np.ndarray:
        vals = [np.linalg.eigvalsh(b) for bs in self.blocks.values() for b in bs]
        return np.sort(np.concatenate(vals)) if vals else np.array([])

    def repetition_residual(self) -> float:
        """Max spectral distance between the d copies of each irrep block."""
        worst = 0.0
        for bs in self.blocks.values():
            if len(bs) < 2:
                continue
            ref = np.linalg.eigvalsh(bs[0])
            for b in bs[1:]:
                worst = max(worst, float(np.max(np.abs(np.linalg.eigvalsh(b) - ref))))
        return worst


def symmetry_adapted_basis(action: GroupAction, dual: DualObject):
    """Columns of the block-diagonalizing unitary plus the block layout."""
    group = action.group
    decomp = orbits(action)
    columns, layout = [], []
    offset = 0
    for s in dual.irreps:
        # multiplicity slots: one per (representative, fixed-space basis vector)
        slots = []
        for oid, x0 in enumerate(decomp.representatives):
            stab = [g for g in group.elements() if action.apply(g, x0) == x0]
            p = fixed_space_projector(s, stab)
            w, u = np.linalg.eigh(p)
            for a in range(s.dim):
                if w[a] > 0.5:
                    slots.append((oid, x0, len(stab), u[:, a]))
        if not slots:
            continue
        m_sigma = len(slots)
        for i in range(s.dim):
            for oid, x0, stab_size, u in slots:
                col = np.zeros(action.npoints, dtype=complex)
                norm = np.sqrt(s.dim * stab_size / group.order)
                for x in decomp.members[oid]:
                    g = int(decomp.to_rep_element[x])
                    col[x] = norm * (u.conj() @ s.matrices[g][:, i])
                columns.append(col)
            layout.append((s.label, i, offset, m_sigma))
            offset += m_sigma
    basis = np.column_stack(columns)
    gram = basis.conj().T @ basis
    if np.max(np.abs(gram - np.eye(basis.shape[1]))) > 1e-9:
        raise InvariantViolation("symmetry-adapted basis is not orthonormal")
    return basis, layout


def block_diagonalize(op: InvariantOperator, dual: DualObject) -> BlockDiagonalization:
    """U* H U with one sub-block per (irrep, matrix row), plus residuals."""
    basis, layout = symmetry_adapted_basis(op.action, dual)
    if basis.shape[1] != op.action.npoints:
        raise InvariantViolation(
            f"basis has {basis.shape[1]} columns for {op.action.npoints} points"
        )
    conj = basis.conj().T @ op.matrix @ basis
    blocks = {}
    mask = np.zeros_like(conj, dtype=bool)
    for label, _i, off, size in layout:
        blocks.setdefault(label, []).append(conj[off : off + size, off : off + size])
        mask[off : off + size, off : off + size] = True
    off_mass = float(np.linalg.norm(np.where(mask, 0.0, conj)))
    scale = max(1.0, float(np.linalg.norm(op.matrix)))
    if off_mass > 1e-9 * scale:
        raise InvariantViolation(f"off-block mass {off_mass:g} exceeds tolerance")
    return BlockDiagonalization(basis, blocks, layout, off_mass)


def zak_conjugation_residual(op: InvariantOperator, dual: DualObject, f) -> float:
    """|| Z(H f) - blocks applied to Z f || for one test vector.

    The blocks act on the multiplicity index of the Zak coefficients; this
    checks that the stored block form is the operator the Zak transform
    sees, column by column of the coefficient matrices.
    """
    action = op.action
    basis, layout = symmetry_adapted_basis(action, dual)
    conj = basis.conj().T @ op.matrix @ basis
    f = np.asarray(f, dtype=complex)
    coords = basis.conj().T @ f
    lhs = basis.conj().T @ (op.matrix @ f)
    rhs = np.zeros_like(coords)
    for _label, _i, off, size in layout:
        rhs[off : off + size] = conj[off : off + size, off : off + size] @ coords[off : off + size]
    return float(np.max(np.abs(lhs - rhs)))


# ---------------------------------------------------------------------------
# tight-binding chains


@dataclass
class BandStructure:
    """Sorted eigenvalues per wave-index sample of a periodic chain."""

    hopping: float
    cell_size: int
    periods: int
    onsite: np.ndarray
    k_values: np.ndarray     # (N,)
    bands: np.ndarray        # (N, M), ascending along axis 1

    def union(self) -> np.ndarray:
        return np.sort(self.bands.ravel())


def bloch_block(t: float, m: int, theta: float, onsite) -> np.ndarray:
    """Cell Hamiltonian with phase exp(-i theta) on the wrap-around hop."""
    h = np.zeros((m, m), dtype=complex)
    h[np.arange(m), np.arange(m)] = np.asarray(onsite, dtype=float)
    for a in range(m - 1):
        h[a, a + 1] += -t
        h[a + 1, a] += -t
    h[m - 1, 0] += -t * np.exp(-1j * theta)
    h[0, m - 1] += -t * np.exp(1j * theta)
    return h


def ring_hamiltonian(t: float, m: int, n: int, onsite) -> np.ndarray:
    """Dense nearest-neighbor ring on N*M sites with M-periodic onsite terms."""
    size = m * n
    h = np.zeros((size, size), dtype=complex)
    onsite = np.asarray(onsite, dtype=float)
    for i in range(size):
        h[i, i] += onsite[i % m]
        h[i, (i + 1) % size] += -t
        h[(i + 1) % size, i] += -t
    return h


def ring_translation_action(m: int, n: int) -> GroupAction:
    """The cell-translation group of the ring, for invariance checks."""
    from .groups import cyclic_group

    size = m * n
    group = cyclic_group(n)
    perm = [[(x + a * m) % size for x in range(size)] for a in range(n)]
    return make_action(group, perm)


def band_structure(t: float, m: int, n: int, onsite, jobs: int = 1) -> BandStructure:
    """Bands of the (t, V) chain: one M x M Bloch block per wave index.

    The per-k solves are independent; jobs > 1 maps them over a thread
    pool with slot writes, so the output never depends on scheduling.
    """
    onsite = np.asarray(onsite, dtype=float)
    if onsite.shape != (m,):
        raise ShapeMismatch(f"onsite must have shape ({m},), got {onsite.shape}")
    if m <= 0 or n <= 0:
        raise ShapeMismatch("cell size and period count must be positive")
    k_values = 2.0 * np.pi * np.arange(n) / (n * m)
    bands = np.empty((n, m))

    def solve(j):
        theta = 2.0 * np.pi * j / n
        return np.linalg.eigvalsh(bloch_block(t, m, theta, onsite))

    if jobs <= 1:
        for j in range(n):
            bands[j] = solve(j)
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for j, row in enumerate(pool.map(solve, range(n))):
                bands[j] = row
    return BandStructure(t, m, n, onsite, k_values, bands)


def band_union_residual(bs: BandStructure) -> float:
    """Distance between the sorted band union and the full ring spectrum."""
    dense = np.linalg.eigvalsh(ring_hamiltonian(bs.hopping, bs.cell_size, bs.periods, bs.onsite))
    return float(np.max(np.abs(bs.union() - dense)))


# ---------------------------------------------------------------------------
# Bloch fields


class BlochField:
    """Orbit-constant coefficient fields whose modulated sum rebuilds f."""

    def __init__(self, coeffs: ZakCoefficients, f):
        self.coeffs = coeffs
        self.action = coeffs.action
        self.dual = coeffs.dual
        f = np.asarray(f, dtype=complex)
        from .zak import zak_inverse

        rec = zak_inverse(coeffs)
        self.reconstruction_residual = float(
            np.max(np.abs(rec - f)) / max(1.0, float(np.linalg.norm(f)))
        )
        if self.reconstruction_residual > 1e-10:
            raise InvariantViolation(
                f"Bloch reconstruction residual {self.reconstruction_residual:g}"
            )

    def field(self, x: int, label: str) -> np.ndarray:
        """B^sigma at any point: the Zak matrix of the point's orbit."""
        x0 = self.coeffs.structure.decomp.rep_of(x)
        return self.coeffs[(x0, label)]

    def field_norm(self, label: str) -> float:
        decomp = self.coeffs.structure.decomp
        return float(
            sum(np.linalg.norm(self.coeffs[(x0, label)]) for x0 in decomp.representatives)
        )


def bloch_fields(action: GroupAction, f, dual: DualObject) -> BlochField:
    return BlochField(zak(action, f, dual), f)
