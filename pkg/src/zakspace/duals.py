"""Unitary irreducible representations of finite groups.

Three routes produce a complete dual:

* closed-form catalogs for cyclic, dihedral, and direct-product structure
  (detected from the table, so isomorphic copies with scrambled element
  order work too);
* induction of the characters of a supplied normal abelian subgroup up to
  the group, followed by numeric splitting of each induced representation;
* splitting of the regular representation with a random element of its
  commutant (seeded, then polished to an exactly invariant subspace by
  averaging the subspace projector over the group).

Whatever the route, the result is validated against the same invariants:
unitarity, the homomorphism property, irreducibility via the character
norm, completeness sum(d^2) = |G|, and pairwise inequivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IncompleteDual, NotAbelian, NotIrreducible
from .groups import FiniteGroup, check_subgroup, left_cosets, subgroup_as_group

HOM_ATOL = 1e-10
UNITARY_ATOL = 1e-12
CHAR_ATOL = 1e-9


@dataclass
class UnitaryIrrep:
    """One irreducible unitary representation: label, dimension, matrix per element."""

    label: str
    dim: int
    matrices: np.ndarray  # (|G|, dim, dim) complex

    def character(self) -> np.ndarray:
        return np.einsum("gii->g", self.matrices)

    def conjugated(self, u: np.ndarray) -> "UnitaryIrrep":
        """Equivalent copy u sigma u* (basis change, for invariance tests)."""
        return UnitaryIrrep(self.label, self.dim, u @ self.matrices @ u.conj().T)


@dataclass
class DualObject:
    """A complete set of inequivalent irreps with Plancherel weights d/|G|."""

    group: FiniteGroup
    irreps: list[UnitaryIrrep]
    plancherel_weight: np.ndarray = field(init=False)

    def __post_init__(self):
        self.plancherel_weight = np.array(
            [s.dim / self.group.order for s in self.irreps]
        )
        self.by_label = {s.label: s for s in self.irreps}

    @property
    def labels(self) -> list[str]:
        return [s.label for s in self.irreps]

    def is_abelian_dual(self) -> bool:
        return all(s.dim == 1 for s in self.irreps)


def validate_irrep(group: FiniteGroup, irrep: UnitaryIrrep) -> None:
    n, d = group.order, irrep.dim
    mats = irrep.matrices
    if mats.shape != (n, d, d):
        raise NotIrreducible(f"{irrep.label}: matrix block has shape {mats.shape}")
    if np.max(np.abs(mats[group.identity] - np.eye(d))) > HOM_ATOL:
        raise NotIrreducible(f"{irrep.label}: identity does not map to I")
    prods = np.einsum("gij,hjk->ghik", mats, mats)
    if np.max(np.abs(mats[group.table] - prods)) > HOM_ATOL:
        raise NotIrreducible(f"{irrep.label}: not a homomorphism")
    gram = np.einsum("gij,gkj->gik", mats, mats.conj())
    if np.max(np.abs(gram - np.eye(d))) > UNITARY_ATOL:
        raise NotIrreducible(f"{irrep.label}: matrices not unitary")
    chi = irrep.character()
    norm = np.vdot(chi, chi).real / n
    if abs(norm - 1.0) > CHAR_ATOL:
        raise NotIrreducible(f"{irrep.label}: character norm {norm} != 1")


def validate_dual(dual: DualObject) -> None:
    group = dual.group
    for s in dual.irreps:
        validate_irrep(group, s)
    total = sum(s.dim**2 for s in dual.irreps)
    if total != group.order:
        raise IncompleteDual(total, group.order)
    chars = [s.character() for s in dual.irreps]
    for i in range(len(chars)):
        for j in range(i + 1, len(chars)):
            ip = np.vdot(chars[j], chars[i]) / group.order
            if abs(ip) > CHAR_ATOL:
                raise NotIrreducible(
                    f"{dual.irreps[i].label} and {dual.irreps[j].label} are equivalent"
                )


# ---------------------------------------------------------------------------
# abelian duals


def _regular_perms(group: FiniteGroup) -> np.ndarray:
    """index array: row g sends basis vector x to g^-1 x (for R(g) B R(g)*)."""
    return group.table[group.inverses]


def roots_of_unity(n: int) -> np.ndarray:
    """exp(2 pi i k/n) for k = 0..n-1, exact at the quarter points."""
    roots = np.exp(2j * np.pi * np.arange(n) / n)
    for num, val in ((0, 1.0), (1, 1.0j), (2, -1.0), (3, -1.0j)):
        if (num * n) % 4 == 0:
            roots[num * n // 4] = val
    return roots


def dual_abelian(group: FiniteGroup, seed: int = 0) -> DualObject:
    """All |G| characters of an abelian group, as 1x1 irreps.

    Cyclic groups get the closed form chi_j(g) = exp(2 pi i j dlog(g)/N).
    Otherwise the characters are read off the common eigenvectors of the
    regular representation and snapped to exact roots of unity.
    """
    if not group.is_abelian():
        bad = np.argwhere(group.table != group.table.T)[0]
        raise NotAbelian(int(bad[0]), int(bad[1]))
    n = group.order

    gen = next((g for g in group.elements() if group.element_order(g) == n), None)
    if gen is not None:
        # discrete logs w.r.t. the generator
        dlog = np.empty(n, dtype=int)
        acc, k = group.identity, 0
        while True:
            dlog[acc] = k
            k += 1
            if k == n:
                break
            acc = group.mul(acc, gen)
        values = roots_of_unity(n)[np.outer(np.arange(n), dlog) % n]
    else:
        values = _abelian_characters_numeric(group, seed)

    irreps = [
        UnitaryIrrep(f"chi{j}", 1, values[j].reshape(n, 1, 1)) for j in range(n)
    ]
    dual = DualObject(group, irreps)
    validate_dual(dual)
    return dual


def _abelian_characters_numeric(group: FiniteGroup, seed: int) -> np.ndarray:
    n = group.order
    perms = _regular_perms(group)
    orders = np.array([group.element_order(g) for g in group.elements()])
    rng = np.random.default_rng(seed)
    for _ in range(16):
        coeff = rng.normal(size=n) + 1j * rng.normal(size=n)
        t = np.zeros((n, n), dtype=complex)
        for g in group.elements():
            t[np.arange(n), perms[g]] += coeff[g]
        t = t + t.conj().T
        _, vecs = np.linalg.eigh(t)
        rows = []
        ok = True
        for j in range(n):
            v = vecs[:, j]
            if abs(v[group.identity]) < 1e-8:
                ok = False
                break
            v = v / v[group.identity]
            # snap each value to a root of unity of the element's order
            ang = np.angle(v)
            ks = np.round(ang * orders / (2 * np.pi)).astype(int) % orders
            chi = np.array(
                [roots_of_unity(int(o))[int(k)] for o, k in zip(orders, ks)]
            )
            if np.max(np.abs(chi - v)) > 1e-6:
                ok = False
                break
            rows.append(chi)
        if not ok:
            continue
        rows = sorted(rows, key=lambda r: tuple(np.round(np.angle(r) % (2 * np.pi), 9)))
        values = np.array(rows)
        # homomorphism check; distinct rows guaranteed by validate_dual later
        if all(
            np.max(np.abs(values[:, group.table[g, h]] - values[:, g] * values[:, h])) < 1e-9
            for g in group.elements()
            for h in group.elements()
        ):
            return values
    raise NotIrreducible("could not separate the characters numerically")


# ---------------------------------------------------------------------------
# catalogs


def _dihedral_structure(group: FiniteGroup):
    """Find (r, s) with ord(r) = |G|/2, s^2 = e, s r s^-1 = r^-1, or None."""
    n2 = group.order
    if n2 % 2 or n2 < 6:
        return None
    n = n2 // 2
    for r in group.elements():
        if group.element_order(r) != n:
            continue
        rot = {group.identity}
        acc = r
        while acc != group.identity:
            rot.add(acc)
            acc = group.mul(acc, r)
        for s in group.elements():
            if s in rot or group.mul(s, s) != group.identity:
                continue
            if group.conjugate(s, r) == group.inv(r):
                return r, s, rot
    return None


def _dihedral_dual(group: FiniteGroup, r: int, s: int, rot: set) -> DualObject:
    n = group.order // 2
    # decompose every element as r^a s^b
    power = {group.identity: 0}
    acc = r
    for a in range(1, n):
        power[acc] = a
        acc = group.mul(acc, r)
    ab = {}
    for g in group.elements():
        if g in rot:
            ab[g] = (power[g], 0)
        else:
            ab[g] = (power[group.mul(g, s)], 1)  # g = r^a s  =>  g s = r^a
    irreps = []

    def one_dim(label, r_val, s_val):
        vals = np.array([r_val ** ab[g][0] * s_val ** ab[g][1] for g in group.elements()])
        irreps.append(UnitaryIrrep(label, 1, vals.reshape(-1, 1, 1).astype(complex)))

    one_dim("A1", 1.0, 1.0)
    one_dim("A2", 1.0, -1.0)
    if n % 2 == 0:
        one_dim("B1", -1.0, 1.0)
        one_dim("B2", -1.0, -1.0)
    roots = roots_of_unity(n)
    flip = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    for h in range(1, (n - 1) // 2 + 1):
        mats = np.empty((group.order, 2, 2), dtype=complex)
        for g in group.elements():
            a, b = ab[g]
            rm = np.diag([roots[(h * a) % n], roots[(-h * a) % n]])
            mats[g] = rm @ flip if b else rm
        irreps.append(UnitaryIrrep(f"E{h}", 2, mats))
    return DualObject(group, irreps)


def _product_dual(group: FiniteGroup, seed: int) -> DualObject:
    g1, g2 = group._factors
    d1, d2 = irreps(g1, seed=seed), irreps(g2, seed=seed)
    n2 = g2.order
    out = []
    for s1 in d1.irreps:
        for s2 in d2.irreps:
            mats = np.empty(
                (group.order, s1.dim * s2.dim, s1.dim * s2.dim), dtype=complex
            )
            for g in group.elements():
                a, b = divmod(g, n2)
                mats[g] = np.kron(s1.matrices[a], s2.matrices[b])
            out.append(UnitaryIrrep(f"{s1.label}*{s2.label}", s1.dim * s2.dim, mats))
    return DualObject(group, out)


# ---------------------------------------------------------------------------
# numeric splitting


def _restrict(mats: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """V* rho(g) V for every g; basis columns orthonormal."""
    return np.einsum("ij,gjk,kl->gil", basis.conj().T, mats, basis)


def _split_invariant_subspaces(mats: np.ndarray, rng, depth: int = 0) -> list[np.ndarray]:
    """Orthonormal bases of irreducible invariant subspaces of a unitary rep.

    Splits along the eigenspaces of a random Hermitian commutant element,
    polishes each cluster by averaging its projector over the group, and
    recurses until every piece has character norm one.
    """
    n, dim = mats.shape[0], mats.shape[1]
    chi = np.einsum("gii->g", mats)
    if abs(np.vdot(chi, chi).real / n - 1.0) < 1e-8:
        return [np.eye(dim, dtype=complex)]
    if depth > 8:
        raise NotIrreducible("invariant-subspace recursion did not terminate")

    for _ in range(8):
        b = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        b = b + b.conj().T
        t = np.einsum("gij,jk,glk->il", mats, b, mats.conj()) / n
        vals, vecs = np.linalg.eigh(t)
        scale = max(1.0, float(np.max(np.abs(vals))))
        clusters, start = [], 0
        for i in range(1, dim + 1):
            if i == dim or vals[i] - vals[i - 1] > 1e-6 * scale:
                clusters.append(vecs[:, start:i])
                start = i
        if len(clusters) == 1:
            continue  # degenerate draw, try fresh randomness
        bases = []
        ok = True
        for v in clusters:
            p = v @ v.conj().T
            p_avg = np.einsum("gij,jk,glk->il", mats, p, mats.conj()) / n
            w, u = np.linalg.eigh(p_avg)
            d = v.shape[1]
            v_pol = u[:, -d:]
            if w[-d] < 0.99 or (dim > d and w[-d - 1] > 0.01):
                ok = False
                break
            sub = _restrict(mats, v_pol)
            # invariance residual of the polished subspace
            resid = np.max(np.abs(np.einsum("gij,jk->gik", mats, v_pol) - np.einsum("ij,gjk->gik", v_pol, sub)))
            if resid > 1e-8:
                ok = False
                break
            for basis in _split_invariant_subspaces(sub, rng, depth + 1):
                bases.append(v_pol @ basis)
        if ok:
            return bases
    raise NotIrreducible("random commutant splitting failed to isolate subspaces")


def _dedupe_by_character(group: FiniteGroup, candidates: list[np.ndarray]) -> list[np.ndarray]:
    kept, chars = [], []
    for mats in candidates:
        chi = np.einsum("gii->g", mats)
        if any(abs(np.vdot(c, chi) / group.order) > 0.5 for c in chars):
            continue
        kept.append(mats)
        chars.append(chi)
    return kept


def _sorted_irreps(group: FiniteGroup, mats_list: list[np.ndarray]) -> list[UnitaryIrrep]:
    def key(mats):
        chi = np.einsum("gii->g", mats)
        return (mats.shape[1], tuple(np.round(chi.real, 6)), tuple(np.round(chi.imag, 6)))

    out = []
    for i, mats in enumerate(sorted(mats_list, key=key)):
        out.append(UnitaryIrrep(f"sigma{i}", mats.shape[1], mats))
    return out


def _regular_splitting_dual(group: FiniteGroup, seed: int) -> DualObject:
    """Split the regular representation; each irrep occurs (d times) in it.

    R(g) permutes the delta basis via x -> g x, so R(g) M R(g)* and
    V* R(g) V reduce to index shuffles with perms[g][x] = g^-1 x.
    """
    n = group.order
    perms = _regular_perms(group)
    rng = np.random.default_rng(seed)
    for _ in range(8):
        b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        b = b + b.conj().T
        t = np.zeros((n, n), dtype=complex)
        for g in group.elements():
            t += b[np.ix_(perms[g], perms[g])]
        t /= n
        vals, vecs = np.linalg.eigh(t)
        scale = max(1.0, float(np.max(np.abs(vals))))
        clusters, start = [], 0
        for i in range(1, n + 1):
            if i == n or vals[i] - vals[i - 1] > 1e-6 * scale:
                clusters.append(vecs[:, start:i])
                start = i
        try:
            candidates = []
            for v in clusters:
                p = v @ v.conj().T
                p_avg = np.zeros_like(p)
                for g in group.elements():
                    p_avg += p[np.ix_(perms[g], perms[g])]
                p_avg /= n
                w, u = np.linalg.eigh(p_avg)
                d = v.shape[1]
                if w[-d] < 0.99 or (n > d and w[-d - 1] > 0.01):
                    raise NotIrreducible("eigenvalue cluster is not an invariant subspace")
                v_pol = u[:, -d:]
                # sigma(g) = V* R(g) V with (R(g) V)[i] = V[g^-1 i]
                sub = np.einsum("ij,gik->gjk", v_pol.conj(), v_pol[perms])
                for basis in _split_invariant_subspaces(sub, rng):
                    w_basis = v_pol @ basis
                    candidates.append(np.einsum("ij,gik->gjk", w_basis.conj(), w_basis[perms]))
            kept = _dedupe_by_character(group, candidates)
            dual = DualObject(group, _sorted_irreps(group, kept))
            validate_dual(dual)
            return dual
        except (NotIrreducible, IncompleteDual):
            continue
    raise IncompleteDual(-1, group.order)


# ---------------------------------------------------------------------------
# Mackey route: induce characters of a normal abelian subgroup


def induced_from_character(
    group: FiniteGroup, sub_elems: list[int], chi: np.ndarray, to_sub: dict
) -> np.ndarray:
    """Matrices of ind_A^G(chi) on the left cosets of A, monomial and unitary."""
    cosets = left_cosets(group, sub_elems)
    reps = [c[0] for c in cosets]
    member = {g: i for i, c in enumerate(cosets) for g in c}
    m = len(reps)
    mats = np.zeros((group.order, m, m), dtype=complex)
    for g in group.elements():
        for j, tj in enumerate(reps):
            gtj = group.mul(g, tj)
            i = member[gtj]
            a = group.mul(group.inv(reps[i]), gtj)  # t_i^-1 g t_j in A
            mats[g, i, j] = chi[to_sub[a]]
    return mats


def irreps_by_induction(group: FiniteGroup, normal_abelian, seed: int = 0) -> DualObject:
    """All irreps via induction from a normal abelian subgroup.

    Every irrep restricts to the subgroup nontrivially, so it occurs in some
    induced character representation; the induced representations are split
    numerically and deduplicated.
    """
    sub_elems = check_subgroup(group, normal_abelian)
    sub, to_sub = subgroup_as_group(group, sub_elems)
    sub_dual = dual_abelian(sub, seed=seed)
    rng = np.random.default_rng(seed)
    candidates = []
    for char in sub_dual.irreps:
        chi = char.matrices[:, 0, 0]
        mats = induced_from_character(group, sub_elems, chi, to_sub)
        for basis in _split_invariant_subspaces(mats, rng):
            candidates.append(np.einsum("ij,gjk,kl->gil", basis.conj().T, mats, basis))
    kept = _dedupe_by_character(group, candidates)
    dual = DualObject(group, _sorted_irreps(group, kept))
    validate_dual(dual)
    return dual


# ---------------------------------------------------------------------------
# front door


def irreps(group: FiniteGroup, catalog_hint: str | None = None, normal_abelian=None, seed: int = 0) -> DualObject:
    """A complete validated DualObject for a modest finite group.

    Route selection: an explicit catalog_hint ("cyclic:N", "dihedral:N",
    "product") is honored or rejected; otherwise abelian, dihedral, and
    direct-product structure is detected, a supplied normal abelian
    subgroup triggers the induction route, and the regular representation
    is split numerically as the fallback.
    """
    if catalog_hint is not None:
        kind = catalog_hint.split(":")[0]
        if kind == "cyclic":
            return dual_abelian(group, seed=seed)
        if kind == "dihedral":
            found = _dihedral_structure(group)
            if found is None:
                raise NotIrreducible(f"group is not dihedral, hint {catalog_hint!r}")
            dual = _dihedral_dual(group, *found)
            validate_dual(dual)
            return dual
        if kind == "product":
            if group._factors is None:
                raise NotIrreducible("product hint needs a group built by direct_product")
            dual = _product_dual(group, seed)
            validate_dual(dual)
            return dual
        raise ValueError(f"unknown catalog hint {catalog_hint!r}")

    if normal_abelian is not None:
        return irreps_by_induction(group, normal_abelian, seed=seed)
    if group.is_abelian():
        return dual_abelian(group, seed=seed)
    found = _dihedral_structure(group)
    if found is not None:
        dual = _dihedral_dual(group, *found)
        validate_dual(dual)
        return dual
    if group._factors is not None:
        dual = _product_dual(group, seed)
        validate_dual(dual)
        return dual
    return _regular_splitting_dual(group, seed)
