"""Discrete groups of Euclidean isometries (Q|c) in 2 or 3 dimensions.

Elements compose as (Q1|c1)(Q2|c2) = (Q1 Q2 | Q1 c2 + c1) and act by
x -> Q x + c.  Groups are given by generators and closed by breadth-first
search under a truncation (word-length bound, spatial radius, element
cap); elements are identified up to a Frobenius-norm tolerance.  On top
of the closure sit the pure-translation subgroup, a type-I certificate
(normal abelian subgroup of finite index, reported honestly as
inconclusive when the truncation cannot witness it), and the conversion
to a finite permutation action on seed-point orbits, folding infinite
translation groups onto a torus when periods are supplied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from .actions import GroupAction, make_action
from .errors import DimensionMismatch, NotClosable, TruncationExceeded
from .groups import FiniteGroup, make_group

IDENT_TOL = 1e-9


@dataclass
class IsometryElement:
    q: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        self.q = np.asarray(self.q, dtype=float)
        self.c = np.asarray(self.c, dtype=float)
        d = self.c.shape[0]
        if self.q.shape != (d, d):
            raise DimensionMismatch(f"Q is {self.q.shape}, c has length {d}")
        if np.max(np.abs(self.q @ self.q.T - np.eye(d))) > 1e-12:
            raise DimensionMismatch("Q is not orthogonal to 1e-12")

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    def flat(self) -> np.ndarray:
        return np.concatenate([self.q.ravel(), self.c])

    def __repr__(self):
        return f"IsometryElement(Q={np.round(self.q, 6).tolist()}, c={np.round(self.c, 6).tolist()})"


def identity_isometry(dim: int) -> IsometryElement:
    return IsometryElement(np.eye(dim), np.zeros(dim))


def compose(a: IsometryElement, b: IsometryElement) -> IsometryElement:
    if a.dim != b.dim:
        raise DimensionMismatch(f"{a.dim}-d composed with {b.dim}-d")
    return IsometryElement(a.q @ b.q, a.q @ b.c + a.c)


def inverse(a: IsometryElement) -> IsometryElement:
    return IsometryElement(a.q.T, -a.q.T @ a.c)


def act(a: IsometryElement, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != a.dim:
        raise DimensionMismatch(f"point of dimension {x.shape[-1]} under {a.dim}-d isometry")
    return x @ a.q.T + a.c


def distance(a: IsometryElement, b: IsometryElement) -> float:
    return float(np.linalg.norm(a.flat() - b.flat()))


def is_translation(a: IsometryElement, tol: float = IDENT_TOL) -> bool:
    return float(np.linalg.norm(a.q - np.eye(a.dim))) < tol


# convenient generators ------------------------------------------------------


def rotation_2d(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def rotation_z(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def translation(vec) -> IsometryElement:
    vec = np.asarray(vec, dtype=float)
    return IsometryElement(np.eye(len(vec)), vec)


def screw(angle: float, pitch: float) -> IsometryElement:
    """Rotation about the z axis combined with translation along it."""
    return IsometryElement(rotation_z(angle), np.array([0.0, 0.0, pitch]))


def rational_angle(angle: float, max_denominator: int = 1000, tol: float = 1e-9):
    """Detect angle = 2 pi p/q by continued fractions, or return None.

    Rationality of a screw angle cannot be decided from floats in general;
    this reports a (p, q) only when the continued-fraction convergent with
    denominator <= max_denominator reproduces the angle to tol, and callers
    must treat None as "undecided", never as "irrational".
    """
    turns = (angle / (2.0 * np.pi)) % 1.0
    # continued-fraction convergents of `turns`
    p0, q0, p1, q1 = 0, 1, 1, 0
    x = turns
    for _ in range(64):
        a = int(np.floor(x))
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > max_denominator:
            return None
        if abs(turns - p1 / q1) < tol:
            return p1 % max(q1, 1), q1
        frac = x - a
        if frac < 1e-15:
            return None
        x = 1.0 / frac
    return None


@dataclass
class Truncation:
    word_length: int = 24
    radius: float = 50.0
    max_elements: int = 20000
    tol: float = IDENT_TOL


@dataclass
class IsometryGroupSpec:
    dim: int
    generators: list
    truncation: Truncation = field(default_factory=Truncation)

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise DimensionMismatch(f"only 2-d and 3-d isometries are supported, got {self.dim}")
        for g in self.generators:
            if g.dim != self.dim:
                raise DimensionMismatch(f"generator of dimension {g.dim} in {self.dim}-d spec")


@dataclass
class GeneratedGroup:
    elements: list
    finite: bool
    word_lengths: list
    radius_truncated: bool

    @property
    def order(self) -> int:
        return len(self.elements)


class _ElementIndex:
    """Vectorized nearest-element lookup on flattened (Q, c) rows."""

    def __init__(self, dim: int, tol: float):
        self.rows = np.empty((0, dim * dim + dim))
        self.tol = tol

    def find(self, e: IsometryElement) -> int:
        if self.rows.shape[0] == 0:
            return -1
        d = np.linalg.norm(self.rows - e.flat()[None, :], axis=1)
        j = int(np.argmin(d))
        return j if d[j] < self.tol else -1

    def add(self, e: IsometryElement) -> int:
        self.rows = np.vstack([self.rows, e.flat()[None, :]])
        return self.rows.shape[0] - 1


def generate(spec: IsometryGroupSpec) -> GeneratedGroup:
    """Breadth-first closure of the generators within the truncation.

    The generator set is symmetrized with inverses, so the closure is
    inverse-closed layer by layer and the finiteness flag is exact: it is
    set only when a whole layer produces nothing new strictly before the
    word-length bound, with no element dropped by the radius cut.
    """
    tr = spec.truncation
    gens = []
    gen_index = _ElementIndex(spec.dim, tr.tol)
    for g in spec.generators:
        for cand in (g, inverse(g)):
            if gen_index.find(cand) < 0:
                gen_index.add(cand)
                gens.append(cand)

    index = _ElementIndex(spec.dim, tr.tol)
    elements = [identity_isometry(spec.dim)]
    index.add(elements[0])
    word_lengths = [0]
    radius_truncated = False
    frontier = [elements[0]]
    finite = False
    for layer in range(1, tr.word_length + 1):
        new = []
        for e in frontier:
            for g in gens:
                cand = compose(e, g)
                if np.linalg.norm(cand.c) > tr.radius:
                    radius_truncated = True
                    continue
                if index.find(cand) < 0:
                    index.add(cand)
                    elements.append(cand)
                    word_lengths.append(layer)
                    new.append(cand)
                    if len(elements) > tr.max_elements:
                        raise TruncationExceeded(elements)
        if not new:
            finite = not radius_truncated
            break
        frontier = new
    return GeneratedGroup(elements, finite, word_lengths, radius_truncated)


def translation_subgroup(elements, tol: float = IDENT_TOL) -> list:
    """Pure translations (I|c) among the elements."""
    return [e for e in elements if is_translation(e, tol)]


def conjugation_residual(g: IsometryElement, t: IsometryElement) -> float:
    """Distance of g (I|c) g^-1 from the translation (I|Qc)."""
    conj = compose(compose(g, t), inverse(g))
    expected = IsometryElement(np.eye(g.dim), g.q @ t.c)
    return distance(conj, expected)


# ---------------------------------------------------------------------------
# type-I certificate


@dataclass
class Certificate:
    status: str            # "type_I" or "inconclusive"
    kind: str              # "finite", "abelian", "helical", "space_group", ""
    witness: str
    index: int | None
    order: int | None
    notes: str

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "kind": self.kind,
            "witness": self.witness,
            "index": self.index,
            "order": self.order,
            "notes": self.notes,
        }


def _generators_commute(spec: IsometryGroupSpec) -> bool:
    for a in spec.generators:
        for b in spec.generators:
            if distance(compose(a, b), compose(b, a)) > spec.truncation.tol:
                return False
    return True


def _common_axis(elements, tol: float = 1e-8) -> bool:
    """Heuristic: every non-identity rotation part fixes one shared axis."""
    axis = None
    for e in elements:
        d = e.dim
        if np.max(np.abs(e.q - np.eye(d))) < tol:
            continue
        if d == 2:
            continue  # planar rotations share the out-of-plane axis
        w, v = np.linalg.eig(e.q)
        fixed = [v[:, i].real for i in range(3) if abs(w[i] - 1.0) < 1e-8]
        if len(fixed) != 1:
            return False
        a = fixed[0] / np.linalg.norm(fixed[0])
        if axis is None:
            axis = a
        elif min(np.linalg.norm(a - axis), np.linalg.norm(a + axis)) > 1e-6:
            return False
    return True


def _distinct_rotation_parts(elements, word_lengths, max_word):
    """Count distinct Q parts layer by layer; returns per-layer cumulative counts."""
    counts = []
    seen = []
    by_layer = sorted(zip(word_lengths, elements), key=lambda p: p[0])
    layer_of = {}
    for wl, e in by_layer:
        if all(np.linalg.norm(e.q - q) > 1e-8 for q in seen):
            seen.append(e.q.copy())
        layer_of[wl] = len(seen)
    cum = 0
    for layer in range(max_word + 1):
        cum = layer_of.get(layer, cum)
        counts.append(cum)
    return len(seen), counts


STABLE_WINDOW = 3  # trailing word-length layers that must add no rotation part


def type_one_certificate(spec: IsometryGroupSpec) -> Certificate:
    """Certify a normal abelian subgroup of finite index, or say why not.

    Finite groups certify trivially.  A commuting generator set certifies
    the group itself (labelled helical when all elements share a screw
    axis).  Otherwise the translation subgroup is the candidate and the
    index is the number of distinct rotation parts, accepted only when
    that count was stable over the last few word-length layers; anything
    else is reported as inconclusive rather than guessed.
    """
    gen = generate(spec)
    if gen.finite:
        commuting = _generators_commute(spec)
        if commuting:
            return Certificate(
                "type_I", "finite", "whole group", 1, gen.order,
                "finite abelian group; the group is its own witness",
            )
        return Certificate(
            "type_I", "finite", "trivial subgroup", gen.order, gen.order,
            "finite group: any subgroup has finite index; trivial subgroup used",
        )

    if _generators_commute(spec):
        kind = "helical" if _common_axis(gen.elements) else "abelian"
        note = (
            "generators commute, so the group is abelian and its own witness"
            + ("; all rotation parts share an axis (screw subgroup)" if kind == "helical" else "")
        )
        if kind == "helical":
            for g in spec.generators:
                if is_translation(g, spec.truncation.tol):
                    continue
                # rotation angle up to sign; sign does not affect rationality
                angle = float(np.arccos(np.clip((np.trace(g.q) - 1.0) / 2.0, -1.0, 1.0)))
                found = rational_angle(angle)
                note += (
                    f"; screw angle = 2 pi {found[0]}/{found[1]} (rational)"
                    if found
                    else "; screw angle rationality undecided up to denominator 1000"
                )
        return Certificate("type_I", kind, "screw subgroup", 1, None, note)

    trans = translation_subgroup(gen.elements, spec.truncation.tol)
    if len(trans) > 1:
        n_q, per_layer = _distinct_rotation_parts(
            gen.elements, gen.word_lengths, spec.truncation.word_length
        )
        last = per_layer[-(STABLE_WINDOW + 1) :]
        if len(last) == STABLE_WINDOW + 1 and len(set(last)) == 1:
            return Certificate(
                "type_I", "space_group", "translation subgroup", n_q, None,
                f"rotation-part count stable over the last {STABLE_WINDOW} layers; "
                "index = number of distinct rotation parts (heuristic witness)",
            )
        return Certificate(
            "inconclusive", "space_group", "translation subgroup", None, None,
            "rotation-part count had not stabilized within the word-length bound",
        )
    return Certificate(
        "inconclusive", "", "", None, None,
        "no translation subgroup found within the truncation and generators do not commute",
    )


# ---------------------------------------------------------------------------
# finite models: isometry groups as permutation actions on point orbits


@dataclass
class FiniteActionModel:
    group: FiniteGroup
    action: GroupAction
    points: np.ndarray          # (npoints, dim)
    elements: list              # IsometryElement per group index


class _TorusReducer:
    """Reduce vectors modulo a (possibly rank-deficient) superlattice."""

    def __init__(self, basis: np.ndarray | None):
        self.basis = basis  # (dim, rank) columns, or None for no folding
        self.pinv = None if basis is None else np.linalg.pinv(basis)

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        if self.basis is None:
            return vec
        coords = self.pinv @ vec
        return vec - self.basis @ np.round(coords)

    def same(self, a: np.ndarray, b: np.ndarray, tol: float) -> bool:
        if self.basis is None:
            return bool(np.linalg.norm(a - b) < tol)
        rank = self.basis.shape[1]
        delta = a - b
        for off in iproduct((-1, 0, 1), repeat=rank):
            if np.linalg.norm(delta - self.basis @ np.array(off, dtype=float)) < tol:
                return True
        return False


def _translation_basis(translations, dim: int, tol: float) -> np.ndarray | None:
    """Shortest independent translation vectors, as columns."""
    vecs = sorted(
        (e.c for e in translations if np.linalg.norm(e.c) > tol),
        key=lambda v: float(np.linalg.norm(v)),
    )
    basis = []
    for v in vecs:
        trial = np.column_stack(basis + [v]) if basis else v[:, None]
        if np.linalg.matrix_rank(trial, tol=1e-8) == len(basis) + 1:
            basis.append(v)
        if len(basis) == dim:
            break
    return np.column_stack(basis) if basis else None


def _match_or_add(rows: list, vec: np.ndarray, reducer: _TorusReducer, tol: float) -> int:
    for i, r in enumerate(rows):
        if reducer.same(r, vec, tol):
            return i
    rows.append(vec)
    return len(rows) - 1


def to_finite_action(spec: IsometryGroupSpec, seed_points, periods=None, tol: float = 1e-9) -> FiniteActionModel:
    """Finite permutation model of the group acting on seed-point orbits.

    Finite groups convert directly.  Infinite groups need periods: the
    translation lattice (scaled by the periods) is divided out, so both
    elements and points live on a torus; NotClosable is raised when the
    rotation parts do not preserve that lattice or an orbit fails to
    close under the identification.
    """
    gen = generate(spec)
    reducer = _TorusReducer(None)
    elements = gen.elements
    if not gen.finite:
        if periods is None:
            raise NotClosable("infinite group: supply periods to fold the translations")
        trans = translation_subgroup(elements, spec.truncation.tol)
        basis = _translation_basis(trans, spec.dim, tol)
        if basis is None:
            raise NotClosable("no translations found to fold within the truncation")
        periods = list(periods)
        if len(periods) != basis.shape[1]:
            raise NotClosable(
                f"{basis.shape[1]} independent translations but {len(periods)} periods"
            )
        super_basis = basis * np.asarray(periods, dtype=float)[None, :]
        # rotation parts must map the superlattice into itself
        pinv = np.linalg.pinv(super_basis)
        for e in elements:
            for col in super_basis.T:
                image = e.q @ col
                coords = pinv @ image
                if (
                    np.max(np.abs(coords - np.round(coords))) > 1e-6
                    or np.linalg.norm(super_basis @ coords - image) > 1e-6
                ):
                    raise NotClosable("rotation parts do not preserve the folded lattice")
        reducer = _TorusReducer(super_basis)

        # canonicalize, dedupe, and re-close on the quotient
        canon: list[IsometryElement] = []
        for e in elements:
            reduced = IsometryElement(e.q, reducer.reduce(e.c))
            if _find_element(canon, reduced, reducer, tol) < 0:
                canon.append(reduced)
        changed = True
        while changed:
            changed = False
            for a in list(canon):
                for b in list(canon):
                    cand = compose(a, b)
                    cand = IsometryElement(cand.q, reducer.reduce(cand.c))
                    if _find_element(canon, cand, reducer, tol) < 0:
                        canon.append(cand)
                        changed = True
                        if len(canon) > spec.truncation.max_elements:
                            raise TruncationExceeded(canon)
        elements = canon

    # group table by composing and matching
    n = len(elements)
    table = np.empty((n, n), dtype=int)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            cand = compose(a, b)
            cand = IsometryElement(cand.q, reducer.reduce(cand.c))
            k = _find_element(elements, cand, reducer, tol)
            if k < 0:
                raise NotClosable(f"product of elements {i} and {j} left the set")
            table[i, j] = k
    group = make_group(table)

    # orbit closure of the seeds
    points: list[np.ndarray] = []
    for seed in np.atleast_2d(np.asarray(seed_points, dtype=float)):
        for e in elements:
            _match_or_add(points, reducer.reduce(act(e, seed)), reducer, tol)
    pts = np.array(points)
    perm = np.empty((n, len(points)), dtype=int)
    for i, e in enumerate(elements):
        for x, p in enumerate(points):
            image = reducer.reduce(act(e, p))
            k = next(
                (j for j, r in enumerate(points) if reducer.same(r, image, tol)), -1
            )
            if k < 0:
                raise NotClosable(f"orbit point {p} escapes under element {i}")
            perm[i, x] = k
    action = make_action(group, perm)
    return FiniteActionModel(group, action, pts, elements)


def _find_element(elements, e: IsometryElement, reducer: _TorusReducer, tol: float) -> int:
    for i, other in enumerate(elements):
        if np.linalg.norm(other.q - e.q) < tol and reducer.same(other.c, e.c, tol):
            return i
    return -1


def isometry_finite_group(elements, tol: float = 1e-9) -> FiniteGroup:
    """Composition table of an explicit finite element list."""
    reducer = _TorusReducer(None)
    n = len(elements)
    table = np.empty((n, n), dtype=int)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            k = _find_element(elements, compose(a, b), reducer, tol)
            if k < 0:
                raise NotClosable(f"element list not closed at ({i},{j})")
            table[i, j] = k
    return make_group(table)
