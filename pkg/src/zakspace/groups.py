"""Finite groups given by multiplication tables, elements indexed 0..n-1.

A group is stored as an n x n table of element indices together with the
located identity and per-element inverses.  The counting measure (weight 1
per element) is the Haar measure throughout zakspace; it is two-sided
invariant, so the modular function is identically 1 and all unimodularity
hypotheses hold for free.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import NoIdentity, NoInverse, NotAssociative, NotSubgroup


class FiniteGroup:
    """Validated finite group on indices 0..order-1.

    Use :func:`make_group` (or one of the named constructors) instead of
    calling this directly; construction assumes the table was checked.
    """

    def __init__(self, table, identity, inverses, name=None):
        self.table = np.asarray(table, dtype=int)
        self.order = int(self.table.shape[0])
        self.identity = int(identity)
        self.inverses = np.asarray(inverses, dtype=int)
        self.name = name
        self._factors = None  # set by direct_product

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        return int(self.inverses[g])

    def conjugate(self, g: int, h: int) -> int:
        """g h g^-1."""
        return self.mul(self.mul(g, h), self.inv(g))

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, g: int) -> int:
        k, acc = 1, g
        while acc != self.identity:
            acc = self.mul(acc, g)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def conjugacy_classes(self) -> list[list[int]]:
        """Conjugacy classes, each sorted, ordered by smallest member."""
        seen = set()
        classes = []
        for g in self.elements():
            if g in seen:
                continue
            cls = sorted({self.conjugate(h, g) for h in self.elements()})
            seen.update(cls)
            classes.append(cls)
        return classes

    def __repr__(self):
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"


def make_group(table, name=None) -> FiniteGroup:
    """Validate a multiplication table and locate identity and inverses.

    Raises NotAssociative / NoIdentity / NoInverse, each naming the witness.
    """
    t = np.asarray(table, dtype=int)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError(f"table must be square, got shape {t.shape}")
    n = t.shape[0]
    if n == 0:
        raise ValueError("empty table")
    if t.min() < 0 or t.max() >= n:
        raise ValueError("table entries out of range")

    # two-sided identity
    idx = np.arange(n)
    identity = None
    for e in range(n):
        if np.array_equal(t[e], idx) and np.array_equal(t[:, e], idx):
            identity = e
            break
    if identity is None:
        raise NoIdentity()

    # associativity: t[t[g,h],k] == t[g,t[h,k]] for all triples
    lhs = t[t, :]
    rhs = t[:, t]
    if not np.array_equal(lhs, rhs):
        g, h, k = np.argwhere(lhs != rhs)[0]
        raise NotAssociative(int(g), int(h), int(k))

    inverses = np.full(n, -1, dtype=int)
    for g in range(n):
        hits = np.where(t[g] == identity)[0]
        if hits.size == 0 or t[hits[0], g] != identity:
            raise NoInverse(g)
        inverses[g] = hits[0]

    return FiniteGroup(t, identity, inverses, name=name)


# ---------------------------------------------------------------------------
# named constructors


def cyclic_group(n: int) -> FiniteGroup:
    """Z_n with addition mod n; element index equals the residue."""
    if n <= 0:
        raise ValueError("order must be positive")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return make_group(table, name=f"cyclic:{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; element a + n*b encodes r^a s^b."""
    if n < 1:
        raise ValueError("n must be >= 1")
    order = 2 * n

    def mul(x, y):
        a1, b1 = x % n, x // n
        a2, b2 = y % n, y // n
        # (r^a1 s^b1)(r^a2 s^b2): s r^a = r^-a s
        a = (a1 + (a2 if b1 == 0 else -a2)) % n
        b = (b1 + b2) % 2
        return a + n * b

    table = [[mul(x, y) for y in range(order)] for x in range(order)]
    return make_group(table, name=f"dihedral:{n}")


def _all_perms(n):
    return sorted(itertools.permutations(range(n)))


def permutation_table(perms) -> np.ndarray:
    """Composition table for a list of permutations, (p*q)(i) = p(q(i))."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    n_pts = len(perms[0])
    table = np.empty((len(perms), len(perms)), dtype=int)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            comp = tuple(p[q[k]] for k in range(n_pts))
            if comp not in index:
                raise NotSubgroup(f"permutation set not closed: {p} o {q}")
            table[i, j] = index[comp]
    return table


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on the letters 0..n-1, elements in lexicographic order."""
    if n > 6:
        raise ValueError("symmetric_group is intended for small n")
    perms = _all_perms(n)
    g = make_group(permutation_table(perms), name=f"symmetric:{n}")
    g.permutations = perms
    return g


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Direct product with element a*|G2| + b encoding the pair (a, b)."""
    n2 = g2.order
    a1, b1 = np.divmod(np.arange(g1.order * n2)[:, None], n2)
    a2, b2 = np.divmod(np.arange(g1.order * n2)[None, :], n2)
    table = g1.table[a1, a2] * n2 + g2.table[b1, b2]
    name = f"product:{g1.name or '?'}x{g2.name or '?'}"
    g = make_group(table, name=name)
    g._factors = (g1, g2)
    return g


# ---------------------------------------------------------------------------
# subgroup utilities


def check_subgroup(group: FiniteGroup, elements) -> list[int]:
    """Validate closure under product and inverse; return the sorted subgroup."""
    elems = sorted(set(int(x) for x in elements))
    if not elems:
        raise NotSubgroup("empty element set")
    member = set(elems)
    if group.identity not in member:
        raise NotSubgroup("subgroup must contain the identity")
    for g in elems:
        if group.inv(g) not in member:
            raise NotSubgroup(f"inverse of {g} missing")
        for h in elems:
            if group.mul(g, h) not in member:
                raise NotSubgroup(f"product {g}*{h} escapes the set")
    return elems

def generated_subgroup(group: FiniteGroup, generators) -> list[int]:
    """Closure of a generator set, sorted."""
    elems = {group.identity}
    frontier = [int(g) for g in generators]
    elems.update(frontier)
    while frontier:
        new = []
        for g in frontier:
            for h in list(elems):
                for prod in (group.mul(g, h), group.mul(h, g)):
                    if prod not in elems:
                        elems.add(prod)
                        new.append(prod)
        frontier = new
    return sorted(elems)


def subgroup_as_group(group: FiniteGroup, elements) -> tuple[FiniteGroup, dict]:
    """Reindex a subgroup as its own FiniteGroup; returns (group, old->new map)."""
    elems = check_subgroup(group, elements)
    to_new = {g: i for i, g in enumerate(elems)}
    table = [[to_new[group.mul(g, h)] for h in elems] for g in elems]
    return make_group(table), to_new


def left_cosets(group: FiniteGroup, subgroup_elems) -> list[list[int]]:
    """Partition into cosets gH, each sorted, ordered by smallest member."""
    member = set(subgroup_elems)
    if not member:
        raise NotSubgroup("empty element set")
    seen = set()
    cosets = []
    for g in group.elements():
        if g in seen:
            continue
        coset = sorted(group.mul(g, h) for h in member)
        seen.update(coset)
        cosets.append(coset)
    return cosets


def is_normal(group: FiniteGroup, subgroup_elems) -> bool:
    member = set(subgroup_elems)
    return all(
        group.conjugate(g, h) in member for g in group.elements() for h in member
    )
