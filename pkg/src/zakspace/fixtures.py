"""Bundled groups and actions used by the test suite and the CLI battery.

Each action constructor returns a fresh validated GroupAction; names are
stable and appear in verification reports.
"""

from __future__ import annotations

import numpy as np

from .actions import GroupAction, make_action, translation_action
from .groups import FiniteGroup, cyclic_group, dihedral_group, symmetric_group


def z2_swap() -> GroupAction:
    """Free swap of two points, unit weights."""
    return make_action(cyclic_group(2), [[0, 1], [1, 0]])


def z2_swap_weighted() -> GroupAction:
    """Quasi-invariant weights w = (1, 2) on the swap."""
    return make_action(cyclic_group(2), [[0, 1], [1, 0]], weights=[1.0, 2.0])


def z2_fixed_point() -> GroupAction:
    """Swap of {0,1} with the extra point 2 held fixed."""
    return make_action(cyclic_group(2), [[0, 1, 2], [1, 0, 2]])


def z4_rotation() -> GroupAction:
    """Z4 rotating a 4-cycle of points."""
    g = cyclic_group(4)
    perm = [[(x + a) % 4 for x in range(4)] for a in range(4)]
    return make_action(g, perm)


def c6_ring() -> GroupAction:
    """Z6 rotating a 6-site ring, the band-structure workhorse."""
    g = cyclic_group(6)
    perm = [[(x + a) % 6 for x in range(6)] for a in range(6)]
    return make_action(g, perm)


def c6_ring_with_center() -> GroupAction:
    """6-site ring plus the fixed center point 6."""
    g = cyclic_group(6)
    perm = [[(x + a) % 6 for x in range(6)] + [6] for a in range(6)]
    return make_action(g, perm)


def s3_translation() -> GroupAction:
    """S3 acting on itself by left translation (free, one orbit)."""
    return translation_action(symmetric_group(3))


def d3_flags() -> GroupAction:
    """D3 acting on its 6 flags by left translation: free and transitive."""
    return translation_action(dihedral_group(3))


def d3_triangle() -> GroupAction:
    """D3 on the 3 triangle vertices: transitive with order-2 stabilizers.

    Element a + 3b encodes r^a s^b; r rotates the vertices, s fixes 0.
    """
    g = dihedral_group(3)
    perm = []
    for e in g.elements():
        a, b = e % 3, e // 3
        row = []
        for x in range(3):
            y = (-x) % 3 if b else x  # reflection fixing vertex 0
            row.append((y + a) % 3)
        perm.append(row)
    return make_action(g, perm)


def weighted_fixed_point() -> GroupAction:
    """Fixed-point action with non-uniform (orbit-respecting) weights."""
    return make_action(
        cyclic_group(2), [[0, 1, 2], [1, 0, 2]], weights=[1.5, 3.0, 0.5]
    )


BUNDLED_ACTIONS = {
    "z2_swap": z2_swap,
    "z2_swap_weighted": z2_swap_weighted,
    "z2_fixed_point": z2_fixed_point,
    "z4_rotation": z4_rotation,
    "c6_ring": c6_ring,
    "c6_ring_with_center": c6_ring_with_center,
    "s3_translation": s3_translation,
    "d3_flags": d3_flags,
    "d3_triangle": d3_triangle,
    "weighted_fixed_point": weighted_fixed_point,
}


BUNDLED_GROUPS = {
    "cyclic:2": lambda: cyclic_group(2),
    "cyclic:4": lambda: cyclic_group(4),
    "cyclic:6": lambda: cyclic_group(6),
    "dihedral:3": lambda: dihedral_group(3),
    "dihedral:4": lambda: dihedral_group(4),
    "symmetric:3": lambda: symmetric_group(3),
}


def group_by_name(name: str) -> FiniteGroup:
    """Catalog lookup: cyclic:N, dihedral:N, symmetric:N, product:AxB."""
    kind, _, arg = name.partition(":")
    if kind == "cyclic":
        return cyclic_group(int(arg))
    if kind == "dihedral":
        return dihedral_group(int(arg))
    if kind == "symmetric":
        return symmetric_group(int(arg))
    if kind == "product":
        left, sep, right = arg.partition("x")
        if not sep:
            raise ValueError(f"product name needs AxB, got {name!r}")
        from .groups import direct_product

        return direct_product(group_by_name(left), group_by_name(right))
    raise ValueError(f"unknown group name {name!r}")


def random_complex(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def s3_transposition_subgroup(group: FiniteGroup) -> list[int]:
    """The order-2 subgroup generated by the transposition (0 1) in S3."""
    perms = getattr(group, "permutations", None)
    if perms is None:
        raise ValueError("expected a group built by symmetric_group")
    swap = tuple([1, 0] + list(range(2, len(perms[0]))))
    return [group.identity, perms.index(swap)]
