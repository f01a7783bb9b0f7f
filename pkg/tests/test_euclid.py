import numpy as np
import pytest

from zakspace.actions import orbits, stabilizer
from zakspace.errors import DimensionMismatch, NotClosable, TruncationExceeded
from zakspace.euclid import (
    IsometryElement,
    IsometryGroupSpec,
    Truncation,
    act,
    compose,
    conjugation_residual,
    distance,
    generate,
    identity_isometry,
    inverse,
    isometry_finite_group,
    rotation_2d,
    rotation_z,
    screw,
    to_finite_action,
    translation,
    translation_subgroup,
    type_one_certificate,
)


def c6_spec():
    return IsometryGroupSpec(2, [IsometryElement(rotation_2d(np.pi / 3), [0.0, 0.0])])


def pm_spec(word_length=12, radius=6.0):
    mirror = IsometryElement(np.diag([1.0, -1.0]), [0.0, 0.0])
    return IsometryGroupSpec(
        2,
        [translation([1.0, 0.0]), translation([0.0, 1.0]), mirror],
        Truncation(word_length=word_length, radius=radius, max_elements=4000),
    )


def test_translations_compose():
    a, b = translation([1.0, 2.0]), translation([0.5, -1.0])
    assert np.allclose(compose(a, b).c, [1.5, 1.0])


def test_conjugation_identity_exact():
    rng = np.random.default_rng(0)
    for _ in range(20):
        theta = rng.uniform(0, 2 * np.pi)
        g = IsometryElement(rotation_z(theta), rng.normal(size=3))
        t = translation(rng.normal(size=3))
        assert conjugation_residual(g, t) < 1e-12


def test_inverse_compose_identity():
    rng = np.random.default_rng(1)
    for _ in range(20):
        e = IsometryElement(rotation_z(rng.uniform(0, 7)), rng.normal(size=3))
        assert distance(compose(e, inverse(e)), identity_isometry(3)) < 1e-12


def test_act_is_isometry():
    rng = np.random.default_rng(2)
    e = IsometryElement(rotation_z(0.7), [0.1, -0.2, 0.4])
    x, y = rng.normal(size=3), rng.normal(size=3)
    assert np.linalg.norm(act(e, x) - act(e, y)) == pytest.approx(
        np.linalg.norm(x - y), abs=1e-12
    )


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        compose(translation([1.0, 0.0]), translation([1.0, 0.0, 0.0]))


def test_c6_generation_finite():
    gen = generate(c6_spec())
    assert gen.finite
    assert gen.order == 6


def test_unit_translation_infinite():
    spec = IsometryGroupSpec(
        2, [translation([1.0, 0.0])], Truncation(word_length=30, radius=8.0)
    )
    gen = generate(spec)
    assert not gen.finite
    # translations n in [-8, 8]
    assert gen.order == 17


def test_screw_truncation_count():
    pitch = 1.0
    spec = IsometryGroupSpec(
        3, [screw(2 * np.pi / 5, pitch)], Truncation(word_length=40, radius=7.5)
    )
    gen = generate(spec)
    assert not gen.finite
    assert gen.order == 15  # powers with |n| <= 7


def test_truncation_exceeded_carries_partial():
    spec = IsometryGroupSpec(
        2,
        [translation([1.0, 0.0]), translation([0.0, 1.0])],
        Truncation(word_length=40, radius=30.0, max_elements=25),
    )
    with pytest.raises(TruncationExceeded) as err:
        generate(spec)
    assert len(err.value.partial) > 25


def test_translation_subgroup_pm():
    gen = generate(pm_spec())
    trans = translation_subgroup(gen.elements)
    assert all(np.allclose(e.q, np.eye(2)) for e in trans)
    assert len(trans) > 5
    # normality via the conjugation identity on sampled pairs
    for g in gen.elements[:10]:
        for t in trans[:5]:
            assert conjugation_residual(g, t) < 1e-12


def test_pure_rotation_group_trivial_translations():
    gen = generate(c6_spec())
    trans = translation_subgroup(gen.elements)
    assert len(trans) == 1  # identity only


def test_irrational_screw_has_no_translations():
    spec = IsometryGroupSpec(
        3, [screw(1.0, 0.3)], Truncation(word_length=12, radius=10.0)
    )
    gen = generate(spec)
    trans = translation_subgroup(gen.elements)
    assert len(trans) == 1


def test_certificate_finite_point_group():
    cert = type_one_certificate(c6_spec())
    assert cert.status == "type_I"
    assert cert.kind == "finite"
    assert cert.index == 1  # abelian: its own witness


def test_certificate_finite_nonabelian():
    spec = IsometryGroupSpec(
        2,
        [
            IsometryElement(rotation_2d(2 * np.pi / 3), [0.0, 0.0]),
            IsometryElement(np.diag([1.0, -1.0]), [0.0, 0.0]),
        ],
    )
    cert = type_one_certificate(spec)
    assert cert.status == "type_I"
    assert cert.kind == "finite"
    assert cert.order == 6
    assert cert.index == cert.order  # trivial-subgroup witness


def test_certificate_pm_space_group():
    cert = type_one_certificate(pm_spec())
    assert cert.status == "type_I"
    assert cert.kind == "space_group"
    assert cert.witness == "translation subgroup"
    assert cert.index == 2


def test_certificate_helical():
    spec = IsometryGroupSpec(
        3, [screw(2 * np.pi / 7, 0.5)], Truncation(word_length=16, radius=10.0)
    )
    cert = type_one_certificate(spec)
    assert cert.status == "type_I"
    assert cert.kind == "helical"
    assert cert.index == 1


def test_certificate_inconclusive_under_tight_truncation():
    cert = type_one_certificate(pm_spec(word_length=2, radius=3.0))
    assert cert.status == "inconclusive"


def test_certificate_inconclusive_growing_rotations():
    # irrational rotation: new rotation parts appear in every layer
    gen = IsometryElement(rotation_2d(1.0), [0.0, 0.0])
    glide = IsometryElement(np.diag([1.0, -1.0]), [1.0, 0.0])
    spec = IsometryGroupSpec(
        2, [gen, glide], Truncation(word_length=8, radius=6.0, max_elements=8000)
    )
    cert = type_one_certificate(spec)
    assert cert.status == "inconclusive"


def test_to_finite_action_c6_generic_seed():
    model = to_finite_action(c6_spec(), [[1.0, 0.2]])
    assert model.group.order == 6
    assert model.action.npoints == 6
    dec = orbits(model.action)
    assert dec.norbits == 1 and dec.stabilizer_sizes == [1]


def test_to_finite_action_c6_center():
    model = to_finite_action(c6_spec(), [[0.0, 0.0]])
    assert model.action.npoints == 1
    assert len(stabilizer(model.action, 0)) == 6


def test_to_finite_action_d3_triangle():
    spec = IsometryGroupSpec(
        2,
        [
            IsometryElement(rotation_2d(2 * np.pi / 3), [0.0, 0.0]),
            IsometryElement(np.diag([1.0, -1.0]), [0.0, 0.0]),
        ],
    )
    model = to_finite_action(spec, [[1.0, 0.0]])  # vertex on the mirror axis
    assert model.group.order == 6
    assert model.action.npoints == 3
    for x in range(3):
        assert len(stabilizer(model.action, x)) == 2


def test_to_finite_action_folded_lattice():
    spec = IsometryGroupSpec(
        2,
        [translation([1.0, 0.0]), translation([0.0, 1.0])],
        Truncation(word_length=10, radius=5.0),
    )
    model = to_finite_action(spec, [[0.13, 0.29]], periods=[3, 2])
    assert model.group.order == 6
    assert model.action.npoints == 6


def test_to_finite_action_folded_rational_screw():
    spec = IsometryGroupSpec(
        3, [screw(2 * np.pi / 5, 0.4)], Truncation(word_length=30, radius=6.0)
    )
    model = to_finite_action(spec, [[0.7, 0.1, 0.05]], periods=[1])
    assert model.group.order == 5
    assert model.action.npoints == 5


def test_to_finite_action_infinite_needs_periods():
    spec = IsometryGroupSpec(
        2, [translation([1.0, 0.0])], Truncation(word_length=6, radius=4.0)
    )
    with pytest.raises(NotClosable):
        to_finite_action(spec, [[0.0, 0.5]])


def test_isometry_finite_group_table():
    gen = generate(c6_spec())
    group = isometry_finite_group(gen.elements)
    assert group.order == 6
    assert group.is_abelian()


def test_rational_angle_detection():
    from zakspace.euclid import rational_angle

    assert rational_angle(2 * np.pi * 3 / 7) == (3, 7)
    assert rational_angle(2 * np.pi * 1 / 5) == (1, 5)
    assert rational_angle(1.0) is None  # 1 radian: no small denominator
    p, q = rational_angle(2 * np.pi * 355 / 113 / (2 * np.pi) * 2 * np.pi)  # angle with q=113
    assert q == 113


def test_helical_certificate_notes_rationality():
    spec = IsometryGroupSpec(
        3, [screw(2 * np.pi / 7, 0.5)], Truncation(word_length=16, radius=10.0)
    )
    cert = type_one_certificate(spec)
    assert "2 pi 1/7 (rational)" in cert.notes
    spec = IsometryGroupSpec(
        3, [screw(1.0, 0.3)], Truncation(word_length=10, radius=8.0)
    )
    cert = type_one_certificate(spec)
    assert "undecided" in cert.notes


def test_spec_rejects_unsupported_dimension():
    with pytest.raises(DimensionMismatch):
        IsometryGroupSpec(4, [])


def test_folding_rejects_incompatible_rotation():
    # an irrational rotation cannot preserve the folded square lattice
    spec = IsometryGroupSpec(
        2,
        [
            translation([1.0, 0.0]),
            translation([0.0, 1.0]),
            IsometryElement(rotation_2d(1.0), [0.0, 0.0]),
        ],
        Truncation(word_length=4, radius=4.0, max_elements=8000),
    )
    with pytest.raises(NotClosable):
        to_finite_action(spec, [[0.2, 0.3]], periods=[2, 2])
