import numpy as np
import pytest

from zakspace.duals import irreps
from zakspace.errors import DualGroupMismatch, NotRepresentative, SizeMismatch
from zakspace.fixtures import (
    BUNDLED_ACTIONS,
    random_complex,
    s3_translation,
    z2_fixed_point,
    z2_swap,
)
from zakspace.groups import cyclic_group
from zakspace.weil import weil_structure
from zakspace.zak import (
    character_zak,
    character_zak_reconstruct,
    extended_zak,
    heisenberg_consistency_residual,
    intertwining_residual,
    verify_roundtrip,
    verify_unitarity,
    weak_inversion_residual,
    zak,
    zak_inverse,
    zak_measure_eval,
)


def _dual_for(action):
    return irreps(action.group)


def test_swap_explicit_values():
    action = z2_swap()
    dual = _dual_for(action)
    f = np.array([2.0, 3.0], dtype=complex)
    coeffs = zak(action, f, dual)
    assert coeffs.value(0, "chi0") == pytest.approx(5.0)
    assert coeffs.value(0, "chi1") == pytest.approx(-1.0)


def test_fixed_point_vanishing():
    action = z2_fixed_point()
    dual = _dual_for(action)
    rng = np.random.default_rng(0)
    f = random_complex(rng, 3)
    coeffs = zak(action, f, dual)
    # chi1 is not trivial on the full stabilizer of the fixed point 2
    assert abs(coeffs.value(2, "chi1")) < 1e-12 * np.linalg.norm(f)
    assert coeffs.value(2, "chi0") == pytest.approx(2 * f[2])


def test_s3_delta_gives_identity_blocks():
    action = s3_translation()
    dual = _dual_for(action)
    f = np.zeros(6, dtype=complex)
    f[action.group.identity] = 1.0
    coeffs = zak(action, f, dual)
    for s in dual.irreps:
        assert np.max(np.abs(coeffs[(0, s.label)] - np.eye(s.dim))) < 1e-12


def test_dual_group_mismatch():
    action = z2_swap()
    wrong = irreps(cyclic_group(3))
    with pytest.raises(DualGroupMismatch):
        zak(action, np.zeros(2), wrong)


def test_extended_zak_consistency():
    rng = np.random.default_rng(1)
    for make in BUNDLED_ACTIONS.values():
        action = make()
        dual = _dual_for(action)
        f = random_complex(rng, action.npoints)
        for x in range(action.npoints):
            extended_zak(action, f, dual, x)  # raises on any mismatch


def test_extended_zak_swap_sign():
    action = z2_swap()
    dual = _dual_for(action)
    f = np.array([1.0, 4.0], dtype=complex)
    coeffs = zak(action, f, dual)
    ext = extended_zak(action, f, dual, 1)
    assert ext["chi1"][0, 0] == pytest.approx(-coeffs.value(0, "chi1"))


def test_roundtrip_all_bundled():
    rng = np.random.default_rng(2)
    for name, make in BUNDLED_ACTIONS.items():
        action = make()
        dual = _dual_for(action)
        for _ in range(20):
            f = random_complex(rng, action.npoints)
            rep = verify_roundtrip(action, f, dual)
            assert rep.passed, name


def test_roundtrip_delta_swap():
    action = z2_swap()
    dual = _dual_for(action)
    f = np.array([1.0, 0.0], dtype=complex)
    rec = zak_inverse(zak(action, f, dual))
    assert np.max(np.abs(rec - f)) < 1e-14


def test_unitarity_all_bundled():
    rng = np.random.default_rng(3)
    for name, make in BUNDLED_ACTIONS.items():
        action = make()
        dual = _dual_for(action)
        for _ in range(10):
            f = random_complex(rng, action.npoints)
            rep = verify_unitarity(zak(action, f, dual), f)
            assert rep.passed, name


def test_unitarity_fixed_point_budget():
    # mu_F at the fixed point is 1/2; the surviving character has |Z| = 2|f(c)|
    action = z2_fixed_point()
    dual = _dual_for(action)
    s = weil_structure(action)
    assert s.decomp.fd_measure[2] == pytest.approx(0.5)
    f = np.array([0.0, 0.0, 1.0], dtype=complex)
    coeffs = zak(action, f, dual, s)
    # total image mass: (1/2) * (1/2) * |2|^2 = 1 = |f(c)|^2
    assert coeffs.image_norm_sq() == pytest.approx(1.0)


def test_intertwining_exhaustive():
    rng = np.random.default_rng(4)
    for name, make in BUNDLED_ACTIONS.items():
        action = make()
        dual = _dual_for(action)
        f = random_complex(rng, action.npoints)
        assert intertwining_residual(action, f, dual) < 1e-12, name


def test_character_zak_abelian_equals_zak():
    action = z2_fixed_point()
    dual = _dual_for(action)
    rng = np.random.default_rng(5)
    f = random_complex(rng, 3)
    chars = character_zak(action, f, dual)
    coeffs = zak(action, f, dual)
    for key, val in chars.items():
        assert val == pytest.approx(coeffs.value(*key), abs=1e-13)


def test_character_zak_s3_delta_dims():
    action = s3_translation()
    dual = _dual_for(action)
    f = np.zeros(6, dtype=complex)
    f[action.group.identity] = 1.0
    chars = character_zak(action, f, dual)
    got = sorted(round(chars[(0, s.label)].real) for s in dual.irreps)
    assert got == [1, 1, 2]


def test_character_reconstruction():
    rng = np.random.default_rng(6)
    action = s3_translation()
    dual = _dual_for(action)
    f = random_complex(rng, 6)
    _, resid = character_zak_reconstruct(action, f, dual)
    assert resid < 1e-11


def test_zak_measure_delta_free_action():
    action = z2_swap()
    dual = _dual_for(action)
    phi = np.array([1.0, 0.0], dtype=complex)
    out = zak_measure_eval(action, dual, 0, "chi1", phi)
    assert out[0, 0] == pytest.approx(1.0)  # only g = e contributes


def test_zak_measure_not_representative():
    action = z2_swap()
    dual = _dual_for(action)
    with pytest.raises(NotRepresentative):
        zak_measure_eval(action, dual, 1, "chi0", np.zeros(2))


def test_zak_measure_eigenvalue_law():
    # evaluating on the g-translate twists by sigma(g) on the right
    for make in (z2_swap, s3_translation):
        action = make()
        dual = _dual_for(action)
        rng = np.random.default_rng(7)
        phi = random_complex(rng, action.npoints)
        for g in action.group.elements():
            shifted = action.pullback(action.group.inv(g), phi)
            for s in dual.irreps:
                lhs = zak_measure_eval(action, dual, 0, s.label, shifted)
                rhs = zak_measure_eval(action, dual, 0, s.label, phi) @ s.matrices[g]
                assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_weak_inversion():
    rng = np.random.default_rng(8)
    for name, make in BUNDLED_ACTIONS.items():
        action = make()
        dual = _dual_for(action)
        f = random_complex(rng, action.npoints)
        phi = random_complex(rng, action.npoints)
        assert weak_inversion_residual(action, f, phi, dual) < 1e-11, name


def test_heisenberg_second_path():
    action = z2_fixed_point()
    dual = _dual_for(action)
    rng = np.random.default_rng(9)
    f = random_complex(rng, 3)
    assert heisenberg_consistency_residual(action, f, dual) < 1e-13


def test_size_mismatch():
    action = z2_swap()
    dual = _dual_for(action)
    with pytest.raises(SizeMismatch):
        zak(action, np.zeros(5), dual)


def test_projective_multiplier_identity():
    # xi_(g,chi) xi_(g',chi') = chi(g') chi'(g) xi_(gg', chi chi'): the
    # modulated translates compose projectively with a scalar multiplier
    action = z2_fixed_point()
    group = action.group
    dual = _dual_for(action)
    rng = np.random.default_rng(20)
    f = random_complex(rng, 3)

    def xi(g, chi_vals, vec):
        return action.pullback(g, vec) * np.conj(chi_vals[g])

    chars = {s.label: s.matrices[:, 0, 0] for s in dual.irreps}
    labels = dual.labels
    for g in group.elements():
        for gp in group.elements():
            for la in labels:
                for lb in labels:
                    lhs = xi(g, chars[la], xi(gp, chars[lb], f))
                    prod_char = chars[la] * chars[lb]
                    mult = chars[la][gp] * chars[lb][g]
                    rhs = mult * xi(group.mul(g, gp), prod_char, f)
                    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_stabilizer_absorption():
    # Z(x0, sigma) sigma(h) = Z(x0, sigma) for h in the stabilizer of x0
    action = z2_fixed_point()
    dual = _dual_for(action)
    rng = np.random.default_rng(21)
    f = random_complex(rng, 3)
    coeffs = zak(action, f, dual)
    for s in dual.irreps:
        block = coeffs[(2, s.label)]
        for h in (0, 1):  # both elements stabilize the fixed point 2
            assert np.max(np.abs(block @ s.matrices[h] - block)) < 1e-12


def test_zak_measure_eigenlaw_on_demand():
    from zakspace.zak import zak_measure_eigenlaw_residual

    rng = np.random.default_rng(22)
    for make in (z2_fixed_point, s3_translation):
        action = make()
        dual = _dual_for(action)
        phi = random_complex(rng, action.npoints)
        for label in dual.labels:
            assert zak_measure_eigenlaw_residual(action, dual, 0, label, phi) < 1e-12
