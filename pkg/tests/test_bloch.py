import numpy as np
import pytest

from zakspace.bloch import (
    band_structure,
    band_union_residual,
    bloch_fields,
    block_diagonalize,
    check_invariance,
    ring_hamiltonian,
    ring_translation_action,
    zak_conjugation_residual,
)
from zakspace.duals import irreps
from zakspace.errors import NotHermitian, NotInvariant
from zakspace.fixtures import c6_ring, d3_flags, random_complex
from zakspace.zak import zak


def circulant_6(t=1.0, v=0.0):
    return ring_hamiltonian(t, 1, 6, [v])


def test_check_invariance_circulant():
    action = c6_ring()
    op = check_invariance(action, circulant_6())
    assert op.matrix.shape == (6, 6)


def test_orbit_constant_potential_ok():
    action = d3_flags()
    v = np.eye(6) * 2.5  # one orbit: any constant diagonal is invariant
    check_invariance(action, v)


def test_orbit_breaking_potential_rejected():
    action = c6_ring()
    v = np.diag([1.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    with pytest.raises(NotInvariant):
        check_invariance(action, v)


def test_non_hermitian_rejected():
    action = c6_ring()
    h = circulant_6()
    h[0, 1] = 5.0
    with pytest.raises(NotHermitian):
        check_invariance(action, h)


def test_c6_circulant_blocks_are_cosines():
    action = c6_ring()
    dual = irreps(action.group)
    op = check_invariance(action, circulant_6(t=1.0, v=0.5))
    bd = block_diagonalize(op, dual)
    got = sorted(float(b[0][0, 0].real) for b in bd.blocks.values())
    expected = sorted(-2.0 * np.cos(2.0 * np.pi * j / 6.0) + 0.5 for j in range(6))
    assert np.allclose(got, expected, atol=1e-10)
    assert bd.off_block_residual < 1e-9


def test_identity_blocks_identity():
    action = d3_flags()
    dual = irreps(action.group)
    bd = block_diagonalize(check_invariance(action, np.eye(6)), dual)
    for bs in bd.blocks.values():
        for b in bs:
            assert np.max(np.abs(b - np.eye(b.shape[0]))) < 1e-10


def test_d3_invariant_operator_blocks():
    action = d3_flags()
    group = action.group
    dual = irreps(group)
    # group-averaged random Hermitian: guaranteed invariant
    rng = np.random.default_rng(0)
    raw = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    raw = raw + raw.conj().T
    h = np.zeros_like(raw)
    for g in group.elements():
        pg = action.permutation_matrix(g)
        h += pg @ raw @ pg.T
    op = check_invariance(action, h)
    bd = block_diagonalize(op, dual)
    sizes = sorted(b.shape[0] for bs in bd.blocks.values() for b in bs)
    assert sizes == [1, 1, 2, 2]
    assert bd.repetition_residual() < 1e-9
    # spectrum conservation against the dense solver
    dense = np.linalg.eigvalsh(h)
    assert np.max(np.abs(bd.spectrum() - dense)) < 1e-9 * max(1.0, np.linalg.norm(h))


def test_zak_intertwines_operator_with_blocks():
    action = d3_flags()
    dual = irreps(action.group)
    rng = np.random.default_rng(1)
    raw = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    raw = raw + raw.conj().T
    h = sum(
        action.permutation_matrix(g) @ raw @ action.permutation_matrix(g).T
        for g in action.group.elements()
    )
    op = check_invariance(action, h)
    scale = np.linalg.norm(h)
    for _ in range(20):
        f = random_complex(rng, 6)
        assert zak_conjugation_residual(op, dual, f) < 1e-9 * scale


def test_band_m1_cosine():
    bs = band_structure(t=1.0, m=1, n=6, onsite=[0.0])
    assert np.allclose(
        sorted(bs.bands.ravel()), sorted(-2.0 * np.cos(2.0 * np.pi * np.arange(6) / 6))
    )
    assert band_union_residual(bs) < 1e-10


def test_constant_shift():
    base = band_structure(t=1.0, m=2, n=5, onsite=[0.0, 0.0])
    shifted = band_structure(t=1.0, m=2, n=5, onsite=[0.7, 0.7])
    assert np.allclose(shifted.bands, base.bands + 0.7, atol=1e-12)


def test_dimer_gap_and_union():
    delta = 0.6
    bs = band_structure(t=1.0, m=2, n=8, onsite=[delta, -delta])
    # band edge theta = pi: hopping amplitude vanishes, gap is exactly 2 delta
    edge = bs.bands[4]  # j = N/2
    assert edge[1] - edge[0] == pytest.approx(2 * delta, abs=1e-10)
    assert band_union_residual(bs) < 1e-9
    # every k keeps the two bands separated by at least the gap
    assert np.min(bs.bands[:, 1] - bs.bands[:, 0]) >= 2 * delta - 1e-10


def test_bands_even_in_k():
    bs = band_structure(t=1.0, m=3, n=8, onsite=[0.0, 0.4, -0.1])
    for j in range(1, 8):
        assert np.max(np.abs(bs.bands[j] - bs.bands[-j])) < 1e-10


def test_ring_action_invariance():
    h = ring_hamiltonian(1.0, 2, 4, [0.3, -0.3])
    action = ring_translation_action(2, 4)
    check_invariance(action, h)


def test_bloch_fields_invariant_function():
    action = c6_ring()
    dual = irreps(action.group)
    f = np.full(6, 2.0 + 1.0j)
    bf = bloch_fields(action, f, dual)
    assert bf.field_norm("chi0") > 1.0
    for label in dual.labels[1:]:
        assert bf.field_norm(label) < 1e-12


def test_bloch_fields_single_wave():
    action = c6_ring()
    dual = irreps(action.group)
    # a chi_j-modulated orbit function lights up exactly one field
    j = 2
    f = np.exp(-2j * np.pi * j * np.arange(6) / 6)
    bf = bloch_fields(action, f, dual)
    hot = [label for label in dual.labels if bf.field_norm(label) > 1e-9]
    assert len(hot) == 1


def test_bloch_fields_roundtrip_random():
    action = d3_flags()
    dual = irreps(action.group)
    rng = np.random.default_rng(2)
    for _ in range(10):
        f = random_complex(rng, 6)
        bf = bloch_fields(action, f, dual)
        assert bf.reconstruction_residual < 1e-11


def test_chain_blocks_are_classic_zak_conjugation():
    # Z(H f)(., j) = H_j Z f(., j): the Bloch block is what the lattice
    # Zak transform sees, wave index by wave index
    from zakspace.bloch import bloch_block
    from zakspace.lattice import classic_zak

    rng = np.random.default_rng(3)
    t, m, n = 1.0, 3, 4
    onsite = np.array([0.2, -0.5, 0.1])
    h = ring_hamiltonian(t, m, n, onsite)
    for _ in range(20):
        f = random_complex(rng, m * n)
        zf = classic_zak(f, cells=m).values
        zhf = classic_zak(h @ f, cells=m).values
        for j in range(n):
            theta = 2.0 * np.pi * j / n
            block = bloch_block(t, m, theta, onsite)
            assert np.max(np.abs(zhf[:, j] - block @ zf[:, j])) < 1e-10


def test_band_structure_parallel_map_identical():
    bs1 = band_structure(t=1.0, m=2, n=16, onsite=[0.3, -0.3], jobs=1)
    bs4 = band_structure(t=1.0, m=2, n=16, onsite=[0.3, -0.3], jobs=4)
    assert np.array_equal(bs1.bands, bs4.bands)
