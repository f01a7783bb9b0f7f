"""Orbit-frequency analysis on finite G-spaces.

Finite groups acting on weighted point sets, the Weil formula and its
measures, group Fourier transforms, Poisson summation for subgroups, Zak
transforms (finite, character, and FFT-based lattice variants), Bloch
block diagonalization and band structures, discrete Euclidean isometry
groups, and a finite diffraction model with the symmetry-projected
recovery identity.
"""

from .actions import GroupAction, OrbitDecomposition, make_action, orbits, stabilizer, translation_action, transporter
from .bloch import (
    BandStructure,
    BlochField,
    BlockDiagonalization,
    InvariantOperator,
    band_structure,
    band_union_residual,
    bloch_fields,
    block_diagonalize,
    check_invariance,
)
from .duals import DualObject, UnitaryIrrep, dual_abelian, irreps, irreps_by_induction
from .euclid import (
    Certificate,
    IsometryElement,
    IsometryGroupSpec,
    Truncation,
    act,
    compose,
    generate,
    inverse,
    to_finite_action,
    translation_subgroup,
    type_one_certificate,
)
from .fourier import FourierCoefficients, fourier, inverse_fourier, plancherel_residual
from .groups import (
    FiniteGroup,
    cyclic_group,
    dihedral_group,
    direct_product,
    make_group,
    symmetric_group,
)
from .lattice import LatticeZakGrid, classic_zak, classic_zak_direct, classic_zak_inverse
from .radiation import (
    ScatteringSetup,
    VectorField,
    act_field,
    plane_wave,
    radiation_transform,
    symmetry_projected_transform,
)
from .reciprocal import (
    ReciprocalSpace,
    poisson_abelian_check,
    poisson_compact_check,
    quotient_fourier_check,
    reciprocal_space,
)
from .suite import run_suite
from .weil import Cocycle, bruhat_function, cocycle, orbital_mean, weil_measures, weil_structure
from .zak import (
    ZakCoefficients,
    character_zak,
    extended_zak,
    verify_roundtrip,
    verify_unitarity,
    zak,
    zak_inverse,
    zak_measure_eval,
)

__version__ = "0.1.0"
