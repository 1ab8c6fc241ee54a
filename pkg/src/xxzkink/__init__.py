"""Sector-resolved exact diagonalization of the ferromagnetic anisotropic
spin chain with domain-wall (kink) boundary fields."""

from .halfint import HalfInt, as_half
from .spin import SpinMatrices, ladder_coefficient, ladder_radicand, spin_matrices
from .basis import (
    IsingConfig,
    SectorBasis,
    enumerate_sector,
    rank_config,
    reachable_sectors,
    sector_dimension,
    unrank_config,
)
from .hamiltonian import (
    SectorOperator,
    VARIANTS,
    build_sector_operator,
    hopping_structure,
    ising_bond_energy,
    ising_config_energy,
    ising_diagonal,
)
from .ising import (
    DegeneratePair,
    EdgeSectorError,
    GroundDescriptor,
    Isolation,
    KinkExcitation,
    band_edge_multiplicity_lower_bound,
    degenerate_pairs,
    excitation_config,
    excitation_energy,
    excitation_sets,
    ground_config,
    ground_descriptor,
    isolation_distance,
    localized_excitations,
    predicted_low_spectrum,
)
from .groundstate import (
    QParameter,
    SectorVector,
    groundstate_vector,
    magnetization_profile,
    profile_from_amplitudes,
    q_from_delta,
)
from .certificates import (
    BoundViolation,
    Certificate,
    certificate_constants,
    local_inequality_margin,
    random_vector_bound_check,
    relative_bound_constant,
    series_margin,
    two_site_operators,
)
from .eigensolver import (
    DenseCapError,
    LanczosError,
    SpectrumRecord,
    dense_spectrum,
    group_multiplicities,
    lanczos_lowest,
    solve_lowest,
)
from .sweep import (
    SweepPlan,
    emit_profile,
    profile_table,
    rows_to_csv,
    run_sweep,
    spectrum_rows,
    sweep_to_json,
)
from .checks import IsingCheckReport, SectorCheck, verify_ising_theorems

__version__ = "0.1.0"
