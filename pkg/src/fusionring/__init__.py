"""Fusion rings of simple Lie algebras at a level.

Two computation lanes that verify each other: an exact integer lane (tensor
decomposition pushed through the alcove projection) and a numeric spectral
lane (characters at finite torus points).  See the README for conventions.
"""

from .errors import (
    CapacityError,
    ConventionError,
    IncompleteTableError,
    NegativeStructureError,
    ToleranceError,
    UnverifiedTypeError,
)
from .fusion import (
    AxiomReport,
    FusionRing,
    FusionRuleTable,
    alcove_project,
    build_fusion_ring,
    casimir_element,
    enumerate_level_weights,
    fuse,
    genus_dimension,
    ring_trace,
    sl2_three_point_oracle,
    table_from_ring,
    three_point,
    verify_fusion_rule_axioms,
)
from .liecore import (
    RootSystem,
    SimpleType,
    Weight,
    build_root_system,
    dominant_chamber,
    killing_pairing,
    level_of,
    reflect_to_dominant,
    weyl_orbit,
)
from .repring import (
    RepElement,
    WeightMultiplicityTable,
    dual_weight,
    tensor_decompose,
    theta_spin_decomposition,
    weight_multiplicities,
    weyl_dimension,
)
from .verlinde import (
    SpectralTable,
    SpectrumPoint,
    character_value,
    spectral_table,
    torsion_order,
    torsion_order_lattice,
    verlinde_dimension,
    weyl_discriminant,
)

__version__ = "0.1.0"
