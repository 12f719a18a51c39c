"""Extended Bloch representation of quantum measurements.

States are real Bloch vectors over a generalised Gell-Mann basis built on
the outcome kets; a measurement is a deterministic fall onto the simplex of
outcome vertices followed by a uniformly drawn hidden interaction.
"""
from .bloch import BlochVector, from_bloch, is_bona_fide, purity, to_bloch
from .effective import (
    EffectiveMeasurement,
    PartitionProjectors,
    build_effective_measurement,
    discretize_position,
    luders_collapse,
    rotate_outcome_basis,
    two_outcome_vertex,
)
from .errors import *  # noqa: F401,F403
from .frame import (
    StandardFrame,
    build_standard_frame,
    standard_probabilities,
    standard_transition_probability,
    to_standard_state,
)
from .generators import (
    GENERATOR_ORDERING,
    GeneratorBasis,
    build_generators,
    computational_basis,
    generator_gram,
    generator_labels,
)
from .hidden import (
    Experiment,
    FrequencyReport,
    OutcomeRecord,
    classify_region,
    replay_record,
    run_experiment,
    run_measurement,
    sample_uniform_simplex,
)
from .operators import (
    DEFAULT_TOL,
    DensityOperator,
    Ket,
    Tolerances,
    basis_ket,
    ket_from_amplitudes,
    projector,
    trace_product,
    validate_density,
)
from .simplex import (
    MeasurementSimplex,
    OnSimplexState,
    build_simplex,
    cayley_menger_volume,
    project_onto_simplex,
    simplex_from_basis,
    subregion_measure_ratio,
    transition_probabilities,
)
from .volumes import (
    ball_volume,
    ball_volume_asymptotic,
    inscribed_simplex_volume,
    inscribed_simplex_volume_asymptotic,
    unit_ball_argmax,
)

__version__ = "0.1.0"
