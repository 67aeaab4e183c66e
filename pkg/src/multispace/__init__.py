"""Pseudo-face geometry, relativistic kinematics, brane cosmology, graph
phases and multi-cosmos sheaf checks."""

from .cosmology import (
    AccelerationWindow,
    KasnerSolution,
    TWCosmology,
    TWState,
    kasner_acceleration_check,
    kasner_exponents,
    proper_time,
    time_shift_scale,
    tw_acceleration_window,
    tw_state,
)
from .graphphase import (
    EmbeddingVerdict,
    GraphPhase,
    LabelTransform,
    build_graph_phase,
    is_embeddable,
    round_trip_check,
    transform_phase,
)
from .multicosmos import (
    MultiCosmosModel,
    SubCosmos,
    glue,
    validate_composition,
    validate_separated,
    validate_sheaf_conditions,
)
from .pseudoface import (
    DomainBox,
    PseudoFaceMap,
    angle_field_sample,
    ball_profile_scaled,
    ball_pseudo_shape_angle,
    ball_pseudo_shape_scaled,
    check_uniform_continuity,
    conjugate_transport,
    evaluate_pseudo_face,
    sphere_pseudo_plane,
    subspace_chain,
)
from .relativity import (
    AbsoluteEvent,
    BoostParams,
    CosmosKind,
    FriedmannParams,
    MetricForm,
    anti_vector,
    classify_cosmos,
    friedmann_interval_sq,
    general_interval_sq,
    interval_absolute,
    lorentz_boost,
    spacetime_interval_sq,
    velocity_transform,
)

__version__ = "0.1.0"
