"""netspc: modeling and statistical process control for attributed network streams.

Edge weights of a time-indexed network are regressed on edge attributes
through a GLM whose coefficients evolve under a linear state-space model.
An extended Kalman filter tracks the coefficients online; abrupt changes
are detected by charting the mean Pearson residual of one-step-ahead
network predictions with an EWMA control chart whose limits are calibrated
by Monte Carlo to a target in-control average run length.
"""

from .errors import (
    CalibrationRangeError,
    ConfigError,
    DimensionError,
    EmptyWindowError,
    HomogeneityError,
    IncompleteAttributesError,
    InitializationError,
    InsufficientReferenceError,
    InvalidEdgeError,
    MonteCarloError,
    NetspcError,
    NonStationaryError,
    NumericallySingularError,
    SeparationError,
    SingularDesignError,
    UnknownRoleError,
)
from .glm import (
    EdgeFamily,
    GlmFit,
    irwls_fit,
    log_likelihood,
    mean_response,
    pearson_residuals,
    score,
    variance_function,
)
from .network import (
    AttributeMatrix,
    NetworkSnapshot,
    NetworkStream,
    accumulate_initial_window,
    aggregate_window,
    build_attribute_matrix,
    devectorize,
    edge_count,
    edge_index,
    edge_pairs,
    encode_role_pairs,
    role_pair_columns,
    vectorize,
)
from .filtering import (
    FilterState,
    PredictedObservation,
    StateSpaceModel,
    ekf_update,
    fit_transition,
    initialize_filter,
    kf_update_approx,
    predict_observation,
    predict_state,
    response_jacobian,
)
from .simulate import (
    ChangeScenario,
    ChangeSpec,
    SimulationConfig,
    default_transition_model,
    evolve_state,
    generate_attributes,
    sample_snapshot,
    simulate_stream,
    state_sigma,
    stream_arrays,
)
from .monitoring import (
    ArlEstimate,
    CalibrationResult,
    ChartPoint,
    CrossingProfiles,
    DynamicPredictor,
    EwmaChart,
    PredictorKind,
    RunLengthResult,
    SlidingStaticPredictor,
    StaticPredictor,
    calibrate,
    collect_profiles,
    control_limit_factor,
    estimate_sigma,
    evaluate_arl1,
    ewma_step,
    make_predictor,
    mean_residual,
    monitor_stream,
    reference_sigma,
    run_length,
)

__version__ = "0.1.0"
