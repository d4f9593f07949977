"""Dense-coding capacity of two-qubit states sent through correlated noisy
channels, optionally protected by weak and reversal measurements."""

from .channels import (
    ChannelKind,
    ChannelParams,
    CorrelatedChannel,
    KrausSet,
    apply,
    apply_kraus_set,
    build_channel,
    correlated_pair_kraus,
    single_qubit_kraus,
    uncorrelated_pair_kraus,
)
from .coding import EncoderSet, average_signal_state, capacity, capacity_report, standard_encoders
from .estimator import CapacityTransformer
from .exceptions import (
    ConvergenceError,
    DenseCodingError,
    DimensionError,
    InvalidStateError,
    NotHermitianError,
    NumericalError,
    ParameterError,
    PostSelectionError,
)
from .protection import (
    MeasurementStrengths,
    ProtocolResult,
    optimize_strengths,
    protected_state_elements,
    reversal_op,
    run_protocol,
    run_unprotected,
    weak_measure_op,
)
from .states import BellLikeParams, DensityMatrix, bell_like_state, validate, von_neumann_entropy
from .verify import cross_validate

__version__ = "0.1.0"
