from .bounds import (
    Bound, BoundError, BoundInputs, LNotGreaterThanOne, TOutOfRange, bound_full_rank,
    bound_roth_vontobel, bound_ssb, max_radius,
)
from .condition import (
    FORMULATIONS, condition_instance, error_locator, error_rank, partial_inverse_condition,
    rank_deficient_batch, support,
)
from .simulate import SimReport, parse_error_model, run_trial, sample_error, simulate, trial_rng
