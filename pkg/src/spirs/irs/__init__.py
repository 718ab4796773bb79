from .codec import *  # noqa: F401,F403
from .codec import (
    CodeSpec, ErrorReport, LocateResult, code_new, decode, encode, forney, locate_errors,
    monomialized_syndromes, psi, psi_inverse, recover_by_interpolation, syndromes, validate_locator,
)
