"""Superposition measures for mixed quantum states.

States are dense complex matrices; a decomposition of the Hilbert space into
orthogonal subspaces is a list of contiguous block sizes.
"""

from .core import (
    BlockForm,
    Decomposition,
    align_basis,
    block,
    block_form,
    block_probabilities,
    make_density,
    partial_trace,
    pinch,
    relative_entropy,
    singular_values,
    von_neumann_entropy,
)
from .errors import ConvergenceWarning, SuperposError
from .formation import FormationConfig, PureStateEnsemble
from .measures import (
    MeasureReport,
    NormSpec,
    a_f,
    a_s,
    a_s_min_check,
    dominance_check,
    kyfan_bound,
    kyfan_measure,
    kyfan_measures,
    norm_measure,
    predictability,
    sharp_state,
    trace_measure,
)

__version__ = "0.1.0"

__all__ = [
    "BlockForm", "ConvergenceWarning", "Decomposition", "FormationConfig", "MeasureReport",
    "NormSpec", "PureStateEnsemble", "SuperposError", "a_f", "a_s", "a_s_min_check",
    "align_basis", "block", "block_form", "block_probabilities", "dominance_check",
    "kyfan_bound", "kyfan_measure", "kyfan_measures", "make_density", "norm_measure",
    "partial_trace", "pinch", "predictability", "relative_entropy", "sharp_state",
    "singular_values", "trace_measure", "von_neumann_entropy",
]
