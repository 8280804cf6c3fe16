"""Phase-periodic MCMV operators: discriminants, bands, spectral measures, magic formula."""

from ._core import (
    DomainError,
    MonodromyEvaluator,
    NumericError,
    PoleError,
    PoleVector,
    VerblunskySequence,
    ac_density,
    ahlfors_eval,
    ahlfors_zeros,
    bands,
    blaschke_of_mcmv,
    caratheodory,
    cmv_window,
    critical_points,
    divisor,
    generalized_discriminant,
    lyapunov,
    magic_check,
    mcmv_window,
    partial_fractions,
    pole_vector_of_set,
    roundtrip,
    spectral_measure,
)


def evaluator(block, poles=(0j,), phase=0.0):
    """MonodromyEvaluator from a period block, pole list and phase."""
    return MonodromyEvaluator(VerblunskySequence(list(block), phase), PoleVector(list(poles)))
