from ._bmz import (
    BmzError,
    CanonicalPairBlock,
    ClassicCanonicalForm,
    Convention,
    JordanBlock,
    JordanDecomposition,
    OverlapResult,
    PairFactor,
    PairedCanonicalForm,
    build_bcs_matrix,
    canonical_pair_form,
    classic_bloch_messiah,
    example_pair,
    jordan_decompose,
    overlap,
    transition_density,
    uv_amplitudes,
)

__all__ = [
    "BmzError",
    "CanonicalPairBlock",
    "ClassicCanonicalForm",
    "Convention",
    "JordanBlock",
    "JordanDecomposition",
    "OverlapResult",
    "PairFactor",
    "PairedCanonicalForm",
    "build_bcs_matrix",
    "canonical_pair_form",
    "classic_bloch_messiah",
    "example_pair",
    "jordan_decompose",
    "overlap",
    "transition_density",
    "uv_amplitudes",
]
