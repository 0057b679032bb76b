"""Exact linear algebra over division rings and bounded-rank matrix spaces."""

from .errors import (
    CapExceeded,
    ContradictionWitness,
    Incompatible,
    InfiniteRing,
    NotBoundedRank,
    RingMismatch,
    ShapeMismatch,
    SkewFlandersError,
)
from .flanders import (
    ClassificationResult,
    LinearMapOnMatrices,
    Tag,
    classify,
    compression,
    extraction_predicate,
    key_lemma_scan,
    recover_x,
    u2_space,
)
from .matrix_core import Matrix, normal_form, rank, regular_rep, transpose_op
from .scalar_algebra import DivisionRingSpec, Scalar, gf_spec, opposite, quaternion_spec
from .space import (
    AffineMatrixSpace,
    Hyperplane,
    Verdict,
    act_equiv,
    enumerate_hyperplanes,
    max_rank,
    reduce,
    sub_v_h,
)

__version__ = "0.1.0"
