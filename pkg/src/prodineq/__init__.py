"""Exact verification, refutation and proof trees for inequalities

    prod(q) * prod(x**p_j - 1)  <=  prod(p) * prod(x**q_j - 1)

between scaled products of ``x**p - 1``.
"""

from .certify import (
    DifferenceBuild,
    IdenticallyZero,
    Outcome,
    Refutation,
    ShiftedNonnegative,
    SturmPositive,
    Verdict,
    build_difference,
    decide,
    decide_unit_interval,
    necessary_spread_check,
    verify_certificate,
)
from .kernels import BACKEND
from .poly import IntPoly, power_product, sturm_count, taylor_shift_one
from .proof import ProofTree, build_tree, reduce, select_pivot, verify_tree
from .tuples import (
    DominanceReport,
    ExponentTuple,
    InequalityInstance,
    check_dominance,
    integerize,
    normalize,
    reciprocal_direction,
)

__version__ = "0.1.0"
