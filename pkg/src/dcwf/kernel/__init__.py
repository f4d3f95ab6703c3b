from .core import DEFAULT_MAX_STEPS, Kernel
from .errors import (
    JudgmentMismatch, KernelError, NeutralityError, SortError, StepBudgetExceeded,
    UnboundConstant, VarianceError,
)
from .signature import Decl, Signature
from .terms import *  # noqa: F403
from .equality import (
    Equal, Inconclusive, NotApplicable, NotEqualWitness, audit_var_neg, check_equal,
    check_sort, truncation_collapse, wf_signature,
)
