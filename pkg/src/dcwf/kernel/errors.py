class KernelError(Exception):
    """Base class for everything the kernel rejects."""


class SortError(KernelError):
    """A term was used at the wrong sort or with mismatched contexts/types."""


class VarianceError(KernelError):
    """A term was negated in a non-neutral context."""


class NeutralityError(KernelError):
    """A construction that needs a neutral context or type got a polarized one."""


class UnboundConstant(KernelError):
    pass


class StepBudgetExceeded(KernelError):
    def __init__(self, budget: int):
        super().__init__(f"normalization exceeded {budget} steps")
        self.budget = budget


class JudgmentMismatch(KernelError):
    """The two sides of an equality question have different judgments."""
