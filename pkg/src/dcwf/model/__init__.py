from .semantics import *  # noqa: F401,F403
from .semantics import __all__ as _sem_all

__all__ = list(_sem_all)
