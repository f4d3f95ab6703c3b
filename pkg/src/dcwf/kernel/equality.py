"""Equality questions, signature checking and the Var Neg audit."""
from __future__ import annotations

from dataclasses import dataclass

from .core import Kernel
from .errors import JudgmentMismatch, KernelError, StepBudgetExceeded
from .signature import Signature
from .terms import Hom, IsCon, IsSub, IsTm, IsTy, NegTm, Term


@dataclass(frozen=True)
class Equal:
    steps: int = 0
    kind = "Equal"


@dataclass(frozen=True)
class NotEqualWitness:
    model: str
    left: object
    right: object
    kind = "NotEqualWitness"


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    kind = "Inconclusive"


@dataclass(frozen=True)
class NotApplicable:
    reason: str
    kind = "NotApplicable"


def check_equal(kernel: Kernel, u: Term, v: Term, envs=()):
    """Decide ``u ≡ v``, falling back to model evaluation for disequality.

    Normal forms agreeing is a proof.  Otherwise the first environment that
    tells the two apart is a witness; if none does the answer is Inconclusive,
    since the rewrite system is not complete.
    """
    ju, jv = kernel.infer(u), kernel.infer(v)
    if ju != jv:
        raise JudgmentMismatch(f"{ju} vs {jv}")
    try:
        if kernel.conv(u, v):
            return Equal(kernel.last_steps)
        reason = "normal forms differ"
    except StepBudgetExceeded as e:
        reason = str(e)
    from ..model.semantics import ModelError

    for env in envs:
        try:
            a, b = env.eval(u), env.eval(v)
        except (ModelError, KernelError):
            continue
        if a != b:
            return NotEqualWitness(env.name, a, b)
    return Inconclusive(reason)


def truncation_collapse(kernel: Kernel, u: Term, v: Term):
    """Parallel terms of an iterated hom type are equal in the truncated model."""
    ju, jv = kernel.infer(u), kernel.infer(v)
    if ju != jv:
        raise JudgmentMismatch(f"{ju} vs {jv}")
    ty = ju.ty if isinstance(ju, IsTm) else None
    if isinstance(ty, Hom) and isinstance(ty.ty, Hom):
        return Equal(0)
    return NotApplicable("not a term of a hom between homs")


def wf_signature(sig: Signature, max_steps=None) -> list[str]:
    """Check every declaration's judgment is well formed, in order.

    Returns a list of problems; empty means the signature is well formed.
    """
    problems = []
    partial = Signature()
    for d in sig:
        k = Kernel(partial) if max_steps is None else Kernel(partial, max_steps)
        try:
            check_sort(k, d.sort)
            partial.decls[d.name] = d
            if d.body is not None:
                k = Kernel(partial, k.max_steps)
                got = k.infer(d.body)
                if got != k.infer(partial.const(d.name)):
                    problems.append(f"{d.name}: body has judgment {got}")
        except KernelError as e:
            problems.append(f"{d.name}: {type(e).__name__}: {e}")
        partial.decls[d.name] = d
    return problems


def check_sort(k: Kernel, j):
    """Raise unless the judgment ``j`` is well formed over ``k``'s signature."""
    def need(t, cls):
        got = k.infer(t)
        if not isinstance(got, cls):
            raise JudgmentMismatch(f"{t} is not a {cls.__name__}")
        return got

    if isinstance(j, IsCon):
        return
    if isinstance(j, IsSub):
        need(j.dom, IsCon)
        need(j.cod, IsCon)
    elif isinstance(j, IsTy):
        need(j.ctx, IsCon)
    else:
        need(j.ctx, IsCon)
        a = need(j.ty, IsTy)
        if a.ctx != k.normalize(j.ctx):
            raise JudgmentMismatch(f"type {j.ty} does not live over {j.ctx}")


def audit_var_neg(kernel: Kernel, t: Term) -> list[Term]:
    """Every negated subterm must sit in a neutral context; return violators."""
    bad = []
    for s in set(t.subterms()):
        if isinstance(s, NegTm):
            try:
                ctx = kernel.infer(s.tm).ctx
                if not kernel.infer(ctx).neutral:
                    bad.append(s)
            except KernelError:
                bad.append(s)
    return sorted(bad, key=str)
