"""Combinator syntax for directed CwFs with polarized Π, hom types and SET.

There are no binders: variables are the generic terms of a context
extension, substitutions are explicit.  Every node is a frozen dataclass,
so terms hash and compare structurally.
"""
from __future__ import annotations

from dataclasses import dataclass, fields
from typing import ClassVar, Iterator


class Term:
    sort: ClassVar[str] = "?"

    def children(self) -> Iterator["Term"]:
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Term):
                yield v

    def rebuild(self, kids: list) -> "Term":
        it = iter(kids)
        vals = [next(it) if isinstance(getattr(self, f.name), Term) else getattr(self, f.name)
                for f in fields(self)]
        return type(self)(*vals)

    def subterms(self) -> Iterator["Term"]:
        yield self
        for c in self.children():
            yield from c.subterms()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children())

    def __str__(self) -> str:
        from ..syntax import print_term

        return print_term(self)


def _node(sort):
    def deco(cls):
        cls = dataclass(frozen=True, repr=True)(cls)
        cls.sort = sort
        return cls

    return deco


# -- contexts ---------------------------------------------------------------


@_node("con")
class EmptyCtx(Term):
    pass


@_node("con")
class ExtPos(Term):
    ctx: Term
    ty: Term


@_node("con")
class ExtNeg(Term):
    ctx: Term
    ty: Term  # a type over NegCtx(ctx)


@_node("con")
class NegCtx(Term):
    ctx: Term


@_node("con")
class ConstCtx(Term):
    name: str


# -- substitutions ------------------------------------------------------------


@_node("sub")
class IdSub(Term):
    ctx: Term


@_node("sub")
class Comp(Term):
    """``σ ∘ τ``: first ``τ``, then ``σ``."""

    outer: Term
    inner: Term


@_node("sub")
class NegSub(Term):
    sub: Term


@_node("sub")
class ProjPos(Term):
    ty: Term


@_node("sub")
class ProjNeg(Term):
    ty: Term


@_node("sub")
class PairPos(Term):
    ty: Term
    sub: Term
    tm: Term


@_node("sub")
class PairNeg(Term):
    ty: Term
    sub: Term
    tm: Term


@_node("sub")
class E(Term):
    ctx: Term


@_node("sub")
class EInv(Term):
    ctx: Term


@_node("sub")
class ExtE(Term):
    ty: Term


@_node("sub")
class Bang(Term):
    ctx: Term


@_node("sub")
class ConstSub(Term):
    name: str


# -- types --------------------------------------------------------------------


@_node("ty")
class SubTy(Term):
    ty: Term
    sub: Term


@_node("ty")
class NegTy(Term):
    ty: Term


@_node("ty")
class Hom(Term):
    ty: Term
    src: Term  # a term of NegTy(ty)
    dst: Term


@_node("ty")
class Pi(Term):
    dom: Term  # over NegCtx(Γ)
    cod: Term  # over ExtNeg(Γ, dom)


@_node("ty")
class SetU(Term):
    pass


@_node("ty")
class El(Term):
    tm: Term


@_node("ty")
class ConstTy(Term):
    name: str


# -- terms --------------------------------------------------------------------


@_node("tm")
class VarPos(Term):
    ty: Term


@_node("tm")
class VarNeg(Term):
    ty: Term


@_node("tm")
class SubTm(Term):
    tm: Term
    sub: Term


@_node("tm")
class NegTm(Term):
    tm: Term


@_node("tm")
class Refl(Term):
    ty: Term
    tm: Term


@_node("tm")
class J(Term):
    ty: Term
    tm: Term
    motive: Term
    base: Term


@_node("tm")
class JSimple(Term):
    ty: Term
    tm: Term
    motive: Term
    base: Term


@_node("tm")
class Lam(Term):
    body: Term


@_node("tm")
class App(Term):
    fn: Term


@_node("tm")
class ConstTm(Term):
    name: str


CONSTS = {"con": ConstCtx, "sub": ConstSub, "ty": ConstTy, "tm": ConstTm}


# -- judgments ----------------------------------------------------------------


@dataclass(frozen=True)
class IsCon:
    neutral: bool


@dataclass(frozen=True)
class IsSub:
    dom: Term
    cod: Term


@dataclass(frozen=True)
class IsTy:
    ctx: Term
    neutral: bool


@dataclass(frozen=True)
class IsTm:
    ctx: Term
    ty: Term


Judgment = IsCon | IsSub | IsTy | IsTm


def judgment_sort(j) -> str:
    return {IsCon: "con", IsSub: "sub", IsTy: "ty", IsTm: "tm"}[type(j)]


# -- small builders used throughout -----------------------------------------


def hom_over_var(A: Term, t: Term) -> Term:
    """``hom(t[p], v)`` over ``Γ ▹₊ A`` for ``t : Tm(Γ, A⁻)``."""
    p = ProjPos(A)
    return Hom(SubTy(A, p), SubTm(t, p), VarPos(A))


def j_point(A: Term, t: Term, ctx: Term) -> Term:
    """``⟨⟨id, −t⟩, refl_t⟩ : Γ → Γ ▹₊ A ▹₊ hom(t[p], v)``."""
    return PairPos(hom_over_var(A, t), PairPos(A, IdSub(ctx), NegTm(t)), Refl(A, t))


def arrow(A: Term, B: Term) -> Term:
    """Non-dependent ``A → B`` where ``A : Ty Γ⁻`` and ``B : Ty Γ``."""
    return Pi(A, SubTy(B, ProjNeg(A)))
