from __future__ import annotations

from dataclasses import dataclass, field

from .errors import UnboundConstant
from .terms import CONSTS, IsCon, IsSub, IsTm, IsTy, Term, judgment_sort


@dataclass(frozen=True)
class Decl:
    name: str
    sort: object  # a judgment; for definitions, filled in when added
    body: Term | None = None


@dataclass
class Signature:
    """Ordered constant declarations and definitions.

    A declaration carries its judgment, including a trusted neutrality
    annotation for contexts and types.  A definition carries a body that the
    kernel unfolds during normalization.
    """

    decls: dict[str, Decl] = field(default_factory=dict)

    def declare(self, name: str, sort) -> Term:
        if name in self.decls:
            raise ValueError(f"constant {name!r} already declared")
        self.decls[name] = Decl(name, sort)
        return CONSTS[judgment_sort(sort)](name)

    def define(self, name: str, body: Term, sort) -> Term:
        if name in self.decls:
            raise ValueError(f"constant {name!r} already declared")
        self.decls[name] = Decl(name, sort, body)
        return CONSTS[body.sort](name)

    def lookup(self, name: str) -> Decl:
        try:
            return self.decls[name]
        except KeyError:
            raise UnboundConstant(name) from None

    def const(self, name: str) -> Term:
        d = self.lookup(name)
        return CONSTS[judgment_sort(d.sort)](name)

    def __contains__(self, name):
        return name in self.decls

    def __iter__(self):
        return iter(self.decls.values())

    def copy(self) -> "Signature":
        return Signature(dict(self.decls))


def con(neutral=False):
    return IsCon(neutral)


def sub(dom, cod):
    return IsSub(dom, cod)


def ty(ctx, neutral=False):
    return IsTy(ctx, neutral)


def tm(ctx, A):
    return IsTm(ctx, A)
