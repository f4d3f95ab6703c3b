"""Small named categories used as models and countermodels."""
from __future__ import annotations

from ..fincat import FinCat, constant_family, discrete, terminal
from .semantics import SemTy, finset_category


def one() -> FinCat:
    return terminal()


def arrow_cat() -> FinCat:
    """``𝟚``: ``a → b``."""
    return FinCat.generate(["a", "b"], {"f": ("a", "b")}, {})


def three() -> FinCat:
    """``𝟛``: ``a → b → c`` with composite ``h``."""
    return FinCat.generate(
        ["a", "b", "c"],
        {"f": ("a", "b"), "g": ("b", "c"), "h": ("a", "c")},
        {("f", "g"): "h"},
    )


def two_points() -> FinCat:
    return discrete(["x", "y"])


def z2() -> FinCat:
    """The two-element group as a one-object groupoid."""
    return FinCat.generate(["*"], {"s": ("*", "*")}, {("s", "s"): "id_*"})


def finset(k=2) -> FinCat:
    return finset_category(k, tuple(range(k)))


CATEGORIES = {
    "1": one,
    "2": arrow_cat,
    "3": three,
    "disc2": two_points,
    "Z2": z2,
    "FinSet2": finset,
}


def closed_type(c: FinCat) -> SemTy:
    """A category viewed as a type in the empty context."""
    return SemTy(constant_family(terminal(), c))


def chain4() -> FinCat:
    """``a → b → c → d`` with all composites."""
    arrows = {"f": ("a", "b"), "g": ("b", "c"), "h": ("c", "d"),
              "fg": ("a", "c"), "gh": ("b", "d"), "fgh": ("a", "d")}
    comps = {("f", "g"): "fg", ("g", "h"): "gh", ("fg", "h"): "fgh", ("f", "gh"): "fgh"}
    return FinCat.generate(["a", "b", "c", "d"], arrows, comps)


def z3() -> FinCat:
    """The cyclic group of order three; ``r`` has inverse ``rr``."""
    return FinCat.generate(
        ["*"], {"r": ("*", "*"), "rr": ("*", "*")},
        {("r", "r"): "rr", ("r", "rr"): "id_*", ("rr", "r"): "id_*", ("rr", "rr"): "r"},
    )


CATEGORIES.update({"4": chain4, "Z3": z3})


def functor_key(F) -> tuple:
    """A functor out of a closed type's category, as a point of a closed Π-type."""
    C = F.dom
    return (tuple(F.obj[o] for o in C.objects), tuple(F.mor[m] for m in C.morphism_ids))


def closed_environment(sig, assignments, name="env", set_k=2):
    """Bind closed constants in order.

    Types take a category; terms take an object of their type's fibre, or a
    Functor when the type is a Π-type of closed types.
    """
    from ..fincat import Functor
    from ..kernel.terms import IsTy
    from .interp import Environment
    from .semantics import closed_section

    env = Environment(sig, set_k=set_k, name=name)
    for cname, value in assignments:
        j = sig.lookup(cname).sort
        if isinstance(j, IsTy):
            env.bind(cname, closed_type(value))
            continue
        if isinstance(value, Functor):
            value = functor_key(value)
        env.bind(cname, closed_section(env.eval(j.ty), value))
    return env
