"""Surface syntax: parenthesised prefix notation for kernel terms.

    (hom A t (neg t))      (ext+ empty A)      (J A t M m)

Bare identifiers are signature constants; ``empty`` and ``SET`` are the
empty context and the universe.  ``;`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import fields

from .kernel import terms as T

HEADS = {
    "ext+": T.ExtPos, "ext-": T.ExtNeg, "negC": T.NegCtx,
    "id": T.IdSub, "comp": T.Comp, "negS": T.NegSub,
    "p+": T.ProjPos, "p-": T.ProjNeg, "pair+": T.PairPos, "pair-": T.PairNeg,
    "e": T.E, "einv": T.EInv, "exte": T.ExtE, "bang": T.Bang,
    "subT": T.SubTy, "negT": T.NegTy, "hom": T.Hom, "pi": T.Pi, "el": T.El,
    "v+": T.VarPos, "v-": T.VarNeg, "subt": T.SubTm, "neg": T.NegTm,
    "refl": T.Refl, "J": T.J, "Js": T.JSimple, "lam": T.Lam, "app": T.App,
}
ATOMS = {"empty": T.EmptyCtx(), "SET": T.SetU()}
_NAMES = {cls: h for h, cls in HEADS.items()}
_ATOM_NAMES = {v: k for k, v in ATOMS.items()}

_TOKEN = re.compile(r"\s+|;[^\n]*|([()]|[^\s();]+)")


class ParseError(ValueError):
    pass


def tokenize(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad input at offset {pos}")
        if m.group(1):
            out.append(m.group(1))
        pos = m.end()
    return out


def read_sexprs(text: str) -> list:
    """Parse text into nested lists of atoms."""
    toks = tokenize(text)
    stack: list[list] = [[]]
    for tok in toks:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise ParseError("unbalanced '('")
    return stack[0]


def build(sx, resolve=None) -> T.Term:
    """Turn an s-expression into a term; ``resolve`` maps names to constants."""
    if isinstance(sx, str):
        if sx in ATOMS:
            return ATOMS[sx]
        if resolve is None:
            raise ParseError(f"unknown identifier {sx!r}")
        return resolve(sx)
    if not sx or not isinstance(sx[0], str) or sx[0] not in HEADS:
        raise ParseError(f"unknown form {sx!r}")
    cls = HEADS[sx[0]]
    arity = len(fields(cls))
    if len(sx) - 1 != arity:
        raise ParseError(f"{sx[0]} takes {arity} arguments, got {len(sx) - 1}")
    return cls(*(build(a, resolve) for a in sx[1:]))


def parse_term(text: str, resolve=None) -> T.Term:
    sxs = read_sexprs(text)
    if len(sxs) != 1:
        raise ParseError(f"expected one term, got {len(sxs)}")
    return build(sxs[0], resolve)


def to_sexpr(t: T.Term):
    if t in _ATOM_NAMES:
        return _ATOM_NAMES[t]
    if isinstance(t, (T.ConstCtx, T.ConstSub, T.ConstTy, T.ConstTm)):
        return t.name
    return [_NAMES[type(t)], *(to_sexpr(c) for c in t.children())]


def show_sexpr(sx) -> str:
    if isinstance(sx, str):
        return sx
    return "(" + " ".join(show_sexpr(x) for x in sx) + ")"


def print_term(t: T.Term) -> str:
    return show_sexpr(to_sexpr(t))


def print_judgment(j) -> str:
    if isinstance(j, T.IsCon):
        return "NCon" if j.neutral else "Con"
    if isinstance(j, T.IsSub):
        return f"Sub {print_term(j.dom)} {print_term(j.cod)}"
    if isinstance(j, T.IsTy):
        return f"{'NTy' if j.neutral else 'Ty'} {print_term(j.ctx)}"
    return f"Tm {print_term(j.ctx)} {print_term(j.ty)}"


def build_judgment(sx, resolve=None):
    """Inverse of :func:`print_judgment` on s-expressions, e.g. ``(Tm empty A)``."""
    if isinstance(sx, str):
        sx = [sx]
    head, args = sx[0], [build(a, resolve) for a in sx[1:]]
    want = {"Con": 0, "NCon": 0, "Sub": 2, "Ty": 1, "NTy": 1, "Tm": 2}
    if head not in want or len(args) != want[head]:
        raise ParseError(f"bad judgment {sx!r}")
    if head in ("Con", "NCon"):
        return T.IsCon(head == "NCon")
    if head == "Sub":
        return T.IsSub(*args)
    if head in ("Ty", "NTy"):
        return T.IsTy(args[0], head == "NTy")
    return T.IsTm(*args)
