"""Corpus entries as theory files."""
from __future__ import annotations

from ..syntax import ATOMS, HEADS
from ..theory import CheckEq, CheckType, DeclareConst, Define, ExpectError, TheoryFile


def _fresh(base, taken):
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def entry_theory(entry) -> TheoryFile:
    """Declarations, the entry's term as a definition, then its checks."""
    out, taken = [], set(HEADS) | set(ATOMS)
    for d in entry.sig:
        taken.add(d.name)
        out.append(DeclareConst(d.name, d.sort) if d.body is None else Define(d.name, d.body))
    main = _fresh(entry.name.replace(" ", "-"), taken)
    if not entry.positive:
        out.append(ExpectError(Define(main, entry.term), entry.error.__name__))
        return TheoryFile(out)
    out.append(Define(main, entry.term))
    if entry.expected is not None:
        out.append(CheckType(_const(main, entry.term), entry.expected))
    for i, (_, t) in enumerate(entry.extras, 1):
        out.append(Define(_fresh(f"{main}.extra{i}", taken), t))
    out += [CheckEq(lhs, rhs) for _, lhs, rhs in entry.equations]
    return TheoryFile(out)


def _const(name, body):
    from ..kernel.terms import CONSTS

    return CONSTS[body.sort](name)
