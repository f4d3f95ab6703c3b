"""Theory files (``.dtt``): declarations and checking tasks in prefix syntax.

One directive per top-level form::

    (declare-const A (NTy empty))
    (declare-const t (Tm empty (negT A)))
    (define r (refl A t))
    (check-type r (Tm empty (hom A t (neg t))))
    (check-eq (subt r (id empty)) r)
    (expect-error (define bad (neg (v+ A))) VarianceError)

Names are resolved while parsing, so each constant must be introduced before
it is used.  :func:`print_theory` writes the canonical one-line-per-directive
form, which parses back to the same text.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import syntax
from .kernel import errors as kerr
from .kernel.equality import Equal, check_equal, check_sort, truncation_collapse
from .kernel.core import DEFAULT_MAX_STEPS, Kernel
from .kernel.signature import Signature
from .kernel.terms import CONSTS, IsCon, IsTy, judgment_sort

ERROR_CLASSES = {
    name: getattr(kerr, name)
    for name in ("KernelError", "SortError", "VarianceError", "NeutralityError",
                 "UnboundConstant", "StepBudgetExceeded", "JudgmentMismatch")
}


class TheoryParseError(syntax.ParseError):
    def __init__(self, msg, line, col):
        super().__init__(f"{line}:{col}: {msg}")
        self.line, self.col = line, col


@dataclass(frozen=True)
class DeclareConst:
    name: str
    sort: object
    line: int = field(default=0, compare=False)
    kind = "declare-const"


@dataclass(frozen=True)
class Define:
    name: str
    body: object
    line: int = field(default=0, compare=False)
    kind = "define"


@dataclass(frozen=True)
class CheckType:
    term: object
    sort: object
    line: int = field(default=0, compare=False)
    kind = "check-type"


@dataclass(frozen=True)
class CheckEq:
    lhs: object
    rhs: object
    line: int = field(default=0, compare=False)
    kind = "check-eq"


@dataclass(frozen=True)
class ExpectError:
    directive: object
    error: str
    line: int = field(default=0, compare=False)
    kind = "expect-error"


@dataclass
class TheoryFile:
    directives: list

    def names(self) -> list[str]:
        return [d.name for d in self.directives if isinstance(d, (DeclareConst, Define))]

    def definition(self, name):
        for d in self.directives:
            if isinstance(d, Define) and d.name == name:
                return d
        return None


# -- reading -------------------------------------------------------------------

_TOK = re.compile(r"[ \t\r\n]+|;[^\n]*|([()])|([^\s();]+)")


def _read(text):
    """Top-level s-expressions, each with the (line, col) of its first token."""
    forms, stack = [], []
    line, col_base = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise TheoryParseError("unexpected character", line, pos - col_base + 1)
        loc = (line, pos - col_base + 1)
        tok = m.group(1) or m.group(2)
        if tok == "(":
            stack.append(([], loc))
        elif tok == ")":
            if not stack:
                raise TheoryParseError("unbalanced ')'", *loc)
            done, start = stack.pop()
            if stack:
                stack[-1][0].append(done)
            else:
                forms.append((done, start))
        elif tok is not None:
            if not stack:
                raise TheoryParseError(f"stray atom {tok!r}", *loc)
            stack[-1][0].append(tok)
        chunk = m.group(0)
        if "\n" in chunk:
            line += chunk.count("\n")
            col_base = pos + chunk.rindex("\n") + 1
        pos = m.end()
    if stack:
        raise TheoryParseError("unbalanced '('", *stack[-1][1])
    return forms


def parse_theory(text: str) -> TheoryFile:
    sorts: dict = {}

    def resolve(name):
        if name not in sorts:
            raise syntax.ParseError(f"unknown identifier {name!r}")
        return CONSTS[sorts[name]](name)

    def directive(sx, line, col):
        head = sx[0] if sx and isinstance(sx[0], str) else None
        n = len(sx)
        if head == "declare-const" and n == 3 and isinstance(sx[1], str):
            j = syntax.build_judgment(sx[2], resolve)
            _fresh(sx[1])
            sorts[sx[1]] = judgment_sort(j)
            return DeclareConst(sx[1], j, line)
        if head == "define" and n == 3 and isinstance(sx[1], str):
            body = syntax.build(sx[2], resolve)
            _fresh(sx[1])
            sorts[sx[1]] = body.sort
            return Define(sx[1], body, line)
        if head == "check-type" and n == 3:
            return CheckType(syntax.build(sx[1], resolve), syntax.build_judgment(sx[2], resolve), line)
        if head == "check-eq" and n == 3:
            return CheckEq(syntax.build(sx[1], resolve), syntax.build(sx[2], resolve), line)
        if head == "expect-error" and n == 3 and isinstance(sx[1], list) and sx[2] in ERROR_CLASSES:
            return ExpectError(directive(sx[1], line, col), sx[2], line)
        raise TheoryParseError(f"malformed directive {syntax.show_sexpr(sx)}", line, col)

    def _fresh(name):
        if name in sorts or name in syntax.HEADS or name in syntax.ATOMS:
            raise syntax.ParseError(f"name {name!r} is already in use")

    out = []
    for sx, (line, col) in _read(text):
        try:
            out.append(directive(sx, line, col))
        except TheoryParseError:
            raise
        except syntax.ParseError as e:
            raise TheoryParseError(str(e), line, col) from None
    return TheoryFile(out)


# -- printing ------------------------------------------------------------------


def _judgment(j) -> str:
    return f"({syntax.print_judgment(j)})"


def print_directive(d) -> str:
    pt = syntax.print_term
    if isinstance(d, DeclareConst):
        return f"(declare-const {d.name} {_judgment(d.sort)})"
    if isinstance(d, Define):
        return f"(define {d.name} {pt(d.body)})"
    if isinstance(d, CheckType):
        return f"(check-type {pt(d.term)} {_judgment(d.sort)})"
    if isinstance(d, CheckEq):
        return f"(check-eq {pt(d.lhs)} {pt(d.rhs)})"
    return f"(expect-error {print_directive(d.directive)} {d.error})"


def print_theory(tf: TheoryFile) -> str:
    return "".join(print_directive(d) + "\n" for d in tf.directives)


# -- checking ------------------------------------------------------------------


@dataclass
class TaskResult:
    line: int
    kind: str
    ok: bool
    verdict: str
    detail: str = ""

    def render(self, path="") -> str:
        tail = f" {self.detail}" if self.detail else ""
        return f"{path}:{self.line}: {self.kind} {self.verdict}{tail}"


def _run(d, sig: Signature, max_steps) -> tuple[str, str]:
    """Execute one directive, extending ``sig``; returns (verdict, detail)."""
    k = Kernel(sig, max_steps)
    if isinstance(d, DeclareConst):
        check_sort(k, d.sort)
        sig.declare(d.name, d.sort)
        return "OK", d.name
    if isinstance(d, Define):
        sig.define(d.name, d.body, k.infer(d.body))
        return "OK", d.name
    if isinstance(d, CheckType):
        check_sort(k, d.sort)
        got, want = k.infer(d.term), k.normalize_judgment(d.sort)
        if not judgment_fits(got, want):
            raise kerr.JudgmentMismatch(f"got {syntax.print_judgment(got)}")
        return "OK", ""
    verdict = check_equal(k, d.lhs, d.rhs)
    if not isinstance(verdict, Equal):
        collapsed = truncation_collapse(k, d.lhs, d.rhs)
        if isinstance(collapsed, Equal):
            return "OK", "by truncation"
    return ("OK", "") if isinstance(verdict, Equal) else (verdict.kind, "")


def judgment_fits(got, want) -> bool:
    """Equal judgments, where a neutral context or type also counts as a plain one."""
    if isinstance(got, IsCon) and isinstance(want, IsCon):
        return got.neutral or not want.neutral
    if isinstance(got, IsTy) and isinstance(want, IsTy):
        return got.ctx == want.ctx and (got.neutral or not want.neutral)
    return got == want


def check_theory(tf: TheoryFile, max_steps=DEFAULT_MAX_STEPS) -> list[TaskResult]:
    """Run every directive in order; declarations are checked as they arrive."""
    sig = Signature()
    results = []
    for d in tf.directives:
        if isinstance(d, ExpectError):
            try:
                verdict, detail = _run(d.directive, sig, max_steps)
            except kerr.KernelError as e:
                name = type(e).__name__
                ok = isinstance(e, ERROR_CLASSES[d.error])
                results.append(TaskResult(d.line, d.kind, ok, "OK" if ok else name,
                                          f"{name} as expected" if ok else f"expected {d.error}: {e}"))
                continue
            results.append(TaskResult(d.line, d.kind, False, verdict,
                                      f"expected {d.error} but the directive succeeded"))
            continue
        try:
            verdict, detail = _run(d, sig, max_steps)
        except kerr.KernelError as e:
            results.append(TaskResult(d.line, d.kind, False, type(e).__name__, str(e)))
            continue
        except ValueError as e:
            results.append(TaskResult(d.line, d.kind, False, "Error", str(e)))
            continue
        results.append(TaskResult(d.line, d.kind, verdict == "OK", verdict, detail))
    return results


def theory_signature(tf: TheoryFile, max_steps=DEFAULT_MAX_STEPS) -> Signature:
    """The signature built by the file's unwrapped declarations."""
    sig = Signature()
    for d in tf.directives:
        if isinstance(d, (DeclareConst, Define)):
            _run(d, sig, max_steps)
    return sig
