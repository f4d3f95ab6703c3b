"""Command line front end: ``dcwf check|eval|normalize|refute|corpus``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import syntax
from .fincat import FinCat, Functor, Section, validate_category
from .kernel import DEFAULT_MAX_STEPS, Kernel, KernelError, StepBudgetExceeded
from .model.semantics import ModelError, SemCon, SemTy
from .modelfile import ModelFileError, build_environment, parse_model
from .theory import TheoryParseError, check_theory, parse_theory, theory_signature


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(_fmt(y) for y in x) + ")"
    return str(x)


def _category_lines(c: FinCat, indent="") -> list[str]:
    lines = [f"{indent}objects: " + " ".join(_fmt(o) for o in c.objects)]
    for m, s, d in c.morphisms:
        lines.append(f"{indent}{_fmt(m)} : {_fmt(s)} -> {_fmt(d)}")
    return lines


def render_value(v) -> str:
    """Deterministic table rendering of a semantic value."""
    if isinstance(v, SemCon):
        lines = ["context"] + _category_lines(v.category, "  ")
    elif isinstance(v, SemTy):
        fam = v.family
        lines = ["type" + (" (neutral)" if v.neutral else "")]
        for o in fam.base.objects:
            lines.append(f"  fiber {_fmt(o)}:")
            lines += _category_lines(fam.fiber[o], "    ")
        for m in fam.base.morphism_ids:
            F = fam.transport[m]
            pairs = [f"{_fmt(a)}->{_fmt(F.obj[a])}" for a in F.dom.objects]
            lines.append(f"  transport {_fmt(m)}: " + " ".join(pairs))
    elif isinstance(v, Section):
        base = v.family.base
        lines = ["term"]
        lines += [f"  at {_fmt(o)}: {_fmt(v.obj[o])}" for o in base.objects]
        lines += [f"  along {_fmt(m)}: {_fmt(v.mor[m])}" for m in base.morphism_ids]
    elif isinstance(v, Functor):
        lines = ["substitution"]
        lines += [f"  obj {_fmt(o)}: {_fmt(v.obj[o])}" for o in v.dom.objects]
        lines += [f"  mor {_fmt(m)}: {_fmt(v.mor[m])}" for m in v.dom.morphism_ids]
    else:
        lines = [repr(v)]
    return "\n".join(lines)


def _err(msg):
    print(f"dcwf: {msg}", file=sys.stderr)


def _load_theory(path):
    return parse_theory(Path(path).read_text(encoding="utf-8"))


def cmd_check(args) -> int:
    tf = _load_theory(args.theory)
    results = check_theory(tf, args.max_steps)
    for r in results:
        print(r.render(args.theory))
    failed = sum(not r.ok for r in results)
    print(f"{len(results) - failed}/{len(results)} tasks ok")
    return 1 if failed else 0


def cmd_eval(args) -> int:
    tf = _load_theory(args.theory)
    sig = theory_signature(tf, args.max_steps)
    if args.name not in sig:
        _err(f"unbound constant {args.name!r}")
        return 1
    model = parse_model(Path(args.model).read_text(encoding="utf-8"))
    env = build_environment(model, sig, Kernel(sig, args.max_steps))
    print(render_value(env.eval(sig.const(args.name))))
    return 0


def cmd_normalize(args) -> int:
    tf = _load_theory(args.theory)
    sig = theory_signature(tf, args.max_steps)
    if args.name not in sig:
        _err(f"unbound constant {args.name!r}")
        return 1
    d = sig.lookup(args.name)
    term = d.body if d.body is not None else sig.const(args.name)
    k = Kernel(sig, args.max_steps, trace=sys.stderr if args.trace else None)
    try:
        nf = k.normalize(term)
    except StepBudgetExceeded as e:
        print(f"StepBudgetExceeded: {e}")
        return 2
    print(syntax.print_term(nf))
    print(f"steps: {k.last_steps}")
    return 0


def _models_from_dir(path) -> dict:
    library = {}
    for f in sorted(Path(path).glob("*.dcm")):
        m = parse_model(f.read_text(encoding="utf-8"))
        for name, c in m.categories.items():
            library[f"{f.stem}/{name}"] = c
    return library


def cmd_refute(args) -> int:
    from .corpus.countermodels import CLAIMS, countermodel_search

    claims = args.claim or list(CLAIMS)
    library = _models_from_dir(args.models) if args.models else None
    report = countermodel_search(claims, library)
    for name, problems in report.invalid:
        for p in problems:
            _err(f"model {name}: {p}")
    for r in report.results:
        if r.refuted:
            a, b = r.witness
            print(f"{r.claim}: refuted in {r.model} at ({_fmt(a)}, {_fmt(b)}): {r.detail}")
        else:
            print(f"{r.claim}: no countermodel found")
    return 0 if report.all_refuted else 1


def cmd_corpus(args) -> int:
    from .corpus import all_entries, run_entry
    from .model.library import CATEGORIES

    bad = False
    for name, make in CATEGORIES.items():
        for p in validate_category(make()).problems:
            _err(f"builtin model {name}: {p}")
            bad = True
    if bad:
        return 1
    entries = [e for e in all_entries() if not args.filter or args.filter in e.name]
    if args.emit:
        from .corpus.emit import entry_theory
        from .theory import print_theory

        out = Path(args.emit)
        out.mkdir(parents=True, exist_ok=True)
        for e in entries:
            (out / f"{e.name}.dtt").write_text(print_theory(entry_theory(e)), encoding="utf-8")
    passed = 0
    for e in entries:
        res = run_entry(e, args.max_steps)
        print("\n".join(res.lines))
        passed += res.passed
    print(f"{passed}/{len(entries)} entries passed")
    return 0 if entries and passed == len(entries) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dcwf", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def steps(sp):
        sp.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)

    sp = sub.add_parser("check", help="typecheck a theory file and run its tasks")
    sp.add_argument("theory")
    steps(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("eval", help="evaluate a constant in a model")
    sp.add_argument("theory")
    sp.add_argument("model")
    sp.add_argument("name")
    steps(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("normalize", help="print the normal form of a constant")
    sp.add_argument("theory")
    sp.add_argument("name")
    sp.add_argument("--trace", action="store_true", help="print rewrite steps to stderr")
    steps(sp)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("refute", help="search finite models for countermodels")
    sp.add_argument("--claim", action="append", choices=["symmetry", "hom-uniqueness"])
    sp.add_argument("--models", help="directory of .dcm files to search instead of the builtins")
    sp.set_defaults(func=cmd_refute)

    sp = sub.add_parser("corpus", help="run the built-in construction corpus")
    sp.add_argument("--filter", help="only entries whose name contains this")
    sp.add_argument("--emit", help="also write each entry as a .dtt file into this directory")
    steps(sp)
    sp.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TheoryParseError as e:
        _err(f"{getattr(args, 'theory', '')}:{e}")
    except (OSError, ModelFileError, ModelError, KernelError, ValueError) as e:
        _err(f"{type(e).__name__}: {e}")
    return 1


if __name__ == "__main__":
    sys.exit(main())
