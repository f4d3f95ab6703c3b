"""The seven acceptance criteria, each reported as one pass/fail line."""
import collections
import io
import itertools
from contextlib import redirect_stdout

from dcwf import cli
from dcwf.corpus import negative_corpus, positive_corpus, run_entry
from dcwf.corpus.countermodels import countermodel_search
from dcwf.fincat import is_groupoid
from dcwf.kernel import Hom, KernelError, Kernel, check_equal
from dcwf.model.library import CATEGORIES, closed_type
from dcwf.model.semantics import (
    ModelError, closed_section, hom_to_func_check, sem_hom, sem_neg_ty, sem_set_universe,
)
from dcwf.modelfile import ModelFile, parse_model, print_model
from dcwf.syntax import parse_term, print_term
from dcwf.theory import parse_theory, print_theory
from dcwf.corpus.emit import entry_theory

from equations import instances
from gen import Gen, environments, kernel

SUBSETS = [(), (0,), (1,), (0, 1)]
# 1 and 57 once produced normal forms that differed
SEEDS = (2024, 1, 57)


def _equation_verdicts():
    k, envs = kernel(), environments()
    kinds, model_diffs, evals = collections.Counter(), [], 0
    for law, lhs, rhs in (x for seed in SEEDS for x in instances(seed=seed, per_law=6, depth=4)):
        verdict = check_equal(k, lhs, rhs)
        kinds[(law, verdict.kind)] += 1
        for env in envs:
            evals += 1
            if env.eval(lhs) != env.eval(rhs):
                model_diffs.append((law, env.name))
    return kinds, model_diffs, evals


def test_criterion_1_equations(acceptance):
    kinds, diffs, evals = _equation_verdicts()
    laws = {law for law, _ in kinds}
    not_equal = sorted({law for law, kind in kinds if kind != "Equal"})
    ok = not not_equal and not diffs and len(environments()) >= 3
    detail = (f"{len(laws)} laws, {sum(kinds.values())} instances Equal, "
              f"{evals} model comparisons agree" if ok else f"not Equal: {not_equal}; model diffs: {diffs[:5]}")
    assert acceptance(1, ok, detail)


def test_criterion_2_corpus_positive(acceptance):
    results = [run_entry(e) for e in positive_corpus()]
    failed = [r.name for r in results if not r.passed]
    oracles = sum(line.split(": ", 1)[1].startswith("oracle") for r in results for line in r.lines)
    assert acceptance(2, not failed, f"{len(results)} entries, {oracles} oracle checks"
                      if not failed else f"failed: {failed}")


def test_criterion_3_corpus_negative(acceptance):
    entries = negative_corpus()
    got = {}
    for e in entries:
        try:
            Kernel(e.sig).infer(e.term)
            got[e.name] = None
        except KernelError as err:
            got[e.name] = type(err)
    wrong = [e.name for e in entries if got[e.name] is not e.error]
    ok = len(entries) == 5 and not wrong
    detail = ", ".join(f"{e.name}={got[e.name].__name__ if got[e.name] else 'accepted'}" for e in entries)
    assert acceptance(3, ok, detail)


def test_criterion_4_countermodels(acceptance):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(["refute"])
    report = countermodel_search()
    f2, fs = report.fibers["2"], report.fibers["FinSet2"]
    ok = (code == 0 and f2[("a", "b")] == 1 and f2[("b", "a")] == 0
          and fs[((0, 1), (0, 1))] == 4
          and "symmetry: refuted in 2 at (a, b)" in buf.getvalue()
          and "hom-uniqueness: refuted in FinSet2" in buf.getvalue())
    detail = (f"|hom(a,b)|={f2[('a', 'b')]}, |hom(b,a)|={f2[('b', 'a')]} in 2; "
              f"{fs[((0, 1), (0, 1))]} homs on the two-element set in FinSet2")
    assert acceptance(4, ok, detail)


def _discrete(H, level2=False):
    for fib in H.family.fiber.values():
        if not is_groupoid(fib)[0] or len(fib.morphisms) != len(fib.objects):
            return False
        if level2 and len(fib.objects) > 1:
            return False
    return True


def _hom_subterms(t):
    return [s for s in t.subterms() if isinstance(s, Hom)]


def test_criterion_5_truncation(acceptance):
    checked = level2 = 0
    bad = []

    def check(H, is2, where):
        nonlocal checked, level2
        checked += 1
        level2 += is2
        if not _discrete(H, is2):
            bad.append(where)

    # suite 1: every hom type occurring in the equation instances
    k, envs = kernel(), environments()
    for law, lhs, rhs in instances(seed=2024, per_law=8, depth=4):
        for h in _hom_subterms(lhs) + _hom_subterms(rhs):
            is2 = isinstance(k.normalize(h.ty), Hom)
            for env in envs:
                check(env.eval(h), is2, law)
    # suite 2: hom types in corpus terms and judgments, in every oracle model
    for e in positive_corpus():
        ke = Kernel(e.sig)
        homs = _hom_subterms(e.term) + (_hom_subterms(e.expected.ty) if e.expected else [])
        for o in e.oracles:
            env = o.env()
            for h in homs:
                try:
                    H = env.eval(h)
                except (ModelError, KernelError):
                    continue  # the oracle binds a specialised signature
                check(H, isinstance(ke.normalize(h.ty), Hom), e.name)
    # suite 4: all homs of the countermodel library, and homs between them
    for name, make in CATEGORIES.items():
        A = closed_type(make())
        for a, b in itertools.product(make().objects, repeat=2):
            H = sem_hom(A, closed_section(sem_neg_ty(A), a), closed_section(A, b))
            check(H, False, name)
            objs = H.family.fiber["*"].objects
            for f, g in itertools.product(objs, repeat=2):
                check(sem_hom(H, closed_section(sem_neg_ty(H), f), closed_section(H, g)), True, name)
    ok = not bad and level2 > 0
    assert acceptance(5, ok, f"{checked} hom denotations discrete, {level2} level-2 fibres with at most one object"
                      if ok else f"non-discrete in {sorted(set(bad))[:5]}")


def test_criterion_6_hom_to_func(acceptance):
    S = sem_set_universe(2)
    results = {(X, Y): hom_to_func_check(S, X, Y) for X in SUBSETS for Y in SUBSETS}
    failed = [p for p, v in results.items() if not v]
    assert acceptance(6, len(results) == 16 and not failed,
                      f"{sum(results.values())}/16 ordered pairs of FinSet≤2")


def test_criterion_7_hygiene(acceptance):
    k, envs = kernel(), environments()
    gen = Gen(7)
    sr_fail, contradicted, audited = 0, [], 0
    for _ in range(1000):
        t = gen.any_term(4)
        j = k.infer(t)
        n = k.normalize(t)
        if k.infer(n) != j:
            sr_fail += 1
        # t ≡ nf(t) is an Equal verdict; no model may tell them apart
        for env in envs:
            audited += 1
            if env.eval(t) != env.eval(n):
                contradicted.append(print_term(t))
    for law, lhs, rhs in instances(seed=99, per_law=3, depth=4):
        if check_equal(k, lhs, rhs).kind == "Equal":
            for env in envs:
                audited += 1
                if env.eval(lhs) != env.eval(rhs):
                    contradicted.append(law)
    for e in positive_corpus():
        ke = Kernel(e.sig)
        oracle_envs = [o.env() for o in e.oracles]
        for _, lhs, rhs in e.equations:
            if check_equal(ke, lhs, rhs).kind != "Equal":
                continue
            for env in oracle_envs:
                try:
                    a, b = env.eval(lhs), env.eval(rhs)
                except (ModelError, KernelError):
                    continue
                audited += 1
                if a != b:
                    contradicted.append(e.name)

    round_trip_bad = []
    for e in positive_corpus() + negative_corpus():
        terms = [e.term] + [x for _, x in e.extras] + [x for _, l, r in e.equations for x in (l, r)]
        for t in terms:
            text = print_term(t)
            if print_term(parse_term(text, e.sig.const)) != text:
                round_trip_bad.append(e.name)
        text = print_theory(entry_theory(e))
        if print_theory(parse_theory(text)) != text:
            round_trip_bad.append(e.name + ".dtt")
    for name, make in CATEGORIES.items():
        c = make()
        if all(isinstance(o, str) for o in c.objects):
            text = print_model(ModelFile(name=name, categories={"C": c}))
            if print_model(parse_model(text)) != text:
                round_trip_bad.append(name + ".dcm")

    ok = not sr_fail and not contradicted and not round_trip_bad
    detail = (f"subject reduction 1000/1000, {audited} model checks of Equal verdicts, corpus round trip exact"
              if ok else f"sr failures {sr_fail}, contradicted {contradicted[:3]}, round trip {round_trip_bad[:3]}")
    assert acceptance(7, ok, detail)
