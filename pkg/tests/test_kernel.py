import io

import pytest
from hypothesis import given, settings, strategies as st

from dcwf.kernel import (
    Bang, Comp, EmptyCtx, ExtNeg, ExtPos, Hom, IdSub, IsCon, IsSub, IsTm, IsTy, JSimple,
    Kernel, NegCtx, NegTm, NegTy, NeutralityError, PairPos, ProjPos, Refl, SetU, Signature,
    SortError, StepBudgetExceeded, SubTm, SubTy, UnboundConstant, VarianceError, VarPos,
    audit_var_neg, check_equal, truncation_collapse, wf_signature,
)
from dcwf.kernel.signature import ty, tm
from dcwf.kernel.terms import j_point

from gen import SIG, Gen, kernel

E = EmptyCtx()


@pytest.fixture
def sig():
    s = Signature()
    A = s.declare("A", ty(E, neutral=True))
    s.declare("N", ty(E))
    s.declare("a", tm(E, NegTy(A)))
    return s


def test_empty_context_is_neutral():
    assert Kernel(Signature()).infer(E) == IsCon(True)


def test_extension_neutrality(sig):
    k = Kernel(sig)
    assert k.is_neutral_ctx(ExtPos(E, sig.const("A")))
    assert not k.is_neutral_ctx(ExtPos(E, sig.const("N")))


def test_negation_keeps_type_context(sig):
    k = Kernel(sig)
    assert k.infer(NegTy(sig.const("N"))) == IsTy(E, False)


def test_negated_extension(sig):
    A = sig.const("A")
    k = Kernel(sig)
    assert k.normalize(NegCtx(ExtPos(E, A))) == ExtNeg(E, NegTy(A))
    assert k.normalize(NegTy(NegTy(A))) == A


def test_refl_type(sig):
    A, a = sig.const("A"), sig.const("a")
    assert Kernel(sig).infer(Refl(A, a)) == IsTm(E, Hom(A, a, NegTm(a)))


def test_negating_polarized_variable_is_variance_error(sig):
    with pytest.raises(VarianceError):
        Kernel(sig).infer(NegTm(VarPos(sig.const("N"))))


def test_refl_needs_neutral_context(sig):
    A, N, a = sig.const("A"), sig.const("N"), sig.const("a")
    p = ProjPos(N)
    with pytest.raises(NeutralityError):
        Kernel(sig).infer(Refl(SubTy(A, p), SubTm(a, p)))


def test_unbound_constant():
    from dcwf.kernel import ConstTy
    with pytest.raises(UnboundConstant):
        Kernel(Signature()).infer(ConstTy("nope"))


def test_ill_sorted_composition(sig):
    A = sig.const("A")
    with pytest.raises(SortError):
        Kernel(sig).infer(Comp(ProjPos(A), ProjPos(A)))


def test_pair_eta(sig):
    A = sig.const("A")
    assert Kernel(sig).normalize(PairPos(A, ProjPos(A), VarPos(A))) == IdSub(ExtPos(E, A))


def test_j_beta_simple(sig):
    A, a = sig.const("A"), sig.const("a")
    k = Kernel(sig)
    j = JSimple(A, a, SubTy(A, ProjPos(A)), NegTm(a))
    point = PairPos(Hom(SubTy(A, ProjPos(A)), SubTm(a, ProjPos(A)), VarPos(A)),
                    PairPos(A, IdSub(E), NegTm(a)), Refl(A, a))
    assert k.normalize(SubTm(j, point)) == k.normalize(NegTm(a))
    assert check_equal(k, SubTm(j, j_point(A, a, E)), NegTm(a)).kind == "Equal"


def test_substitutions_into_empty_collapse(sig):
    A = sig.const("A")
    k = Kernel(sig)
    assert k.infer(Bang(ExtPos(E, A))) == IsSub(ExtPos(E, A), E)
    assert k.conv(Comp(Bang(E), ProjPos(A)), ProjPos(A))


def test_step_budget(sig):
    A = sig.const("A")
    t = SubTy(A, IdSub(E))
    for _ in range(20):
        t = SubTy(t, IdSub(E))
    with pytest.raises(StepBudgetExceeded):
        Kernel(sig, max_steps=3).normalize(t)
    k = Kernel(sig)
    assert k.normalize(t) == A
    assert k.last_steps > 0


def test_trace_output(sig):
    buf = io.StringIO()
    Kernel(sig, trace=buf).normalize(SubTy(sig.const("A"), IdSub(E)))
    assert "sub-id" in buf.getvalue()


def test_truncation_collapse(sig):
    A, a = sig.const("A"), sig.const("a")
    k = Kernel(sig)
    h = Hom(A, a, NegTm(a))
    r = Refl(h, NegTm(Refl(A, a)))
    assert truncation_collapse(k, r, r).kind == "Equal"
    assert truncation_collapse(k, Refl(A, a), Refl(A, a)).kind == "NotApplicable"


def test_wf_signature_reports_bad_declaration():
    s = Signature()
    A = s.declare("A", ty(E))
    s.declare("x", tm(ExtPos(E, A), A))  # A does not live over ⋄▹A
    problems = wf_signature(s)
    assert len(problems) == 1 and problems[0].startswith("x:")
    assert wf_signature(SIG) == []


def test_set_is_not_neutral():
    assert Kernel(Signature()).infer(SetU()) == IsTy(E, False)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 4))
def test_subject_reduction(seed, depth):
    k = kernel()
    t = Gen(seed).any_term(depth)
    j = k.infer(t)
    n = k.normalize(t)
    assert k.infer(n) == j
    assert k.normalize(n) == n
    assert audit_var_neg(k, n) == []


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_normalization_is_deterministic(seed):
    t = Gen(seed).any_term(4)
    k1, k2 = kernel(), kernel()
    assert k1.normalize(t) == k2.normalize(t)
    assert k1.last_steps == k2.last_steps


# pairs whose normal forms once differed; each side is a plain rewriting of the other
CONFLUENCE = [
    ("(negS (comp (negS (pair+ (negT B) (id empty) bm)) (bang (ext+ empty B))))",
     "(comp (pair+ (negT B) (id empty) bm) (bang (ext- empty (negT B))))"),
    ("(subt (subt (neg (subt bm (bang (ext+ empty A)))) (pair+ A (bang (ext+ empty (negT B))) (subt a2 (bang (ext+ empty (negT B)))))) (id (ext+ empty (negT B))))",
     "(subt (neg bm) (bang (ext+ empty (negT B))))"),
    ("(subt (neg (v+ A)) (pair+ A (bang (ext- empty B)) (subt a2 (bang (ext- empty B)))))",
     "(subt (neg a2) (bang (ext- empty B)))"),
]


@pytest.mark.parametrize("lhs, rhs", CONFLUENCE)
def test_negation_normal_forms_agree(lhs, rhs):
    from dcwf.syntax import parse_term

    k = kernel()
    a, b = (parse_term(x, SIG.const) for x in (lhs, rhs))
    assert k.infer(a) == k.infer(b)
    assert check_equal(k, a, b).kind == "Equal"
