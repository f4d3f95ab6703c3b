"""Type inference and normalization for the combinator syntax."""
from __future__ import annotations

import contextlib
import logging

from .errors import NeutralityError, SortError, StepBudgetExceeded, VarianceError
from .signature import Signature
from .terms import (
    App, Bang, Comp, ConstTm, ConstTy, E, EInv, El, EmptyCtx,
    ExtE, ExtNeg, ExtPos, Hom, IdSub, IsCon, IsSub, IsTm, IsTy, J, JSimple, Lam,
    NegCtx, NegSub, NegTm, NegTy, PairNeg, PairPos, Pi, ProjNeg, ProjPos, Refl,
    SetU, SubTm, SubTy, Term, VarNeg, VarPos, hom_over_var, j_point,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_STEPS = 10_000


def _expect(j, cls, term, role):
    if not isinstance(j, cls):
        raise SortError(f"{role} {term} has judgment {j}, expected {cls.__name__}")
    return j


def _chain(s):
    out = []
    while isinstance(s, Comp):
        out.append(s.outer)
        s = s.inner
    return out + [s]


def _compose(chain):
    out = chain[-1]
    for c in reversed(chain[:-1]):
        out = Comp(c, out)
    return out


class Kernel:
    """Checks and normalizes terms against a signature.

    Judgments returned by :meth:`infer` always carry normal-form contexts and
    types, so two judgments are equal exactly when they are convertible.
    """

    def __init__(self, sig: Signature | None = None, max_steps=DEFAULT_MAX_STEPS, trace=None):
        self.sig = sig if sig is not None else Signature()
        self.max_steps = max_steps
        self.trace = trace  # file-like or None
        self._infer_memo: dict = {}
        self._nf_memo: dict = {}
        self._depth = 0
        self._steps = 0
        self.last_steps = 0

    # -- bookkeeping ---------------------------------------------------------

    @contextlib.contextmanager
    def _session(self):
        if self._depth == 0:
            self._steps = 0
        self._depth += 1
        try:
            yield
        finally:
            self._depth -= 1
            if self._depth == 0:
                self.last_steps = self._steps

    def _tick(self, rule, before, after):
        self._steps += 1
        if self._steps > self.max_steps:
            raise StepBudgetExceeded(self.max_steps)
        if self.trace is not None:
            print(f"[{self._steps}] {rule}: {before}  ~>  {after}", file=self.trace)

    # -- public API ----------------------------------------------------------

    def infer(self, t: Term):
        with self._session():
            return self._infer(t)

    def normalize(self, t: Term) -> Term:
        with self._session():
            self._infer(t)
            return self._nf(t)

    def conv(self, a: Term, b: Term) -> bool:
        with self._session():
            na, nb = self._nf(a), self._nf(b)
            if na == nb or na.sort != "sub":
                return na == nb
            # the coercion law is only oriented under stuck heads; between two
            # bare substitutions it may also be used once at the root
            ra, rb = self._ext_e_rewrite(na), self._ext_e_rewrite(nb)
            return self._nf(ra or na) == self._nf(rb or nb)

    def normalize_judgment(self, j):
        """``j`` with its components in normal form, as :meth:`infer` reports them."""
        with self._session():
            if isinstance(j, IsSub):
                return IsSub(self._nf(j.dom), self._nf(j.cod))
            if isinstance(j, IsTy):
                return IsTy(self._nf(j.ctx), j.neutral)
            if isinstance(j, IsTm):
                return IsTm(self._nf(j.ctx), self._nf(j.ty))
            return j

    def is_neutral_ctx(self, ctx: Term) -> bool:
        return _expect(self.infer(ctx), IsCon, ctx, "context").neutral

    # -- inference -----------------------------------------------------------

    def _infer(self, t: Term):
        try:
            return self._infer_memo[t]
        except KeyError:
            pass
        meth = getattr(self, "_i_" + type(t).__name__, None)
        if meth is None:
            raise SortError(f"not a term: {t!r}")
        j = meth(t)
        self._infer_memo[t] = j
        return j

    def _con(self, t):
        return _expect(self._infer(t), IsCon, t, "context")

    def _sub(self, t):
        return _expect(self._infer(t), IsSub, t, "substitution")

    def _ty(self, t):
        return _expect(self._infer(t), IsTy, t, "type")

    def _tm(self, t):
        return _expect(self._infer(t), IsTm, t, "term")

    def _neutral(self, ctx):
        return self._con(ctx).neutral

    def _same(self, got, want, what):
        if got != want:
            raise SortError(f"{what}: got {got}, expected {want}")

    def _same_ty(self, got, want, what):
        """Like :meth:`_same` for term types, flagging polarity mismatches."""
        if got == want:
            return
        if got == self._nf(NegTy(want)):
            raise VarianceError(f"{what}: term has type {got}, used at the opposite variance {want}")
        raise SortError(f"{what}: got {got}, expected {want}")

    def _decl(self, name, cls):
        d = self.sig.lookup(name)
        j = _expect(d.sort, cls, name, "constant")
        if isinstance(j, IsSub):
            return IsSub(self._nf(j.dom), self._nf(j.cod))
        if isinstance(j, IsTy):
            return IsTy(self._nf(j.ctx), j.neutral)
        if isinstance(j, IsTm):
            return IsTm(self._nf(j.ctx), self._nf(j.ty))
        return j

    # contexts

    def _i_EmptyCtx(self, t):
        return IsCon(True)

    def _i_ConstCtx(self, t):
        return self._decl(t.name, IsCon)

    def _i_NegCtx(self, t):
        return IsCon(self._con(t.ctx).neutral)

    def _i_ExtPos(self, t):
        g = self._con(t.ctx)
        a = self._ty(t.ty)
        self._same(a.ctx, self._nf(t.ctx), "extended type context")
        return IsCon(g.neutral and a.neutral)

    def _i_ExtNeg(self, t):
        g = self._con(t.ctx)
        a = self._ty(t.ty)
        self._same(a.ctx, self._nf(NegCtx(t.ctx)), "negatively extended type context")
        return IsCon(g.neutral and a.neutral)

    # substitutions

    def _i_IdSub(self, t):
        self._con(t.ctx)
        g = self._nf(t.ctx)
        return IsSub(g, g)

    def _i_Comp(self, t):
        s = self._sub(t.outer)
        r = self._sub(t.inner)
        self._same(r.cod, s.dom, "composition")
        return IsSub(r.dom, s.cod)

    def _i_NegSub(self, t):
        s = self._sub(t.sub)
        return IsSub(self._nf(NegCtx(s.dom)), self._nf(NegCtx(s.cod)))

    def _i_ProjPos(self, t):
        a = self._ty(t.ty)
        return IsSub(self._nf(ExtPos(a.ctx, t.ty)), a.ctx)

    def _i_ProjNeg(self, t):
        a = self._ty(t.ty)
        g = self._nf(NegCtx(a.ctx))
        return IsSub(self._nf(ExtNeg(g, t.ty)), g)

    def _i_PairPos(self, t):
        a = self._ty(t.ty)
        s = self._sub(t.sub)
        self._same(s.cod, a.ctx, "pairing codomain")
        x = self._tm(t.tm)
        self._same(x.ctx, s.dom, "paired term context")
        self._same_ty(x.ty, self._nf(SubTy(t.ty, t.sub)), "paired term type")
        return IsSub(s.dom, self._nf(ExtPos(a.ctx, t.ty)))

    def _i_PairNeg(self, t):
        a = self._ty(t.ty)
        s = self._sub(t.sub)
        self._same(self._nf(NegCtx(s.cod)), a.ctx, "negative pairing codomain")
        x = self._tm(t.tm)
        self._same(x.ctx, self._nf(NegCtx(s.dom)), "negatively paired term context")
        self._same_ty(x.ty, self._nf(NegTy(SubTy(t.ty, NegSub(t.sub)))), "negatively paired term type")
        return IsSub(s.dom, self._nf(ExtNeg(s.cod, t.ty)))

    def _i_E(self, t):
        if not self._neutral(t.ctx):
            raise NeutralityError(f"e needs a neutral context, got {t.ctx}")
        return IsSub(self._nf(t.ctx), self._nf(NegCtx(t.ctx)))

    def _i_EInv(self, t):
        if not self._neutral(t.ctx):
            raise NeutralityError(f"e⁻¹ needs a neutral context, got {t.ctx}")
        return IsSub(self._nf(NegCtx(t.ctx)), self._nf(t.ctx))

    def _i_ExtE(self, t):
        a = self._ty(t.ty)
        if not self._neutral(a.ctx):
            raise NeutralityError(f"ExtE needs a neutral context, got {a.ctx}")
        g = a.ctx
        return IsSub(self._nf(ExtPos(g, t.ty)), self._nf(ExtNeg(g, SubTy(t.ty, EInv(g)))))

    def _i_Bang(self, t):
        self._con(t.ctx)
        return IsSub(self._nf(t.ctx), EmptyCtx())

    def _i_ConstSub(self, t):
        return self._decl(t.name, IsSub)

    # types

    def _i_SubTy(self, t):
        a = self._ty(t.ty)
        s = self._sub(t.sub)
        self._same(s.cod, a.ctx, "type substitution")
        return IsTy(s.dom, a.neutral)

    def _i_NegTy(self, t):
        a = self._ty(t.ty)
        return IsTy(a.ctx, a.neutral)

    def _i_Hom(self, t):
        a = self._ty(t.ty)
        x = self._tm(t.src)
        y = self._tm(t.dst)
        self._same(x.ctx, a.ctx, "hom source context")
        self._same(y.ctx, a.ctx, "hom target context")
        self._same_ty(x.ty, self._nf(NegTy(t.ty)), "hom source type")
        self._same_ty(y.ty, self._nf(t.ty), "hom target type")
        return IsTy(a.ctx, True)

    def _i_Pi(self, t):
        a = self._ty(t.dom)
        g = self._nf(NegCtx(a.ctx))
        b = self._ty(t.cod)
        self._same(b.ctx, self._nf(ExtNeg(g, t.dom)), "Π codomain context")
        return IsTy(g, False)

    def _i_SetU(self, t):
        return IsTy(EmptyCtx(), False)

    def _i_El(self, t):
        x = self._tm(t.tm)
        ty = x.ty
        if not (ty == SetU() or (isinstance(ty, SubTy) and ty.ty == SetU())):
            raise SortError(f"El expects a term of SET, got type {ty}")
        return IsTy(x.ctx, True)

    def _i_ConstTy(self, t):
        return self._decl(t.name, IsTy)

    # terms

    def _i_VarPos(self, t):
        a = self._ty(t.ty)
        return IsTm(self._nf(ExtPos(a.ctx, t.ty)), self._nf(SubTy(t.ty, ProjPos(t.ty))))

    def _i_VarNeg(self, t):
        a = self._ty(t.ty)
        g = NegCtx(a.ctx)
        return IsTm(self._nf(NegCtx(ExtNeg(g, t.ty))),
                    self._nf(NegTy(SubTy(t.ty, NegSub(ProjNeg(t.ty))))))

    def _i_SubTm(self, t):
        x = self._tm(t.tm)
        s = self._sub(t.sub)
        self._same(s.cod, x.ctx, "term substitution")
        return IsTm(s.dom, self._nf(SubTy(x.ty, t.sub)))

    def _i_NegTm(self, t):
        x = self._tm(t.tm)
        if not self._neutral(x.ctx):
            raise VarianceError(f"cannot negate a term in the non-neutral context {x.ctx}")
        return IsTm(x.ctx, self._nf(NegTy(x.ty)))

    def _neutral_base(self, A, what):
        a = self._ty(A)
        if not self._neutral(a.ctx):
            raise NeutralityError(f"{what} needs a neutral context, got {a.ctx}")
        return a

    def _centre(self, A, t):
        a = self._neutral_base(A, "J")
        x = self._tm(t)
        self._same(x.ctx, a.ctx, "centre context")
        self._same_ty(x.ty, self._nf(NegTy(A)), "centre type")
        return a

    def _i_Refl(self, t):
        a = self._neutral_base(t.ty, "refl")
        x = self._tm(t.tm)
        self._same(x.ctx, a.ctx, "refl term context")
        self._same_ty(x.ty, self._nf(NegTy(t.ty)), "refl term type")
        return IsTm(a.ctx, self._nf(Hom(t.ty, t.tm, NegTm(t.tm))))

    def _i_J(self, t):
        a = self._centre(t.ty, t.tm)
        ext = ExtPos(ExtPos(a.ctx, t.ty), hom_over_var(t.ty, t.tm))
        m = self._ty(t.motive)
        self._same(m.ctx, self._nf(ext), "J motive context")
        b = self._tm(t.base)
        self._same(b.ctx, a.ctx, "J base context")
        self._same_ty(b.ty, self._nf(SubTy(t.motive, j_point(t.ty, t.tm, a.ctx))), "J base type")
        return IsTm(m.ctx, self._nf(t.motive))

    def _i_JSimple(self, t):
        a = self._centre(t.ty, t.tm)
        H = hom_over_var(t.ty, t.tm)
        m = self._ty(t.motive)
        self._same(m.ctx, self._nf(ExtPos(a.ctx, t.ty)), "J motive context")
        b = self._tm(t.base)
        self._same(b.ctx, a.ctx, "J base context")
        point = PairPos(t.ty, IdSub(a.ctx), NegTm(t.tm))
        self._same_ty(b.ty, self._nf(SubTy(t.motive, point)), "J base type")
        return IsTm(self._nf(ExtPos(ExtPos(a.ctx, t.ty), H)), self._nf(SubTy(t.motive, ProjPos(H))))

    def _i_Lam(self, t):
        x = self._tm(t.body)
        if not isinstance(x.ctx, ExtNeg):
            raise SortError(f"λ body must live in a negative extension, got {x.ctx}")
        return IsTm(x.ctx.ctx, self._nf(Pi(x.ctx.ty, x.ty)))

    def _i_App(self, t):
        f = self._tm(t.fn)
        if not isinstance(f.ty, Pi):
            raise SortError(f"application of a term of non-Π type {f.ty}")
        return IsTm(self._nf(ExtNeg(f.ctx, f.ty.dom)), f.ty.cod)

    def _i_ConstTm(self, t):
        return self._decl(t.name, IsTm)

    # -- normalization -------------------------------------------------------

    def _nf(self, t: Term) -> Term:
        try:
            return self._nf_memo[t]
        except KeyError:
            pass
        orig = t
        while True:
            e = self._eager(t)
            if e is not None:
                self._tick("involution", t, e)
                t = e
                continue
            kids = [self._nf(c) for c in t.children()]
            if kids:
                t = t.rebuild(kids)
            hit = self._rewrite(t)
            if hit is None:
                break
            rule, new = hit
            self._tick(rule, t, new)
            t = new
        self._nf_memo[orig] = t
        self._nf_memo[t] = t
        return t

    @staticmethod
    def _eager(t):
        """Cancel double negations before looking at the children."""
        inner = getattr(t, "ctx", None) if isinstance(t, NegCtx) else None
        if isinstance(t, NegCtx) and isinstance(inner, NegCtx):
            return inner.ctx
        if isinstance(t, NegSub):
            x = t.sub
            if isinstance(x, NegSub):
                return x.sub
            if isinstance(x, PairNeg):
                return PairPos(NegTy(x.ty), NegSub(x.sub), x.tm)
            if isinstance(x, ProjNeg):
                return ProjPos(NegTy(x.ty))
        if isinstance(t, NegTy) and isinstance(t.ty, NegTy):
            return t.ty.ty
        if isinstance(t, NegTm) and isinstance(t.tm, NegTm):
            return t.tm.tm
        return None

    def _rewrite(self, t):
        meth = getattr(self, "_r_" + type(t).__name__, None)
        hit = meth(t) if meth is not None else None
        if hit is None and t.sort == "sub":
            hit = self._bang(t)
        return hit

    def _unfold(self, t):
        d = self.sig.lookup(t.name)
        if d.body is not None:
            return "unfold", d.body
        return None

    _r_ConstCtx = _r_ConstSub = _r_ConstTy = _r_ConstTm = _unfold

    def _bang(self, t):
        j = self._infer(t)
        if j.cod != EmptyCtx():
            return None
        target = IdSub(EmptyCtx()) if j.dom == EmptyCtx() else Bang(j.dom)
        if t == target:
            return None
        return "terminal", target

    def _lift_neg(self, A, sigma):
        """``Δ ▹₋ A[σ⁻] → Γ ▹₋ A`` for ``σ : Δ → Γ`` and ``A : Ty Γ⁻``."""
        A2 = SubTy(A, NegSub(sigma))
        return PairNeg(A, Comp(sigma, ProjNeg(A2)), VarNeg(A2))

    # contexts

    def _r_NegCtx(self, t):
        c = t.ctx
        if isinstance(c, EmptyCtx):
            return "neg-empty", c
        if isinstance(c, NegCtx):
            return "neg-neg", c.ctx
        if isinstance(c, ExtPos):
            return "neg-ext+", ExtNeg(NegCtx(c.ctx), NegTy(c.ty))
        if isinstance(c, ExtNeg):
            return "neg-ext-", ExtPos(NegCtx(c.ctx), NegTy(c.ty))
        return None

    # substitutions

    def _r_Comp(self, t):
        s, r = t.outer, t.inner
        if isinstance(r, IdSub):
            return "comp-id", s
        if isinstance(s, IdSub):
            return "id-comp", r
        if isinstance(s, Comp):
            return "assoc", Comp(s.outer, Comp(s.inner, r))
        if isinstance(s, PairPos):
            return "pair-nat", PairPos(s.ty, Comp(s.sub, r), SubTm(s.tm, r))
        head, rest = (r.outer, r.inner) if isinstance(r, Comp) else (r, None)
        hit = self._comp2(s, head)
        if hit is None:
            return None
        rule, new = hit
        return rule, (new if rest is None else Comp(new, rest))

    @staticmethod
    def _comp2(s, r):
        if isinstance(s, ProjPos) and isinstance(r, PairPos):
            return "proj-beta", r.sub
        if isinstance(s, NegSub) and isinstance(r, NegSub):
            return "neg-comp", NegSub(Comp(s.sub, r.sub))
        if isinstance(s, E) and isinstance(r, EInv):
            return "e-einv", IdSub(NegCtx(s.ctx))
        if isinstance(s, EInv) and isinstance(r, E):
            return "einv-e", IdSub(s.ctx)
        if isinstance(s, NegSub) and isinstance(s.sub, ProjPos) and isinstance(r, ExtE):
            return "ext-e-proj", ProjPos(r.ty)
        if isinstance(s, NegSub) and isinstance(r, (Bang, E, EInv)):
            return "neg-comp", NegSub(Comp(s.sub, NegSub(r)))
        if isinstance(s, NegSub) and isinstance(r, PairPos):
            # r is the unfolded negation of a negative pair; refold so neg-comp applies
            return "neg-pair-comp", NegSub(Comp(s.sub, NegSub(r)))
        return None

    def _r_NegSub(self, t):
        x = t.sub
        if isinstance(x, NegSub):
            return "neg-neg", x.sub
        if isinstance(x, IdSub):
            return "neg-id", IdSub(NegCtx(x.ctx))
        if isinstance(x, E):
            return "neg-e", EInv(x.ctx)
        if isinstance(x, EInv):
            return "neg-einv", E(x.ctx)
        if isinstance(x, Bang):
            return "neg-bang", Bang(NegCtx(x.ctx))
        return None

    def _r_ProjNeg(self, t):
        return "proj-neg", NegSub(ProjPos(NegTy(t.ty)))

    def _r_PairNeg(self, t):
        return "pair-neg", NegSub(PairPos(NegTy(t.ty), NegSub(t.sub), t.tm))

    def _r_PairPos(self, t):
        A, s, x = t.ty, t.sub, t.tm
        if x == VarPos(A) and s == self._nf(ProjPos(A)):
            return "pair-eta", IdSub(ExtPos(self._ty(A).ctx, A))
        if isinstance(x, SubTm) and x.tm == VarPos(A) and s == self._nf(Comp(ProjPos(A), x.sub)):
            return "pair-eta", x.sub
        return None

    def _r_E(self, t):
        if isinstance(t.ctx, EmptyCtx):
            return "e-empty", IdSub(t.ctx)
        if isinstance(t.ctx, NegCtx):
            return "e-neg", EInv(t.ctx.ctx)
        return None

    def _r_EInv(self, t):
        if isinstance(t.ctx, EmptyCtx):
            return "einv-empty", IdSub(t.ctx)
        if isinstance(t.ctx, NegCtx):
            return "einv-neg", E(t.ctx.ctx)
        return None

    def _ext_e_rewrite(self, sigma):
        """Rewrite ``(⟨id, s⟩)⁻ ∘ τ`` through ``ExtE`` when the base is neutral.

        Returns the new substitution or None.
        """
        head, rest = (sigma.outer, sigma.inner) if isinstance(sigma, Comp) else (sigma, None)
        if not (isinstance(head, NegSub) and isinstance(head.sub, PairPos)):
            return None
        Y, base, s = head.sub.ty, head.sub.sub, head.sub.tm
        if not isinstance(base, IdSub):
            # ⟨ρ, s0[ρ]⟩ is ⟨id, s0⟩ ∘ ρ
            if not (isinstance(s, SubTm) and s.sub == base):
                return None
            tail = NegSub(base)
            rest = tail if rest is None else Comp(tail, rest)
            s, base = s.tm, IdSub(self._sub(base).cod)
        if not self._neutral(base.ctx):
            return None
        g = NegCtx(base.ctx)
        A = SubTy(NegTy(Y), E(g))
        new = Comp(ExtE(A), PairPos(A, IdSub(g), NegTm(SubTm(s, E(g)))))
        return new if rest is None else Comp(new, rest)

    # types

    def _r_SubTy(self, t):
        A, s = t.ty, t.sub
        if isinstance(s, IdSub):
            return "sub-id", A
        if isinstance(A, SubTy):
            return "sub-sub", SubTy(A.ty, Comp(A.sub, s))
        if isinstance(A, NegTy):
            return "sub-neg", NegTy(SubTy(A.ty, s))
        if isinstance(A, Hom):
            return "sub-hom", Hom(SubTy(A.ty, s), SubTm(A.src, s), SubTm(A.dst, s))
        if isinstance(A, Pi):
            return "sub-pi", Pi(SubTy(A.dom, NegSub(s)), SubTy(A.cod, self._lift_neg(A.dom, s)))
        if isinstance(A, El):
            return "sub-el", El(SubTm(A.tm, s))
        if isinstance(A, ConstTy):
            new = self._ext_e_rewrite(s)
            if new is not None:
                return "ext-e", SubTy(A, new)
        return None

    def _r_NegTy(self, t):
        A = t.ty
        if isinstance(A, NegTy):
            return "neg-neg", A.ty
        if isinstance(A, (Hom, El)):
            return "neg-discrete", A
        return None

    # terms

    def _r_VarNeg(self, t):
        return "var-neg", VarPos(NegTy(t.ty))

    def _r_NegTm(self, t):
        x = t.tm
        if isinstance(x, NegTm):
            return "neg-neg", x.tm
        if isinstance(self._tm(x).ty, (Hom, El)):
            return "neg-discrete", x
        return None

    def _r_SubTm(self, t):
        u, s = t.tm, t.sub
        if isinstance(s, IdSub):
            return "sub-id", u
        if isinstance(u, SubTm):
            return "sub-sub", SubTm(u.tm, Comp(u.sub, s))
        if isinstance(u, VarPos):
            if isinstance(s, PairPos):
                return "var-beta", s.tm
            if isinstance(s, Comp) and isinstance(s.outer, PairPos):
                return "var-beta", SubTm(s.outer.tm, s.inner)
            return None
        if isinstance(u, Lam):
            A = self._tm(u.body).ctx.ty
            return "sub-lam", Lam(SubTm(u.body, self._lift_neg(A, s)))
        if isinstance(u, NegTm):
            hit = self._neg_split(u.tm, s)
            if hit is not None:
                return hit
        if isinstance(u, (NegTm, Refl, J, JSimple)):
            dom = self._sub(s).dom
            if not self._neutral(dom):
                return None
            if isinstance(u, NegTm):
                return "sub-neg", NegTm(SubTm(u.tm, s))
            if isinstance(u, Refl):
                return "sub-refl", Refl(SubTy(u.ty, s), SubTm(u.tm, s))
            hit = self._j_beta(u, s)
            if hit is not None:
                return hit
        if isinstance(u, (App, ConstTm, J, JSimple)):
            new = self._ext_e_rewrite(s)
            if new is not None:
                return "ext-e", SubTm(u, new)
        return None

    def _neg_split(self, x, s):
        """``(-(y[c1..cn]))[s]`` with a non-neutral domain: move everything after
        the first neutral intermediate context out of the negation."""
        if self._neutral(self._sub(s).dom):
            return None
        if not isinstance(x, SubTm):
            return self._neg_unpair(x, s)
        chain = _chain(x.sub)
        if self._neutral(self._tm(x.tm).ctx):
            k = 0
        else:
            k = next((i + 1 for i, c in enumerate(chain[:-1]) if self._neutral(self._sub(c).dom)), None)
            if k is None:
                return None
        inner = x.tm if k == 0 else SubTm(x.tm, _compose(chain[:k]))
        return "neg-split", SubTm(NegTm(inner), Comp(_compose(chain[k:]), s))

    def _neg_unpair(self, x, s):
        # ⟨ρ, y[ρ]⟩ is ⟨id, y⟩ ∘ ρ, and the pair part can go under the negation
        head, rest = (s.outer, s.inner) if isinstance(s, Comp) else (s, None)
        if not (isinstance(head, PairPos) and isinstance(head.tm, SubTm) and head.tm.sub == head.sub):
            return None
        rho = head.sub
        mid = self._sub(rho).cod
        if not self._neutral(mid):
            return None
        pair = PairPos(head.ty, IdSub(mid), head.tm.tm)
        outer = rho if rest is None else Comp(rho, rest)
        return "neg-unpair", SubTm(NegTm(SubTm(x, pair)), outer)

    def _j_beta(self, u, s):
        if not (isinstance(s, PairPos) and isinstance(s.sub, PairPos)):
            return None
        sigma = s.sub.sub
        if not self._neutral(self._sub(sigma).dom):
            return None
        ctx = self._ty(u.ty).ctx
        if self._nf(Comp(j_point(u.ty, u.tm, ctx), sigma)) != s:
            return None
        return "J-beta", SubTm(u.base, sigma)

    def _r_App(self, t):
        f = t.fn
        if isinstance(f, Lam):
            return "pi-beta", f.body
        if isinstance(f, SubTm):
            pi = self._tm(f.tm).ty
            return "app-sub", SubTm(App(f.tm), self._lift_neg(pi.dom, f.sub))
        return None

    def _r_Lam(self, t):
        if isinstance(t.body, App):
            return "pi-eta", t.body.fn
        return None
