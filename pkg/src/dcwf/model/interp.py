"""Evaluation of kernel terms in the category model."""
from __future__ import annotations

from ..fincat import Functor, Section, identity_functor, opposite, opposite_family
from ..kernel import Kernel, Signature
from ..kernel import terms as T
from .semantics import (
    ModelError, SemCon, SemTy, empty_con, sem_app, sem_bang, sem_e, sem_e_inv, sem_el,
    sem_ext_e, sem_extend_neg, sem_extend_pos, sem_hom, sem_J, sem_lam, sem_neg_con,
    sem_neg_sub, sem_neg_tm, sem_neg_ty, sem_pair_neg, sem_pair_pos, sem_pi, sem_refl,
    sem_set_universe, sem_sub_tm, sem_sub_ty,
)

DEFAULT_SET_K = 2


class Environment:
    """A model of a signature: semantic values for its declared constants.

    ``set_k`` bounds the size of the finite sets in the SET universe.
    """

    def __init__(self, sig: Signature, bindings: dict | None = None, set_k=DEFAULT_SET_K,
                 name="env", kernel: Kernel | None = None):
        self.sig = sig
        self.bindings = dict(bindings or {})
        self.set_k = set_k
        self.name = name
        self.kernel = kernel or Kernel(sig)
        self._memo: dict = {}
        self._exts: dict = {}
        self._universe = None

    def __repr__(self):
        return f"Environment({self.name!r})"

    @property
    def universe(self) -> SemTy:
        if self._universe is None:
            self._universe = sem_set_universe(self.set_k)
        return self._universe

    def bind(self, name, value):
        self.bindings[name] = value
        self._memo.clear()
        self._exts.clear()

    def ext_pos(self, A_term):
        key = ("+", A_term)
        if key not in self._exts:
            A = self.eval(A_term)
            self._exts[key] = sem_extend_pos(SemCon(A.base), A)
        return self._exts[key]

    def ext_neg(self, A_term):
        key = ("-", A_term)
        if key not in self._exts:
            A = self.eval(A_term)
            self._exts[key] = sem_extend_neg(SemCon(opposite(A.base)), A)
        return self._exts[key]

    def eval(self, t: T.Term):
        try:
            return self._memo[t]
        except KeyError:
            pass
        v = getattr(self, "_e_" + type(t).__name__)(t)
        self._memo[t] = v
        return v

    def check_bindings(self):
        """Each declared, non-defined constant is bound at a value of its sort."""
        problems = []
        for d in self.sig:
            if d.body is not None:
                continue
            if d.name not in self.bindings:
                problems.append(f"{d.name}: unbound")
                continue
            try:
                self._check_binding(d.name, d.sort, self.bindings[d.name])
            except ModelError as e:
                problems.append(f"{d.name}: {e}")
        return problems

    def _check_binding(self, name, j, v):
        if isinstance(j, T.IsCon):
            if not isinstance(v, SemCon):
                raise ModelError("expected a context")
            if j.neutral and not v.neutral:
                raise ModelError("declared neutral but not a groupoid")
        elif isinstance(j, T.IsSub):
            if not isinstance(v, Functor):
                raise ModelError("expected a functor")
            if v.dom != self.eval(j.dom).category or v.cod != self.eval(j.cod).category:
                raise ModelError("functor has the wrong ends")
        elif isinstance(j, T.IsTy):
            if not isinstance(v, SemTy) or v.base != self.eval(j.ctx).category:
                raise ModelError("expected a family over the declared context")
            if j.neutral and not v.neutral:
                raise ModelError("declared neutral but has non-groupoid fibres")
        else:
            if not isinstance(v, Section) or v.family != self.eval(j.ty).family:
                raise ModelError("expected a section of the declared type")

    # -- constants ------------------------------------------------------------

    def _const(self, t):
        d = self.sig.lookup(t.name)
        if d.body is not None:
            return self.eval(d.body)
        try:
            return self.bindings[t.name]
        except KeyError:
            raise ModelError(f"constant {t.name!r} has no value in {self.name}") from None

    _e_ConstCtx = _e_ConstSub = _e_ConstTy = _e_ConstTm = _const

    # -- contexts -------------------------------------------------------------

    def _e_EmptyCtx(self, t):
        return empty_con()

    def _e_ExtPos(self, t):
        return self.ext_pos(t.ty).con

    def _e_ExtNeg(self, t):
        return self.ext_neg(t.ty).con

    def _e_NegCtx(self, t):
        return sem_neg_con(self.eval(t.ctx))

    # -- substitutions ----------------------------------------------------------

    def _e_IdSub(self, t):
        return identity_functor(self.eval(t.ctx).category)

    def _e_Comp(self, t):
        return self.eval(t.inner).then(self.eval(t.outer))

    def _e_NegSub(self, t):
        return sem_neg_sub(self.eval(t.sub))

    def _e_ProjPos(self, t):
        return self.ext_pos(t.ty).proj

    def _e_ProjNeg(self, t):
        return self.ext_neg(t.ty).proj

    def _e_PairPos(self, t):
        return sem_pair_pos(self.ext_pos(t.ty), self.eval(t.ty), self.eval(t.sub), self.eval(t.tm))

    def _e_PairNeg(self, t):
        sigma = self.eval(t.sub)
        return sem_pair_neg(SemCon(sigma.cod), self.eval(t.ty), sigma, self.eval(t.tm))

    def _e_E(self, t):
        return sem_e(self.eval(t.ctx))

    def _e_EInv(self, t):
        return sem_e_inv(self.eval(t.ctx))

    def _e_ExtE(self, t):
        A = self.eval(t.ty)
        return sem_ext_e(SemCon(A.base), A)

    def _e_Bang(self, t):
        return sem_bang(self.eval(t.ctx))

    # -- types ------------------------------------------------------------------

    def _e_SubTy(self, t):
        return sem_sub_ty(self.eval(t.ty), self.eval(t.sub))

    def _e_NegTy(self, t):
        return sem_neg_ty(self.eval(t.ty))

    def _e_Hom(self, t):
        return sem_hom(self.eval(t.ty), self.eval(t.src), self.eval(t.dst))

    def _e_Pi(self, t):
        A = self.eval(t.dom)
        return sem_pi(SemCon(opposite(A.base)), A, self.eval(t.cod))

    def _e_SetU(self, t):
        return self.universe

    def _e_El(self, t):
        return sem_el(self.eval(t.tm))

    # -- terms ------------------------------------------------------------------

    def _e_VarPos(self, t):
        return self.ext_pos(t.ty).var

    def _e_VarNeg(self, t):
        return self.ext_neg(t.ty).var

    def _e_SubTm(self, t):
        return sem_sub_tm(self.eval(t.tm), self.eval(t.sub))

    def _e_NegTm(self, t):
        x = self.eval(t.tm)
        return sem_neg_tm(SemCon(x.family.base), SemTy(opposite_family(x.family)), x)

    def _e_Refl(self, t):
        A = self.eval(t.ty)
        return sem_refl(SemCon(A.base), A, self.eval(t.tm))

    def _e_J(self, t):
        A = self.eval(t.ty)
        return sem_J(SemCon(A.base), A, self.eval(t.tm), self.eval(t.motive), self.eval(t.base))

    def _e_JSimple(self, t):
        H = T.hom_over_var(t.ty, t.tm)
        M = self.eval(T.SubTy(t.motive, T.ProjPos(H)))
        A = self.eval(t.ty)
        return sem_J(SemCon(A.base), A, self.eval(t.tm), M, self.eval(t.base))

    def _pi_parts(self, ctx_term, pi_term):
        return self.eval(ctx_term), self.eval(pi_term.dom), self.eval(pi_term.cod)

    def _e_Lam(self, t):
        j = self.kernel.infer(t)
        G, A, B = self._pi_parts(j.ctx, j.ty)
        return sem_lam(G, A, B, self.eval(t.body))

    def _e_App(self, t):
        j = self.kernel.infer(t.fn)
        G, A, B = self._pi_parts(j.ctx, j.ty)
        return sem_app(G, A, B, self.eval(t.fn))


def evaluate(term: T.Term, env: Environment):
    return env.eval(term)
