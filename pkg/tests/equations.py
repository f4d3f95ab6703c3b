"""Instances of the equational presentation, built from generated pieces."""
from dcwf.kernel import (
    App, Bang, Comp, E, EInv, ExtE, ExtNeg, ExtPos, IdSub, J, JSimple, Lam, NegCtx, NegSub,
    NegTm, NegTy, PairNeg, PairPos, ProjNeg, ProjPos, Refl, SubTm, SubTy, VarNeg, VarPos,
)
from dcwf.kernel.terms import hom_over_var, j_point

from gen import CTXS, EMPTY, NEUTRAL, TY, VAR, A, Gen

CLOSED = ["A", "A-", "B", "B-"]


def instances(seed=0, per_law=6, depth=4):
    """Yield ``(law, lhs, rhs)``; each law gets ``per_law`` random instances."""
    g = Gen(seed)
    ctxs = list(CTXS)
    for _ in range(per_law):
        d, m, c, x = (g.pick(ctxs) for _ in range(4))
        s, t, r = g.sub(m, c, depth - 1), g.sub(d, m, depth - 1), g.sub(x, d, depth - 1)
        yield "id-left", Comp(IdSub(CTXS[c]), s), s
        yield "id-right", Comp(s, IdSub(CTXS[m])), s
        yield "assoc", Comp(Comp(s, t), r), Comp(s, Comp(t, r))
        T = g.ty(c, depth - 1)
        yield "ty-id", SubTy(T, IdSub(CTXS[c])), T
        yield "ty-comp", SubTy(SubTy(T, s), t), SubTy(T, Comp(s, t))
        u = g.tm(c, g.pick(CLOSED), depth - 1)
        yield "tm-id", SubTm(u, IdSub(CTXS[c])), u
        yield "tm-comp", SubTm(SubTm(u, s), t), SubTm(u, Comp(s, t))
        yield "terminal", g.sub(d, "E", depth), Bang(CTXS[d])

        # context extension by a closed type, pairing laws
        vc = g.pick(list(VAR))
        key, X = VAR[vc]
        sig0 = g.sub(d, "E", depth - 1)
        w = g.tm(d, key, depth - 1)
        pair = PairPos(X, sig0, w)
        yield "p-pair", Comp(ProjPos(X), pair), sig0
        yield "v-pair", SubTm(VarPos(X), pair), w
        yield "pair-eta", PairPos(X, ProjPos(X), VarPos(X)), IdSub(CTXS[vc])
        yield "pair-comp", Comp(pair, r), PairPos(X, Comp(sig0, r), SubTm(w, r))

        # negation involutions and functoriality
        yield "neg-con", NegCtx(NegCtx(CTXS[d])), CTXS[d]
        yield "neg-sub", NegSub(NegSub(s)), s
        yield "neg-ty", NegTy(NegTy(T)), T
        n = g.pick(sorted(NEUTRAL))
        un = g.tm(n, g.pick(CLOSED), depth - 1)
        yield "neg-tm", NegTm(NegTm(un)), un
        yield "neg-id", NegSub(IdSub(CTXS[d])), IdSub(NegCtx(CTXS[d]))
        yield "neg-comp", NegSub(Comp(s, t)), Comp(NegSub(s), NegSub(t))

        # stability of negation under substitution
        yield "neg-ty-stable", SubTy(NegTy(T), s), NegTy(SubTy(T, s))
        sn = g.sub(n, "E", depth - 1)
        e0 = g.tm("E", g.pick(CLOSED), depth - 1)
        yield "neg-tm-stable", SubTm(NegTm(e0), sn), NegTm(SubTm(e0, sn))

        # negative extension
        Y = TY[g.pick(CLOSED)]
        yield "ext-minus", NegCtx(ExtPos(EMPTY, Y)), ExtNeg(EMPTY, NegTy(Y))
        yield "ext-minus-inv", NegCtx(ExtNeg(EMPTY, Y)), ExtPos(EMPTY, NegTy(Y))
        sE = g.sub("E", "E", depth - 1)
        tneg = g.tm("E", g.pick(CLOSED), depth - 1)
        Yt = _closed_type_of(tneg)
        npair = PairNeg(NegTy(Yt), sE, tneg)
        yield "pm-pair", Comp(ProjNeg(NegTy(Yt)), npair), sE
        yield "vm-pair", SubTm(VarNeg(NegTy(Yt)), NegSub(npair)), tneg
        yield "pair-neg-eta", PairNeg(Y, ProjNeg(Y), VarNeg(Y)), IdSub(ExtNeg(EMPTY, Y))

        # Π
        body = g.tm("ENB", g.pick(CLOSED), depth - 1)
        yield "pi-beta", App(Lam(body)), body
        f = Lam(body)
        yield "pi-eta", Lam(App(f)), f

        # J
        a0 = g.tm("E", "A-", depth - 1)
        M = SubTy(TY[g.pick(CLOSED)], Bang(ExtPos(ExtPos(EMPTY, A), hom_over_var(A, a0))))
        base = g.tm("E", _key_of(M), depth - 1)
        yield "J-beta", SubTm(J(A, a0, M, base), j_point(A, a0, EMPTY)), base
        Ms = SubTy(TY[g.pick(CLOSED)], ProjPos(A))
        base = g.tm("E", _key_of(Ms), depth - 1)
        point = PairPos(hom_over_var(A, a0), PairPos(A, IdSub(EMPTY), NegTm(a0)), Refl(A, a0))
        yield "Js-beta", SubTm(JSimple(A, a0, Ms, base), point), base

        # the two coercion laws, stated on substitutions
        Z = TY[g.pick(CLOSED)]
        tz = g.tm("E", _neg_key(Z), depth - 1)
        yield ("coerce-pair", PairNeg(Z, IdSub(EMPTY), tz),
               Comp(ExtE(Z), PairPos(Z, IdSub(EMPTY), NegTm(SubTm(tz, E(EMPTY))))))
        yield ("coerce-proj", Comp(NegSub(ProjPos(SubTy(NegTy(Z), EInv(EMPTY)))), ExtE(Z)),
               ProjPos(Z))


_NAMES = {str(v): k for k, v in TY.items()}


def _key_of(ty):
    # the closed type a generated motive was built from
    return _NAMES[str(ty.ty)]


def _neg_key(ty):
    return {"A": "A-", "A-": "A", "B": "B-", "B-": "B"}[_NAMES[str(ty)]]


def _closed_type_of(t):
    from gen import kernel

    ty = kernel().infer(t).ty
    for k, v in TY.items():
        if kernel().normalize(v) == ty:
            return v
    raise AssertionError(f"unexpected type {ty}")
