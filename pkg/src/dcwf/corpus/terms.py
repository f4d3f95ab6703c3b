"""Term builders for synthetic 1-category theory in the empty context.

Everything here lives over ``⋄`` (which is neutral), so directed path
induction is always available even when the types involved are not neutral.
Negative arguments are written ``t : A⁻``; positive ones ``v : A``.
"""
from __future__ import annotations

from ..kernel.terms import (
    App, Bang, Comp, E, El, EmptyCtx, ExtE, ExtNeg, ExtPos, Hom, IdSub, J, JSimple, Lam,
    NegCtx, NegTm, PairNeg, PairPos, Pi, ProjNeg, ProjPos, Refl, SetU, SubTm, SubTy,
    VarNeg, VarPos, hom_over_var,
)

EMPTY = EmptyCtx()
ID = IdSub(EMPTY)


def weaken(x, A):
    """``x[p]`` for a closed term or type ``x`` and ``A : Ty ⋄``."""
    return (SubTm if x.sort == "tm" else SubTy)(x, ProjPos(A))


def at(open_term, A, t, v, p):
    """Instantiate a term over ``⋄ ▹ A ▹ hom(t[p], v)`` at ``v`` and ``p``."""
    return SubTm(open_term, PairPos(hom_over_var(A, t), PairPos(A, ID, v), p))


def symm_motive(A, t):
    """``S(y) = hom(−y, −t)`` over ``⋄ ▹ A``; needs ``A`` neutral."""
    return Hom(weaken(A, A), NegTm(VarPos(A)), NegTm(weaken(t, A)))


def symm(A, t):
    """``hom(t, y) → hom(−y, −t)``, open in ``y`` and the hom."""
    return JSimple(A, t, symm_motive(A, t), Refl(A, t))


# -- composition ---------------------------------------------------------------


def comp_open(A, t, u, p):
    """``p · q`` for ``p : hom(t, −u)``, open in ``y : A`` and ``q : hom(u, y)``."""
    return JSimple(A, u, hom_over_var(A, t), p)


def compose(A, t, u, p, v, q):
    """``p · q : hom(t, v)`` for ``p : hom(t, −u)`` and ``q : hom(u, v)``."""
    return at(comp_open(A, t, u, p), A, u, v, q)


def right_unit(A, t, u, p):
    """``refl_p : Id(p · refl, p)``; the unit law holds definitionally."""
    return Refl(Hom(A, t, NegTm(u)), p)


def left_unit(A, t):
    """``Id(refl_t · q, q)`` by induction on ``q : hom(t, y)``."""
    H = hom_over_var(A, t)
    rq = comp_open(A, t, t, Refl(A, t))
    motive = Hom(weaken(H, H), rq, VarPos(H))
    base = Refl(Hom(A, t, NegTm(t)), Refl(A, t))
    return J(A, t, motive, base)


def assoc(A, t, u, w, p, q):
    """``Id(p·(q·r), (p·q)·r)`` by induction on ``r : hom(w, y)``.

    ``p : hom(t, −u)`` and ``q : hom(u, −w)`` are closed.
    """
    Hw = hom_over_var(A, w)
    Hu = hom_over_var(A, u)
    qr = comp_open(A, u, w, q)
    p_qr = SubTm(comp_open(A, t, u, p), PairPos(Hu, ProjPos(Hw), qr))
    pq = compose(A, t, u, p, NegTm(w), q)
    pq_r = comp_open(A, t, w, pq)
    motive = Hom(weaken(hom_over_var(A, t), Hw), p_qr, pq_r)
    base = Refl(Hom(A, t, NegTm(w)), pq)
    return J(A, w, motive, base)


# -- functions -----------------------------------------------------------------


def arrow(A, B):
    """``A → B`` for closed ``A`` and ``B``: arguments are taken from ``A⁻``."""
    return Pi(A, SubTy(B, ProjNeg(A)))


def apply(A, f, s):
    """``f(s)`` for ``f : A → B`` and ``s : A⁻``."""
    return SubTm(App(f), PairNeg(A, ID, s))


def apply_var(A, f):
    """``f(−y)`` over ``⋄ ▹ A`` without negating ``y`` itself."""
    return SubTm(App(f), ExtE(A))


def map_motive(A, B, f, t):
    return Hom(weaken(B, A), weaken(NegTm(apply(A, f, t)), A), apply_var(A, f))


def map_open(A, B, f, t):
    """``map f : hom(t, y) → hom(−f(t), f(−y))``."""
    return JSimple(A, t, map_motive(A, B, f, t), Refl(B, NegTm(apply(A, f, t))))


def map_at(A, B, f, t, v, p):
    return at(map_open(A, B, f, t), A, t, v, p)


def map_comp_law(A, B, f, t, u, p):
    """``Id(map f (p·q), (map f p)·(map f q))`` by induction on ``q : hom(u, y)``."""
    Hu = hom_over_var(A, u)
    Ht = hom_over_var(A, t)
    lhs = SubTm(map_open(A, B, f, t), PairPos(Ht, ProjPos(Hu), comp_open(A, t, u, p)))
    mfp = map_at(A, B, f, t, NegTm(u), p)
    c = NegTm(apply(A, f, u))  # −f(u) : B⁻
    s = NegTm(apply(A, f, t))
    z = weaken(apply_var(A, f), Hu)
    ctx = ExtPos(ExtPos(EMPTY, A), Hu)
    HB = hom_over_var(B, c)
    rhs = SubTm(comp_open(B, s, c, mfp), PairPos(HB, PairPos(B, Bang(ctx), z), map_open(A, B, f, u)))
    motive = Hom(SubTy(map_motive(A, B, f, t), ProjPos(Hu)), lhs, rhs)
    base = Refl(Hom(B, s, apply(A, f, u)), mfp)
    return J(A, u, motive, base)


def fn_compose(A, B, f, g):
    """``g ∘ f = λ(x : A⁻). g(−f(x))``, the negation routed through ``ExtE``."""
    return Lam(SubTm(App(g), Comp(ExtE(B), PairPos(B, ProjNeg(A), App(f)))))


def fn_comp_law(A, B, C, f, g, t):
    """``Id(map (g∘f) p, map g (map f p))`` by induction on ``p : hom(t, y)``."""
    Ht = hom_over_var(A, t)
    gf = fn_compose(A, B, f, g)
    lhs = map_open(A, C, gf, t)
    s = NegTm(apply(A, f, t))
    Hs = hom_over_var(B, s)
    ctx = ExtPos(ExtPos(EMPTY, A), Ht)
    z = weaken(apply_var(A, f), Ht)
    rhs = SubTm(map_open(B, C, g, s), PairPos(Hs, PairPos(B, Bang(ctx), z), map_open(A, B, f, t)))
    motive = Hom(SubTy(map_motive(A, C, gf, t), ProjPos(Ht)), lhs, rhs)
    x = NegTm(apply(A, gf, t))
    base = Refl(Hom(C, x, apply(A, gf, t)), Refl(C, x))
    return J(A, t, motive, base)


def el_identity(X):
    """``λ x. x : El X → El X`` for a closed ``X : SET``; ``El X`` is neutral."""
    D = El(X)
    body = SubTm(VarNeg(D), E(ExtNeg(EMPTY, D)))
    return Lam(body)


def hom_to_func(X):
    """``hom(X, Y) → (El(−X) → El Y)`` by induction; ``refl`` goes to the identity."""
    S = SetU()
    H = hom_over_var(S, X)
    ctx = ExtPos(ExtPos(EMPTY, S), H)
    dom = SubTy(El(NegTm(X)), Bang(NegCtx(ctx)))
    cod = SubTy(El(weaken(VarPos(S), H)), ProjNeg(dom))
    return J(S, X, Pi(dom, cod), el_identity(NegTm(X)))



def identity_fn(A):
    """``λ x. x : A → A`` for a neutral closed ``A``."""
    return Lam(SubTm(NegTm(VarNeg(A)), E(ExtNeg(EMPTY, A))))
