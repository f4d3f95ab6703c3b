"""Category-model semantics of the directed CwF signature.

Contexts are finite categories, substitutions functors, types families of
categories and terms sections.  Negation is the opposite-category
construction throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..fincat import (
    CategoryError,
    Family,
    FinCat,
    Functor,
    NatTransform,
    Section,
    discrete,
    enumerate_sections,
    enumerate_transforms,
    identity_functor,
    opposite,
    opposite_family,
    opposite_functor,
    reindex,
    section_from_key,
    terminal,
    to_terminal,
    total_category_pos,
)


class ModelError(ValueError):
    """A semantic operation was applied outside its preconditions."""


@dataclass(frozen=True)
class SemCon:
    category: FinCat

    @property
    def neutral(self) -> bool:
        return self.category.groupoid[0]

    @property
    def inverses(self) -> dict | None:
        return self.category.groupoid[1]

    def require_neutral(self, what: str) -> dict:
        if not self.neutral:
            raise ModelError(f"{what} needs a groupoid context")
        return self.inverses


@dataclass(frozen=True)
class SemTy:
    family: Family

    @cached_property
    def neutral(self) -> bool:
        return all(c.groupoid[0] for c in self.family.fiber.values())

    @property
    def base(self) -> FinCat:
        return self.family.base


SemTm = Section


def empty_con() -> SemCon:
    return SemCon(terminal())


# -- negation -----------------------------------------------------------------


def sem_neg_con(G: SemCon) -> SemCon:
    return SemCon(opposite(G.category))


def sem_neg_sub(F: Functor) -> Functor:
    return opposite_functor(F)


def sem_neg_ty(A: SemTy) -> SemTy:
    return SemTy(opposite_family(A.family))


def sem_sub_ty(A: SemTy, sigma: Functor) -> SemTy:
    if sigma.cod != A.base:
        raise ModelError("substitution codomain does not match the type's context")
    return SemTy(reindex(A.family, sigma))


def sem_sub_tm(t: Section, sigma: Functor) -> Section:
    if sigma.cod != t.family.base:
        raise ModelError("substitution codomain does not match the term's context")
    return Section(
        reindex(t.family, sigma),
        {o: t.obj[sigma.obj[o]] for o in sigma.dom.objects},
        {m: t.mor[sigma.mor[m]] for m in sigma.dom.morphism_ids},
    )


def sem_neg_tm(G: SemCon, A: SemTy, t: Section) -> Section:
    """Coerce a section of ``A⁻`` into a section of ``A`` over a groupoid.

    The morphism part at ``γ01`` is ``A(γ01)`` applied to ``t`` at the
    inverse of ``γ01``; the object part is unchanged.
    """
    inv = G.require_neutral("term negation")
    fam = A.family
    if t.family != opposite_family(fam):
        raise ModelError("term is not a section of the negated type")
    return Section(
        fam,
        dict(t.obj),
        {m: fam.transport[m].mor[t.mor[inv[m]]] for m in G.category.morphism_ids},
    )


# -- context extension --------------------------------------------------------


@dataclass(frozen=True)
class Extension:
    con: SemCon
    proj: Functor
    var: Section


def sem_extend_pos(G: SemCon, A: SemTy) -> Extension:
    if A.base != G.category:
        raise ModelError("type is not over the context being extended")
    total, proj, var = total_category_pos(G.category, A.family)
    con = SemCon(total)
    if G.neutral and A.neutral and not con.neutral:
        raise ModelError("total category of a groupoid family over a groupoid is not a groupoid")
    return Extension(con, proj, var)


def sem_extend_neg(G: SemCon, A: SemTy) -> Extension:
    """``Γ ▹₋ A := (Γ⁻ ▹₊ A⁻)⁻`` for ``A`` over ``Γ⁻``.

    ``proj`` is the negative projection into ``Γ``; ``var`` is the generic
    section of ``A⁻`` living over ``(Γ ▹₋ A)⁻``.
    """
    Gm = sem_neg_con(G)
    if A.base != Gm.category:
        raise ModelError("negative extension needs a type over the negated context")
    inner = sem_extend_pos(Gm, sem_neg_ty(A))
    return Extension(sem_neg_con(inner.con), sem_neg_sub(inner.proj), inner.var)


def sem_pair_pos(ext: Extension, A: SemTy, sigma: Functor, t: Section) -> Functor:
    """``⟨σ, t⟩ : Δ → Γ ▹₊ A``."""
    if t.family != reindex(A.family, sigma):
        raise ModelError("pair component has the wrong type")
    D = sigma.dom
    return Functor(
        D,
        ext.con.category,
        {d: (sigma.obj[d], t.obj[d]) for d in D.objects},
        {m: (sigma.mor[m], t.obj[D.src(m)], t.mor[m]) for m in D.morphism_ids},
    )


def sem_pair_neg(G: SemCon, A: SemTy, sigma: Functor, t: Section) -> Functor:
    """``⟨σ,₋ t⟩ : Δ → Γ ▹₋ A`` with ``t`` a section of ``A[σ⁻]⁻`` over ``Δ⁻``."""
    Gm = sem_neg_con(G)
    Am = sem_neg_ty(A)
    inner = sem_extend_pos(Gm, Am)
    return sem_neg_sub(sem_pair_pos(inner, Am, sem_neg_sub(sigma), t))


def split_pair(ext: Extension, tau: Functor) -> tuple[Functor, Section]:
    """Inverse of pairing: ``(p ∘ τ, v[τ])``."""
    return tau.then(ext.proj), sem_sub_tm(ext.var, tau)


# -- neutral-context structure -------------------------------------------------


def sem_e(G: SemCon) -> Functor:
    """The isomorphism ``Γ → Γ⁻`` of a groupoid: identity on objects, inverses on arrows."""
    inv = G.require_neutral("e")
    return Functor(G.category, opposite(G.category), {o: o for o in G.category.objects}, dict(inv))


def sem_e_inv(G: SemCon) -> Functor:
    inv = G.require_neutral("e⁻¹")
    return Functor(opposite(G.category), G.category, {o: o for o in G.category.objects}, dict(inv))


def sem_ext_e(G: SemCon, A: SemTy) -> Functor:
    """``e ▹ A : Γ ▹₊ A → Γ ▹₋ A[e⁻¹]``."""
    inv = G.require_neutral("e ▹ A")
    src = sem_extend_pos(G, A)
    dst = sem_extend_neg(G, sem_sub_ty(A, sem_e_inv(G)))
    S = src.con.category
    mor = {}
    for (g01, a0, a01), _, (_, a1) in S.morphisms:
        mor[(g01, a0, a01)] = (g01, a1, A.family.transport[inv[g01]].mor[a01])
    return Functor(S, dst.con.category, {o: o for o in S.objects}, mor)


def sem_bang(G: SemCon) -> Functor:
    return to_terminal(G.category)


# -- hom types, refl, J --------------------------------------------------------


def sem_hom(A: SemTy, t: Section, t2: Section) -> SemTy:
    """Fibre at γ is the discrete category on ``A(γ)[t γ, t2 γ]``.

    Transport along ``γ01`` pre-composes with ``t(γ01)`` and post-composes
    with ``t2(γ01)``; this typechecks because ``t`` is a negative section.
    """
    fam = A.family
    if t.family != opposite_family(fam):
        raise ModelError("hom domain must be a section of the negated type")
    if t2.family != fam:
        raise ModelError("hom codomain must be a section of the type")
    B = fam.base
    fiber = {g: discrete(fam.fiber[g].hom(t.obj[g], t2.obj[g])) for g in B.objects}
    transport = {}
    for m, g0, g1 in B.morphisms:
        A1 = fam.fiber[g1]
        F = fam.transport[m]
        om = {p: A1.comp(t.mor[m], F.mor[p], t2.mor[m]) for p in fiber[g0].objects}
        transport[m] = Functor(
            fiber[g0],
            fiber[g1],
            om,
            {fiber[g0].identity[p]: fiber[g1].identity[q] for p, q in om.items()},
        )
    return SemTy(Family(B, fiber, transport))


def sem_refl(G: SemCon, A: SemTy, t: Section) -> Section:
    G.require_neutral("refl")
    H = sem_hom(A, t, sem_neg_tm(G, A, t))
    fam = A.family
    obj = {g: fam.fiber[g].identity[t.obj[g]] for g in G.category.objects}
    mor = {m: H.family.fiber[G.category.dst(m)].identity[obj[G.category.dst(m)]] for m in G.category.morphism_ids}
    return Section(H.family, obj, mor)


@dataclass(frozen=True)
class JSetting:
    """Contexts and substitutions shared by the J eliminator and its β-law."""

    ext_a: Extension
    hom: SemTy
    ext_h: Extension
    rho: Functor  # ⟨⟨id, −t⟩, refl_t⟩ : Γ → Γ ▹ A ▹ hom


def j_setting(G: SemCon, A: SemTy, t: Section) -> JSetting:
    G.require_neutral("J")
    ext_a = sem_extend_pos(G, A)
    hom = sem_hom(
        sem_sub_ty(A, ext_a.proj),
        sem_sub_tm(t, ext_a.proj),
        ext_a.var,
    )
    ext_h = sem_extend_pos(ext_a.con, hom)
    mt = sem_neg_tm(G, A, t)
    idG = identity_functor(G.category)
    inner = sem_pair_pos(ext_a, A, idG, mt)
    rho = sem_pair_pos(ext_h, hom, inner, sem_refl(G, A, t))
    return JSetting(ext_a, hom, ext_h, rho)


def sem_J(G: SemCon, A: SemTy, t: Section, M: SemTy, m: Section) -> Section:
    """Directed path induction by coslice transport.

    At ``x = ((γ, a), p)`` the result is ``M(μ)(m γ)`` where ``μ`` is the
    arrow from ``((γ, t γ), id)`` to ``x`` whose middle component is ``p``
    itself.  At an arrow ``ν : x0 → x1`` over ``γ01`` it is ``M(μ_x1)``
    applied to ``m(γ01)``.
    """
    js = j_setting(G, A, t)
    T2 = js.ext_h.con.category
    if M.base != T2:
        raise ModelError("motive is not over Γ ▹ A ▹ hom(t, v)")
    if m.family != reindex(M.family, js.rho):
        raise ModelError("base case has the wrong type")
    Gc = G.category
    Mf = M.family
    hom_fib = js.hom.family.fiber
    mu = {}
    for x in T2.objects:
        (g, a), p = x
        tg = t.obj[g]
        arrow = ((Gc.identity[g], tg, p), js.rho.obj[g][1], hom_fib[(g, a)].identity[p])
        if T2.ends.get(arrow) != (js.rho.obj[g], x):
            raise ModelError("coslice arrow missing from the total category")
        mu[x] = arrow
    obj = {x: Mf.transport[mu[x]].obj[m.obj[x[0][0]]] for x in T2.objects}
    mor = {}
    for nu, _, x1 in T2.morphisms:
        g01 = nu[0][0]
        mor[nu] = Mf.transport[mu[x1]].mor[m.mor[g01]]
    return Section(Mf, obj, mor)


# -- Π types ------------------------------------------------------------------


@dataclass(frozen=True)
class PiData:
    """Everything needed to move between Π-fibres and sections."""

    con: SemCon
    dom: SemTy  # A over Γ⁻
    cod: SemTy  # B over Γ ▹₋ A
    ext: Extension
    restricted: dict  # γ -> family B_γ over A(γ)


def _inclusion(ext_cat: FinCat, A: SemTy, g) -> Functor:
    Ag = A.family.fiber[g]
    gid = opposite(A.base).identity[g]
    return Functor(
        Ag,
        ext_cat,
        {a: (g, a) for a in Ag.objects},
        {m: (gid, Ag.dst(m), m) for m in Ag.morphism_ids},
    )


def pi_data(G: SemCon, A: SemTy, B: SemTy) -> PiData:
    ext = sem_extend_neg(G, A)
    if B.base != ext.con.category:
        raise ModelError("Π codomain is not over Γ ▹₋ A")
    restricted = {
        g: reindex(B.family, _inclusion(ext.con.category, A, g)) for g in G.category.objects
    }
    return PiData(G, A, B, ext, restricted)


def _section_category(fam: Family) -> FinCat:
    secs = enumerate_sections(fam)
    objects = tuple(s.key for s in secs)
    morphisms = []
    identity = {}
    for s in secs:
        for s2 in secs:
            for alpha in enumerate_transforms(s, s2):
                morphisms.append((alpha.key, s.key, s2.key))
    B = fam.base
    for s in secs:
        identity[s.key] = ("nat", s.key, s.key, tuple(fam.fiber[o].identity[s.obj[o]] for o in B.objects))
    out: dict = {}
    for m, s, _ in morphisms:
        out.setdefault(s, []).append(m)
    compose = {}
    for m1, _, d1 in morphisms:
        for m2 in out.get(d1, ()):
            comps = tuple(
                fam.fiber[o].comp(c1, c2) for o, c1, c2 in zip(B.objects, m1[3], m2[3])
            )
            compose[(m1, m2)] = ("nat", m1[1], m2[2], comps)
    return FinCat(objects, tuple(morphisms), identity, compose)


def _transport_section(pd: PiData, g01, th: Section) -> Section:
    A, B = pd.dom.family, pd.cod.family
    g1 = pd.con.category.dst(g01)
    A1 = A.fiber[g1]
    back = A.transport[g01]  # A(γ1) → A(γ0), A lives over Γ⁻
    A0 = A.fiber[pd.con.category.src(g01)]

    def lift(a1):
        return B.transport[(g01, a1, A0.identity[back.obj[a1]])]

    return Section(
        pd.restricted[g1],
        {a1: lift(a1).obj[th.obj[back.obj[a1]]] for a1 in A1.objects},
        {m: lift(A1.dst(m)).mor[th.mor[back.mor[m]]] for m in A1.morphism_ids},
    )


def sem_pi(G: SemCon, A: SemTy, B: SemTy) -> SemTy:
    """Fibre at γ: sections of ``B_γ`` and natural transformations between them."""
    pd = pi_data(G, A, B)
    Gc = G.category
    fiber = {g: _section_category(pd.restricted[g]) for g in Gc.objects}
    transport = {}
    for g01, g0, g1 in Gc.morphisms:
        fam0 = pd.restricted[g0]
        om = {}
        for key in fiber[g0].objects:
            om[key] = _transport_section(pd, g01, section_from_key(fam0, key)).key
        mm = {}
        back = A.family.transport[g01]
        A1 = A.family.fiber[g1]
        A0 = A.family.fiber[g0]
        for nat in fiber[g0].morphism_ids:
            _, k0, k1, comps = nat
            cm = dict(zip(A0.objects, comps))
            new = tuple(
                B.family.transport[(g01, a1, A0.identity[back.obj[a1]])].mor[cm[back.obj[a1]]]
                for a1 in A1.objects
            )
            mm[nat] = ("nat", om[k0], om[k1], new)
        transport[g01] = Functor(fiber[g0], fiber[g1], om, mm)
    return SemTy(Family(Gc, fiber, transport))


def sem_lam(G: SemCon, A: SemTy, B: SemTy, body: Section) -> Section:
    pd = pi_data(G, A, B)
    if body.family != B.family:
        raise ModelError("λ body is not a section of the codomain")
    P = sem_pi(G, A, B)
    Gc = G.category
    Af = A.family
    obj = {}
    for g in Gc.objects:
        inc = _inclusion(pd.ext.con.category, A, g)
        obj[g] = sem_sub_tm(body, inc).key
    mor = {}
    for g01, g0, g1 in Gc.morphisms:
        src = _transport_section(pd, g01, section_from_key(pd.restricted[g0], obj[g0]))
        A0 = Af.fiber[g0]
        back = Af.transport[g01]
        comps = tuple(
            body.mor[(g01, a1, A0.identity[back.obj[a1]])] for a1 in Af.fiber[g1].objects
        )
        mor[g01] = ("nat", src.key, obj[g1], comps)
    return Section(P.family, obj, mor)


def sem_app(G: SemCon, A: SemTy, B: SemTy, f: Section) -> Section:
    pd = pi_data(G, A, B)
    Gc = G.category
    Af, Bf = A.family, B.family
    E = pd.ext.con.category
    theta = {g: section_from_key(pd.restricted[g], f.obj[g]) for g in Gc.objects}
    obj = {(g, a): theta[g].obj[a] for g, a in E.objects}
    mor = {}
    for nu, _, (g1, a1) in E.morphisms:
        g01, _, a01 = nu
        g0 = Gc.src(g01)
        A0 = Af.fiber[g0]
        back = Af.transport[g01]
        comps = dict(zip(Af.fiber[g1].objects, f.mor[g01][3]))
        lifted = Bf.transport[(g01, a1, A0.identity[back.obj[a1]])].mor[theta[g0].mor[a01]]
        mor[nu] = Bf.fiber[(g1, a1)].comp(lifted, comps[a1])
    return Section(Bf, obj, mor)


# -- the universe of finite sets ----------------------------------------------


def finset_category(k: int, alphabet) -> FinCat:
    """Subsets of ``alphabet`` of size at most ``k``, with all functions."""
    import itertools

    alphabet = tuple(alphabet)
    if k < 1:
        raise ModelError("universe bound must be at least 1")
    if len(alphabet) < k:
        raise ModelError(f"alphabet of size {len(alphabet)} too small for bound {k}")
    objects = tuple(
        X for n in range(k + 1) for X in itertools.combinations(alphabet, n)
    )
    morphisms = []
    for X in objects:
        for Y in objects:
            for img in itertools.product(Y, repeat=len(X)):
                morphisms.append(((X, Y, img), X, Y))
    identity = {X: (X, X, X) for X in objects}
    compose = {}
    out: dict = {}
    for m, s, _ in morphisms:
        out.setdefault(s, []).append(m)
    for m1, X, Y in morphisms:
        f = dict(zip(X, m1[2]))
        for m2 in out[Y]:
            g = dict(zip(Y, m2[2]))
            compose[(m1, m2)] = (X, m2[1], tuple(g[f[x]] for x in X))
    return FinCat(objects, tuple(morphisms), identity, compose)


def sem_set_universe(k: int = 3, alphabet=None) -> SemTy:
    if alphabet is None:
        alphabet = tuple(range(k))
    S = finset_category(k, alphabet)
    return SemTy(Family(terminal(), {"*": S}, {"id_*": identity_functor(S)}))


def apply_function(m, x):
    X, _, img = m
    return img[X.index(x)]


def sem_el(t: Section) -> SemTy:
    """Discrete family of elements of a section of ``SET[σ]``; always neutral."""
    base = t.family.base
    fiber = {g: discrete(t.obj[g]) for g in base.objects}
    transport = {}
    for m, g0, g1 in base.morphisms:
        fn = t.mor[m]
        om = {x: apply_function(fn, x) for x in t.obj[g0]}
        transport[m] = Functor(
            fiber[g0],
            fiber[g1],
            om,
            {fiber[g0].identity[x]: fiber[g1].identity[y] for x, y in om.items()},
        )
    return SemTy(Family(base, fiber, transport))


def closed_section(A: SemTy, x) -> Section:
    """A closed term of a closed type is just an object of its category."""
    (pt,) = A.base.objects
    c = A.family.fiber[pt]
    if x not in c.identity:
        raise ModelError(f"{x!r} is not an object of the closed type")
    return Section(A.family, {pt: x}, {A.base.identity[pt]: c.identity[x]})


def hom_to_func_check(S: SemTy, X, Y) -> bool:
    """Directed univalence at desk scale, computed through J.

    Each closed hom ``X → Y`` of the universe is transported by directed
    path induction, starting from the identity function on ``El X``, to a
    function ``El X → El Y``.  True iff that assignment is a bijection onto
    all such functions and sends every function to itself.
    """
    G = empty_con()
    tX = closed_section(sem_neg_ty(S), X)
    js = j_setting(G, S, tX)
    T2 = SemCon(js.ext_h.con.category)
    to_base = js.ext_h.proj.then(js.ext_a.proj)
    elx = sem_el(sem_neg_tm(G, S, tX))
    motive_dom = sem_sub_ty(elx, sem_neg_sub(to_base))
    ext = sem_extend_neg(T2, motive_dom)
    x_var = sem_sub_tm(js.ext_a.var, js.ext_h.proj)
    M = sem_pi(T2, motive_dom, sem_el(sem_sub_tm(x_var, ext.proj)))
    start = js.rho.obj["*"]
    fib = M.family.fiber[start]
    ident = [k for k in fib.objects if k[0] == tuple(X)]
    if len(ident) != 1:
        return False
    m = Section(reindex(M.family, js.rho), {"*": ident[0]}, {"id_*": fib.identity[ident[0]]})
    res = sem_J(G, S, tX, M, m)
    homs = js.hom.family.fiber[("*", Y)].objects
    images = {}
    for p in homs:
        images[p] = res.obj[(("*", Y), p)]
    if any(images[p][0] != p[2] for p in homs):
        return False
    n_funcs = len(Y) ** len(X)
    return len(set(images.values())) == len(homs) == n_funcs


__all__ = [name for name in dir() if name.startswith("sem_")] + [
    "SemCon",
    "SemTy",
    "SemTm",
    "Extension",
    "ModelError",
    "CategoryError",
    "NatTransform",
    "finset_category",
    "hom_to_func_check",
    "closed_section",
    "pi_data",
    "j_setting",
]
