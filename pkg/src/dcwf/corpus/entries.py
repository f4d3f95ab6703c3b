"""Corpus entries: terms paired with expected judgments and model oracles."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..fincat import Functor, inverse_morphism
from ..kernel import (
    DEFAULT_MAX_STEPS, Equal, Kernel, KernelError, NeutralityError, Signature,
    VarianceError, check_equal,
)
from ..kernel.signature import tm, ty
from ..kernel.terms import (
    Bang, EmptyCtx, ExtPos, Hom, IsTm, J, NegTm, NegTy, PairPos, ProjPos, Refl, SetU,
    SubTm, SubTy, VarPos, hom_over_var,
)
from ..model.library import arrow_cat, chain4, closed_environment, three, two_points, z2, z3
from ..model.semantics import ModelError
from . import terms as C

E0 = EmptyCtx()


@dataclass
class Oracle:
    """A model check: build an environment, then test a property of it."""

    description: str
    env: Callable
    check: Callable  # (env, kernel) -> bool


@dataclass
class CorpusEntry:
    name: str
    sig: Signature
    term: object
    expected: object = None  # a judgment, normalized before comparison
    error: type | None = None
    equations: list = field(default_factory=list)  # (label, lhs, rhs)
    extras: list = field(default_factory=list)  # (label, term) that must typecheck
    oracles: list = field(default_factory=list)

    @property
    def positive(self) -> bool:
        return self.error is None


@dataclass
class EntryResult:
    name: str
    passed: bool
    lines: list


def _norm_judgment(k: Kernel, j):
    if isinstance(j, IsTm):
        return IsTm(k.normalize(j.ctx), k.normalize(j.ty))
    return j


def run_entry(entry: CorpusEntry, max_steps=DEFAULT_MAX_STEPS) -> EntryResult:
    k = Kernel(entry.sig, max_steps)
    lines, ok = [], True

    def record(good, msg):
        nonlocal ok
        ok &= bool(good)
        lines.append(f"{'ok  ' if good else 'FAIL'} {entry.name}: {msg}")

    if not entry.positive:
        try:
            k.infer(entry.term)
            record(False, f"expected {entry.error.__name__}, but the term typechecks")
        except KernelError as e:
            record(type(e) is entry.error, f"rejected with {type(e).__name__}")
        return EntryResult(entry.name, ok, lines)

    try:
        got = k.infer(entry.term)
        want = _norm_judgment(k, entry.expected) if entry.expected is not None else got
        record(got == want, "judgment" + ("" if got == want else f" {got} != {want}"))
        k.normalize(entry.term)
        record(True, f"normalizes in {k.last_steps} steps")
    except KernelError as e:
        record(False, f"{type(e).__name__}: {e}")
        return EntryResult(entry.name, ok, lines)
    for label, t in entry.extras:
        try:
            k.infer(t)
            record(True, f"{label} typechecks")
        except KernelError as e:
            record(False, f"{label}: {type(e).__name__}: {e}")
    for label, lhs, rhs in entry.equations:
        try:
            verdict = check_equal(k, lhs, rhs)
            record(isinstance(verdict, Equal), f"{label}: {verdict.kind}")
        except KernelError as e:
            record(False, f"{label}: {type(e).__name__}: {e}")
    for o in entry.oracles:
        try:
            env = o.env()
            record(o.check(env, k), f"oracle {o.description}")
        except (ModelError, KernelError) as e:
            record(False, f"oracle {o.description}: {type(e).__name__}: {e}")
    return EntryResult(entry.name, ok, lines)


# -- oracle helpers ----------------------------------------------------------


def _value(env, term):
    return env.eval(term).obj["*"]


def _singleton_fiber(env, k, term) -> bool:
    """The closed term's type has exactly one point, and the term is it."""
    A = env.eval(k.infer(term).ty)
    objs = A.family.fiber["*"].objects
    return len(objs) == 1 and _value(env, term) == objs[0]


def _env(sig, name, **values):
    def make():
        return closed_environment(sig, list(values.items()), name=name)

    return make


def _base_sig(*extra):
    """``A : Ty ⋄`` together with the requested closed constants."""
    sig = Signature()
    A = sig.declare("A", ty(E0))
    for name, mk in extra:
        sig.declare(name, mk(sig))
    return sig, A


def _neg(name):
    return name, lambda s: tm(E0, NegTy(s.const("A")))


def _pos(name):
    return name, lambda s: tm(E0, s.const("A"))


def _hom(name, src, dst, neg_dst=False):
    def mk(s):
        d = s.const(dst)
        return tm(E0, Hom(s.const("A"), s.const(src), NegTm(d) if neg_dst else d))

    return name, mk


# -- positive entries ----------------------------------------------------------


def build_symm() -> CorpusEntry:
    sig = Signature()
    A = sig.declare("A", ty(E0, True))
    t = sig.declare("t", tm(E0, NegTy(A)))
    t2 = sig.declare("t2", tm(E0, A))
    p = sig.declare("p", tm(E0, Hom(A, t, t2)))
    term = C.symm(A, t)
    H = hom_over_var(A, t)
    applied = C.at(term, A, t, t2, p)

    def inverse(env, k):
        cat = env.eval(A).family.fiber["*"]
        return _value(env, applied) == inverse_morphism(cat, _value(env, p))

    oracles = [
        Oracle(f"symm p = p⁻¹ in {n}", _env(sig, n, A=c, t=x, t2=y, p=m), inverse)
        for n, c, x, y, m in [
            ("disc2", two_points(), "x", "x", "id_x"),
            ("Z2", z2(), "*", "*", "s"),
            ("Z3", z3(), "*", "*", "r"),
        ]
    ]
    return CorpusEntry(
        "symm", sig, term,
        expected=IsTm(ExtPos(ExtPos(E0, A), H), SubTy(C.symm_motive(A, t), ProjPos(H))),
        equations=[("symm refl = refl", C.at(term, A, t, NegTm(t), Refl(A, t)), Refl(A, t))],
        extras=[("symm p", applied)],
        oracles=oracles,
    )


def _comp_sig():
    return _base_sig(_neg("t"), _neg("u"), _pos("v"), _hom("p", "t", "u", True), _hom("q", "u", "v"))


def build_comp() -> CorpusEntry:
    sig, A = _comp_sig()
    t, u, v, p, q = (sig.const(n) for n in "tuvpq")
    term = C.compose(A, t, u, p, v, q)

    def table(env, k):
        cat = env.eval(A).family.fiber["*"]
        return _value(env, term) == cat.comp(_value(env, p), _value(env, q))

    models = [
        ("3", three(), "a", "b", "c", "f", "g"),
        ("4", chain4(), "a", "b", "d", "f", "gh"),
        ("2", arrow_cat(), "a", "b", "b", "f", "id_b"),
        ("Z3", z3(), "*", "*", "*", "r", "r"),
    ]
    return CorpusEntry(
        "comp", sig, term,
        expected=IsTm(E0, Hom(A, t, v)),
        equations=[("p·refl = p", C.compose(A, t, u, p, NegTm(u), Refl(A, u)), p)],
        oracles=[
            Oracle(f"p·q is the table composite in {n}", _env(sig, n, A=c, t=a, u=b, v=d, p=f, q=g), table)
            for n, c, a, b, d, f, g in models
        ],
    )


def build_units() -> tuple[CorpusEntry, CorpusEntry]:
    sig, A = _base_sig(_neg("t"), _neg("u"), _pos("v"), _hom("p", "t", "u", True), _hom("q", "t", "v"))
    t, u, v, p, q = (sig.const(n) for n in "tuvpq")
    refl_u = Refl(A, u)
    p_refl = C.compose(A, t, u, p, NegTm(u), refl_u)
    right = CorpusEntry(
        "units.right", sig, C.right_unit(A, t, u, p),
        expected=IsTm(E0, Hom(Hom(A, t, NegTm(u)), p_refl, p)),
        equations=[("p·refl = p", p_refl, p)],
    )
    lu = C.left_unit(A, t)
    H = hom_over_var(A, t)
    applied = C.at(lu, A, t, v, q)

    def single(env, k):
        return _singleton_fiber(env, k, applied) and _singleton_fiber(env, k, C.right_unit(A, t, u, p))

    models = [
        ("3", three(), "b", "c", "c", "g", "g"),
        ("2", arrow_cat(), "a", "b", "b", "f", "f"),
        ("Z3", z3(), "*", "*", "*", "r", "rr"),
    ]
    right.oracles = left_oracles = [
        Oracle(f"unit Id-fibres are singletons in {n}", _env(sig, n, A=c, t=a, u=b, v=d, p=f, q=g), single)
        for n, c, a, b, d, f, g in models
    ]
    left = CorpusEntry(
        "units.left", sig, lu,
        expected=IsTm(ExtPos(ExtPos(E0, A), H),
                      Hom(SubTy(H, ProjPos(H)), C.comp_open(A, t, t, Refl(A, t)), VarPos(H))),
        equations=[("refl·refl = refl", C.compose(A, t, t, Refl(A, t), NegTm(t), Refl(A, t)), Refl(A, t))],
        extras=[("left unit at q", applied)],
        oracles=left_oracles,
    )
    return right, left


def build_assoc() -> CorpusEntry:
    sig, A = _base_sig(
        _neg("t"), _neg("u"), _neg("w"), _pos("y"),
        _hom("p", "t", "u", True), _hom("q", "u", "w", True), _hom("r", "w", "y"),
    )
    t, u, w, y, p, q, r = (sig.const(n) for n in "tuwypqr")
    term = C.assoc(A, t, u, w, p, q)
    pq = C.compose(A, t, u, p, NegTm(w), q)
    left = C.compose(A, t, u, p, y, C.compose(A, u, w, q, y, r))
    right = C.compose(A, t, w, pq, y, r)
    applied = C.at(term, A, w, y, r)
    Hw = hom_over_var(A, w)

    def agree(env, k):
        cat = env.eval(A).family.fiber["*"]
        want = cat.comp(_value(env, p), _value(env, q), _value(env, r))
        return _value(env, left) == _value(env, right) == want and _singleton_fiber(env, k, applied)

    models = [
        ("4", chain4(), "a", "b", "c", "d", "f", "g", "h"),
        ("3", three(), "a", "b", "c", "c", "f", "g", "id_c"),
        ("Z3", z3(), "*", "*", "*", "*", "r", "r", "rr"),
    ]
    return CorpusEntry(
        "assoc", sig, term,
        expected=IsTm(
            ExtPos(ExtPos(E0, A), Hw),
            Hom(SubTy(hom_over_var(A, t), ProjPos(Hw)),
                SubTm(C.comp_open(A, t, u, p), PairPos(hom_over_var(A, u), ProjPos(Hw), C.comp_open(A, u, w, q))),
                C.comp_open(A, t, w, pq)),
        ),
        equations=[("assoc at refl", C.at(term, A, w, NegTm(w), Refl(A, w)), Refl(Hom(A, t, NegTm(w)), pq))],
        extras=[("assoc at r", applied)],
        oracles=[
            Oracle(f"p·(q·r) = (p·q)·r = table composite in {n}",
                   _env(sig, n, A=c, t=a, u=b, w=cc, y=d, p=f, q=g, r=h), agree)
            for n, c, a, b, cc, d, f, g, h in models
        ],
    )


# -- functions between closed types -------------------------------------------


def _fn_sig():
    sig = Signature()
    A = sig.declare("A", ty(E0))
    B = sig.declare("B", ty(E0))
    Cc = sig.declare("C", ty(E0))
    t = sig.declare("t", tm(E0, NegTy(A)))
    u = sig.declare("u", tm(E0, NegTy(A)))
    y = sig.declare("y", tm(E0, A))
    p = sig.declare("p", tm(E0, Hom(A, t, NegTm(u))))
    q = sig.declare("q", tm(E0, Hom(A, u, y)))
    f = sig.declare("f", tm(E0, C.arrow(A, B)))
    g = sig.declare("g", tm(E0, C.arrow(B, Cc)))
    return sig, (A, B, Cc, t, u, y, p, q, f, g)


def _functor(dom, cod, obj, mor):
    ident = {dom.identity[o]: cod.identity[obj[o]] for o in dom.objects}
    return Functor(dom, cod, obj, {**ident, **mor})


def _fn_models():
    """(name, A, B, C, t, u, y, p, q, F, G) with F : A → B and G : B → C."""
    c2, c3, c4, g3 = arrow_cat(), three(), chain4(), z3()
    up = _functor(c3, c4, {"a": "a", "b": "b", "c": "d"}, {"f": "f", "g": "gh", "h": "fgh"})
    squash = _functor(c4, c2, {"a": "a", "b": "b", "c": "b", "d": "b"},
                      {"f": "f", "g": "id_b", "h": "id_b", "fg": "f", "gh": "id_b", "fgh": "f"})
    incl = _functor(c2, c3, {"a": "a", "b": "c"}, {"f": "h"})
    collapse = _functor(c3, c2, {"a": "a", "b": "b", "c": "b"}, {"f": "f", "g": "id_b", "h": "f"})
    square = _functor(g3, g3, {"*": "*"}, {"r": "rr", "rr": "r"})
    return [
        ("3→4→2", c3, c4, c2, "a", "b", "c", "f", "g", up, squash),
        ("2→3→2", c2, c3, c2, "a", "b", "b", "f", "id_b", incl, collapse),
        ("Z3→Z3→Z3", g3, g3, g3, "*", "*", "*", "r", "r", square, square),
    ]


def _fn_env(sig, model):
    n, A, B, Cc, t, u, y, p, q, F, G = model
    return _env(sig, n, A=A, B=B, C=Cc, t=t, u=u, y=y, p=p, q=q, f=F, g=G)


def build_map() -> CorpusEntry:
    sig, (A, B, Cc, t, u, y, p, q, f, g) = _fn_sig()
    term = C.map_open(A, B, f, t)
    mfp = C.map_at(A, B, f, t, NegTm(u), p)
    Ht = hom_over_var(A, t)

    def functorial(model):
        F = model[9]

        def check(env, k):
            return _value(env, mfp) == F.mor[_value(env, p)]

        return Oracle(f"map f p = F(p) in {model[0]}", _fn_env(sig, model), check)

    return CorpusEntry(
        "map", sig, term,
        expected=IsTm(ExtPos(ExtPos(E0, A), Ht), SubTy(C.map_motive(A, B, f, t), ProjPos(Ht))),
        equations=[
            ("map f refl = refl", C.map_at(A, B, f, t, NegTm(t), Refl(A, t)),
             Refl(B, NegTm(C.apply(A, f, t)))),
            ("f(−(−t)) = f(t) via ExtE", C.apply(A, f, t), SubTm(C.apply_var(A, f), PairPos(A, C.ID, NegTm(t)))),
        ],
        extras=[("map f p", mfp)],
        oracles=[functorial(m) for m in _fn_models()] + [_identity_map_oracle()],
    )


def _identity_map_oracle() -> Oracle:
    """``map (λx.x) p = p`` for a neutral type, where the identity is expressible."""
    sig = Signature()
    N = sig.declare("N", ty(E0, True))
    t = sig.declare("t", tm(E0, NegTy(N)))
    t2 = sig.declare("t2", tm(E0, N))
    p = sig.declare("p", tm(E0, Hom(N, t, t2)))
    ident = C.identity_fn(N)
    m = C.map_at(N, N, ident, t, t2, p)

    def check(env, k):
        return _value(env, m) == _value(env, p)

    return Oracle("map (λx.x) p = p in Z3", _env(sig, "Z3", N=z3(), t="*", t2="*", p="r"), check)


def build_map_laws() -> tuple[CorpusEntry, CorpusEntry]:
    sig, (A, B, Cc, t, u, y, p, q, f, g) = _fn_sig()
    fr = C.map_at(A, B, f, t, NegTm(t), Refl(A, t))
    ident = CorpusEntry(
        "map_laws.id", sig, fr,
        expected=IsTm(E0, Hom(B, NegTm(C.apply(A, f, t)), C.apply(A, f, t))),
        equations=[("map f refl = refl", fr, Refl(B, NegTm(C.apply(A, f, t))))],
    )
    law = C.map_comp_law(A, B, f, t, u, p)
    applied = C.at(law, A, u, y, q)

    def single(env, k):
        return _singleton_fiber(env, k, applied)

    comp = CorpusEntry(
        "map_laws.comp", sig, law,
        extras=[("map comp law at q", applied)],
        equations=[("law at refl", C.at(law, A, u, NegTm(u), Refl(A, u)),
                    Refl(Hom(B, NegTm(C.apply(A, f, t)), C.apply(A, f, u)), C.map_at(A, B, f, t, NegTm(u), p)))],
        oracles=[Oracle(f"map comp Id-fibre is a singleton in {m[0]}", _fn_env(sig, m), single)
                 for m in _fn_models()],
    )
    return ident, comp


def build_fn_comp() -> CorpusEntry:
    sig, (A, B, Cc, t, u, y, p, q, f, g) = _fn_sig()
    gf = C.fn_compose(A, B, f, g)
    law = C.fn_comp_law(A, B, Cc, f, g, t)
    applied = C.at(law, A, t, NegTm(u), p)
    gf_t = C.apply(A, gf, t)

    def composite(model):
        F, G = model[9], model[10]

        def check(env, k):
            from ..model.library import functor_key

            return _value(env, gf) == functor_key(F.then(G)) and _singleton_fiber(env, k, applied)

        return Oracle(f"g∘f is the composite functor in {model[0]}", _fn_env(sig, model), check)

    return CorpusEntry(
        "fn_comp", sig, gf,
        expected=IsTm(E0, C.arrow(A, Cc)),
        equations=[
            ("(g∘f)(t) = g(−f(t))", gf_t, C.apply(B, g, NegTm(C.apply(A, f, t)))),
            ("map (g∘f) refl = refl", C.map_at(A, Cc, gf, t, NegTm(t), Refl(A, t)), Refl(Cc, NegTm(gf_t))),
            ("law at refl", C.at(law, A, t, NegTm(t), Refl(A, t)),
             Refl(Hom(Cc, NegTm(gf_t), gf_t), Refl(Cc, NegTm(gf_t)))),
        ],
        extras=[("map (g∘f) p = map g (map f p)", law), ("law at p", applied)],
        oracles=[composite(m) for m in _fn_models()],
    )


def build_hom_to_func() -> CorpusEntry:
    from ..model.semantics import closed_section, sem_neg_ty

    sig = Signature()
    X = sig.declare("X", tm(E0, NegTy(SetU())))
    term = C.hom_to_func(X)

    def env_for(xs):
        def make():
            env = closed_environment(sig, [], name=f"FinSet2 X={xs}", set_k=2)
            env.bind("X", closed_section(sem_neg_ty(env.universe), xs))
            return env

        return make

    def check(env, k):
        res = env.eval(term)
        xs = env.eval(X).obj["*"]
        groups: dict = {}
        for (g, p), fn in res.obj.items():
            groups.setdefault(g[1], {})[p] = fn
        for ys in env.universe.family.fiber["*"].objects:
            imgs = groups.get(ys, {})
            if any(fn[0] != p[2] for p, fn in imgs.items()):
                return False
            if not len(set(imgs.values())) == len(imgs) == len(ys) ** len(xs):
                return False
        return True

    objs = [(), (0,), (1,), (0, 1)]
    return CorpusEntry(
        "hom_to_func", sig, term,
        equations=[("refl ↦ identity", C.at(term, SetU(), X, NegTm(X), Refl(SetU(), X)), C.el_identity(NegTm(X)))],
        oracles=[Oracle(f"hom ↦ function is the identity-on-functions bijection, X={xs}", env_for(xs), check)
                 for xs in objs],
    )


# -- negative entries ------------------------------------------------------------


def negative_corpus() -> list[CorpusEntry]:
    sig = Signature()
    N = sig.declare("N", ty(E0))
    A = sig.declare("A", ty(E0, True))
    a = sig.declare("a", tm(E0, NegTy(A)))
    n = sig.declare("n", tm(E0, NegTy(N)))
    X = sig.declare("X", tm(E0, NegTy(SetU())))
    G = ExtPos(E0, N)
    Aw, aw = C.weaken(A, N), C.weaken(a, N)
    j_motive = SubTy(A, Bang(ExtPos(ExtPos(G, Aw), hom_over_var(Aw, aw))))
    return [
        CorpusEntry("neg.var_neg", sig, NegTm(VarPos(N)), error=VarianceError),
        CorpusEntry("neg.refl_polarized", sig, Refl(Aw, aw), error=NeutralityError),
        CorpusEntry("neg.hom_both_variances", sig, Hom(N, n, n), error=VarianceError),
        CorpusEntry("neg.J_polarized", sig, J(Aw, aw, j_motive, NegTm(a)), error=NeutralityError),
        CorpusEntry("neg.symm_SET", sig, C.symm(SetU(), X), error=VarianceError),
    ]


def positive_corpus() -> list[CorpusEntry]:
    out = [build_symm(), build_comp(), *build_units(), build_assoc(), build_map(),
           *build_map_laws(), build_fn_comp(), build_hom_to_func()]
    return out


def all_entries() -> list[CorpusEntry]:
    return positive_corpus() + negative_corpus()
