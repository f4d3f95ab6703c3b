"""Finite categories, functors, families of categories and their sections.

Everything here is a plain immutable value.  Morphisms are identified by
hashable ids; composition is recorded in diagrammatic order, so
``c.comp(f, g)`` is "f then g".  Equality is structural (same ids, same
tables), never up to isomorphism.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Hashable, Iterable, Iterator, Mapping

Obj = Hashable
Mor = Hashable


class CategoryError(ValueError):
    """Raised when a categorical structure is used outside its contract."""


def identity_name(o: Obj) -> Mor:
    if isinstance(o, str):
        return f"id_{o}"
    return ("id", o)


@dataclass(frozen=True)
class FinCat:
    objects: tuple
    morphisms: tuple  # (id, src, dst) triples
    identity: Mapping[Obj, Mor]
    compose: Mapping[tuple, Mor]

    @cached_property
    def ends(self) -> dict:
        return {m: (s, d) for m, s, d in self.morphisms}

    @cached_property
    def morphism_ids(self) -> tuple:
        return tuple(m for m, _, _ in self.morphisms)

    @cached_property
    def _homs(self) -> dict:
        out: dict = {}
        for m, s, d in self.morphisms:
            out.setdefault((s, d), []).append(m)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _out(self) -> dict:
        out: dict = {}
        for m, s, _ in self.morphisms:
            out.setdefault(s, []).append(m)
        return out

    def src(self, f: Mor) -> Obj:
        return self.ends[f][0]

    def dst(self, f: Mor) -> Obj:
        return self.ends[f][1]

    def hom(self, a: Obj, b: Obj) -> tuple:
        return self._homs.get((a, b), ())

    def outgoing(self, a: Obj) -> list:
        return self._out.get(a, [])

    def comp(self, *fs: Mor) -> Mor:
        """Diagrammatic composite ``f1 · f2 · ...``."""
        if not fs:
            raise CategoryError("empty composite")
        out = fs[0]
        for g in fs[1:]:
            try:
                out = self.compose[(out, g)]
            except KeyError:
                raise CategoryError(f"not composable: {out!r} then {g!r}") from None
        return out

    def composable_pairs(self) -> Iterator[tuple]:
        for f, _, d in self.morphisms:
            for g in self.outgoing(d):
                yield f, g

    def is_identity(self, f: Mor) -> bool:
        s, d = self.ends[f]
        return s == d and self.identity[s] == f

    @cached_property
    def groupoid(self) -> tuple:
        return is_groupoid(self)

    @cached_property
    def size(self) -> tuple:
        return len(self.objects), len(self.morphisms)

    def __repr__(self) -> str:
        n, m = self.size
        return f"FinCat({n} objects, {m} morphisms)"

    # -- constructors ------------------------------------------------------

    @classmethod
    def generate(
        cls,
        objects: Iterable[Obj],
        arrows: Mapping[Mor, tuple] | None = None,
        composites: Mapping[tuple, Mor] | None = None,
    ) -> "FinCat":
        """Build a category from its non-identity arrows.

        Identities are added automatically and named by ``identity_name``;
        ``composites`` must list every composable pair of non-identity arrows.
        """
        objects = tuple(objects)
        arrows = dict(arrows or {})
        composites = dict(composites or {})
        identity = {o: identity_name(o) for o in objects}
        morphisms = tuple((identity[o], o, o) for o in objects) + tuple(
            (m, s, d) for m, (s, d) in arrows.items()
        )
        table: dict = {}
        for m, s, d in morphisms:
            table[(identity[s], m)] = m
            table[(m, identity[d])] = m
        table.update(composites)
        return cls(objects, morphisms, identity, table)


def discrete(objects: Iterable[Obj]) -> FinCat:
    return FinCat.generate(objects)


def terminal() -> FinCat:
    return discrete(["*"])


def opposite(c: FinCat) -> FinCat:
    """Same objects and morphism ids; ends swapped; composition reversed."""
    return FinCat(
        c.objects,
        tuple((m, d, s) for m, s, d in c.morphisms),
        c.identity,
        {(g, f): h for (f, g), h in c.compose.items()},
    )


# -- validation -------------------------------------------------------------


@dataclass
class Report:
    """Outcome of an exhaustive law check; ``problems`` lists every failure."""

    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self) -> bool:
        return self.ok

    def add(self, *msg: Any) -> None:
        self.problems.append(" ".join(str(m) for m in msg))


def validate_category(c: FinCat) -> Report:
    rep = Report()
    objs = set(c.objects)
    if len(objs) != len(c.objects):
        rep.add("duplicate objects")
    if len(c.ends) != len(c.morphisms):
        rep.add("duplicate morphism ids")
    for m, s, d in c.morphisms:
        if s not in objs or d not in objs:
            rep.add("morphism", repr(m), "has undeclared end", repr((s, d)))
    for o in c.objects:
        i = c.identity.get(o)
        if i not in c.ends or c.ends[i] != (o, o):
            rep.add("identity of", repr(o), "is", repr(i), "which is not an endo-arrow on it")
    if not rep.ok:
        return rep
    for f, g in c.composable_pairs():
        h = c.compose.get((f, g))
        if h is None:
            rep.add("missing composite", repr((f, g)))
        elif h not in c.ends:
            rep.add("composite", repr((f, g)), "->", repr(h), "is undeclared")
        elif c.ends[h] != (c.src(f), c.dst(g)):
            rep.add("composite", repr((f, g)), "->", repr(h), "has wrong src/dst", repr(c.ends[h]))
    for (f, g) in c.compose:
        if f not in c.ends or g not in c.ends or c.dst(f) != c.src(g):
            rep.add("table entry for non-composable pair", repr((f, g)))
    if not rep.ok:
        return rep
    for m, s, d in c.morphisms:
        if c.compose[(c.identity[s], m)] != m:
            rep.add("left unit fails at", repr(m))
        if c.compose[(m, c.identity[d])] != m:
            rep.add("right unit fails at", repr(m))
    for f, g, h in composable_triples(c):
        if c.comp(c.comp(f, g), h) != c.comp(f, c.comp(g, h)):
            rep.add("associativity fails at", repr((f, g, h)))
    return rep


def composable_triples(c: FinCat) -> Iterator[tuple]:
    for f, g in c.composable_pairs():
        for h in c.outgoing(c.dst(g)):
            yield f, g, h


def is_groupoid(c: FinCat) -> tuple[bool, dict | None]:
    """Return ``(True, inverses)`` when every morphism is invertible."""
    inv = {}
    for f, s, d in c.morphisms:
        for g in c.hom(d, s):
            if c.compose[(f, g)] == c.identity[s] and c.compose[(g, f)] == c.identity[d]:
                inv[f] = g
                break
        else:
            return False, None
    return True, inv


def inverse_morphism(c: FinCat, f: Mor) -> Mor:
    ok, inv = is_groupoid(c)
    if not ok:
        raise CategoryError("inverse requested in a category that is not a groupoid")
    return inv[f]


# -- functors -----------------------------------------------------------------


@dataclass(frozen=True)
class Functor:
    dom: FinCat
    cod: FinCat
    obj: Mapping[Obj, Obj]
    mor: Mapping[Mor, Mor]

    def __call__(self, x):
        """Apply to an object or a morphism id (morphisms take precedence)."""
        if x in self.mor:
            return self.mor[x]
        return self.obj[x]

    def then(self, other: "Functor") -> "Functor":
        return Functor(
            self.dom,
            other.cod,
            {o: other.obj[v] for o, v in self.obj.items()},
            {m: other.mor[v] for m, v in self.mor.items()},
        )

    def __repr__(self) -> str:
        return f"Functor({self.dom!r} -> {self.cod!r})"


def identity_functor(c: FinCat) -> Functor:
    return Functor(c, c, {o: o for o in c.objects}, {m: m for m in c.morphism_ids})


def opposite_functor(f: Functor) -> Functor:
    return Functor(opposite(f.dom), opposite(f.cod), f.obj, f.mor)


def validate_functor(F: Functor) -> Report:
    rep = Report()
    C, D = F.dom, F.cod
    for o in C.objects:
        if F.obj.get(o) not in D.identity:
            rep.add("object", repr(o), "maps outside the codomain")
    if not rep.ok:
        return rep
    for m, s, d in C.morphisms:
        fm = F.mor.get(m)
        if fm not in D.ends:
            rep.add("morphism", repr(m), "maps outside the codomain")
        elif D.ends[fm] != (F.obj[s], F.obj[d]):
            rep.add("morphism", repr(m), "image has wrong ends")
    if not rep.ok:
        return rep
    for o in C.objects:
        if F.mor[C.identity[o]] != D.identity[F.obj[o]]:
            rep.add("identity not preserved at", repr(o))
    for f, g in C.composable_pairs():
        if F.mor[C.comp(f, g)] != D.comp(F.mor[f], F.mor[g]):
            rep.add("composition not preserved at", repr((f, g)))
    return rep


def to_terminal(c: FinCat, t: FinCat | None = None) -> Functor:
    t = t or terminal()
    (pt,) = t.objects
    return Functor(c, t, {o: pt for o in c.objects}, {m: t.identity[pt] for m in c.morphism_ids})


def enumerate_functors(C: FinCat, D: FinCat) -> Iterator[Functor]:
    """All functors ``C -> D`` by brute force (desk scale only)."""
    for objs in itertools.product(D.objects, repeat=len(C.objects)):
        om = dict(zip(C.objects, objs))
        choices = [
            (D.identity[om[s]],) if C.is_identity(m) else D.hom(om[s], om[d])
            for m, s, d in C.morphisms
        ]
        for ms in itertools.product(*choices):
            F = Functor(C, D, om, dict(zip(C.morphism_ids, ms)))
            if all(F.mor[C.comp(f, g)] == D.comp(F.mor[f], F.mor[g]) for f, g in C.composable_pairs()):
                yield F


# -- families and sections ---------------------------------------------------


@dataclass(frozen=True)
class Family:
    """A functor from ``base`` into CAT, given by fibers and transports."""

    base: FinCat
    fiber: Mapping[Obj, FinCat]
    transport: Mapping[Mor, Functor]

    def __repr__(self) -> str:
        return f"Family(over {self.base!r})"


FamilyOfCats = Family


def constant_family(base: FinCat, c: FinCat) -> Family:
    ident = identity_functor(c)
    return Family(base, {o: c for o in base.objects}, {m: ident for m in base.morphism_ids})


def validate_family(fam: Family) -> Report:
    rep = Report()
    B = fam.base
    for m, s, d in B.morphisms:
        F = fam.transport.get(m)
        if F is None:
            rep.add("no transport for", repr(m))
            continue
        if F.dom != fam.fiber[s] or F.cod != fam.fiber[d]:
            rep.add("transport along", repr(m), "has wrong fibers")
            continue
        for p in validate_functor(F).problems:
            rep.add("transport along", repr(m) + ":", p)
    if not rep.ok:
        return rep
    for o in B.objects:
        if fam.transport[B.identity[o]] != identity_functor(fam.fiber[o]):
            rep.add("transport along identity of", repr(o), "is not the identity functor")
    for f, g in B.composable_pairs():
        if fam.transport[B.comp(f, g)] != fam.transport[f].then(fam.transport[g]):
            rep.add("transport not functorial at", repr((f, g)))
    return rep


def opposite_family(fam: Family) -> Family:
    return Family(
        fam.base,
        {o: opposite(c) for o, c in fam.fiber.items()},
        {m: opposite_functor(F) for m, F in fam.transport.items()},
    )


def reindex(fam: Family, sigma: Functor) -> Family:
    """Substitution ``A[σ]``: pull the family back along ``σ``."""
    return Family(
        sigma.dom,
        {o: fam.fiber[sigma.obj[o]] for o in sigma.dom.objects},
        {m: fam.transport[sigma.mor[m]] for m in sigma.dom.morphism_ids},
    )


@dataclass(frozen=True)
class Section:
    family: Family
    obj: Mapping[Obj, Obj]
    mor: Mapping[Mor, Mor]

    @property
    def key(self) -> tuple:
        """Hashable identity of the section given its family."""
        B = self.family.base
        return (tuple(self.obj[o] for o in B.objects), tuple(self.mor[m] for m in B.morphism_ids))

    def __repr__(self) -> str:
        return f"Section(obj={dict(self.obj)!r})"


def section_from_key(fam: Family, key: tuple) -> Section:
    objs, mors = key
    return Section(fam, dict(zip(fam.base.objects, objs)), dict(zip(fam.base.morphism_ids, mors)))


def validate_section(s: Section) -> Report:
    rep = Report()
    fam = s.family
    B = fam.base
    for m, a, b in B.morphisms:
        fib = fam.fiber[b]
        want = (fam.transport[m].obj[s.obj[a]], s.obj[b])
        got = fib.ends.get(s.mor.get(m))
        if got != want:
            rep.add("morphism part at", repr(m), "has ends", repr(got), "expected", repr(want))
    if not rep.ok:
        return rep
    for o in B.objects:
        if s.mor[B.identity[o]] != fam.fiber[o].identity[s.obj[o]]:
            rep.add("identity not sent to identity at", repr(o))
    for f, g in B.composable_pairs():
        lhs = s.mor[B.comp(f, g)]
        rhs = fam.fiber[B.dst(g)].comp(fam.transport[g].mor[s.mor[f]], s.mor[g])
        if lhs != rhs:
            rep.add("section condition fails at", repr((f, g)))
    return rep


def enumerate_sections(fam: Family) -> list[Section]:
    """Every section of ``fam``, in a deterministic order."""
    B = fam.base
    nonid = [m for m, _, _ in B.morphisms if not B.is_identity(m)]
    # pairs whose check becomes possible once the later of f, g, f·g is assigned
    pos = {m: i for i, m in enumerate(nonid)}
    checks: dict = {}
    for f, g in B.composable_pairs():
        h = B.comp(f, g)
        idx = max(pos.get(x, -1) for x in (f, g, h))
        checks.setdefault(idx, []).append((f, g, h))

    out = []
    for objs in itertools.product(*(fam.fiber[o].objects for o in B.objects)):
        om = dict(zip(B.objects, objs))
        mm = {B.identity[o]: fam.fiber[o].identity[om[o]] for o in B.objects}

        def ok(idx: int) -> bool:
            for f, g, h in checks.get(idx, ()):
                fib = fam.fiber[B.dst(g)]
                if mm[h] != fib.comp(fam.transport[g].mor[mm[f]], mm[g]):
                    return False
            return True

        if not ok(-1):
            continue

        def go(i: int) -> None:
            if i == len(nonid):
                out.append(Section(fam, dict(om), dict(mm)))
                return
            m = nonid[i]
            a, b = B.ends[m]
            for cand in fam.fiber[b].hom(fam.transport[m].obj[om[a]], om[b]):
                mm[m] = cand
                if ok(i):
                    go(i + 1)
            mm.pop(m, None)

        go(0)
    return out


@dataclass(frozen=True)
class NatTransform:
    """Morphism between two sections of one family: fiberwise components."""

    dom: Section
    cod: Section
    components: Mapping[Obj, Mor]

    @property
    def key(self) -> tuple:
        B = self.dom.family.base
        return ("nat", self.dom.key, self.cod.key, tuple(self.components[o] for o in B.objects))


def is_natural(alpha: NatTransform) -> bool:
    fam = alpha.dom.family
    B = fam.base
    th, th2 = alpha.dom, alpha.cod
    for o in B.objects:
        if fam.fiber[o].ends.get(alpha.components[o]) != (th.obj[o], th2.obj[o]):
            return False
    for f, a, b in B.morphisms:
        fib = fam.fiber[b]
        lhs = fib.comp(fam.transport[f].mor[alpha.components[a]], th2.mor[f])
        rhs = fib.comp(th.mor[f], alpha.components[b])
        if lhs != rhs:
            return False
    return True


def enumerate_transforms(th: Section, th2: Section) -> list[NatTransform]:
    fam = th.family
    B = fam.base
    choices = [fam.fiber[o].hom(th.obj[o], th2.obj[o]) for o in B.objects]
    out = []
    for comps in itertools.product(*choices):
        alpha = NatTransform(th, th2, dict(zip(B.objects, comps)))
        if is_natural(alpha):
            out.append(alpha)
    return out


# -- Grothendieck construction ----------------------------------------------


def total_category_pos(base: FinCat, fam: Family) -> tuple[FinCat, Functor, Section]:
    """Total category of a covariant family, with projection and generic section.

    Objects are ``(γ, a)``; a morphism ``(γ0, a0) -> (γ1, a1)`` is a pair of
    ``γ01`` and ``a01 : fiber(γ1)[transport(γ01)(a0), a1]``, identified as
    ``(γ01, a0, a01)``.
    """
    if fam.base != base:
        raise CategoryError("family is not over the given base")
    objects = tuple((g, a) for g in base.objects for a in fam.fiber[g].objects)
    morphisms = []
    for g01, g0, g1 in base.morphisms:
        F = fam.transport[g01]
        fib1 = fam.fiber[g1]
        for a0 in fam.fiber[g0].objects:
            Fa0 = F.obj[a0]
            for a01 in fib1.outgoing(Fa0):
                morphisms.append(((g01, a0, a01), (g0, a0), (g1, fib1.dst(a01))))
    identity = {(g, a): (base.identity[g], a, fam.fiber[g].identity[a]) for g, a in objects}
    compose = {}
    out: dict = {}
    for m, s, _ in morphisms:
        out.setdefault(s, []).append(m)
    for m1, _, d1 in morphisms:
        g01, a0, a01 = m1
        for m2 in out.get(d1, ()):
            g12, _, a12 = m2
            g2 = base.dst(g12)
            compose[(m1, m2)] = (
                base.comp(g01, g12),
                a0,
                fam.fiber[g2].comp(fam.transport[g12].mor[a01], a12),
            )
    total = FinCat(objects, tuple(morphisms), identity, compose)
    proj = Functor(
        total,
        base,
        {o: o[0] for o in objects},
        {m: m[0] for m, _, _ in morphisms},
    )
    generic = Section(reindex(fam, proj), {o: o[1] for o in objects}, {m: m[2] for m, _, _ in morphisms})
    return total, proj, generic
