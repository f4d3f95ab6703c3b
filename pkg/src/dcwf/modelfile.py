"""Line-oriented model files (``.dcm``).

A model file lists finite categories, functors, families and sections by
explicit tables, then binds signature constants to them::

    model walking-arrow
    universe 2
    category C
    objects a b
    arrow f a b
    end
    bind A type C
    bind t point a

Identities are implicit and named ``id_<object>``; every composable pair of
non-identity arrows needs a ``compose f g h`` row (diagrammatic order).
``;`` starts a comment.  :func:`print_model` emits the canonical form, and
parsing canonical text and printing it again is byte-identical.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import CategoryError, Family, FinCat, Functor, Section, validate_category, validate_family
from .fincat import validate_functor, validate_section

BIND_KINDS = ("context", "subst", "type", "family", "point", "functor", "section")


class ModelFileError(ValueError):
    def __init__(self, msg, line=None):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


@dataclass
class ModelFile:
    name: str = "model"
    universe: int = 2
    categories: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)  # name -> (dom name, cod name, Functor)
    families: dict = field(default_factory=dict)  # name -> (base name, Family)
    sections: dict = field(default_factory=dict)  # name -> (family name, Section)
    bindings: list = field(default_factory=list)  # (constant, kind, ref)

    def validate(self) -> list[str]:
        problems = []
        for n, c in self.categories.items():
            problems += [f"category {n}: {p}" for p in validate_category(c).problems]
        if problems:
            return problems  # functors and families over a broken category are meaningless
        checks = [(f"functor {n}", validate_functor, F) for n, (_, _, F) in self.functors.items()]
        checks += [(f"family {n}", validate_family, f) for n, (_, f) in self.families.items()]
        checks += [(f"section {n}", validate_section, s) for n, (_, s) in self.sections.items()]
        for what, check, value in checks:
            try:
                problems += [f"{what}: {p}" for p in check(value).problems]
            except (CategoryError, KeyError) as e:
                problems.append(f"{what}: {e}")
        return problems


def _rows(text):
    for i, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if line:
            yield i, line.split()


def parse_model(text: str) -> ModelFile:
    m = ModelFile()
    rows = list(_rows(text))
    i = 0

    def block():
        nonlocal i
        out = []
        while i < len(rows) and rows[i][1] != ["end"]:
            out.append(rows[i])
            i += 1
        if i == len(rows):
            raise ModelFileError("missing 'end'", rows[-1][0])
        i += 1
        return out

    while i < len(rows):
        ln, words = rows[i]
        head, args = words[0], words[1:]
        i += 1
        try:
            if head == "model" and len(args) == 1:
                m.name = args[0]
            elif head == "universe" and len(args) == 1:
                m.universe = int(args[0])
            elif head == "category" and len(args) == 1:
                m.categories[args[0]] = _category(block())
            elif head == "functor" and len(args) == 3:
                dom, cod = m.categories[args[1]], m.categories[args[2]]
                m.functors[args[0]] = (args[1], args[2], _functor(dom, cod, block()))
            elif head == "family" and len(args) == 2:
                m.families[args[0]] = (args[1], _family(m, m.categories[args[1]], block()))
            elif head == "section" and len(args) == 2:
                m.sections[args[0]] = (args[1], _section(m.families[args[1]][1], block()))
            elif head == "bind" and len(args) == 3 and args[1] in BIND_KINDS:
                m.bindings.append(tuple(args))
            else:
                raise ModelFileError(f"unrecognised directive {' '.join(words)!r}", ln)
        except KeyError as e:
            raise ModelFileError(f"unknown reference {e.args[0]!r}", ln) from None
    return m


def _category(rows) -> FinCat:
    objects, arrows, comps = [], {}, {}
    for ln, w in rows:
        if w[0] == "objects":
            objects += w[1:]
        elif w[0] == "arrow" and len(w) == 4:
            arrows[w[1]] = (w[2], w[3])
        elif w[0] == "compose" and len(w) == 4:
            comps[(w[1], w[2])] = w[3]
        else:
            raise ModelFileError(f"bad category row {' '.join(w)!r}", ln)
    return FinCat.generate(objects, arrows, comps)


def _functor(dom, cod, rows) -> Functor:
    obj = {}
    mor = {dom.identity[o]: None for o in dom.objects}
    for ln, w in rows:
        if w[0] == "obj" and len(w) == 3:
            obj[w[1]] = w[2]
        elif w[0] == "mor" and len(w) == 3:
            mor[w[1]] = w[2]
        else:
            raise ModelFileError(f"bad functor row {' '.join(w)!r}", ln)
    for o in dom.objects:
        if mor[dom.identity[o]] is None and o in obj:
            mor[dom.identity[o]] = cod.identity.get(obj[o])
    return Functor(dom, cod, obj, mor)


def _family(m, base, rows) -> Family:
    fiber, transport = {}, {}
    for ln, w in rows:
        if w[0] == "fiber" and len(w) == 3:
            fiber[w[1]] = m.categories[w[2]]
        elif w[0] == "transport" and len(w) == 3:
            transport[w[1]] = m.functors[w[2]][2]
        else:
            raise ModelFileError(f"bad family row {' '.join(w)!r}", ln)
    return Family(base, fiber, transport)


def _section(fam, rows) -> Section:
    obj, mor = {}, {}
    for ln, w in rows:
        if w[0] == "at" and len(w) == 3:
            obj[w[1]] = w[2]
        elif w[0] == "along" and len(w) == 3:
            mor[w[1]] = w[2]
        else:
            raise ModelFileError(f"bad section row {' '.join(w)!r}", ln)
    return Section(fam, obj, mor)


# -- printing ------------------------------------------------------------------


def _name_of(table: dict, value, what):
    for n, v in table.items():
        if v is value or v == value:
            return n
    raise ModelFileError(f"{what} is not named in the model")


def print_model(m: ModelFile) -> str:
    out = [f"model {m.name}", f"universe {m.universe}"]
    for n, c in m.categories.items():
        out.append(f"category {n}")
        out.append(" ".join(["objects", *map(str, c.objects)]))
        ids = set(c.identity.values())
        arrows = [(f, s, d) for f, s, d in c.morphisms if f not in ids]
        out += [f"arrow {f} {s} {d}" for f, s, d in arrows]
        for f, _, _ in arrows:
            for g, _, _ in arrows:
                if (f, g) in c.compose:
                    out.append(f"compose {f} {g} {c.compose[(f, g)]}")
        out.append("end")
    for n, (dn, cn, F) in m.functors.items():
        out.append(f"functor {n} {dn} {cn}")
        out += [f"obj {o} {F.obj[o]}" for o in F.dom.objects]
        ids = set(F.dom.identity.values())
        out += [f"mor {f} {F.mor[f]}" for f in F.dom.morphism_ids if f not in ids]
        out.append("end")
    for n, (bn, fam) in m.families.items():
        out.append(f"family {n} {bn}")
        out += [f"fiber {o} {_name_of(m.categories, fam.fiber[o], 'fibre')}" for o in fam.base.objects]
        functors = {k: v[2] for k, v in m.functors.items()}
        out += [f"transport {f} {_name_of(functors, fam.transport[f], 'transport')}"
                for f in fam.base.morphism_ids]
        out.append("end")
    for n, (fn, s) in m.sections.items():
        out.append(f"section {n} {fn}")
        base = s.family.base
        out += [f"at {o} {s.obj[o]}" for o in base.objects]
        out += [f"along {f} {s.mor[f]}" for f in base.morphism_ids]
        out.append("end")
    out += [f"bind {c} {k} {r}" for c, k, r in m.bindings]
    return "\n".join(out) + "\n"


def model_from_categories(name, categories: dict, universe=2) -> ModelFile:
    return ModelFile(name=name, universe=universe, categories=dict(categories))


# -- environments ----------------------------------------------------------------


def build_environment(m: ModelFile, sig, kernel=None):
    """Bind the model's constants, in file order, into an Environment."""
    from .kernel.terms import IsTm
    from .model.interp import Environment
    from .model.library import closed_type, functor_key
    from .model.semantics import ModelError, SemCon, SemTy, closed_section

    problems = m.validate()
    if problems:
        raise ModelFileError("invalid model: " + "; ".join(problems))
    env = Environment(sig, set_k=m.universe, name=m.name, kernel=kernel)
    for const, kind, ref in m.bindings:
        try:
            j = sig.lookup(const).sort
            if kind == "context":
                v = SemCon(m.categories[ref])
            elif kind == "subst":
                v = m.functors[ref][2]
            elif kind == "type":
                v = closed_type(m.categories[ref])
            elif kind == "family":
                v = SemTy(m.families[ref][1])
            elif kind == "section":
                v = m.sections[ref][1]
            else:
                if not isinstance(j, IsTm):
                    raise ModelFileError(f"{const}: {kind} binding needs a term constant")
                point = functor_key(m.functors[ref][2]) if kind == "functor" else ref
                v = closed_section(env.eval(j.ty), point)
        except KeyError as e:
            raise ModelFileError(f"{const}: unknown reference {e.args[0]!r}") from None
        except ModelError as e:
            raise ModelFileError(f"{const}: {e}") from None
        env.bind(const, v)
    problems = [p for p in env.check_bindings() if not p.endswith("unbound")]
    if problems:
        raise ModelFileError("binding mismatch: " + "; ".join(problems))
    return env
