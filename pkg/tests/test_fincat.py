import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dcwf.fincat import (
    CategoryError, FinCat, constant_family, discrete, enumerate_functors, enumerate_sections,
    identity_functor, inverse_morphism, is_groupoid, opposite, terminal, validate_category,
    validate_functor,
)
from dcwf.model.library import CATEGORIES, chain4, three, z3


@pytest.mark.parametrize("name", sorted(CATEGORIES))
def test_library_categories_validate(name):
    assert validate_category(CATEGORIES[name]()).ok


def test_missing_composite_is_reported():
    c = FinCat.generate(["a", "b", "c"], {"f": ("a", "b"), "g": ("b", "c")}, {})
    assert not validate_category(c).ok


def test_opposite_is_involutive():
    for make in CATEGORIES.values():
        c = make()
        oo = opposite(opposite(c))
        assert oo.objects == c.objects
        assert set(oo.morphisms) == set(c.morphisms)
        assert dict(oo.compose) == dict(c.compose)


def test_groupoids():
    assert is_groupoid(z3())[0]
    assert not is_groupoid(three())[0]
    assert is_groupoid(discrete(["x", "y"]))[0]
    assert inverse_morphism(z3(), "r") == "rr"
    with pytest.raises(CategoryError):
        inverse_morphism(three(), "f")


def _chain(n):
    objs = [f"o{i}" for i in range(n)]
    arrows = {f"m{i}{j}": (objs[i], objs[j]) for i in range(n) for j in range(i + 1, n)}
    comps = {(f"m{i}{j}", f"m{j}{k}"): f"m{i}{k}"
             for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)}
    return FinCat.generate(objs, arrows, comps)


def _monotone_maps(n, m):
    # independent count: weakly increasing maps [n] -> [m]
    return sum(1 for xs in itertools.product(range(m), repeat=n)
               if all(a <= b for a, b in zip(xs, xs[1:])))


@pytest.mark.parametrize("n,m", [(1, 3), (2, 2), (2, 3), (3, 3), (3, 4)])
def test_functor_count_between_chains(n, m):
    fs = list(enumerate_functors(_chain(n), _chain(m)))
    assert len(fs) == _monotone_maps(n, m)
    assert all(validate_functor(F).ok for F in fs)


def test_functor_composition_and_identity():
    c = chain4()
    for F in enumerate_functors(three(), c):
        assert F.then(identity_functor(c)).obj == F.obj
        for G in enumerate_functors(c, three()):
            assert validate_functor(F.then(G)).ok


def test_sections_of_constant_family_are_functors():
    base, fib = three(), chain4()
    n = len(enumerate_sections(constant_family(base, fib)))
    assert n == len(list(enumerate_functors(base, fib))) == _monotone_maps(3, 4)


def test_terminal_has_one_section_per_object():
    c = chain4()
    assert len(enumerate_sections(constant_family(terminal(), c))) == len(c.objects)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_random_preorders_validate(n, data):
    # a random subset of the strict order relation, closed transitively
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = set(data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else [])
    changed = True
    while changed:
        changed = False
        for (i, j), (k, l) in itertools.product(list(chosen), repeat=2):
            if j == k and (i, l) not in chosen:
                chosen.add((i, l))
                changed = True
    objs = [f"o{i}" for i in range(n)]
    arrows = {f"m{i}{j}": (objs[i], objs[j]) for i, j in chosen}
    comps = {(f"m{i}{j}", f"m{j}{k}"): f"m{i}{k}"
             for i, j in chosen for j2, k in chosen if j2 == j}
    c = FinCat.generate(objs, arrows, comps)
    assert validate_category(c).ok
    assert validate_category(opposite(c)).ok
    assert is_groupoid(c)[0] == (not chosen)
