import pytest
from hypothesis import given, settings, strategies as st

from dcwf.corpus import all_entries
from dcwf.kernel import Hom, NegTm, NegTy, Refl
from dcwf.syntax import ParseError, parse_term, print_term, read_sexprs

from gen import SIG, Gen


def resolve(name):
    return SIG.const(name)


def test_print_and_parse():
    A, a = SIG.const("A"), SIG.const("a")
    t = Refl(A, a)
    assert print_term(t) == "(refl A a)"
    assert parse_term("(hom A a (neg a))", resolve) == Hom(A, a, NegTm(a))
    assert parse_term("(negT (negT A))", resolve) == NegTy(NegTy(A))


def test_comments_and_whitespace():
    assert parse_term("; comment\n(refl\n  A a) ; trailing", resolve) == Refl(SIG.const("A"), SIG.const("a"))


@pytest.mark.parametrize("text", ["(refl A)", "(nope A)", "(refl A a", "refl A a)", "(refl A zz)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_term(text, lambda n: SIG.const(n) if n in SIG else (_ for _ in ()).throw(ParseError(n)))


def test_nested_sexprs():
    assert read_sexprs("(a (b c)) d") == [["a", ["b", "c"]], "d"]


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip_generated(seed):
    t = Gen(seed).any_term(4)
    text = print_term(t)
    assert parse_term(text, resolve) == t
    assert print_term(parse_term(text, resolve)) == text


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.name)
def test_round_trip_corpus(entry):
    terms = [entry.term] + [t for _, t in entry.extras]
    terms += [x for _, l, r in entry.equations for x in (l, r)]
    for t in terms:
        text = print_term(t)
        assert print_term(parse_term(text, entry.sig.const)) == text
