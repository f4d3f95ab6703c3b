import pytest

from dcwf.corpus import all_entries, countermodel_search, negative_corpus, positive_corpus, run_entry
from dcwf.fincat import FinCat
from dcwf.kernel import NeutralityError, VarianceError
from dcwf.model.library import three, two_points, z2


@pytest.mark.parametrize("entry", positive_corpus(), ids=lambda e: e.name)
def test_positive_entry(entry):
    res = run_entry(entry)
    assert res.passed, "\n".join(res.lines)


@pytest.mark.parametrize("entry", negative_corpus(), ids=lambda e: e.name)
def test_negative_entry(entry):
    assert entry.error in (VarianceError, NeutralityError)
    res = run_entry(entry)
    assert res.passed, "\n".join(res.lines)


def test_entry_names_are_unique():
    names = [e.name for e in all_entries()]
    assert len(names) == len(set(names))
    assert len(negative_corpus()) == 5


def test_symm_on_set_is_a_variance_error():
    (entry,) = [e for e in negative_corpus() if e.name == "neg.symm_SET"]
    assert entry.error is VarianceError


def test_countermodels_default_library():
    report = countermodel_search()
    assert report.all_refuted
    sym, uniq = report.results
    assert (sym.model, sym.witness) == ("2", ("a", "b"))
    assert report.fibers["2"][("a", "b")] == 1 and report.fibers["2"][("b", "a")] == 0
    assert uniq.model == "FinSet2"
    assert report.fibers["FinSet2"][((0, 1), (0, 1))] == 4


def test_groupoids_do_not_refute_symmetry():
    report = countermodel_search(["symmetry"], {"Z2": z2(), "disc2": two_points()})
    assert not report.all_refuted
    assert report.results[0].detail == "no countermodel found"


def test_posets_do_not_refute_uniqueness():
    report = countermodel_search(["hom-uniqueness"], {"3": three()})
    assert not report.results[0].refuted


def test_invalid_model_is_reported():
    bad = FinCat.generate(["a", "b", "c"], {"f": ("a", "b"), "g": ("b", "c")}, {})
    report = countermodel_search(["symmetry"], {"bad": bad, "3": three()})
    assert report.invalid and report.invalid[0][0] == "bad"
    assert not report.all_refuted
