import pytest

from dcwf import cli
from dcwf.kernel import EmptyCtx, IdSub, JSimple, NegTm, PairPos, ProjPos, Refl, SubTm, SubTy
from dcwf.kernel.terms import ConstTm, ConstTy, hom_over_var
from dcwf.syntax import print_term

A, t = ConstTy("A"), ConstTm("t")
HEADER = "(declare-const A (NTy empty))\n(declare-const t (Tm empty (negT A)))\n"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return p
    return _write


def test_check_ok(capsys, write):
    p = write("ok.dtt", HEADER + "(check-type (refl A t) (Tm empty (hom A t (neg t))))\n")
    code, out, _ = run(capsys, "check", p)
    assert code == 0
    assert out.splitlines()[-1] == "3/3 tasks ok"
    assert f"{p}:3: check-type OK" in out


def test_check_var_neg_fails(capsys, write):
    p = write("bad.dtt", "(declare-const B (Ty empty))\n(define x (neg (v+ B)))\n")
    code, out, _ = run(capsys, "check", p)
    assert code != 0
    assert "VarianceError" in out


def test_check_empty_file(capsys, write):
    assert run(capsys, "check", write("e.dtt", ""))[0] == 0


def test_check_parse_error_goes_to_stderr(capsys, write):
    code, out, err = run(capsys, "check", write("p.dtt", "(declare-const A (Ty empty)\n"))
    assert code == 1 and out == "" and "1:1" in err


def test_check_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check", tmp_path / "missing.dtt")
    assert code == 1 and "FileNotFoundError" in err


def test_corpus_files_check(capsys, tmp_path):
    assert run(capsys, "corpus", "--emit", tmp_path)[0] == 0
    files = sorted(tmp_path.glob("*.dtt"))
    assert len(files) == 15
    for f in files:
        code, out, _ = run(capsys, "check", f)
        assert code == 0, out


WALK = """model walk
universe 2
category C
objects a b
arrow f a b
end
bind A type C
bind t point a
bind u point b
"""
WALK_DTT = ("(declare-const A (Ty empty))\n(declare-const t (Tm empty (negT A)))\n"
            "(declare-const u (Tm empty A))\n(define H (hom A t u))\n(define r (refl A t))\n")


def test_eval_hom(capsys, write):
    code, out, _ = run(capsys, "eval", write("w.dtt", WALK_DTT), write("w.dcm", WALK), "H")
    assert code == 0
    assert "    objects: f\n" in out
    assert "id_f : f -> f" in out


def test_eval_refl(capsys, write):
    code, out, _ = run(capsys, "eval", write("w.dtt", WALK_DTT), write("w.dcm", WALK), "r")
    assert code == 0 and "  at *: id_a" in out


def test_eval_composite(capsys, tmp_path):
    assert run(capsys, "corpus", "--filter", "comp", "--emit", tmp_path)[0] == 0
    model = ("model three\nuniverse 2\ncategory C\nobjects a b c\narrow f a b\narrow g b c\n"
             "arrow h a c\ncompose f g h\nend\nbind A type C\nbind t point a\nbind u point b\n"
             "bind v point c\nbind p point f\nbind q point g\n")
    (tmp_path / "three.dcm").write_text(model)
    code, out, _ = run(capsys, "eval", tmp_path / "comp.dtt", tmp_path / "three.dcm", "comp'")
    assert code == 0 and "  at *: h" in out


def test_eval_unbound_name(capsys, write):
    code, _, err = run(capsys, "eval", write("w.dtt", WALK_DTT), write("w.dcm", WALK), "nope")
    assert code == 1 and "unbound" in err


def test_eval_invalid_model(capsys, write):
    bad = WALK.replace("objects a b", "objects a").replace("arrow f a b", "arrow f a b")
    code, _, err = run(capsys, "eval", write("w.dtt", WALK_DTT), write("w.dcm", bad), "H")
    assert code == 1 and err


def _j_beta_theory():
    E = EmptyCtx()
    M = SubTy(A, ProjPos(A))
    point = PairPos(hom_over_var(A, t), PairPos(A, IdSub(E), NegTm(t)), Refl(A, t))
    return HEADER + f"(define jb {print_term(SubTm(JSimple(A, t, M, NegTm(t)), point))})\n"


def test_normalize_j_beta(capsys, write):
    code, out, _ = run(capsys, "normalize", write("j.dtt", _j_beta_theory()), "jb")
    assert code == 0
    assert out.splitlines()[0] == "(neg t)"


def test_normalize_identity_composite(capsys, write):
    G = "(ext+ empty A)"
    p = write("c.dtt", HEADER + f"(declare-const s0 (Sub {G} {G}))\n(define s (comp s0 (id {G})))\n")
    code, out, _ = run(capsys, "normalize", p, "s")
    assert code == 0 and out.splitlines()[0] == "s0"


def test_normalize_deterministic_and_budget(capsys, write):
    chain = "A"
    for _ in range(12):
        chain = f"(subT {chain} (id empty))"
    p = write("d.dtt", HEADER + f"(define T {chain})\n")
    first = run(capsys, "normalize", p, "T")
    assert first == run(capsys, "normalize", p, "T")
    assert first[0] == 0 and int(first[1].split("steps: ")[1]) > 0
    code, out, _ = run(capsys, "normalize", p, "T", "--max-steps", "2")
    assert code == 2 and out.startswith("StepBudgetExceeded")


def test_normalize_trace(capsys, write):
    p = write("d.dtt", HEADER + "(define T (subT A (id empty)))\n")
    code, out, err = run(capsys, "normalize", p, "T", "--trace")
    assert code == 0 and "sub-id" in err and "sub-id" not in out


def test_refute_default(capsys):
    code, out, _ = run(capsys, "refute")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("symmetry: refuted in 2 at (a, b)")
    assert lines[1].startswith("hom-uniqueness: refuted in FinSet2 at ((0,1), (0,1)): 4 ")


def test_refute_groupoids_only(capsys, tmp_path):
    (tmp_path / "g.dcm").write_text("model g\nuniverse 2\ncategory Z2\nobjects *\narrow s * *\n"
                                    "compose s s id_*\nend\n")
    code, out, _ = run(capsys, "refute", "--claim", "symmetry", "--models", tmp_path)
    assert code == 1 and out == "symmetry: no countermodel found\n"


def test_corpus_filter(capsys):
    code, out, _ = run(capsys, "corpus", "--filter", "map")
    assert code == 0
    names = {line.split()[1].rstrip(":") for line in out.splitlines()[:-1]}
    assert names and all("map" in n for n in names)


def test_corpus_rejects_corrupted_builtin(capsys, monkeypatch):
    from dcwf.fincat import FinCat
    from dcwf.model import library

    broken = lambda: FinCat.generate(["a", "b", "c"], {"f": ("a", "b"), "g": ("b", "c")}, {})
    monkeypatch.setitem(library.CATEGORIES, "3", broken)
    code, _, err = run(capsys, "corpus")
    assert code == 1 and "builtin model 3" in err
