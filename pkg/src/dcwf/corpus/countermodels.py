"""Refuting symmetry and uniqueness of homs by finite countermodels."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..fincat import FinCat, validate_category
from ..model.library import CATEGORIES, closed_type
from ..model.semantics import closed_section, sem_hom, sem_neg_ty

CLAIMS = ("symmetry", "hom-uniqueness")
DEFAULT_LIBRARY = ("1", "2", "3", "disc2", "Z2", "FinSet2")


@dataclass
class ClaimResult:
    claim: str
    refuted: bool
    model: str | None = None
    witness: tuple | None = None
    detail: str = ""


@dataclass
class RefutationReport:
    results: list
    fibers: dict = field(default_factory=dict)  # model -> {(a, b): |hom(a, b)|}
    invalid: list = field(default_factory=list)

    @property
    def all_refuted(self) -> bool:
        return all(r.refuted for r in self.results) and not self.invalid


def hom_fiber_sizes(c: FinCat) -> dict:
    """``|hom(a, b)|`` for all objects, computed through the hom-type semantics."""
    A = closed_type(c)
    Am = sem_neg_ty(A)
    sizes = {}
    for a in c.objects:
        for b in c.objects:
            H = sem_hom(A, closed_section(Am, a), closed_section(A, b))
            sizes[(a, b)] = len(H.family.fiber["*"].objects)
    return sizes


def default_library() -> dict:
    return {name: CATEGORIES[name]() for name in DEFAULT_LIBRARY}


def countermodel_search(claims=CLAIMS, library: dict | None = None) -> RefutationReport:
    """Search a model library for witnesses against each claim.

    Symmetry fails where ``hom(a, b)`` is inhabited but ``hom(b, a)`` is not;
    the first such model in library order is reported.  Uniqueness fails
    wherever some hom has more than one element; the largest such fibre is
    reported.
    """
    library = default_library() if library is None else library
    report = RefutationReport([])
    for name, c in library.items():
        problems = validate_category(c).problems
        if problems:
            report.invalid.append((name, problems))
            continue
        report.fibers[name] = hom_fiber_sizes(c)
    for claim in claims:
        if claim == "symmetry":
            report.results.append(_symmetry(report.fibers))
        elif claim == "hom-uniqueness":
            report.results.append(_uniqueness(report.fibers))
        else:
            raise ValueError(f"unknown claim {claim!r}; known: {', '.join(CLAIMS)}")
    return report


def _symmetry(fibers) -> ClaimResult:
    for name, sizes in fibers.items():
        for (a, b), n in sizes.items():
            if n > 0 and sizes[(b, a)] == 0:
                return ClaimResult("symmetry", True, name, (a, b),
                                   f"|hom({a},{b})| = {n}, |hom({b},{a})| = 0")
    return ClaimResult("symmetry", False, detail="no countermodel found")


def _uniqueness(fibers) -> ClaimResult:
    best = None
    for name, sizes in fibers.items():
        for (a, b), n in sizes.items():
            if n > 1 and (best is None or n > best[0]):
                best = (n, name, (a, b))
    if best is None:
        return ClaimResult("hom-uniqueness", False, detail="no countermodel found")
    n, name, (a, b) = best
    return ClaimResult("hom-uniqueness", True, name, (a, b), f"{n} distinct parallel homs {a} → {b}")
