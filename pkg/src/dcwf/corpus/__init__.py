from .countermodels import (
    CLAIMS, ClaimResult, RefutationReport, countermodel_search, default_library, hom_fiber_sizes,
)
from .entries import (
    CorpusEntry, EntryResult, Oracle, all_entries, build_assoc, build_comp, build_fn_comp,
    build_hom_to_func, build_map, build_map_laws, build_symm, build_units, negative_corpus,
    positive_corpus, run_entry,
)
