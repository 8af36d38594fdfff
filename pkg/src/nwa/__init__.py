"""Nested word automata: epsilon-NWA, DNWA and their decision procedures."""

from src.nwa.automaton import (
    BOTTOM, ClosingRule, Dnwa, EpsNwa, EpsRule, OpeningRule, as_dnwa, fresh_name, pair_state,
)
from src.nwa.builders import (
    empty_nwa, label_subset_dnwa, length_exceeds_dnwa, single_label_dnwa, singleton_nwa,
    universal_nwa,
)
from src.nwa.operations import (
    accepts, complement, complete, determinize, enumerate_language, included_in, intersect,
    is_empty, trim, union, validate,
)
from src.nwa.text_format import format_nwa, load_nwa, parse_nwa
