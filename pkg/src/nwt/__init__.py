"""Nested word transducers: validation, normal form, composition and images."""

from src.nwt.composition import compose, restrict_domain, trim_nwt
from src.nwt.images import (
    enumerate_image, image_automaton, image_language_automaton, is_nonempty, range_automaton,
    transduct_member, typecheck,
)
from src.nwt.normal_form import normalize
from src.nwt.properties import (
    NwtClass, classify, is_normal_form, sample_depth_bound, sample_functionality, validate_nwt,
)
from src.nwt.runs import enumerate_runs
from src.nwt.text_format import format_nwt, load_nwt, parse_nwt
from src.nwt.transducer import (
    EPS, EPS_TOKEN, ClosingTransition, InternalTransition, Nwt, OpeningTransition,
    identity_transducer, relabelling_transducer,
)
