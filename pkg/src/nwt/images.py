"""
Range and image automata of transducers and the decision procedures
built on them: transduct membership, non-emptiness and type checking.
"""

import logging
from typing import FrozenSet, Optional, Sequence

from src.nested_words.words import NestedWord, Tag, is_well_nested
from src.nwa.automaton import ClosingRule, EpsNwa, EpsRule, OpeningRule, pair_state
from src.nwa.builders import empty_nwa, singleton_nwa, universal_nwa
from src.nwa.operations import accepts, determinize, enumerate_language, included_in, is_empty, trim
from src.nwt.composition import require_non_deleting, restrict_domain
from src.nwt.normal_form import normalize
from src.nwt.properties import classify
from src.nwt.runs import enumerate_runs
from src.nwt.transducer import Nwt, label_token

logger = logging.getLogger(__name__)


def range_automaton(transducer: Nwt) -> EpsNwa:
    """
    Epsilon-NWA accepting every output of the transducer on a well-nested input.

    Each normalized rule emits exactly one tag, which becomes the tag the
    automaton reads. The pushed hierarchical state pairs the rule's own
    hierarchical state with the input label, so closing steps only fire on
    the matching input label. Internal rules become epsilon rules.

    Raises:
        DeletingTransducerError: transducer deletes tags
    """
    require_non_deleting(transducer, "range_automaton")
    t = normalize(transducer)
    opening = [OpeningRule(r.source, r.output[0].label, r.target, pair_state(r.hier, label_token(r.label)))
               for r in t.opening]
    closing = [ClosingRule(r.source, pair_state(r.hier, label_token(r.label)), r.output[0].label, r.target)
               for r in t.closing]
    eps = [EpsRule(r.source, r.target) for r in t.internal]
    hiers = {rule.hier for rule in opening}
    raw = EpsNwa(t.alphabet, t.linear_states, hiers, t.initial, t.final, opening, closing, eps)
    result = trim(raw)
    logger.debug(f"range_automaton: transducer size {t.size} -> automaton size {result.size}")
    return result


def _foreign(labels, alphabet) -> bool:
    return any(label not in alphabet for label in labels)


def image_automaton(transducer: Nwt, w: Sequence[Tag]) -> EpsNwa:
    """Epsilon-NWA for the set of transducts of w."""
    word = NestedWord(w)
    if _foreign(word.labels, transducer.alphabet):
        return empty_nwa(transducer.alphabet)
    return range_automaton(restrict_domain(transducer, singleton_nwa(word, transducer.alphabet)))


def image_language_automaton(transducer: Nwt, automaton: EpsNwa) -> EpsNwa:
    """Epsilon-NWA for the image of L(automaton) under the transducer."""
    return range_automaton(restrict_domain(transducer, automaton))


def transduct_member(transducer: Nwt, w: Sequence[Tag], u: Sequence[Tag]) -> bool:
    """Is u one of the transducts of w?"""
    target = NestedWord(u)
    if not is_well_nested(target) or _foreign(target.labels, transducer.alphabet):
        return False
    return accepts(image_automaton(transducer, w), target)


def is_nonempty(transducer: Nwt) -> bool:
    """Does some well-nested input have a transduct?"""
    domain = universal_nwa(transducer.alphabet)
    return not is_empty(image_language_automaton(transducer, domain))


def typecheck(transducer: Nwt, source: EpsNwa, target: EpsNwa,
              state_budget: Optional[int] = None) -> bool:
    """
    Check that every transduct of every word of L(source) lies in L(target).

    A deterministic target is used as is. A nondeterministic target is
    determinized first, which may exceed state_budget.

    Raises:
        BudgetExceededError: determinizing the target needs too many states
        DeletingTransducerError: transducer deletes tags
    """
    image = image_language_automaton(transducer, source)
    if target.is_deterministic():
        return included_in(image, target)
    logger.info(f"typecheck: determinizing a nondeterministic target of size {target.size}")
    return included_in(image, determinize(target, state_budget))


def enumerate_image(transducer: Nwt, w: Sequence[Tag], max_len: int) -> FrozenSet[NestedWord]:
    """
    Transducts of w with at most max_len tags.

    Non-deleting transducers go through the image automaton; deleting ones
    fall back to run enumeration.
    """
    word = NestedWord(w)
    if _foreign(word.labels, transducer.alphabet):
        return frozenset()
    if classify(transducer).non_deleting:
        return enumerate_language(image_automaton(transducer, word), max_len)
    return enumerate_runs(transducer, word, max_len)
