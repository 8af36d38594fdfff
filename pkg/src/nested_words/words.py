"""Tags, nested words and their structural utilities."""

import re
import sys
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from src.utils.errors import MalformedWordError

LABEL_PATTERN = re.compile(r'^[A-Za-z0-9_]+$')
_TOKEN = re.compile(r'<(/?)([A-Za-z0-9_]+)>')

FlatWord = Tuple[str, ...]


class Tag(NamedTuple):
    """An opening tag <a> or a closing tag </a>."""
    opening: bool
    label: str

    @property
    def closing(self) -> bool:
        return not self.opening

    def partner(self) -> 'Tag':
        """The tag of opposite polarity with the same label."""
        return intern_tag(not self.opening, self.label)

    def __str__(self):
        return f"<{self.label}>" if self.opening else f"</{self.label}>"


_TAGS: Dict[Tuple[bool, str], Tag] = {}


def intern_tag(opening: bool, label: str) -> Tag:
    """The shared Tag for (opening, label); its label is an interned string."""
    tag = _TAGS.get((opening, label))
    if tag is None:
        tag = _TAGS.setdefault((opening, label), Tag(opening, sys.intern(str(label))))
    return tag


def open_tag(label: str) -> Tag:
    return intern_tag(True, label)


def close_tag(label: str) -> Tag:
    return intern_tag(False, label)


class NestedWord(tuple):
    """
    Immutable sequence of tags.

    Values built through `parse_word` (or any library operation) are
    well-nested; the plain constructor does not check, so intermediate
    prefixes and rule outputs can use the same type.
    """

    def __new__(cls, tags: Iterable[Tag] = ()):
        return super().__new__(cls, tags)

    def __getitem__(self, item):
        result = super().__getitem__(item)
        if isinstance(item, slice):
            return NestedWord(result)
        return result

    def __add__(self, other):
        return NestedWord(tuple(self) + tuple(other))

    def __radd__(self, other):
        return NestedWord(tuple(other) + tuple(self))

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"NestedWord({format_word(self)!r})"

    @property
    def labels(self) -> FlatWord:
        return tuple(tag.label for tag in self)

    @classmethod
    def parse(cls, text: str, alphabet: Optional[Iterable[str]] = None) -> 'NestedWord':
        return parse_word(text, alphabet)


EMPTY_WORD = NestedWord()


def format_word(tags: Iterable[Tag]) -> str:
    """Print tags in the `<a></a>` text syntax."""
    return "".join(str(tag) for tag in tags)


def parse_tags(text: str) -> NestedWord:
    """
    Tokenize a tag string without checking nesting.

    Whitespace between tags is ignored; anything else that is not a
    `<label>` or `</label>` token is rejected.
    """
    tags = []
    position = 0
    stripped = "".join(text.split())
    while position < len(stripped):
        match = _TOKEN.match(stripped, position)
        if not match:
            raise MalformedWordError(f"unexpected text at offset {position}: {stripped[position:position + 12]!r}")
        tags.append(intern_tag(match.group(1) == "", match.group(2)))
        position = match.end()
    return NestedWord(tags)


def parse_word(text: str, alphabet: Optional[Iterable[str]] = None) -> NestedWord:
    """
    Parse a well-nested word, optionally over a declared alphabet.

    Raises:
        MalformedWordError: bad syntax, unbalanced tags or foreign labels
    """
    word = parse_tags(text)
    check_word(word, alphabet)
    return word


def check_word(seq: Sequence[Tag], alphabet: Optional[Iterable[str]] = None):
    """Raise MalformedWordError unless seq is well-nested (over alphabet)."""
    if alphabet is not None:
        allowed = set(alphabet)
        foreign = sorted({tag.label for tag in seq if tag.label not in allowed})
        if foreign:
            raise MalformedWordError(f"labels outside the alphabet: {', '.join(foreign)}")
    if not is_well_nested(seq):
        raise MalformedWordError(f"not well-nested: {format_word(seq)}")


def is_well_nested(seq: Sequence[Tag]) -> bool:
    stack: List[str] = []
    for tag in seq:
        if tag.opening:
            stack.append(tag.label)
        elif not stack or stack.pop() != tag.label:
            return False
    return not stack


def partner_positions(seq: Sequence[Tag]) -> Dict[int, int]:
    """
    Map each position of a well-nested sequence to its associated position.

    Raises:
        MalformedWordError: if seq is not well-nested
    """
    partners: Dict[int, int] = {}
    stack: List[int] = []
    for i, tag in enumerate(seq):
        if tag.opening:
            stack.append(i)
            continue
        if not stack or seq[stack[-1]].label != tag.label:
            raise MalformedWordError(f"unmatched {tag} at position {i}")
        j = stack.pop()
        partners[i] = j
        partners[j] = i
    if stack:
        raise MalformedWordError(f"unmatched {seq[stack[-1]]} at position {stack[-1]}")
    return partners


def is_rooted(w: Sequence[Tag]) -> bool:
    """True iff w is non-empty and its first and last tags are associated."""
    if not w:
        check_word(w)
        return False
    partners = partner_positions(w)
    return partners[0] == len(w) - 1


def depth(w: Sequence[Tag]) -> int:
    """Maximum nesting level of a well-nested word."""
    check_word(w)
    level = deepest = 0
    for tag in w:
        level += 1 if tag.opening else -1
        deepest = max(deepest, level)
    return deepest


def last_rooted_start(prefix: Sequence[Tag]) -> int:
    """
    Index where the rooted word ending at the final closing tag begins.

    Raises:
        MalformedWordError: if the final tag is not a closing tag with a
            matching opening tag inside prefix
    """
    if not prefix or prefix[-1].opening:
        raise MalformedWordError("prefix must end with a closing tag")
    label = prefix[-1].label
    level = 0
    for i in range(len(prefix) - 1, -1, -1):
        tag = prefix[i]
        level += -1 if tag.opening else 1
        if level == 0:
            if tag.label != label:
                raise MalformedWordError(f"closing tag {prefix[-1]} meets {tag}")
            return i
    raise MalformedWordError(f"unmatched {prefix[-1]}")


def last_rooted_suffix(prefix: Sequence[Tag]) -> NestedWord:
    """The rooted substring of prefix that ends at its final closing tag."""
    start = last_rooted_start(prefix)
    suffix = NestedWord(prefix[start:])
    check_word(suffix)
    return suffix


def encode_flat(v: Iterable[str]) -> NestedWord:
    """Encode a flat string a1...an as <a1></a1>...<an></an>."""
    tags = []
    for symbol in v:
        tags.append(open_tag(symbol))
        tags.append(close_tag(symbol))
    return NestedWord(tags)


def unmatched_positions(seq: Sequence[Tag]) -> Tuple[List[int], List[int]]:
    """
    Positions of tags that have no partner inside seq.

    Two tags are partners when the substring between them (inclusive) is a
    rooted word. A closing tag that fails to match also cuts off every
    opening tag before it.

    Returns:
        (unmatched opening positions, unmatched closing positions)
    """
    stack: List[int] = []
    unmatched_opening: List[int] = []
    unmatched_closing: List[int] = []
    for i, tag in enumerate(seq):
        if tag.opening:
            stack.append(i)
        elif stack and seq[stack[-1]].label == tag.label:
            stack.pop()
        else:
            unmatched_opening.extend(stack)
            stack = []
            unmatched_closing.append(i)
    unmatched_opening.extend(stack)
    return sorted(unmatched_opening), unmatched_closing


def shortlex_key(w: Sequence[Tag]) -> Tuple[int, str]:
    """Shortest first, then lexicographic on the printed form."""
    return len(w), format_word(w)


@lru_cache(maxsize=256)
def _words_of_length(alphabet: Tuple[str, ...], length: int) -> Tuple[NestedWord, ...]:
    if length == 0:
        return (EMPTY_WORD,)
    if length % 2:
        return ()
    words = []
    for inner in range(0, length - 1, 2):
        for label in alphabet:
            for x in _words_of_length(alphabet, inner):
                head = (open_tag(label),) + tuple(x) + (close_tag(label),)
                for y in _words_of_length(alphabet, length - 2 - inner):
                    words.append(NestedWord(head + tuple(y)))
    return tuple(sorted(words, key=shortlex_key))


def well_nested_words(alphabet: Iterable[str], max_len: int) -> Iterator[NestedWord]:
    """All well-nested words over alphabet up to max_len tags, in shortlex order."""
    letters = tuple(sorted(set(alphabet)))
    for length in range(0, max_len + 1, 2):
        yield from _words_of_length(letters, length)


def random_well_nested(rng, alphabet: Sequence[str], length: int) -> NestedWord:
    """
    Draw a random well-nested word with `length` tags.

    Args:
        rng: numpy Generator
        alphabet: labels to draw from (non-empty unless length is 0)
        length: even number of tags
    """
    if length % 2:
        raise ValueError("well-nested words have even length")
    letters = sorted(alphabet)
    tags: List[Tag] = []
    stack: List[str] = []
    remaining = length
    while remaining:
        can_open = len(stack) < remaining - 1
        if stack and (not can_open or rng.random() < 0.5):
            tags.append(close_tag(stack.pop()))
        else:
            label = letters[int(rng.integers(len(letters)))]
            stack.append(label)
            tags.append(open_tag(label))
        remaining -= 1
    return NestedWord(tags)
