"""Deterministic English suffix-stripping stemmer.

Iteratively strips derivational and inflectional suffixes (longest match
first), then applies three cleanup steps: undoubling of trailing consonants,
the ain->an vowel collapse (so "explaining" and "explanation" share the stem
"explan"), and removal of a trailing silent "e". Aggressive collisions are
acceptable for keyword grouping; consistency within a word family is what
matters.
"""

from __future__ import annotations

# (suffix, replacement, minimum stem length after stripping)
# Ordered longest-first; the first applicable rule wins per pass.
_RULES: tuple[tuple[str, str, int], ...] = (
    ("izations", "", 3),
    ("ization", "", 3),
    ("ational", "", 3),
    ("ations", "", 3),
    ("ation", "", 3),
    ("izing", "", 3),
    ("ized", "", 3),
    ("izes", "", 3),
    ("ize", "", 3),
    ("ness", "", 3),
    ("ments", "", 3),
    ("ment", "", 3),
    ("ison", "", 4),
    ("ings", "", 3),
    ("ing", "", 3),
    ("ily", "y", 3),
    ("ies", "y", 2),
    ("ied", "y", 2),
    ("ful", "", 3),
    ("less", "", 3),
    ("ers", "", 3),
    ("est", "", 4),
    ("ly", "", 4),
    ("er", "", 3),
    ("ed", "", 3),
    ("es", "", 3),
    ("s", "", 3),
)

_VOWELS = frozenset("aeiou")
# Porter-style undoubling exclusions; "fall" must not become "fal".
_NO_UNDOUBLE = frozenset("lsz")


def _strip_once(word: str) -> str | None:
    """Apply the first matching rule, or None if nothing applies."""
    for suffix, repl, min_len in _RULES:
        if word.endswith(suffix):
            stem = word[: -len(suffix)] + repl
            if len(stem) < min_len:
                continue
            # "ly" on a vowel-final stem mangles nouns ("family" -> "fami").
            if suffix == "ly" and stem and stem[-1] in _VOWELS:
                continue
            return stem
    return None


def stem(word: str) -> str:
    """Return the stem of a lowercase word."""
    current = word
    stripped = False
    while True:
        nxt = _strip_once(current)
        if nxt is None or nxt == current:
            break
        current = nxt
        stripped = True

    if (
        stripped
        and len(current) >= 3
        and current[-1] == current[-2]
        and current[-1] not in _VOWELS
        and current[-1] not in _NO_UNDOUBLE
    ):
        current = current[:-1]
    if len(current) >= 6 and current.endswith("ain"):
        current = current[:-3] + "an"
    if len(current) >= 4 and current.endswith("e"):
        current = current[:-1]
    return current
