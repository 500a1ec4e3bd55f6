"""Text preprocessing: sentence segmentation, term extraction, font assignment.

Turns raw text into a ranked list of displayable terms. Each term carries its
stem, summed frequency, a linearly frequency-scaled font size and an estimated
bounding box. Sentence-occurrence sets per stem are kept for the similarity
graph stage.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from importlib import resources

from .errors import EmptyInput

# Box estimation without a renderer; clients may override with measured boxes.
BOX_WIDTH_PER_CHAR = 0.55
BOX_LINE_HEIGHT = 1.2

DEFAULT_K = 50
DEFAULT_MIN_FONT = 12.0
DEFAULT_MAX_FONT = 48.0

_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+")
_EDGE_PUNCT = "\"'`.,;:!?()[]{}<>/\\|~*^&%$#@+=_‘’“”–—-"
_NUMERIC = re.compile(r"^\d+$")


@dataclass(frozen=True)
class SentenceIndex:
    """Tokenized sentences plus per-stem sentence-occurrence sets."""

    sentences: tuple[tuple[str, ...], ...]
    term_sentences: dict[str, frozenset[int]]


@dataclass(frozen=True)
class Term:
    surface: str
    stem: str
    frequency: int
    font_size: float = 0.0
    box_width: float = 0.0
    box_height: float = 0.0


def _is_candidate(token: str) -> bool:
    """Tokens shorter than 2 chars and pure numbers never become terms."""
    return len(token) >= 2 and not _NUMERIC.match(token)


def segment_sentences(text: str) -> SentenceIndex:
    """Split text into tokenized sentences and index stem occurrences.

    Sentences end at terminal punctuation (. ! ?) followed by whitespace, or
    at end of input. Tokens are lowercased with punctuation stripped from
    their edges. Raises EmptyInput when nothing tokenizable remains.
    """
    from .stemmer import stem as stem_word

    if not text or not text.strip():
        raise EmptyInput("input text is empty")

    sentences: list[tuple[str, ...]] = []
    term_sentences: dict[str, set[int]] = {}
    for raw in _SENTENCE_SPLIT.split(text.strip()):
        tokens = []
        for piece in raw.split():
            token = piece.strip(_EDGE_PUNCT).lower()
            if token:
                tokens.append(token)
        if not tokens:
            continue
        ordinal = len(sentences)
        sentences.append(tuple(tokens))
        for token in tokens:
            if _is_candidate(token):
                term_sentences.setdefault(stem_word(token), set()).add(ordinal)

    if not sentences:
        raise EmptyInput("no token survives tokenization")
    return SentenceIndex(
        sentences=tuple(sentences),
        term_sentences={s: frozenset(o) for s, o in term_sentences.items()},
    )


def load_default_stopwords() -> frozenset[str]:
    data = resources.files("semcloud.data").joinpath("stopwords.txt").read_text("utf-8")
    return frozenset(w for w in data.split() if w)


def extract_terms(
    index: SentenceIndex, k: int, stopwords: frozenset[str] | set[str]
) -> list[Term]:
    """Rank non-stopword stems by summed token frequency, keep the top k.

    The representative surface per stem is its most frequent original form,
    ties broken by earliest first occurrence in the text. Frequency ties in
    the ranking are broken by first occurrence as well.
    """
    from .stemmer import stem as stem_word

    if k < 1:
        raise ValueError("k must be >= 1")

    freq: dict[str, int] = {}
    first_seen: dict[str, int] = {}
    surface_count: dict[str, dict[str, int]] = {}
    surface_first: dict[str, dict[str, int]] = {}

    position = 0
    for sentence in index.sentences:
        for token in sentence:
            position += 1
            if not _is_candidate(token) or token in stopwords:
                continue
            s = stem_word(token)
            freq[s] = freq.get(s, 0) + 1
            first_seen.setdefault(s, position)
            counts = surface_count.setdefault(s, {})
            counts[token] = counts.get(token, 0) + 1
            surface_first.setdefault(s, {}).setdefault(token, position)

    if not freq:
        raise EmptyInput("no non-stopword token survives")

    ranked = sorted(freq, key=lambda s: (-freq[s], first_seen[s]))[:k]
    terms = []
    for s in ranked:
        counts = surface_count[s]
        firsts = surface_first[s]
        surface = min(counts, key=lambda w: (-counts[w], firsts[w]))
        terms.append(Term(surface=surface, stem=s, frequency=freq[s]))
    return terms


def assign_fonts(
    terms: list[Term], min_font: float, max_font: float
) -> list[Term]:
    """Scale font sizes linearly with frequency and estimate bounding boxes."""
    if not terms:
        raise ValueError("terms must be non-empty")
    if not min_font < max_font:
        raise ValueError("min_font must be < max_font")

    freqs = [t.frequency for t in terms]
    f_min, f_max = min(freqs), max(freqs)
    out = []
    for t in terms:
        if f_max == f_min:
            font = (min_font + max_font) / 2.0
        else:
            font = min_font + (t.frequency - f_min) / (f_max - f_min) * (max_font - min_font)
        out.append(
            replace(
                t,
                font_size=font,
                box_width=BOX_WIDTH_PER_CHAR * font * len(t.surface),
                box_height=BOX_LINE_HEIGHT * font,
            )
        )
    return out


def build_terms(
    text: str,
    k: int = DEFAULT_K,
    stopwords: frozenset[str] | None = None,
    min_font: float = DEFAULT_MIN_FONT,
    max_font: float = DEFAULT_MAX_FONT,
) -> tuple[list[Term], SentenceIndex]:
    """Full pipeline: segment, extract, assign fonts."""
    index = segment_sentences(text)
    if stopwords is None:
        stopwords = load_default_stopwords()
    terms = assign_fonts(extract_terms(index, k, stopwords), min_font, max_font)
    return terms, index
