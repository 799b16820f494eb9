"""Text normalization and character-level statistics.

Every scorer in the package works from a :class:`TextStats`: letter counts,
the top-m ranking of the input, within-word bigram counts and the number of
letters that belong to each language's diacritic inventory.
"""

from __future__ import annotations

import functools
import operator
import re
import sys
import unicodedata
from collections import Counter
from collections.abc import Collection, Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

__all__ = [
    "FrequencyDistribution",
    "NormalizedText",
    "TextDecodeError",
    "TextStats",
    "compute_stats",
    "normalize",
    "rank_letters",
    "top_k_report",
]

# Alphanumeric minus decimal digits and underscore; non-alphabetic numerics
# (superscripts, roman numerals) are filtered out afterwards.
_LETTER_RUN = re.compile(r"[^\W\d_]+")


class TextDecodeError(ValueError):
    """Raised when raw bytes are not valid UTF-8."""

    def __init__(self, offset: int, reason: str) -> None:
        super().__init__(f"invalid UTF-8 at byte offset {offset}: {reason}")
        self.offset = offset


@functools.lru_cache(maxsize=1)
def _mark_table() -> dict[int, None]:
    return {
        cp: None
        for cp in range(sys.maxunicode + 1)
        if unicodedata.category(chr(cp)).startswith("M")
    }


@dataclass(frozen=True)
class NormalizedText:
    """Lowercased letters of a text with the positions where words break.

    ``word_boundaries`` holds every index ``i`` of ``chars`` such that
    ``chars[i - 1]`` and ``chars[i]`` came from different words.
    """

    chars: str
    word_boundaries: tuple[int, ...]
    original_length_chars: int
    original_length_bytes: int

    @cached_property
    def words(self) -> tuple[str, ...]:
        if not self.chars:
            return ()
        edges = (0, *self.word_boundaries, len(self.chars))
        return tuple(self.chars[a:b] for a, b in zip(edges, edges[1:]))

    def __len__(self) -> int:
        return len(self.chars)


def normalize(raw: str | bytes) -> NormalizedText:
    """Normalize raw text to lowercase NFC letters split into words.

    Diacritic letters survive as their own scalars (``ă`` never becomes
    ``a``). Anything that is not alphabetic acts as a word separator, except
    combining marks left over after composition, which are dropped in place.

    Args:
        raw: Text, or UTF-8 encoded bytes.

    Returns:
        The normalized text.

    Raises:
        TextDecodeError: If ``raw`` is bytes and not valid UTF-8.
    """
    if isinstance(raw, (bytes, bytearray)):
        n_bytes = len(raw)
        try:
            raw = bytes(raw).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise TextDecodeError(exc.start, exc.reason) from None
    else:
        n_bytes = len(raw.encode("utf-8", "surrogatepass"))

    text = unicodedata.normalize("NFC", raw).lower()
    if not text.isascii():
        # lower() can emit a decomposed sequence (U+0130 -> i + U+0307)
        text = unicodedata.normalize("NFC", text).translate(_mark_table())

    words: list[str] = []
    for run in _LETTER_RUN.findall(text):
        if run.isalpha():
            words.append(run)
        else:
            words.extend(_mask_non_alpha(run).split())

    boundaries: list[int] = []
    pos = 0
    for word in words[:-1]:
        pos += len(word)
        boundaries.append(pos)
    return NormalizedText("".join(words), tuple(boundaries), len(raw), n_bytes)


def _mask_non_alpha(run: str) -> str:
    return "".join(c if c.isalpha() else " " for c in run)


@dataclass(frozen=True)
class FrequencyDistribution:
    """Letter occurrence counts of one text."""

    counts: Mapping[str, int]
    total: int

    def relative(self, letter: str) -> float:
        return self.counts.get(letter, 0) / self.total if self.total else 0.0

    def relative_frequencies(self) -> dict[str, float]:
        if not self.total:
            return {}
        return {c: n / self.total for c, n in self.counts.items()}


@dataclass(frozen=True)
class TextStats:
    """Statistics of a single text consumed by the scorers."""

    dist: FrequencyDistribution
    top_chars: tuple[str, ...]
    bigram_counts: Mapping[str, int]
    diacritic_counts: Mapping[str, int] = field(default_factory=dict)

    @property
    def letter_total(self) -> int:
        return self.dist.total


def rank_letters(counts: Mapping[str, int]) -> list[str]:
    """Order keys by descending count, ties by ascending code point."""
    return [c for c, _ in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))]


def count_bigrams(words: Iterable[str]) -> Counter[str]:
    """Count adjacent letter pairs inside each word."""
    joined = " ".join(words)
    pairs = Counter(map(operator.add, joined, joined[1:]))
    for key in [k for k in pairs if " " in k]:
        del pairs[key]
    return pairs


def compute_stats(
    text: NormalizedText,
    m: int = 10,
    diacritics: Mapping[str, Collection[str]] | None = None,
) -> TextStats:
    """Compute counts, top-m letters, bigrams and diacritic counts.

    Args:
        text: Output of :func:`normalize`.
        m: How many top letters to keep.
        diacritics: Language id to diacritic inventory; one count is
            produced per language.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    counts = Counter(text.chars)
    dist = FrequencyDistribution(dict(counts), len(text.chars))
    top = tuple(rank_letters(counts)[:m])
    bigrams = dict(count_bigrams(text.words))
    dia = {}
    if diacritics:
        dia = {lang: sum(counts.get(c, 0) for c in inv) for lang, inv in diacritics.items()}
    return TextStats(dist, top, bigrams, dia)


def top_k_report(stats: TextStats, k: int) -> list[tuple[str, float]]:
    """Return the k most frequent letters with their share in percent.

    Percentages are rounded to two decimals, matching how frequency tables
    are usually printed.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    total = stats.dist.total
    if not total:
        return []
    ranked = rank_letters(stats.dist.counts)[:k]
    return [(c, round(100.0 * stats.dist.counts[c] / total, 2)) for c in ranked]
