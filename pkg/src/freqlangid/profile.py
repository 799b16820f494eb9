"""Per-language reference profiles: ranked letters, ranked bigrams, diacritics."""

from __future__ import annotations

import json
import logging
import os
import tempfile
import warnings
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .textstats import compute_stats, normalize, rank_letters

__all__ = [
    "DEFAULT_DIACRITICS",
    "FORMAT_VERSION",
    "MAX_BIGRAMS",
    "MAX_CHARS",
    "LanguageProfile",
    "ProfileSet",
    "ProfileValidationError",
    "ShortProfileWarning",
    "build_profile",
    "load_profiles",
    "save_profiles",
]

logger = logging.getLogger(__name__)

MAX_CHARS = 25
MAX_BIGRAMS = 10
FORMAT_VERSION = 1

# Both cedilla and comma-below forms are kept for Romanian.
DEFAULT_DIACRITICS: dict[str, frozenset[str]] = {
    "ro": frozenset("ăâîşţșț"),
    "de": frozenset("äöüß"),
    "hu": frozenset("áéíóöőúüű"),
    "tr": frozenset("çğıöşü"),
    "nl": frozenset(),
    "en": frozenset(),
}


class ProfileValidationError(ValueError):
    """A profile or profile file violates the schema."""

    def __init__(self, field_name: str, message: str) -> None:
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class ShortProfileWarning(UserWarning):
    """The corpus had fewer distinct letters than a full profile needs."""


def _check_letter(value: Any, field_name: str) -> None:
    if not isinstance(value, str) or len(value) != 1 or not value.isalpha():
        raise ProfileValidationError(field_name, f"{value!r} is not a single letter")
    if value != value.lower():
        raise ProfileValidationError(field_name, f"{value!r} is not lowercase")


@dataclass(frozen=True)
class LanguageProfile:
    """Reference ranking for one language.

    ``ranked_chars[0]`` scores 25 and each following letter one point less;
    ``ranked_bigrams[0]`` scores 10 likewise. Anything unlisted scores 0.
    """

    language_id: str
    ranked_chars: tuple[str, ...]
    ranked_bigrams: tuple[str, ...] = ()
    diacritics: frozenset[str] = frozenset()
    source_meta: str = ""
    _char_scores: dict[str, int] = field(init=False, repr=False, compare=False)
    _bigram_scores: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranked_chars", tuple(self.ranked_chars))
        object.__setattr__(self, "ranked_bigrams", tuple(self.ranked_bigrams))
        object.__setattr__(self, "diacritics", frozenset(self.diacritics))
        self._validate()
        object.__setattr__(
            self, "_char_scores", {c: MAX_CHARS - i for i, c in enumerate(self.ranked_chars)}
        )
        object.__setattr__(
            self, "_bigram_scores", {b: MAX_BIGRAMS - i for i, b in enumerate(self.ranked_bigrams)}
        )

    def _validate(self) -> None:
        if not isinstance(self.language_id, str) or not self.language_id:
            raise ProfileValidationError("language_id", "must be a non-empty string")
        if len(self.ranked_chars) > MAX_CHARS:
            raise ProfileValidationError("ranked_chars", f"ranked_chars exceeds {MAX_CHARS}")
        for c in self.ranked_chars:
            _check_letter(c, "ranked_chars")
        if len(set(self.ranked_chars)) != len(self.ranked_chars):
            raise ProfileValidationError("ranked_chars", "duplicate entries")
        if len(self.ranked_bigrams) > MAX_BIGRAMS:
            raise ProfileValidationError("ranked_bigrams", f"ranked_bigrams exceeds {MAX_BIGRAMS}")
        for b in self.ranked_bigrams:
            if not isinstance(b, str) or len(b) != 2:
                raise ProfileValidationError("ranked_bigrams", f"{b!r} is not a letter pair")
            _check_letter(b[0], "ranked_bigrams")
            _check_letter(b[1], "ranked_bigrams")
        if len(set(self.ranked_bigrams)) != len(self.ranked_bigrams):
            raise ProfileValidationError("ranked_bigrams", "duplicate entries")
        for d in self.diacritics:
            _check_letter(d, "diacritics")

    def char_score(self, letter: str) -> int:
        return self._char_scores.get(letter, 0)

    def bigram_score(self, bigram: str) -> int:
        return self._bigram_scores.get(bigram, 0)

    def to_dict(self) -> dict[str, Any]:
        return {
            "language_id": self.language_id,
            "ranked_chars": list(self.ranked_chars),
            "ranked_bigrams": list(self.ranked_bigrams),
            "diacritics": sorted(self.diacritics),
            "source_meta": self.source_meta,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> LanguageProfile:
        expected = {"language_id", "ranked_chars", "ranked_bigrams", "diacritics", "source_meta"}
        missing = expected - set(data)
        if missing:
            raise ProfileValidationError(sorted(missing)[0], "missing")
        unknown = set(data) - expected
        if unknown:
            raise ProfileValidationError(sorted(unknown)[0], "unknown field")
        for key in ("ranked_chars", "ranked_bigrams", "diacritics"):
            if not isinstance(data[key], list):
                raise ProfileValidationError(key, "must be a list")
        diacritics = data["diacritics"]
        if len(set(diacritics)) != len(diacritics):
            raise ProfileValidationError("diacritics", "duplicate entries")
        return cls(
            language_id=data["language_id"],
            ranked_chars=tuple(data["ranked_chars"]),
            ranked_bigrams=tuple(data["ranked_bigrams"]),
            diacritics=frozenset(diacritics),
            source_meta=str(data["source_meta"]),
        )


class ProfileSet(Mapping[str, LanguageProfile]):
    """Immutable collection of profiles keyed by language id."""

    def __init__(self, profiles: Iterable[LanguageProfile] = ()) -> None:
        by_id: dict[str, LanguageProfile] = {}
        for p in profiles:
            if p.language_id in by_id:
                raise ProfileValidationError("language_id", f"duplicate {p.language_id!r}")
            by_id[p.language_id] = p
        self._profiles = dict(sorted(by_id.items()))

    def __getitem__(self, language_id: str) -> LanguageProfile:
        return self._profiles[language_id]

    def __iter__(self) -> Iterator[str]:
        return iter(self._profiles)

    def __len__(self) -> int:
        return len(self._profiles)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ProfileSet):
            return self._profiles == other._profiles
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._profiles))

    def __repr__(self) -> str:
        return f"ProfileSet({list(self._profiles)})"

    def replace(self, profile: LanguageProfile) -> ProfileSet:
        """Return a new set with ``profile`` added or swapped in."""
        merged = dict(self._profiles)
        merged[profile.language_id] = profile
        return ProfileSet(merged.values())

    def diacritic_inventories(self) -> dict[str, frozenset[str]]:
        return {lang: p.diacritics for lang, p in self._profiles.items()}


def build_profile(
    corpus_texts: Iterable[str],
    language_id: str,
    diacritics: Iterable[str] | None = None,
    source: str = "",
) -> LanguageProfile:
    """Build a profile from the aggregate counts of a corpus.

    Args:
        corpus_texts: Raw texts; their order does not matter.
        language_id: Tag stored on the profile.
        diacritics: Diacritic inventory. Defaults to
            ``DEFAULT_DIACRITICS[language_id]`` when known, else empty.
        source: Corpus name, prepended to ``source_meta``.

    Raises:
        ValueError: If the corpus contains no letters.
    """
    if diacritics is None:
        diacritics = DEFAULT_DIACRITICS.get(language_id, frozenset())
    inventory = frozenset(diacritics)

    letters: Counter[str] = Counter()
    bigrams: Counter[str] = Counter()
    n_texts = 0
    for raw in corpus_texts:
        stats = compute_stats(normalize(raw), 1)
        letters.update(stats.dist.counts)
        bigrams.update(stats.bigram_counts)
        n_texts += 1

    total = sum(letters.values())
    if not total:
        raise ValueError(f"corpus for {language_id!r} contains no letters")
    if len(letters) < MAX_CHARS:
        msg = (
            f"corpus for {language_id!r} has only {len(letters)} distinct letters; "
            f"profile will rank fewer than {MAX_CHARS}"
        )
        logger.warning(msg)
        warnings.warn(msg, ShortProfileWarning, stacklevel=2)

    dia_pct = 100.0 * sum(letters[c] for c in inventory) / total
    meta = f"texts={n_texts}; letters={total}; distinct={len(letters)}; diacritics={dia_pct:.2f}%"
    if source:
        meta = f"{source}; {meta}"
    return LanguageProfile(
        language_id=language_id,
        ranked_chars=tuple(rank_letters(letters)[:MAX_CHARS]),
        ranked_bigrams=tuple(rank_letters(bigrams)[:MAX_BIGRAMS]),
        diacritics=inventory,
        source_meta=meta,
    )


def dumps_profiles(profiles: ProfileSet) -> str:
    doc = {"version": FORMAT_VERSION, "profiles": [p.to_dict() for p in profiles.values()]}
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def loads_profiles(payload: str) -> ProfileSet:
    try:
        doc = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise ProfileValidationError("document", f"not valid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise ProfileValidationError("document", "top level must be an object")
    if doc.get("version") != FORMAT_VERSION:
        raise ProfileValidationError("version", f"unsupported version {doc.get('version')!r}")
    entries = doc.get("profiles")
    if not isinstance(entries, list):
        raise ProfileValidationError("profiles", "must be a list")
    return ProfileSet(LanguageProfile.from_dict(e) for e in entries)


def save_profiles(profiles: ProfileSet, path: str | os.PathLike[str]) -> None:
    """Write profiles as sorted-key JSON, replacing ``path`` atomically."""
    path = Path(path)
    payload = dumps_profiles(profiles).encode("utf-8")
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def load_profiles(path: str | os.PathLike[str]) -> ProfileSet:
    return loads_profiles(Path(path).read_text(encoding="utf-8"))
