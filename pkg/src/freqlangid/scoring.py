"""Monogram, bigram and diacritic scoring and the detection decision.

A language's total is::

    total = sum(X) + sum(F[i - 1] * i for i in 1..10) + 100 * k

where ``X`` holds the profile scores of the text's top-m letters, ``F[i - 1]``
counts occurrences of the profile bigram worth ``i`` points, and ``k`` is 0, 1
or 2 depending on how much of the text is made of that language's diacritics.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .profile import MAX_BIGRAMS, MAX_CHARS, LanguageProfile, ProfileSet
from .textstats import NormalizedText, TextStats, compute_stats, normalize

__all__ = [
    "DetectionResult",
    "DetectorConfig",
    "ScoreBreakdown",
    "UndeterminableError",
    "bigram_score",
    "bonus_multiplier",
    "combined_score",
    "detect",
    "detect_normalized",
    "diacritic_bonus",
    "monogram_score",
    "norm_value",
]


class UndeterminableError(ValueError):
    """The input has no letters, so no language can be assigned."""


@dataclass(frozen=True)
class DetectorConfig:
    """Scoring switches.

    ``method(1)`` is letter frequency plus diacritic bonus; ``method(2)``
    adds bigram scoring.
    """

    m: int = 10
    enable_bigrams: bool = True
    enable_diacritic_bonus: bool = True
    bonus_unit: int = 100
    thresholds: tuple[float, float] = (0.05, 0.10)
    low_confidence_margin: int = 10

    def __post_init__(self) -> None:
        if not 1 <= self.m <= MAX_CHARS:
            raise ValueError(f"m must be in [1, {MAX_CHARS}], got {self.m}")
        lo, hi = self.thresholds
        if not 0 < lo < hi < 1:
            raise ValueError(f"thresholds must be strictly increasing in (0, 1), got {self.thresholds}")
        if self.bonus_unit < 0:
            raise ValueError("bonus_unit must be non-negative")

    @classmethod
    def method(cls, number: int, **overrides) -> DetectorConfig:
        if number not in (1, 2):
            raise ValueError(f"unknown method {number}; expected 1 or 2")
        return cls(enable_bigrams=number == 2, **overrides)

    @property
    def method_number(self) -> int | None:
        if self.enable_diacritic_bonus:
            return 2 if self.enable_bigrams else 1
        return None


@dataclass(frozen=True)
class ScoreBreakdown:
    language_id: str
    X: tuple[int, ...]
    F: tuple[int, ...]
    monogram_total: int
    bigram_total: int
    p: float
    k: int
    bonus: int
    total: int

    def to_dict(self) -> dict:
        return {
            "language_id": self.language_id,
            "X": list(self.X),
            "F": list(self.F),
            "monogram_total": self.monogram_total,
            "bigram_total": self.bigram_total,
            "p": self.p,
            "k": self.k,
            "bonus": self.bonus,
            "total": self.total,
        }


@dataclass(frozen=True)
class DetectionResult:
    scores: tuple[ScoreBreakdown, ...]
    winner: str
    margin: int
    text_length_chars: int
    tie: bool = False
    low_confidence: bool = False

    def score_for(self, language_id: str) -> ScoreBreakdown:
        for s in self.scores:
            if s.language_id == language_id:
                return s
        raise KeyError(language_id)

    def to_dict(self) -> dict:
        return {
            "winner": self.winner,
            "margin": self.margin,
            "tie": self.tie,
            "low_confidence": self.low_confidence,
            "text_length_chars": self.text_length_chars,
            "scores": [s.to_dict() for s in self.scores],
        }


def norm_value(X: Sequence[float], F: Sequence[float]) -> float:
    """Bonus-free combined norm: ``sum |X_i| + sum |F_i * i|`` with 1-based i."""
    if len(X) != len(F):
        raise ValueError(f"length mismatch: |X|={len(X)} but |F|={len(F)}")
    return sum(abs(x) for x in X) + sum(abs(f * i) for i, f in enumerate(F, start=1))


def monogram_score(stats: TextStats, profile: LanguageProfile, m: int) -> tuple[tuple[int, ...], int]:
    top = stats.top_chars[:m]
    X = tuple(profile.char_score(c) for c in top) + (0,) * (m - len(top))
    return X, sum(X)


def bigram_score(stats: TextStats, profile: LanguageProfile) -> tuple[tuple[int, ...], int]:
    """F[i - 1] is the text's count of the profile bigram scoring ``i``."""
    F = [0] * MAX_BIGRAMS
    for b in profile.ranked_bigrams:
        F[profile.bigram_score(b) - 1] = stats.bigram_counts.get(b, 0)
    return tuple(F), sum(f * i for i, f in enumerate(F, start=1))


def bonus_multiplier(p: float, thresholds: tuple[float, float] = (0.05, 0.10)) -> int:
    """2 above the upper threshold, 1 above the lower one, else 0."""
    lo, hi = thresholds
    if p > hi:
        return 2
    if p > lo:
        return 1
    return 0


def diacritic_bonus(
    stats: TextStats, profile: LanguageProfile, config: DetectorConfig = DetectorConfig()
) -> tuple[float, int, int]:
    """Return ``(p, k, bonus)`` for one language."""
    total = stats.letter_total
    if not total:
        return 0.0, 0, 0
    if profile.language_id in stats.diacritic_counts:
        count = stats.diacritic_counts[profile.language_id]
    else:
        count = sum(stats.dist.counts.get(c, 0) for c in profile.diacritics)
    p = count / total
    k = bonus_multiplier(p, config.thresholds)
    return p, k, config.bonus_unit * k


def combined_score(
    stats: TextStats, profile: LanguageProfile, config: DetectorConfig = DetectorConfig()
) -> ScoreBreakdown:
    X, mono = monogram_score(stats, profile, config.m)
    if config.enable_bigrams:
        F, bi = bigram_score(stats, profile)
    else:
        F, bi = (0,) * MAX_BIGRAMS, 0
    p, k, bonus = diacritic_bonus(stats, profile, config)
    if not config.enable_diacritic_bonus:
        k, bonus = 0, 0
    return ScoreBreakdown(profile.language_id, X, F, mono, bi, p, k, bonus, mono + bi + bonus)


def detect_normalized(
    text: NormalizedText, profiles: ProfileSet, config: DetectorConfig = DetectorConfig()
) -> DetectionResult:
    if len(profiles) < 2:
        raise ValueError(f"detection needs at least 2 profiles, got {len(profiles)}")
    if not text.chars:
        raise UndeterminableError("text contains no letters")
    stats = compute_stats(text, config.m, profiles.diacritic_inventories())
    scores = sorted(
        (combined_score(stats, p, config) for p in profiles.values()),
        key=lambda s: (-s.total, s.language_id),
    )
    best, runner_up = scores[0], scores[1]
    margin = best.total - runner_up.total
    return DetectionResult(
        scores=tuple(scores),
        winner=best.language_id,
        margin=margin,
        text_length_chars=text.original_length_chars,
        tie=margin == 0,
        low_confidence=margin < config.low_confidence_margin,
    )


def detect(
    raw: str | bytes, profiles: ProfileSet, config: DetectorConfig = DetectorConfig()
) -> DetectionResult:
    """Score ``raw`` against every profile and pick the highest total.

    Ties go to the smallest language id and set ``tie``; a margin below
    ``config.low_confidence_margin`` sets ``low_confidence``.

    Raises:
        UndeterminableError: If ``raw`` has no letters.
    """
    return detect_normalized(normalize(raw), profiles, config)

