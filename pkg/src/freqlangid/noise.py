"""Synthetic noise and its effect on the top-10 letter score vector.

Three corruptions are modelled: deleting vowels, replacing vowels with
consonants, and replacing alphanumerics with symbols. ``measure_degradation``
applies one of them many times with independent seeds and reports how the
L1 norm of the text's top-10 profile scores moves.
"""

from __future__ import annotations

import enum
import math
import random
import statistics
from collections import Counter
from dataclasses import dataclass, field, replace

from .profile import DEFAULT_DIACRITICS, LanguageProfile, ProfileSet
from .scoring import DetectorConfig, detect_normalized
from .textstats import normalize, rank_letters

__all__ = [
    "CSV_HEADER",
    "DegradationSummary",
    "NoiseKind",
    "NoiseOp",
    "NoiseTrialResult",
    "NoNoiseTargetError",
    "apply_noise",
    "default_vowels",
    "measure_degradation",
    "top10_norm",
]

BASE_VOWELS = frozenset("aeiou")
CONSONANTS = frozenset("bcdfghjklmnpqrstvwxyz")
SYMBOLS = frozenset("#$%&*+=@~^")
TOP_N = 10
CSV_HEADER = "op,rate,trials,mean_delta,std,fraction_negative,flip_rate"


class NoiseKind(enum.Enum):
    VOWEL_DELETION = "vowel-deletion"
    VOWEL_SUBSTITUTION = "vowel-substitution"
    SYMBOL_SUBSTITUTION = "symbol-substitution"


class NoNoiseTargetError(ValueError):
    """The text has no position the operation could change."""


def default_vowels(language_id: str | None = None) -> frozenset[str]:
    """``a e i o u`` plus the vowels among a language's diacritics."""
    extra = DEFAULT_DIACRITICS.get(language_id or "", frozenset())
    return BASE_VOWELS | {c for c in extra if c in "ăâîäöüáéíóőúűı"}


@dataclass(frozen=True)
class NoiseOp:
    kind: NoiseKind
    rate: float
    seed: int
    vowel_set: frozenset[str] = field(default_factory=default_vowels)
    consonant_set: frozenset[str] = CONSONANTS
    symbol_set: frozenset[str] = SYMBOLS

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", NoiseKind(self.kind))
        if not 0 < self.rate <= 1:
            raise ValueError(f"rate must be in (0, 1], got {self.rate}")
        if self.kind is NoiseKind.VOWEL_SUBSTITUTION and not self.consonant_set:
            raise ValueError("consonant_set must not be empty")
        if self.kind is NoiseKind.SYMBOL_SUBSTITUTION and not self.symbol_set:
            raise ValueError("symbol_set must not be empty")
        if not self.vowel_set and self.kind is not NoiseKind.SYMBOL_SUBSTITUTION:
            raise ValueError("vowel_set must not be empty")


def _eligible(text: str, op: NoiseOp) -> list[int]:
    if op.kind is NoiseKind.SYMBOL_SUBSTITUTION:
        return [i for i, c in enumerate(text) if c.isalnum()]
    vowels = op.vowel_set
    return [i for i, c in enumerate(text) if c.lower() in vowels]


def apply_noise(text: str, op: NoiseOp) -> str:
    """Corrupt ``ceil(rate * eligible)`` positions chosen uniformly at random.

    The result depends only on ``text`` and ``op`` (including its seed).

    Raises:
        NoNoiseTargetError: If no position is eligible for ``op.kind``.
    """
    positions = _eligible(text, op)
    if not positions:
        raise NoNoiseTargetError(f"{op.kind.value}: text has no eligible positions")
    rng = random.Random(op.seed)
    n = math.ceil(op.rate * len(positions))
    chosen = rng.sample(positions, n)

    chars = list(text)
    if op.kind is NoiseKind.VOWEL_DELETION:
        for i in chosen:
            chars[i] = ""
    else:
        pool = sorted(op.consonant_set if op.kind is NoiseKind.VOWEL_SUBSTITUTION else op.symbol_set)
        for i in sorted(chosen):
            chars[i] = rng.choice(pool)
    return "".join(chars)


def top10_norm(text: str, profile: LanguageProfile | None = None, metric: str = "profile") -> int:
    """L1 norm of the score vector over the text's ten most frequent letters.

    ``metric="profile"`` scores each letter by its rank in ``profile``;
    ``metric="count"`` uses the letter's occurrence count in the text itself.
    """
    counts = Counter(normalize(text).chars)
    top = rank_letters(counts)[:TOP_N]
    if metric == "count":
        return sum(counts[c] for c in top)
    if metric != "profile":
        raise ValueError(f"unknown metric {metric!r}")
    if profile is None:
        raise ValueError("metric='profile' needs a profile")
    return sum(profile.char_score(c) for c in top)


@dataclass(frozen=True)
class NoiseTrialResult:
    op: NoiseOp
    norm_before: int
    norm_after: int
    detection_before: str | None = None
    detection_after: str | None = None

    @property
    def delta(self) -> int:
        return self.norm_after - self.norm_before


@dataclass(frozen=True)
class DegradationSummary:
    op: NoiseKind
    rate: float
    trials: int
    mean_delta: float
    std: float
    fraction_negative: float
    flip_rate: float | None
    results: tuple[NoiseTrialResult, ...] = field(default=(), repr=False, compare=False)

    def csv_row(self) -> str:
        flip = "" if self.flip_rate is None else f"{self.flip_rate:.6f}"
        return (
            f"{self.op.value},{self.rate:g},{self.trials},{self.mean_delta:.6f},"
            f"{self.std:.6f},{self.fraction_negative:.6f},{flip}"
        )


def _winner(text: str, profiles: ProfileSet, config: DetectorConfig) -> str | None:
    normalized = normalize(text)
    if not normalized.chars:
        return None
    return detect_normalized(normalized, profiles, config).winner


def measure_degradation(
    text: str,
    profile: LanguageProfile,
    op: NoiseOp,
    trials: int = 1000,
    profiles: ProfileSet | None = None,
    config: DetectorConfig = DetectorConfig(),
    metric: str = "profile",
    min_letters: int = 500,
) -> DegradationSummary:
    """Run ``trials`` seeded corruptions of ``text`` and summarize the norm change.

    Trial seeds are drawn from ``random.Random(op.seed)``, so the whole run is
    reproducible from ``op.seed``. When ``profiles`` is given, each trial also
    records whether detection changed; otherwise ``flip_rate`` is None.
    ``metric`` is passed to :func:`top10_norm`.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n_letters = len(normalize(text).chars)
    if n_letters < min_letters:
        raise ValueError(f"text has {n_letters} letters; at least {min_letters} required")

    before = top10_norm(text, profile, metric)
    winner_before = _winner(text, profiles, config) if profiles is not None else None
    master = random.Random(op.seed)
    seeds = [master.getrandbits(64) for _ in range(trials)]

    results = []
    for seed in seeds:
        trial_op = replace(op, seed=seed)
        noisy = apply_noise(text, trial_op)
        winner_after = _winner(noisy, profiles, config) if profiles is not None else None
        after = top10_norm(noisy, profile, metric)
        results.append(NoiseTrialResult(trial_op, before, after, winner_before, winner_after))

    deltas = [r.delta for r in results]
    flip_rate = None
    if profiles is not None:
        flip_rate = sum(r.detection_after != r.detection_before for r in results) / trials
    return DegradationSummary(
        op=op.kind,
        rate=op.rate,
        trials=trials,
        mean_delta=statistics.fmean(deltas),
        std=statistics.pstdev(deltas),
        fraction_negative=sum(d < 0 for d in deltas) / trials,
        flip_rate=flip_rate,
        results=tuple(results),
    )
