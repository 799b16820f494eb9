"""Statistical language identification from letter, bigram and diacritic frequencies."""

from .profile import LanguageProfile, ProfileSet, build_profile, load_profiles, save_profiles
from .scoring import (
    DetectionResult,
    DetectorConfig,
    ScoreBreakdown,
    UndeterminableError,
    combined_score,
    detect,
    norm_value,
)
from .textstats import NormalizedText, TextStats, compute_stats, normalize, top_k_report

__version__ = "0.1.0"

__all__ = [
    "DetectionResult",
    "DetectorConfig",
    "LanguageProfile",
    "NormalizedText",
    "ProfileSet",
    "ScoreBreakdown",
    "TextStats",
    "UndeterminableError",
    "build_profile",
    "combined_score",
    "compute_stats",
    "detect",
    "load_profiles",
    "norm_value",
    "normalize",
    "save_profiles",
    "top_k_report",
]
