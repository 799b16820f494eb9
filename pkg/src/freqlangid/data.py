"""Locations of the bundled corpus, evaluation samples and profiles."""

from __future__ import annotations

from pathlib import Path

from .profile import DEFAULT_DIACRITICS, ProfileSet, build_profile, load_profiles

DATA_DIR = Path(__file__).parent / "data"
CORPUS_DIR = DATA_DIR / "corpus"
MINI_DIR = DATA_DIR / "mini"
MINI_MANIFEST = MINI_DIR / "manifest.tsv"
PROFILES_PATH = DATA_DIR / "profiles.json"

LANGUAGES = ("de", "en", "hu", "nl", "ro", "tr")


def corpus_texts(language_id: str, corpus_dir: Path = CORPUS_DIR) -> list[str]:
    """Read every ``*.txt`` file under ``corpus_dir/<language_id>``, sorted by name."""
    files = sorted((corpus_dir / language_id).glob("*.txt"))
    return [f.read_text(encoding="utf-8") for f in files]


def build_bundled_profiles(corpus_dir: Path = CORPUS_DIR) -> ProfileSet:
    return ProfileSet(
        build_profile(
            corpus_texts(lang, corpus_dir),
            lang,
            DEFAULT_DIACRITICS[lang],
            source=f"bundled corpus/{lang}",
        )
        for lang in LANGUAGES
    )


def bundled_profiles() -> ProfileSet:
    return load_profiles(PROFILES_PATH)
