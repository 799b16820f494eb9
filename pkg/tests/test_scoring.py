from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from freqlangid.data import MINI_DIR
from freqlangid.profile import LanguageProfile, ProfileSet
from freqlangid.scoring import (
    DetectorConfig,
    UndeterminableError,
    bigram_score,
    bonus_multiplier,
    combined_score,
    detect,
    diacritic_bonus,
    monogram_score,
    norm_value,
)
from freqlangid.textstats import compute_stats, normalize
from oracle import oracle_total

ETA = LanguageProfile("xx", tuple("eta"), ("th",), frozenset("é"))


def _stats(text, profiles=None, m=10):
    inv = profiles.diacritic_inventories() if profiles else None
    return compute_stats(normalize(text), m, inv)


def _sample(lang, name):
    return (MINI_DIR / lang / f"{name}.txt").read_text(encoding="utf-8")


def test_monogram_lookup():
    X, total = monogram_score(_stats("eeee ttt aa"), ETA, 10)
    assert X == (25, 24, 23) + (0,) * 7
    assert total == 72


def test_monogram_absent_letters():
    assert monogram_score(_stats("xyz"), ETA, 10)[1] == 0


def test_bigram_top_three_times():
    F, total = bigram_score(_stats("th th th"), ETA)
    assert F == (0,) * 9 + (3,)
    assert total == 30


def test_bigram_none():
    assert bigram_score(_stats("xyz"), ETA)[1] == 0


@pytest.mark.parametrize(
    "p, bonus", [(0.12, 200), (0.07, 100), (0.05, 0), (0.10, 100), (0.0, 0), (0.100001, 200)]
)
def test_bonus_rule(p, bonus):
    assert 100 * bonus_multiplier(p) == bonus


def test_bonus_from_text():
    # 3 of 20 letters are é
    p, k, bonus = diacritic_bonus(_stats("ééé" + "a" * 17), ETA)
    assert p == pytest.approx(0.15)
    assert (k, bonus) == (2, 200)


def test_combined_composition():
    text = "eeee ttt aa th th th" + " é" * 4
    s = combined_score(_stats(text), ETA)
    assert s.monogram_total == 72
    assert s.bigram_total == 30
    assert s.p > 0.10 and s.bonus == 200
    assert s.total == 302


def test_all_flags_off():
    cfg = DetectorConfig(enable_bigrams=False, enable_diacritic_bonus=False)
    s = combined_score(_stats("eeee ttt aa th th th é é é é"), ETA, cfg)
    assert s.total == s.monogram_total
    assert s.bonus == 0 and s.bigram_total == 0


def test_method_configs():
    assert DetectorConfig.method(1).enable_bigrams is False
    assert DetectorConfig.method(2).enable_bigrams is True
    assert DetectorConfig.method(1).method_number == 1
    with pytest.raises(ValueError):
        DetectorConfig.method(3)


@pytest.mark.parametrize("kwargs", [{"m": 0}, {"m": 26}, {"thresholds": (0.1, 0.05)}, {"bonus_unit": -1}])
def test_invalid_config(kwargs):
    with pytest.raises(ValueError):
        DetectorConfig(**kwargs)


def test_romanian_monogram_is_greatest(profiles):
    stats = _stats(_sample("ro", "sat_lung"), profiles)
    totals = {lang: monogram_score(stats, profiles[lang], 10)[1] for lang in ("ro", "de", "en")}
    assert totals["ro"] > max(totals["de"], totals["en"])
    text = _sample("ro", "sat_lung")
    p = profiles["ro"]
    assert totals["ro"] == oracle_total(
        text, list(p.ranked_chars), list(p.ranked_bigrams), set(p.diacritics), bigrams=False, bonus=False
    )


def test_bigrams_fix_little_red_riding_hood(profiles):
    text = _sample("en", "little_red_riding_hood")
    assert detect(text, profiles, DetectorConfig.method(2)).winner == "en"


@pytest.mark.parametrize(
    "lang, name",
    [("ro", "scufita_rosie"), ("ro", "alba_ca_zapada"), ("de", "schneewittchen"), ("de", "rotkaeppchen")],
)
def test_fairy_tales(profiles, lang, name):
    text = _sample(lang, name)
    assert len(text) >= 150
    assert detect(text, profiles).winner == lang


def test_empty_is_undeterminable(profiles):
    with pytest.raises(UndeterminableError):
        detect("", profiles)
    with pytest.raises(UndeterminableError):
        detect("123 !!", profiles)


def test_needs_two_profiles(profiles):
    with pytest.raises(ValueError):
        detect("abc", ProfileSet([profiles["en"]]))


def test_tie_goes_to_smallest_id():
    a = LanguageProfile("b", tuple("abc"))
    b = LanguageProfile("a", tuple("abc"))
    r = detect("abc", ProfileSet([a, b]))
    assert r.winner == "a"
    assert r.tie and r.low_confidence and r.margin == 0


def test_detection_result_dict(profiles):
    r = detect(_sample("de", "dorf_lang"), profiles)
    d = r.to_dict()
    assert d["winner"] == "de"
    assert [s["language_id"] for s in d["scores"]][0] == "de"
    assert set(d["scores"][0]) == {
        "language_id", "X", "F", "monogram_total", "bigram_total", "p", "k", "bonus", "total",
    }
    assert r.score_for("de").total == d["scores"][0]["total"]


def test_oracle_agreement_random(profiles):
    rng = random.Random(7)
    alphabet = "abcdefghijklmnoprstuvzăâîșțäöüßáéőűçğışı  ,.'1-"
    for _ in range(50):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 200)))
        for p in profiles.values():
            for method in (1, 2):
                s = combined_score(_stats(text, profiles), p, DetectorConfig.method(method))
                assert s.total == oracle_total(
                    text, list(p.ranked_chars), list(p.ranked_bigrams), set(p.diacritics), bigrams=method == 2
                )


def test_norm_zero():
    assert norm_value([0] * 10, [0] * 10) == 0


def test_norm_length_mismatch():
    with pytest.raises(ValueError):
        norm_value([1, 2], [1])


ints = st.integers(-10**6, 10**6)
vec_pair = st.integers(1, 12).flatmap(
    lambda n: st.tuples(st.lists(ints, min_size=n, max_size=n), st.lists(ints, min_size=n, max_size=n))
)


@given(vec_pair)
def test_norm_definite(xf):
    X, F = xf
    assert norm_value(X, F) >= 0
    assert (norm_value(X, F) == 0) == (not any(X) and not any(F))


@given(vec_pair, st.integers(-1000, 1000))
def test_norm_homogeneous(xf, alpha):
    X, F = xf
    assert norm_value([alpha * x for x in X], [alpha * f for f in F]) == abs(alpha) * norm_value(X, F)


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(*[st.lists(ints, min_size=n, max_size=n)] * 4)))
def test_norm_triangle(v):
    X, F, Y, G = v
    lhs = norm_value([a + b for a, b in zip(X, Y)], [a + b for a, b in zip(F, G)])
    assert lhs <= norm_value(X, F) + norm_value(Y, G)
