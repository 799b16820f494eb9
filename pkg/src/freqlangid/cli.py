"""Command-line interface.

Exit codes: 0 success, 1 environment or configuration error, 2 input that
contains no letters.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .data import MINI_DIR, MINI_MANIFEST, PROFILES_PATH
from .evaluation import (
    ingest_dataset,
    evaluate,
    method_comparison_report,
    sweep_m,
    sweep_to_csv,
)
from .noise import CSV_HEADER, NoiseKind, NoiseOp, default_vowels, measure_degradation
from .profile import (
    DEFAULT_DIACRITICS,
    ProfileSet,
    ProfileValidationError,
    build_profile,
    load_profiles,
    save_profiles,
)
from .scoring import DetectionResult, DetectorConfig, UndeterminableError, detect
from .textstats import TextDecodeError, compute_stats, normalize, top_k_report

PROFILES_ENV = "FREQLANGID_PROFILES"

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_UNDETERMINABLE = 2

log = logging.getLogger("freqlangid")


class CliError(Exception):
    """Configuration or environment problem; maps to exit code 1."""


def _profiles_path(args) -> Path:
    if args.profiles:
        return Path(args.profiles)
    if os.environ.get(PROFILES_ENV):
        return Path(os.environ[PROFILES_ENV])
    return PROFILES_PATH


def _load(args) -> ProfileSet:
    path = _profiles_path(args)
    if not path.is_file():
        raise CliError(f"profile file not found: {path}")
    return load_profiles(path)


def _read_input(args) -> str | bytes:
    if args.text is not None:
        return args.text
    if args.file is not None:
        try:
            return Path(args.file).read_bytes()
        except OSError as exc:
            raise CliError(f"cannot read {args.file}: {exc.strerror}") from None
    return sys.stdin.buffer.read()


def _write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")
    log.info("wrote %s", path)


def _config(args) -> DetectorConfig:
    return DetectorConfig.method(args.method, m=args.m)


# -- detect ------------------------------------------------------------------


def _render_detection(result: DetectionResult) -> str:
    lines = [
        f"winner: {result.winner}  margin: {result.margin}"
        + ("  [tie]" if result.tie else "")
        + ("  [low confidence]" if result.low_confidence else ""),
        "",
        f"{'lang':<6}{'monogram':>10}{'bigram':>8}{'p':>8}{'bonus':>7}{'total':>7}",
    ]
    for s in result.scores:
        lines.append(
            f"{s.language_id:<6}{s.monogram_total:>10}{s.bigram_total:>8}{s.p:>8.3f}{s.bonus:>7}{s.total:>7}"
        )
    return "\n".join(lines)


def cmd_detect(args) -> int:
    profiles = _load(args)
    raw = _read_input(args)
    result = detect(raw, profiles, _config(args))
    if args.output == "json":
        print(json.dumps(result.to_dict(), sort_keys=True, ensure_ascii=False, indent=2))
    elif args.output == "csv":
        print("language_id,monogram_total,bigram_total,p,k,bonus,total")
        for s in result.scores:
            print(f"{s.language_id},{s.monogram_total},{s.bigram_total},{s.p:.6f},{s.k},{s.bonus},{s.total}")
    else:
        print(_render_detection(result))
    return EXIT_OK


def cmd_top_k(args) -> int:
    stats = compute_stats(normalize(_read_input(args)), args.k)
    rows = top_k_report(stats, args.k)
    if args.output == "json":
        print(json.dumps([{"letter": c, "percent": p} for c, p in rows], ensure_ascii=False))
    elif args.output == "csv":
        print("letter,percent")
        for c, p in rows:
            print(f"{c},{p:.2f}")
    else:
        print("  ".join(f"{c} {p:.2f}" for c, p in rows))
    return EXIT_OK


# -- build-profile -----------------------------------------------------------


def cmd_build_profile(args) -> int:
    if not args.profiles and not os.environ.get(PROFILES_ENV):
        raise CliError(f"build-profile needs --profiles or ${PROFILES_ENV} to know where to write")
    out = _profiles_path(args)
    corpus_dir = Path(args.corpus_dir)
    files = sorted(corpus_dir.glob("*.txt")) if corpus_dir.is_dir() else []
    if not files:
        raise CliError(f"no .txt files in {corpus_dir}")
    texts = [f.read_text(encoding="utf-8") for f in files]
    if args.diacritics_file:
        diacritics = frozenset(Path(args.diacritics_file).read_text(encoding="utf-8").split())
    else:
        diacritics = DEFAULT_DIACRITICS.get(args.language, frozenset())
    try:
        profile = build_profile(texts, args.language, diacritics, source=corpus_dir.name)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    existing = load_profiles(out) if out.is_file() else ProfileSet()
    save_profiles(existing.replace(profile), out)
    if args.output == "json":
        print(json.dumps(profile.to_dict(), sort_keys=True, ensure_ascii=False, indent=2))
    else:
        print(f"{args.language}: {''.join(profile.ranked_chars)} -> {out}")
    return EXIT_OK


# -- eval / sweep-m ----------------------------------------------------------


def _samples(args):
    manifest = Path(args.manifest) if args.manifest else MINI_MANIFEST
    if not manifest.is_file():
        raise CliError(f"manifest not found: {manifest}")
    root = Path(args.root) if args.root else (MINI_DIR if not args.manifest else manifest.parent)
    samples, errors = ingest_dataset(root, manifest, dataset_id=args.dataset)
    for err in errors:
        print(f"warning: {err.path}: {err.message}", file=sys.stderr)
    if not samples:
        raise CliError("no samples could be read")
    return samples


def cmd_eval(args) -> int:
    profiles = _load(args)
    methods = tuple(int(m) for m in args.methods.split(","))
    buckets = tuple(int(b) for b in args.buckets.split(",")) if args.buckets else ()
    report = evaluate(_samples(args), profiles, methods=methods, buckets=buckets, m=args.m)
    comparison = method_comparison_report(report) if {1, 2} <= set(methods) else None

    if args.out_dir:
        out = Path(args.out_dir)
        _write(out / "report.csv", report.to_csv())
        for m in methods:
            _write(out / f"confusion_method{m}.csv", report.confusion_csv(m))
        if comparison is not None:
            _write(out / "comparison.csv", comparison.to_csv())
            if not args.no_plot:
                from .plotting import plot_method_comparison

                plot_method_comparison(comparison, out / "comparison.png")

    if args.output == "json":
        print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
    elif args.output == "csv":
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(comparison.table() if comparison else report.to_csv())
        for m in methods:
            print(f"method {m}: {report.ms_per_kb[m]:.4f} ms/KB")
    return EXIT_OK


def cmd_sweep_m(args) -> int:
    profiles = _load(args)
    rows = sweep_m(_samples(args), profiles, (args.m_from, args.m_to))
    csv = sweep_to_csv(rows)
    if args.out_dir:
        out = Path(args.out_dir)
        _write(out / "m_sweep.csv", csv)
        if not args.no_plot:
            from .plotting import plot_m_sweep

            plot_m_sweep(rows, out / "m_sweep.png")
    if args.output == "json":
        print(json.dumps([{"m": m, "accuracy": a} for m, a in rows], indent=2))
    else:
        sys.stdout.write(csv)
    return EXIT_OK


# -- noise -------------------------------------------------------------------


def _noise_text(args) -> str:
    if args.text is not None or args.file is not None:
        raw = _read_input(args)
        return raw.decode("utf-8") if isinstance(raw, bytes) else raw
    files = sorted((MINI_DIR / args.language).glob("*.txt"))
    if not files:
        raise CliError(f"no bundled samples for language {args.language!r}")
    return "\n".join(f.read_text(encoding="utf-8") for f in files)


def cmd_noise(args) -> int:
    profiles = _load(args)
    if args.language not in profiles:
        raise CliError(f"no profile for language {args.language!r}")
    text = _noise_text(args)
    rates = [float(r) for r in args.rate.split(",")]
    summaries = []
    for rate in rates:
        op = NoiseOp(NoiseKind(args.op), rate, args.seed, vowel_set=default_vowels(args.language))
        summaries.append(
            measure_degradation(
                text,
                profiles[args.language],
                op,
                args.trials,
                profiles=profiles,
                config=_config(args),
                metric=args.metric,
            )
        )
    csv = "\n".join([CSV_HEADER, *(s.csv_row() for s in summaries)]) + "\n"
    if args.out_dir:
        out = Path(args.out_dir)
        _write(out / "noise.csv", csv)
        if not args.no_plot and len(rates) > 1:
            from .plotting import plot_noise_curve

            plot_noise_curve([(s.rate, s.mean_delta) for s in summaries], args.op, out / "noise.png")
    if args.output == "json":
        keys = CSV_HEADER.split(",")
        payload = [
            dict(zip(keys, [s.op.value, s.rate, s.trials, s.mean_delta, s.std, s.fraction_negative, s.flip_rate]))
            for s in summaries
        ]
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif args.output == "csv":
        sys.stdout.write(csv)
    else:
        for s in summaries:
            print(
                f"{s.op.value} rate={s.rate:g} trials={s.trials}: mean delta {s.mean_delta:+.3f} "
                f"(std {s.std:.3f}), negative in {100 * s.fraction_negative:.1f}% of trials, "
                f"detection flipped in {100 * (s.flip_rate or 0):.1f}%"
            )
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--profiles", help=f"profile file (default: ${PROFILES_ENV} or bundled profiles)")
    common.add_argument("--m", type=int, default=10, help="number of top letters compared (default 10)")
    common.add_argument("--method", type=int, choices=(1, 2), default=2)
    common.add_argument("--output", choices=("human", "json", "csv"), default="human")
    common.add_argument("-v", "--verbose", action="store_true")

    text_src = argparse.ArgumentParser(add_help=False)
    group = text_src.add_mutually_exclusive_group()
    group.add_argument("--text")
    group.add_argument("--file")

    dataset = argparse.ArgumentParser(add_help=False)
    dataset.add_argument("--manifest", help="manifest TSV (default: bundled mini corpus)")
    dataset.add_argument("--root", help="directory the manifest paths are relative to")
    dataset.add_argument("--dataset", default="mini", help="dataset id when the manifest has none")
    dataset.add_argument("--out-dir")
    dataset.add_argument("--no-plot", action="store_true")

    parser = argparse.ArgumentParser(prog="freqlangid", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", parents=[common, text_src], help="identify the language of a text")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("top-k", parents=[common, text_src], help="most frequent letters with percentages")
    p.add_argument("-k", type=int, default=5)
    p.set_defaults(func=cmd_top_k)

    p = sub.add_parser("build-profile", parents=[common], help="build a profile from a corpus directory")
    p.add_argument("--corpus-dir", required=True)
    p.add_argument("--language", required=True)
    p.add_argument("--diacritics-file", help="whitespace-separated diacritic letters")
    p.set_defaults(func=cmd_build_profile)

    p = sub.add_parser("eval", parents=[common, dataset], help="Method 1 vs Method 2 accuracy")
    p.add_argument("--methods", default="1,2")
    p.add_argument("--buckets", default="150", help="comma-separated length boundaries")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep-m", parents=[common, dataset], help="Method 1 accuracy for a range of m")
    p.add_argument("--from", dest="m_from", type=int, default=2)
    p.add_argument("--to", dest="m_to", type=int, default=20)
    p.set_defaults(func=cmd_sweep_m)

    p = sub.add_parser("noise", parents=[common, text_src, dataset], help="noise degradation experiment")
    p.add_argument("--op", required=True, choices=[k.value for k in NoiseKind])
    p.add_argument("--rate", default="0.3", help="rate, or comma-separated rates for a curve")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--language", default="ro", help="profile used for scoring (default ro)")
    p.add_argument("--metric", choices=("profile", "count"), default="profile")
    p.set_defaults(func=cmd_noise)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s"
    )
    try:
        return args.func(args)
    except UndeterminableError as exc:
        print(f"error: undeterminable input: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINABLE
    except (CliError, ProfileValidationError, TextDecodeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
