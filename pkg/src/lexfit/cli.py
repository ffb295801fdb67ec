"""Command-line front end: specialize, eval, and nearest subcommands.

Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
Option precedence is command line > ``--config`` key=value file > built-in
defaults. Every specialization run writes a manifest alongside its output;
replaying the manifest reproduces the output byte-exactly.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys

from . import __version__
from .constraints import ConstraintSet, constraint_stats, load_pairs
from .embeddings import FORMATS, backoff_lookup, load_embeddings, nearest_neighbors, save_embeddings
from .evaluate import (
    bibless_classify,
    bless_directionality,
    eval_similarity,
    hyperlex_eval,
    load_relation_dataset,
    load_similarity_dataset,
    wbless_classify,
)
from .losses import Margins
from .specializer import PRESETS, SpecializeConfig, specialize

DEFAULT_SEED = 7

_MARGIN_FIELDS = [f.name for f in dataclasses.fields(Margins)]

# config-file keys and how to coerce their values
_CONFIG_CASTERS = {
    "method": str,
    "format": str,
    "learning_rate": float,
    "epochs": int,
    "batch_size": int,
    "seed": int,
    "adagrad_epsilon": float,
    "neighbor_k": int,
    "retrofit_alpha": float,
    "retrofit_iterations": int,
    "negative_policy": str,
    "sample_k": int,
    **{name: float for name in _MARGIN_FIELDS},
}


@dataclasses.dataclass
class RunManifest:
    """Everything needed to reproduce one specialization run byte-exactly."""

    tool_version: str
    seed: int
    method: str
    format: str
    config: dict
    inputs: dict[str, dict[str, str]]
    output: str

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _read_config_file(path: str) -> dict:
    """Parse a key=value options file; unknown keys are usage errors."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in _CONFIG_CASTERS:
                raise ValueError(f"{path}:{lineno}: unknown option {key!r}")
            values[key] = _CONFIG_CASTERS[key](value.strip())
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexfit",
        description="Specialize word embeddings with lexical constraints and evaluate them.",
    )
    parser.add_argument("--version", action="version", version=f"lexfit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("specialize", help="train a specialization preset and save the result")
    sp.add_argument("--embeddings", help="input embedding file")
    sp.add_argument("--format", choices=FORMATS, help="embedding text format")
    sp.add_argument(
        "--method",
        choices=[p.replace("_", "-") for p in PRESETS],
        help="specialization preset",
    )
    sp.add_argument("--syn", action="append", default=[], help="synonym pair file (repeatable)")
    sp.add_argument("--ant", action="append", default=[], help="antonym pair file (repeatable)")
    sp.add_argument(
        "--hyper", action="append", default=[], help="direct-hypernym pair file (repeatable)"
    )
    sp.add_argument("--out", help="output embedding file")
    sp.add_argument("--config", help="key=value options file (overridden by flags)")
    sp.add_argument("--replay", help="manifest file to reproduce (other flags may override)")
    sp.add_argument("--seed", type=int, help=f"training seed (default {DEFAULT_SEED})")
    sp.add_argument("--learning-rate", type=float, dest="learning_rate")
    sp.add_argument("--epochs", type=int)
    sp.add_argument("--batch-size", type=int, dest="batch_size")
    sp.add_argument("--neighbor-k", type=int, dest="neighbor_k")
    sp.add_argument("--retrofit-alpha", type=float, dest="retrofit_alpha")
    sp.add_argument("--retrofit-iterations", type=int, dest="retrofit_iterations")
    sp.add_argument("--sample-k", type=int, dest="sample_k")
    sp.add_argument("--negative-policy", choices=("closest_plus_random", "closest_only"),
                    dest="negative_policy")
    for name in _MARGIN_FIELDS:
        sp.add_argument(f"--{name.replace('_', '-')}", type=float, dest=name)
    sp.set_defaults(func=cmd_specialize)

    ev = sub.add_parser("eval", help="evaluate embeddings on an intrinsic task")
    ev.add_argument("--embeddings", required=True)
    ev.add_argument("--format", choices=FORMATS, default="glove-text")
    ev.add_argument(
        "--task", required=True, choices=("sim", "bless", "wbless", "bibless", "hyperlex")
    )
    ev.add_argument("--dataset", required=True, help="TSV dataset file")
    ev.add_argument("--backoff", action="store_true", help="resolve OOV words by end truncation")
    ev.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ev.add_argument("--out", help="write the report as TSV to this path")
    ev.set_defaults(func=cmd_eval)

    nn = sub.add_parser("nearest", help="print the nearest neighbors of a word")
    nn.add_argument("--embeddings", required=True)
    nn.add_argument("--format", choices=FORMATS, default="glove-text")
    nn.add_argument("--word", required=True)
    nn.add_argument("--k", type=int, default=10)
    nn.set_defaults(func=cmd_nearest)
    return parser


def _resolve_specialize_options(args) -> dict:
    """Layer defaults, replayed manifest, config file, and flags, in that order."""
    options: dict = {"seed": DEFAULT_SEED}
    if args.replay:
        manifest = RunManifest.from_json(open(args.replay, encoding="utf-8").read())
        options.update(manifest.config)
        options["method"] = manifest.method
        options["format"] = manifest.format
        options["seed"] = manifest.seed
        options.setdefault("out", manifest.output)
        for relation in ("syn", "ant", "hyper"):
            options[relation] = [
                path for path, meta in manifest.inputs.items()
                if meta["role"] == relation
            ]
            options[relation].sort(
                key=lambda p: manifest.inputs[p].get("order", 0)
            )
        options["embeddings"] = next(
            path for path, meta in manifest.inputs.items() if meta["role"] == "embeddings"
        )
    if args.config:
        options.update(_read_config_file(args.config))
    for key in (
        "embeddings", "format", "method", "out", "seed", "learning_rate", "epochs",
        "batch_size", "neighbor_k", "retrofit_alpha", "retrofit_iterations",
        "sample_k", "negative_policy", *_MARGIN_FIELDS,
    ):
        value = getattr(args, key, None)
        if value is not None:
            options[key] = value
    for relation in ("syn", "ant", "hyper"):
        if getattr(args, relation):
            options[relation] = list(getattr(args, relation))
        else:
            options.setdefault(relation, [])
    return options


_PRESET_REQUIRED_FLAGS = {
    "retrofitting": ("syn|hyper",),
    "counterfitting": ("syn", "ant"),
    "attract_repel": ("syn", "ant"),
    "lear": ("syn", "ant", "hyper"),
    "hierarchy_fitting": ("syn", "ant", "hyper"),
    "hierarchy_fitting_ad_dir": ("syn", "ant", "hyper"),
    "hierarchy_fitting_ad_indir": ("syn", "ant", "hyper"),
}


def _usage_error(message: str) -> int:
    print(f"lexfit: error: {message}", file=sys.stderr)
    return 2


def cmd_specialize(args) -> int:
    try:
        options = _resolve_specialize_options(args)
    except (ValueError, OSError, KeyError, StopIteration) as exc:
        return _usage_error(str(exc))

    for key in ("embeddings", "format", "method", "out"):
        if not options.get(key):
            return _usage_error(f"--{key} is required")
    method = options["method"].replace("-", "_")
    if method not in PRESETS:
        return _usage_error(f"unknown method {options['method']!r}")
    if not (options["syn"] or options["ant"] or options["hyper"]):
        return _usage_error("at least one of --syn/--ant/--hyper is required")
    for requirement in _PRESET_REQUIRED_FLAGS[method]:
        alternatives = requirement.split("|")
        if not any(options[rel] for rel in alternatives):
            names = " or ".join(f"--{rel}" for rel in alternatives)
            relation = {"syn": "synonyms", "ant": "antonyms", "hyper": "direct hypernyms"}[
                alternatives[0]
            ]
            return _usage_error(f"method {options['method']} requires {relation} ({names})")

    margins = Margins(**{name: options[name] for name in _MARGIN_FIELDS if name in options})
    try:
        config = SpecializeConfig(
            preset=method,
            margins=margins,
            **{
                key: options[key]
                for key in (
                    "learning_rate", "epochs", "batch_size", "seed", "neighbor_k",
                    "retrofit_alpha", "retrofit_iterations", "negative_policy", "sample_k",
                )
                if key in options
            },
        )
    except ValueError as exc:
        return _usage_error(str(exc))

    try:
        store = load_embeddings(options["embeddings"], options["format"])
        constraints = ConstraintSet()
        inputs: dict[str, dict] = {
            options["embeddings"]: {"role": "embeddings", "sha256": _sha256(options["embeddings"])}
        }
        for relation in ("syn", "ant", "hyper"):
            for order, path in enumerate(options[relation]):
                load_pairs(constraints, path, relation, store)
                inputs[path] = {"role": relation, "sha256": _sha256(path), "order": order}
        _, log = specialize(store, constraints, config)
        save_embeddings(store, options["out"], options["format"])
        with open(options["out"] + ".log", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(log.to_tsv())
        manifest = RunManifest(
            tool_version=__version__,
            seed=config.seed,
            method=method,
            format=options["format"],
            config=_config_as_dict(config),
            inputs=inputs,
            output=options["out"],
        )
        with open(options["out"] + ".manifest", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(manifest.to_json())
    except ValueError as exc:
        print(f"lexfit: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"lexfit: error: {exc}", file=sys.stderr)
        return 1

    stats = constraint_stats(constraints)
    print(
        f"specialized {len(store)} vectors with {method} "
        f"(syn={stats['synonyms']}, ant={stats['antonyms']}, "
        f"hyper={stats['direct_hypernyms']}) in {log.wall_time:.2f}s"
    )
    print(f"wrote {options['out']}, {options['out']}.log, {options['out']}.manifest")
    return 0


def _config_as_dict(config: SpecializeConfig) -> dict:
    out = dataclasses.asdict(config)
    margins = out.pop("margins")
    out.pop("preset")
    out.update(margins)
    return out


def cmd_eval(args) -> int:
    try:
        store = load_embeddings(args.embeddings, args.format)
        if args.task in ("sim", "hyperlex"):
            dataset = load_similarity_dataset(args.dataset)
            if args.task == "sim":
                report = eval_similarity(store, dataset, use_backoff=args.backoff)
            else:
                report = hyperlex_eval(store, dataset, use_backoff=args.backoff)
        else:
            dataset = load_relation_dataset(args.dataset)
            if args.task == "bless":
                report = bless_directionality(store, dataset, use_backoff=args.backoff)
            elif args.task == "wbless":
                report = wbless_classify(
                    store, dataset, seed=args.seed, use_backoff=args.backoff
                )
            else:
                report = bibless_classify(
                    store, dataset, seed=args.seed, use_backoff=args.backoff
                )
    except (ValueError, OSError, KeyError) as exc:
        print(f"lexfit: error: {exc}", file=sys.stderr)
        return 1
    print(report.format_table())
    print()
    print(report.to_tsv(), end="")
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.to_tsv())
    return 0


def cmd_nearest(args) -> int:
    if args.k < 1:
        return _usage_error("--k must be >= 1")
    try:
        store = load_embeddings(args.embeddings, args.format)
    except (ValueError, OSError) as exc:
        print(f"lexfit: error: {exc}", file=sys.stderr)
        return 1
    hit = backoff_lookup(store, args.word)
    if not hit.covered:
        print(f"lexfit: error: {args.word!r} is not covered, even after back-off",
              file=sys.stderr)
        return 1
    if hit.truncation_depth > 0:
        print(f"# backed off to {hit.matched_token!r} (depth {hit.truncation_depth})")
    for row, sim in nearest_neighbors(store, hit.row, args.k):
        print(f"{store.vocab[row]}\t{sim:.6f}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
