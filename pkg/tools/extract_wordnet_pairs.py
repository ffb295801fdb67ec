#!/usr/bin/env python3
"""Extract synonym / antonym / direct-hypernym pair files from WordNet.

Needs nltk with the wordnet corpus:

    pip install nltk
    python -c "import nltk; nltk.download('wordnet')"
    python tools/extract_wordnet_pairs.py --out-dir constraints/ --pos n v

Emits synonyms.tsv, antonyms.tsv, hypernyms.tsv in the pair-file format the
loaders expect (two whitespace-separated single tokens per line; hypernym
lines are ordered hyponym first). Multiword lemmas are skipped.
"""

import argparse
import sys
from pathlib import Path


def single_word(lemma_name: str) -> str | None:
    return lemma_name if "_" not in lemma_name and "-" not in lemma_name else None


def extract(pos_tags):
    try:
        from nltk.corpus import wordnet as wn
    except ImportError:
        print("nltk is not installed; see the module docstring", file=sys.stderr)
        raise SystemExit(1)

    synonyms, antonyms, hypernyms = set(), set(), set()
    for pos in pos_tags:
        for synset in wn.all_synsets(pos):
            lemmas = [w for w in (single_word(l.name().lower()) for l in synset.lemmas()) if w]
            for i, a in enumerate(lemmas):
                for b in lemmas[i + 1:]:
                    if a != b:
                        synonyms.add((min(a, b), max(a, b)))
            for lemma in synset.lemmas():
                a = single_word(lemma.name().lower())
                if not a:
                    continue
                for ant in lemma.antonyms():
                    b = single_word(ant.name().lower())
                    if b and a != b:
                        antonyms.add((min(a, b), max(a, b)))
            for parent in synset.hypernyms() + synset.instance_hypernyms():
                parents = [w for w in (single_word(l.name().lower()) for l in parent.lemmas()) if w]
                for child in lemmas:
                    for par in parents:
                        if child != par:
                            hypernyms.add((child, par))
    return synonyms, antonyms, hypernyms


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="constraints")
    parser.add_argument("--pos", nargs="+", default=["n", "v"],
                        help="WordNet POS tags to include (n v a r)")
    args = parser.parse_args()

    synonyms, antonyms, hypernyms = extract(args.pos)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, pairs in (
        ("synonyms.tsv", synonyms),
        ("antonyms.tsv", antonyms),
        ("hypernyms.tsv", hypernyms),
    ):
        path = out / name
        with open(path, "w", encoding="utf-8") as fh:
            for a, b in sorted(pairs):
                fh.write(f"{a}\t{b}\n")
        print(f"wrote {len(pairs):>7d} pairs -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
