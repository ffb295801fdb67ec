#!/usr/bin/env python3
"""Document (and optionally download) the public assets for full-scale runs.

The library never fetches anything itself; this script records where the
published 300-d vectors, constraint extractions, and evaluation datasets
live, and can pull individual files on request:

    python tools/fetch_assets.py                 # list assets
    python tools/fetch_assets.py --download simlex999 --dest assets/

Most downloads arrive in their upstream formats and still need conversion to
the pair-file / TSV layouts described in the README (two whitespace-separated
tokens per line for constraints; word1<TAB>word2<TAB>score|label for
datasets). tools/extract_wordnet_pairs.py produces constraint files directly.
"""

import argparse
import sys
import urllib.request
from pathlib import Path

ASSETS = {
    "nlpl-vectors": {
        "url": "http://vectors.nlpl.eu/repository/",
        "note": "browse for 300-d English word vectors (Wikipedia+Gigaword trained); "
                "download the word2vec-text model of your choice",
    },
    "glove-6b": {
        "url": "https://nlp.stanford.edu/data/glove.6B.zip",
        "note": "GloVe 300-d vectors, glove-text format after unzip",
    },
    "fasttext-wiki": {
        "url": "https://dl.fbaipublicfiles.com/fasttext/vectors-english/wiki-news-300d-1M.vec.zip",
        "note": "fastText 300-d vectors, word2vec-text format after unzip",
    },
    "attract-repel-constraints": {
        "url": "https://github.com/nmrksic/attract-repel/tree/master/linguistic_constraints",
        "note": "synonym and antonym pair files from WordNet and Roget-style sources",
    },
    "simlex999": {
        "url": "https://fh295.github.io/SimLex-999.zip",
        "note": "convert SimLex-999.txt columns (word1, word2, SimLex999) to TSV",
    },
    "simverb3500": {
        "url": "https://raw.githubusercontent.com/benathi/word2gm/master/evaluation_data/simverb/data/SimVerb-3500.txt",
        "note": "use the 3000-pair test split; columns word1, word2, score",
    },
    "card660": {
        "url": "https://pilehvar.github.io/card-660/dataset.tsv",
        "note": "rare-word similarity pairs, already TSV",
    },
    "rw2034": {
        "url": "https://nlp.stanford.edu/~lmthang/morphoNLM/rw.zip",
        "note": "rare-word dataset; columns word1, word2, mean score",
    },
    "hypervec-benchmarks": {
        "url": "https://github.com/nguyenkh/HyperVec/tree/master/datasets",
        "note": "BLESS / WBLESS / BIBLESS splits used for detection and directionality",
    },
    "hyperlex": {
        "url": "https://raw.githubusercontent.com/cambridgeltl/hyperlex/master/hyperlex-all.txt",
        "note": "graded entailment ratings; keep WORD1, WORD2, AVG_SCORE columns",
    },
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--download", metavar="NAME", help="asset key to download")
    parser.add_argument("--dest", default="assets", help="download directory")
    args = parser.parse_args()

    if not args.download:
        width = max(len(k) for k in ASSETS)
        for key, meta in ASSETS.items():
            print(f"{key:{width}s}  {meta['url']}")
            print(f"{'':{width}s}  {meta['note']}")
        return 0

    if args.download not in ASSETS:
        print(f"unknown asset {args.download!r}; run without flags to list", file=sys.stderr)
        return 2
    meta = ASSETS[args.download]
    if "github.com" in meta["url"] and "/tree/" in meta["url"]:
        print(f"{args.download} is a directory of files; browse {meta['url']}")
        return 0
    dest = Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    target = dest / meta["url"].rstrip("/").rsplit("/", 1)[-1]
    print(f"fetching {meta['url']} -> {target}")
    urllib.request.urlretrieve(meta["url"], target)
    print("done;", meta["note"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
