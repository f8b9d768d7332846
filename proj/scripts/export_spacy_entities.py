#!/usr/bin/env python3
"""Write named-entity spans for a directory of article<id>.txt files.

Output is JSON lines, one entity per line:

    {"doc_key": "111", "begin": 0, "end": 10, "type": "PERSON"}

Offsets are Python string indices, i.e. Unicode code points, which is what
`propaganda map --entities` and `propaganda run --entities` expect.

Requires spaCy and a model, e.g.:
    pip install spacy && python -m spacy download en_core_web_sm
"""

import argparse
import json
import pathlib
import re
import sys

ARTICLE_RE = re.compile(r"^article(\d+)\.txt$")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("articles", type=pathlib.Path, help="directory of article<id>.txt files")
    ap.add_argument("-o", "--out", type=pathlib.Path, default=None, help="output JSONL (default stdout)")
    ap.add_argument("--model", default="en_core_web_sm")
    ap.add_argument("--types", default="", help="comma separated entity labels to keep (default all)")
    args = ap.parse_args()

    import spacy  # imported late so --help works without it

    nlp = spacy.load(args.model, disable=["lemmatizer"])
    keep = {t for t in args.types.split(",") if t}
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout

    paths = sorted(p for p in args.articles.iterdir() if ARTICLE_RE.match(p.name))
    for path in paths:
        doc_key = ARTICLE_RE.match(path.name).group(1)
        text = path.read_text(encoding="utf-8")
        for ent in nlp(text).ents:
            if keep and ent.label_ not in keep:
                continue
            rec = {"doc_key": doc_key, "begin": ent.start_char, "end": ent.end_char, "type": ent.label_}
            out.write(json.dumps(rec, ensure_ascii=False) + "\n")
    if out is not sys.stdout:
        out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
