"""Regenerate the bundled synthetic corpus and LID gold set."""

from pathlib import Path

from corelab.synthetic import make_corpus, make_gold, render_jsonl

DATA = Path(__file__).resolve().parents[1] / "src" / "corelab" / "data"


def main():
    (DATA / "synthetic_corpus.jsonl").write_text(
        render_jsonl(t.to_dict() for t in make_corpus()), encoding="utf-8")
    (DATA / "lid_gold.jsonl").write_text(render_jsonl(make_gold()), encoding="utf-8")


if __name__ == "__main__":
    main()
