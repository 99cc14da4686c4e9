import json
import logging

from corelab.diagnostics import JsonLineFormatter, emit, logger
from corelab.synthetic import make_corpus, make_gold, render_jsonl, unique_vocabulary


def test_vocabularies_are_disjoint():
    vocab = unique_vocabulary()
    seen = {}
    for lang, words in vocab.items():
        assert words, lang
        for w in words:
            assert w not in seen, (w, lang, seen.get(w))
            seen[w] = lang


def test_bundled_files_match_generator(corpus_path, gold_path):
    assert open(corpus_path, encoding="utf-8").read() == render_jsonl(t.to_dict() for t in make_corpus())
    assert open(gold_path, encoding="utf-8").read() == render_jsonl(make_gold())


def test_corpus_is_seeded():
    assert make_corpus(5, seed=1) == make_corpus(5, seed=1)
    assert make_corpus(5, seed=1) != make_corpus(5, seed=2)


def test_json_line_formatter():
    records = []

    class Capture(logging.Handler):
        def emit(self, record):
            records.append(JsonLineFormatter().format(record))

    handler = Capture()
    logger.addHandler(handler)
    try:
        emit("row-dropped", trace_id="t1", missing=["cmi"])
    finally:
        logger.removeHandler(handler)
    assert json.loads(records[-1]) == {"level": "warning", "code": "row-dropped", "trace_id": "t1", "missing": ["cmi"]}
    assert "\n" not in records[-1]
