import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from corelab.corpus import ReasoningTrace
from corelab.errors import InputError
from corelab.lid import LidConfig
from corelab.metrics import (
    MatrixClass,
    Span,
    SwitchMetrics,
    SwitchMetricsTransformer,
    burstiness,
    cmi,
    compute_all,
    extract_spans,
    i_index,
    m_index,
    matrix_language,
    memory,
    metrics_from_tags,
    min_max_normalize,
)
from corelab.tags import INDEPENDENT, LanguageTag

tags = st.lists(st.sampled_from(["en", "sw", "yo", None]), max_size=40)


def test_spans():
    assert extract_spans(["en", "en", "sw", "sw", "sw"]).spans == (Span("en", 0, 2), Span("sw", 2, 3))
    assert extract_spans(["en", None, "en", "sw"]).lengths == [2, 1]
    assert extract_spans([INDEPENDENT, None, "independent"]).spans == ()


def test_cmi_examples():
    assert cmi({"en": 10}, 10, 0) == 0.0
    assert cmi({"en": 6, "sw": 4}, 10, 0) == pytest.approx(0.4, abs=1e-12)
    assert cmi({}, 5, 5) == 0.0


def test_cmi_rejects_bad_counts():
    with pytest.raises(InputError):
        cmi({"en": -1}, 1, 0)
    with pytest.raises(InputError):
        cmi({"en": 3}, 5, 0)


def test_m_index_examples():
    assert m_index({"en": 9}) == 0.0
    assert m_index({"en": 1, "sw": 1}) == pytest.approx(1.0)
    assert m_index({"en": 3, "sw": 1}) == pytest.approx(0.6)


def test_i_index_examples():
    assert i_index(["en"] * 5) == 0.0
    assert i_index(["en", "sw"] * 3) == 1.0
    assert i_index(["en", "en", "sw", "sw"]) == pytest.approx(1 / 3)


def test_burstiness_examples():
    assert burstiness([2, 2, 2]) == -1.0
    assert burstiness([1, 5]) == pytest.approx(-0.2)
    assert burstiness([7]) == -1.0
    assert burstiness([]) is None


def test_memory_examples():
    assert memory([1, 2, 1, 2, 1, 2]) == pytest.approx(-1.0)
    assert memory([1, 2]) is None
    assert memory([3, 3, 3, 3]) is None


def test_matrix_language_examples():
    assert matrix_language({"hi": 100}, "hi") == ("hi", MatrixClass.SAME_AS_PROMPT)
    assert matrix_language({"en": 60, "sw": 40}, "sw") == ("en", MatrixClass.ENGLISH)
    assert matrix_language({"en": 50, "sw": 50}, "sw") == ("sw", MatrixClass.SAME_AS_PROMPT)
    assert matrix_language({"en": 5, "zh": 5}, "sw") == ("en", MatrixClass.ENGLISH)
    assert matrix_language({"yo": 5, "zh": 5}, "sw") == ("yo", MatrixClass.OTHER_LANGUAGE)
    assert matrix_language({}, "sw") is None


def test_min_max_normalize():
    out = min_max_normalize({"a": [1, 3, 5], "b": [4, 4], "c": [-1, 0, 1], "d": [None, 2, 4]})
    assert out == {"a": [0, 0.5, 1], "b": [0, 0], "c": [0, 0.5, 1], "d": [None, 0, 1]}


def test_monolingual_and_mixed_trace():
    mono = metrics_from_tags(["sw"] * 12, "sw")
    assert (mono.cmi, mono.m_index, mono.i_index) == (0.0, 0.0, 0.0)
    assert mono.matrix_class is MatrixClass.SAME_AS_PROMPT
    rng = random.Random(0)
    mixed = ["en"] * 60 + ["sw"] * 40
    rng.shuffle(mixed)
    m = metrics_from_tags(mixed, "sw")
    assert m.cmi == pytest.approx(0.4)
    assert m.matrix_class is MatrixClass.ENGLISH


def test_unknown_tokens_count_as_non_language():
    m = metrics_from_tags(["en", "unknown", LanguageTag.iso("sw"), None], "sw")
    assert (m.n_tokens, m.n_independent) == (4, 2)
    assert sum(m.language_counts.values()) == m.n_tokens - m.n_independent


def test_record_round_trip():
    m = metrics_from_tags(["en", "sw", "sw", None, "en"], "sw", "t1")
    assert SwitchMetrics.from_dict(m.to_dict()) == m


def _trace(reasoning, lang="sw", tid="t"):
    return ReasoningTrace(tid, "m", lang, "d", "math", "p", reasoning, "(A)")


def test_compute_all_on_text():
    cfg = LidConfig.default()
    m = compute_all(_trace("hatua the hesabu , 42 mtoto"), cfg)
    assert m.n_tokens == 6
    assert m.n_independent == 2


def test_transformer_shape_and_params():
    cfg = LidConfig.default()
    traces = [_trace("hatua hesabu mtoto", tid="a"), _trace("the hatua the and is", tid="b")]
    est = SwitchMetricsTransformer(config=cfg)
    X = est.fit_transform(traces)
    assert X.shape == (2, 5)
    assert X[0, 3] == -1.0  # one span
    assert np.isnan(X[0, 4])  # memory absent
    assert est.get_params()["config"] is cfg
    assert [m.trace_id for m in est.metrics_] == ["a", "b"]


@given(tags)
def test_agrees_with_oracle(seq):
    m = metrics_from_tags(seq, "sw")
    assert m.cmi == pytest.approx(oracles.cmi(seq), abs=1e-12)
    assert m.m_index == pytest.approx(oracles.m_index(seq), abs=1e-12)
    assert m.i_index == pytest.approx(oracles.i_index(seq), abs=1e-12)
    if m.memory is None:
        assert oracles.memory(seq) is None
    else:
        assert m.memory == pytest.approx(oracles.memory(seq), abs=1e-12)


@given(tags)
def test_ranges(seq):
    m = metrics_from_tags(seq, "sw")
    n_langs = len(m.language_counts)
    assert 0 <= m.cmi <= 1 - 1 / max(n_langs, 1) + 1e-12
    assert 0 <= m.m_index <= 1 + 1e-12
    assert 0 <= m.i_index <= 1
    if m.burstiness is not None:
        assert -1 <= m.burstiness < 1
    if m.memory is not None:
        assert -1 - 1e-12 <= m.memory <= 1 + 1e-12


@given(st.dictionaries(st.sampled_from(["en", "sw", "yo", "ig"]), st.integers(1, 50), min_size=2))
def test_m_index_one_iff_even(counts):
    even = len(set(counts.values())) == 1
    assert math.isclose(m_index(counts), 1.0, abs_tol=1e-12) == even


@given(tags)
def test_i_index_reversal(seq):
    assert i_index(seq) == i_index(seq[::-1])
