import json
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corelab.errors import AlignmentError, ConfigurationError
from corelab.lid import (
    GoldInstance,
    LidConfig,
    TrigramModel,
    detect_instance_languages,
    is_code_switched,
    lookup_key,
    read_gold,
    tag_words,
    validate_lid,
)
from corelab.scripts import Script
from corelab.tags import INDEPENDENT, UNKNOWN, LanguageTag
from corelab.tokenize import tokenize

EN, SW, YO = LanguageTag.iso("en"), LanguageTag.iso("sw"), LanguageTag.iso("yo")


@pytest.fixture(scope="module")
def config():
    return LidConfig.default()


def tags_of(text, config):
    return tag_words(tokenize(text), config).tags


def test_wordlist_membership(config):
    en_sw = config.restrict(["en", "sw"])
    assert tags_of("the", en_sw) == [EN]


def test_diacritic_rule(config):
    en_yo = config.restrict(["en", "yo"])
    assert tags_of("ọmọ", en_yo) == [YO]


def test_common_script_is_independent(config):
    assert tags_of("42 , ?!", config) == [INDEPENDENT, INDEPENDENT, INDEPENDENT]


def test_single_candidate_script(config):
    assert tags_of("हिन्दी ኣማርኛ", config) == [LanguageTag.iso("hi"), LanguageTag.iso("am")]


def test_unconfigured_script_is_unknown(config, diagnostics):
    assert tags_of("привет", config) == [UNKNOWN]
    assert "unconfigured-script" in diagnostics()


def test_edge_punctuation_ignored_for_lookup(config):
    assert lookup_key("(The,") == "the"
    assert tags_of("(The,", config.restrict(["en", "sw"])) == [EN]


def test_trigram_fallback_prefers_similar_language():
    model = TrigramModel({"en": ["thing", "nothing", "something"], "sw": ["kitabu", "habari", "mtoto"]})
    assert model.score("anything", "en") > model.score("anything", "sw")
    assert model.score("kitoto", "sw") > model.score("kitoto", "en")


def test_unmatched_latin_word_uses_trigrams():
    cfg = LidConfig(
        languages=("en", "sw"),
        script_map={Script.LATIN: ("en", "sw")},
        wordlists={"en": frozenset({"thing", "nothing"}), "sw": frozenset({"kitabu", "habari"})},
    )
    assert tags_of("something habarini", cfg) == [EN, SW]


def test_trigram_ties_follow_config_order():
    words = {"en": frozenset({"aaa"}), "sw": frozenset({"aaa"})}
    cfg = LidConfig(("en", "sw"), {Script.LATIN: ("en", "sw")}, words)
    assert tags_of("zzz", cfg) == [EN]
    cfg = LidConfig(("sw", "en"), {Script.LATIN: ("sw", "en")}, words)
    assert tags_of("zzz", cfg) == [SW]


def test_config_validation():
    with pytest.raises(ConfigurationError):
        LidConfig(("sw", "yo"), {Script.LATIN: ("sw", "yo")}, {"sw": frozenset({"a"}), "yo": frozenset({"b"})})
    with pytest.raises(ConfigurationError):
        LidConfig(("en",), {Script.LATIN: ("en", "sw")}, {"en": frozenset({"a"})})
    with pytest.raises(ConfigurationError):
        LidConfig(("en", "sw"), {Script.LATIN: ("en", "sw")}, {"en": frozenset({"a"})})
    with pytest.raises(ConfigurationError):
        LidConfig.default().restrict(["xx"])


def test_registry_errors(tmp_path):
    with pytest.raises(ConfigurationError):
        LidConfig.from_registry(tmp_path / "missing.json")
    reg = tmp_path / "reg.json"
    reg.write_text(json.dumps({"en": {"scripts": ["Latin"], "wordlist": "none.txt"}}))
    with pytest.raises(ConfigurationError):
        LidConfig.from_registry(reg)


def test_backend_preempts_rules(config):
    tt = tag_words(tokenize("the 42"), config, backend=lambda texts: [SW, EN])
    assert tt.tags == [SW, INDEPENDENT]


def _tt(codes):
    text = " ".join("x" for _ in codes)
    tt = tokenize(text)
    return type(tt)(tt.source, tuple(replace(t, tag=c) for t, c in zip(tt.tokens, codes)))


def test_instance_languages_threshold():
    assert detect_instance_languages(_tt([SW] * 100 + [EN])) == {SW}
    assert detect_instance_languages(_tt([EN] * 60 + [SW] * 40)) == {EN, SW}
    assert detect_instance_languages(_tt([INDEPENDENT] * 5)) == frozenset()


def test_code_switched():
    assert not is_code_switched(_tt([LanguageTag.iso("hi")] * 20))
    assert is_code_switched(_tt([EN] * 60 + [SW] * 40))
    assert not is_code_switched(_tt([SW] * 100 + [EN] * 2))


def _gold(tokens, gid="g1"):
    return GoldInstance(gid, " ".join(t for t, _ in tokens), tuple((t, LanguageTag.parse(g)) for t, g in tokens))


def test_validate_lid_perfect_and_partial(config):
    cfg = config.restrict(["en", "sw"])
    words = [("the", "en"), ("hatua", "sw")] * 25
    assert validate_lid([_gold(words)], cfg).accuracy == 1.0
    nine = [("the", "en")] * 9 + [("the", "sw")] + [("7", "independent")]
    report = validate_lid([_gold(nine)], cfg)
    assert report.accuracy == pytest.approx(0.9)
    assert (report.correct, report.total) == (9, 10)


def test_validate_lid_alignment_error_names_instance(config):
    bad = GoldInstance("inst-7", "ni sawa", (("ni sawa", SW),))
    with pytest.raises(AlignmentError, match="inst-7"):
        validate_lid([bad], config)


def test_read_gold(tmp_path):
    p = tmp_path / "g.jsonl"
    p.write_text(json.dumps({"text": "ni 2", "tokens": [{"text": "ni", "lang": "sw"}, {"text": "2", "lang": "independent"}]}) + "\n")
    (g,) = read_gold(p)
    assert g.tokens == (("ni", SW), ("2", INDEPENDENT))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sampled_from(["the", "hatua", "42", "ọmọ", "हिन्दी", "任务", "zzq"]), max_size=20))
def test_every_token_gets_a_tag(words):
    tt = tag_words(tokenize(" ".join(words)), LidConfig.default())
    assert len(tt.tags) == len(words)
    assert all(isinstance(t, LanguageTag) for t in tt.tags)
