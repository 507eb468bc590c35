import re

import pytest

from dtparse.attachment import FAIL, LOWER, ParseEvent
from dtparse.description import TreeDescription, bracket, check_conditions
from dtparse.driver import (
    CONSCIOUS,
    FLUENT,
    UNCONSCIOUS,
    CorpusFormatError,
    bundled_corpus,
    classify,
    classify_corpus,
    parse_sentence,
    read_corpus,
    tokenize,
)
from dtparse.lexicon import LexiconError

CORPUS = bundled_corpus()


def strip_ids(text):
    return re.sub(r"@\d+|#\d+", "", text)


def test_example_2():
    r = parse_sentence("John knows the truth hurts")
    assert r.classification == UNCONSCIOUS
    assert [e.op for e in r.events].count(LOWER) == 1
    assert bracket(r.final_description) == (
        "[S [NP John] [VP [V knows] [S [NP the truth] [VP hurts]]]]"
    )


def test_example_1_fails_at_melted():
    r = parse_sentence("While John was eating the ice cream melted")
    assert r.classification == CONSCIOUS
    assert r.events[-1].op == FAIL and r.events[-1].word == "melted"


def test_example_3_is_a_complete_clause():
    r = parse_sentence("John knows the truth")
    assert r.classification == FLUENT
    assert not r.final_state.unsaturated


def test_unknown_word_is_a_lexicon_error():
    with pytest.raises(LexiconError, match="zebra"):
        parse_sentence("John knows the zebra")


def test_tokenize_strips_punctuation():
    assert tokenize("John knows, the truth.") == ["John", "knows", "the", "truth"]


@pytest.mark.parametrize("ops, label", [
    ([], FLUENT),
    ([(LOWER, "adjunct")], FLUENT),
    ([(LOWER, "argument")], UNCONSCIOUS),
    ([(LOWER, "relative")], UNCONSCIOUS),
    ([(LOWER, "argument"), (FAIL, None)], CONSCIOUS),
])
def test_classification_trichotomy(ops, label):
    events = [ParseEvent(1, "w", op, (("class", c),) if c else ()) for op, c in ops]
    assert classify(events) == label


@pytest.mark.parametrize("entry", CORPUS, ids=lambda e: str(e.line))
def test_corpus_invariants(entry):
    r = parse_sentence(entry.tokens, entry.lang)
    check_conditions(r.final_description.closure)
    # replaying the per-event deltas rebuilds the final asserted set
    replay = set()
    for e in r.events:
        replay |= e.relations_added
    assert replay == r.final_description.asserted
    parsed = len(r.states) - 1 - (r.classification == CONSCIOUS)
    for k, state in enumerate(r.states[1:parsed + 1], 1):
        d = state.description
        words = [t for t in d.terminals() if not d.nodes[t].empty]
        assert len(words) == k
        assert len(d.roots()) == 1
        assert d.yield_words() == list(entry.tokens[:k])
    steps = [e.step for e in r.events]
    assert steps == sorted(steps)


def test_bundled_corpus_matches_model_labels():
    report = classify_corpus(CORPUS)
    assert report.ok, report.format()
    assert {r.entry.line for r in report.divergences} == {
        r.entry.line for r in report.rows if r.report.diverges_from_human
    }


def test_corpus_reader():
    text = "# c\nenglish\tfluent\tfluent\tJohn knows the truth\n\n"
    [e] = read_corpus(text)
    assert e.tokens == ("John", "knows", "the", "truth") and e.line == 2


def test_empty_corpus():
    report = classify_corpus(read_corpus("# nothing\n"))
    assert report.ok and "total\t0" in report.format()


@pytest.mark.parametrize("line", [
    "english\tfluent\tJohn knows",
    "klingon\tfluent\tfluent\tJohn",
    "english\tmaybe\tfluent\tJohn",
    "english\tfluent\tfluent\t.",
])
def test_corpus_format_errors(line):
    with pytest.raises(CorpusFormatError):
        read_corpus(line + "\n")


def test_report_carries_strategy_and_language():
    r = parse_sentence("John ga ronbun wo kaita", "japanese")
    assert (r.language, r.strategy) == ("japanese", "top_down")
    assert isinstance(r.final_description, TreeDescription)


def test_trace_verbosity():
    r = parse_sentence("John knows the truth hurts")
    assert r.trace("quiet") == "CLASSIFICATION: unconscious_gp\n"
    rel = r.trace("relations")
    assert "+ dom(VP@2,S@5)" in rel
    assert strip_ids(r.trace()).count("LOWER") == 1
