"""Incremental parse loop, garden-path classification and corpus runs."""

from __future__ import annotations

import string
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .attachment import (
    FAIL,
    LOWER,
    LOWER_REJECT,
    AttachFailure,
    ParseEvent,
    ParserState,
    left_attach,
    right_attach,
)
from .description import TreeDescription
from .lexicon import Lexicon, LexiconError, bundled_lexicon, bundled_path, project
from .lowering import BOTTOM_UP, TOP_DOWN, LowerFailure, relative_clause_lower, select_and_lower

FLUENT = "fluent"
UNCONSCIOUS = "unconscious_gp"
CONSCIOUS = "conscious_gp"
LABELS = (FLUENT, UNCONSCIOUS, CONSCIOUS)

DEFAULT_STRATEGY = {"english": BOTTOM_UP, "japanese": TOP_DOWN}


class ParseFail(Exception):
    """No entry of the word can be attached or lowered into the description."""

    def __init__(self, word: str, step: int, rejected: tuple = (), attempts: tuple = ()):
        self.word = word
        self.step = step
        self.rejected = tuple(rejected)
        self.attempts = tuple(attempts)
        super().__init__(f"cannot incorporate {word!r} at word {step}")


@dataclass(frozen=True)
class ParseReport:
    sentence: tuple
    classification: str
    events: tuple
    final_description: TreeDescription
    language: str = "english"
    strategy: str = BOTTOM_UP
    diverges_from_human: bool = False
    states: tuple = field(default=(), repr=False, compare=False)

    @property
    def final_state(self) -> ParserState:
        return self.states[-1]

    @property
    def lowerings(self) -> list[ParseEvent]:
        return [e for e in self.events if e.op == LOWER]

    def trace(self, verbosity: str = "events") -> str:
        return format_trace(self, verbosity)


def tokenize(sentence: Union[str, Sequence[str]]) -> list[str]:
    words = sentence.split() if isinstance(sentence, str) else list(sentence)
    out = [w.strip(string.punctuation) for w in words]
    return [w for w in out if w]


def classify(events: Iterable[ParseEvent]) -> str:
    events = list(events)
    if any(e.op == FAIL for e in events):
        return CONSCIOUS
    if any(e.op == LOWER and e.info.get("class") != "adjunct" for e in events):
        return UNCONSCIOUS
    return FLUENT


def parse_word(
    state: ParserState,
    word: str,
    lexicon: Lexicon,
    position: int,
    strategy: str = BOTTOM_UP,
) -> ParserState:
    """Incorporate one word.

    Simple attachment (right, then left) is tried for every reading of
    the word before any lowering, so lowering only happens when no
    reading attaches directly.  Japanese head nouns may finally reopen
    the preceding clause as a relative clause.
    """
    projections = [project(word, e, position) for e in lexicon.lookup(word)]
    if state.is_empty:
        return left_attach(state, projections[0])
    attempts = []
    for proj in projections:
        for op in (right_attach, left_attach):
            try:
                return op(state, proj)
            except AttachFailure as exc:
                attempts.append((op.__name__, proj.entry.projection.name, exc.reason))
    rejected: list = []
    for proj in projections:
        if not proj.left_sites:
            continue
        try:
            return select_and_lower(state.with_events(rejected), proj, strategy).new_state
        except LowerFailure as exc:
            rejected.extend(exc.rejected)
            attempts.append(("select_and_lower", proj.entry.projection.name, exc.reason))
    if lexicon.language == "japanese":
        for proj in projections:
            if proj.entry.category != "N" or proj.left_sites:
                continue
            try:
                return relative_clause_lower(state.with_events(rejected), proj, strategy).new_state
            except LowerFailure as exc:
                rejected.extend(exc.rejected)
                attempts.append(("relative_clause_lower", proj.entry.projection.name, exc.reason))
    raise ParseFail(word, position, rejected, attempts)


def parse_sentence(
    tokens: Union[str, Sequence[str]],
    lang: str = "english",
    strategy: Optional[str] = None,
    lexicon: Optional[Lexicon] = None,
) -> ParseReport:
    """Parse word by word; stop at the first word that cannot be incorporated."""
    words = tokenize(tokens)
    lexicon = lexicon or bundled_lexicon(lang)
    strategy = strategy or DEFAULT_STRATEGY.get(lexicon.language, BOTTOM_UP)
    for w in words:
        lexicon.lookup(w)
    state = ParserState()
    states = [state]
    for position, word in enumerate(words, 1):
        try:
            state = parse_word(state, word, lexicon, position, strategy)
        except ParseFail as fail:
            detail = (
                ("rejected", "; ".join(
                    f"{e.info['node']}:{e.info['reason']}" for e in fail.rejected
                ) or "none"),
                ("attempts", "; ".join(f"{op}/{tpl}:{why}" for op, tpl, why in fail.attempts)),
            )
            state = state.with_events(fail.rejected + (ParseEvent(position, word, FAIL, detail),))
            states.append(state)
            break
        states.append(state)
    return ParseReport(
        sentence=tuple(words),
        classification=classify(state.events),
        events=state.events,
        final_description=state.description,
        language=lexicon.language,
        strategy=strategy,
        states=tuple(states),
    )


# --------------------------------------------------------------------------
# trace output
# --------------------------------------------------------------------------

OP_NAMES = {
    "LeftAttach": "LEFT-ATTACH",
    "RightAttach": "RIGHT-ATTACH",
    LOWER: "LOWER",
    LOWER_REJECT: "LOWER-REJECT",
    FAIL: "FAIL",
}


def format_event(e: ParseEvent) -> str:
    fields = " ".join(f"{k}={v}" for k, v in e.detail)
    return f"{e.step:>3} {e.word:<12} {OP_NAMES[e.op]} {fields}".rstrip()


def format_trace(report: ParseReport, verbosity: str = "events") -> str:
    lines = []
    if verbosity != "quiet":
        for e in report.events:
            lines.append(format_event(e))
            if verbosity == "relations":
                for r in sorted(e.relations_added):
                    lines.append(f"      + {r}")
    lines.append(f"CLASSIFICATION: {report.classification}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# corpus
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusEntry:
    line: int
    lang: str
    model_expected: str
    human_expected: str
    tokens: tuple

    @property
    def text(self) -> str:
        return " ".join(self.tokens)


class CorpusFormatError(ValueError):
    pass


def read_corpus(source: Union[str, Path, Iterable[str]]) -> list[CorpusEntry]:
    """Parse ``<lang>\\t<model>\\t<human>\\t<tokens>`` records; ``#`` starts a comment."""
    if isinstance(source, Path) or (
        isinstance(source, str) and "\n" not in source and "\t" not in source
    ):
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    elif isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = list(source)
    out = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) < 4:
            raise CorpusFormatError(f"line {lineno}: expected 4 tab-separated fields")
        lang, model, human = (p.strip() for p in parts[:3])
        if lang not in DEFAULT_STRATEGY:
            raise CorpusFormatError(f"line {lineno}: unknown language {lang!r}")
        for label in (model, human):
            if label not in LABELS:
                raise CorpusFormatError(f"line {lineno}: unknown label {label!r}")
        tokens = tuple(tokenize(" ".join(parts[3:])))
        if not tokens:
            raise CorpusFormatError(f"line {lineno}: empty sentence")
        out.append(CorpusEntry(lineno, lang, model, human, tokens))
    return out


def bundled_corpus() -> list[CorpusEntry]:
    return read_corpus(bundled_path("corpus.tsv"))


@dataclass(frozen=True)
class CorpusRow:
    entry: CorpusEntry
    report: ParseReport

    @property
    def result(self) -> str:
        return self.report.classification

    @property
    def matches(self) -> bool:
        return self.result == self.entry.model_expected

    @property
    def divergence(self) -> bool:
        return self.entry.model_expected != self.entry.human_expected


@dataclass(frozen=True)
class CorpusReport:
    rows: tuple

    @property
    def mismatches(self) -> list[CorpusRow]:
        return [r for r in self.rows if not r.matches]

    @property
    def divergences(self) -> list[CorpusRow]:
        return [r for r in self.rows if r.divergence]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def format(self) -> str:
        head = "line\tlang\tstrategy\tmodel_expected\thuman_expected\tresult\tmatch\tdivergence\tsentence"
        lines = [head]
        for r in self.rows:
            e = r.entry
            lines.append("\t".join([
                str(e.line), e.lang, r.report.strategy, e.model_expected, e.human_expected,
                r.result, "yes" if r.matches else "NO", "yes" if r.divergence else "no", e.text,
            ]))
        lines += [
            "# summary",
            f"total\t{len(self.rows)}",
            f"matched\t{len(self.rows) - len(self.mismatches)}",
            f"mismatched\t{len(self.mismatches)}",
            "divergences\t" + " ".join(str(r.entry.line) for r in self.divergences),
        ]
        return "\n".join(lines) + "\n"


def classify_corpus(
    corpus: Iterable[CorpusEntry],
    strategy: Optional[str] = None,
    lexicons: Optional[dict] = None,
) -> CorpusReport:
    rows = []
    for entry in corpus:
        lexicon = (lexicons or {}).get(entry.lang) or bundled_lexicon(entry.lang)
        report = parse_sentence(entry.tokens, entry.lang, strategy, lexicon)
        report = replace(report, diverges_from_human=report.classification != entry.human_expected)
        rows.append(CorpusRow(entry, report))
    return CorpusReport(tuple(rows))


__all__ = [
    "CONSCIOUS", "FLUENT", "UNCONSCIOUS", "CorpusEntry", "CorpusReport", "LexiconError",
    "ParseFail", "ParseReport", "classify", "classify_corpus", "parse_sentence", "parse_word",
    "read_corpus", "tokenize",
]
