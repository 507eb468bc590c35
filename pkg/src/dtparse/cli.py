"""Command-line front end.

    dtparse parse "John knows the truth hurts"
    dtparse corpus [--corpus FILE]
    dtparse export "John knows the truth" --format dot -o out.dot
    dtparse compare-strategies --lang japanese "John ga ronbun wo kaita seito wo hometa"

``parse`` exits 0 for fluent and unconscious garden paths, 2 for a
conscious garden path and 1 for usage or lexicon errors.  ``corpus``
exits 1 iff some sentence disagrees with its model_expected label.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .description import bracket, to_dot, to_text
from .driver import (
    CONSCIOUS,
    DEFAULT_STRATEGY,
    CorpusFormatError,
    bundled_corpus,
    classify_corpus,
    parse_sentence,
    read_corpus,
)
from .lexicon import Lexicon, LexiconError, bundled_lexicon, load_lexicon
from .lowering import BOTTOM_UP, TOP_DOWN

EXIT_OK, EXIT_ERROR, EXIT_CONSCIOUS = 0, 1, 2
LANGS = tuple(DEFAULT_STRATEGY)


@dataclass(frozen=True)
class CliConfig:
    command: str
    lang: str = "english"
    strategy: Optional[str] = None
    lexicon_path: Optional[str] = None
    corpus_path: Optional[str] = None
    trace_verbosity: str = "events"
    full_closure: bool = False

    @property
    def effective_strategy(self) -> str:
        return self.strategy or DEFAULT_STRATEGY[self.lang]

    def lexicon(self) -> Lexicon:
        if self.lexicon_path:
            return load_lexicon(self.lexicon_path)
        return bundled_lexicon(self.lang)


def _strategy(value: str) -> str:
    norm = value.replace("-", "_")
    if norm not in (BOTTOM_UP, TOP_DOWN):
        raise argparse.ArgumentTypeError("expected bottom-up or top-down")
    return norm


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dtparse", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lang", choices=LANGS, default="english")
    common.add_argument("--strategy", type=_strategy, default=None,
                        help="bottom-up or top-down (default depends on --lang)")
    common.add_argument("--lexicon", dest="lexicon_path", metavar="PATH",
                        help="lexicon file to use instead of the bundled one")

    p = sub.add_parser("parse", parents=[common], help="parse one sentence and print its trace")
    p.add_argument("sentence", nargs="+")
    p.add_argument("--trace", dest="trace_verbosity", default="events",
                   choices=("quiet", "events", "relations"))
    p.add_argument("--tree", action="store_true", help="also print the final bracketing")

    c = sub.add_parser("corpus", help="classify every sentence of an annotated corpus")
    c.add_argument("--corpus", dest="corpus_path", metavar="FILE",
                   help="corpus file (default: the bundled corpus)")
    c.add_argument("--strategy", type=_strategy, default=None,
                   help="force one strategy for every language")
    c.add_argument("--lexicon", dest="lexicon_path", metavar="PATH",
                   help="override the lexicon of --lang")
    c.add_argument("--lang", choices=LANGS, default="english")
    c.add_argument("-o", "--output", metavar="FILE")

    e = sub.add_parser("export", parents=[common], help="write the final description as a graph")
    e.add_argument("sentence", nargs="+")
    e.add_argument("--format", choices=("text", "dot"), default="text")
    e.add_argument("--full-closure", action="store_true",
                   help="include derived relations as well as asserted ones")
    e.add_argument("-o", "--output", metavar="FILE")

    s = sub.add_parser("compare-strategies", parents=[common],
                       help="parse under both search strategies side by side")
    s.add_argument("sentence", nargs="+")
    return ap


def _config(ns: argparse.Namespace) -> CliConfig:
    return CliConfig(
        command=ns.command,
        lang=ns.lang,
        strategy=ns.strategy,
        lexicon_path=ns.lexicon_path,
        corpus_path=getattr(ns, "corpus_path", None),
        trace_verbosity=getattr(ns, "trace_verbosity", "events"),
        full_closure=getattr(ns, "full_closure", False),
    )


def _emit(text: str, path: Optional[str], out) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_parse(sentence: str, config: CliConfig, out=sys.stdout, tree: bool = False) -> int:
    report = parse_sentence(sentence, config.lang, config.strategy, config.lexicon())
    out.write(report.trace(config.trace_verbosity))
    if tree:
        out.write(bracket(report.final_description) + "\n")
    return EXIT_CONSCIOUS if report.classification == CONSCIOUS else EXIT_OK


def cmd_corpus(config: CliConfig, out=sys.stdout, output: Optional[str] = None) -> int:
    corpus = read_corpus(config.corpus_path) if config.corpus_path else bundled_corpus()
    lexicons = {config.lang: load_lexicon(config.lexicon_path)} if config.lexicon_path else None
    report = classify_corpus(corpus, config.strategy, lexicons)
    _emit(report.format(), output, out)
    return EXIT_OK if report.ok else EXIT_ERROR


def cmd_export(sentence: str, config: CliConfig, fmt: str = "text", out=sys.stdout,
               output: Optional[str] = None) -> int:
    report = parse_sentence(sentence, config.lang, config.strategy, config.lexicon())
    d = report.final_description
    if fmt == "dot":
        text = to_dot(d, full_closure=config.full_closure)
    else:
        text = to_text(d, full_closure=config.full_closure)
    _emit(text, output, out)
    return EXIT_OK


def strategy_summary(report) -> list[str]:
    lowers = report.lowerings
    lines = [f"classification: {report.classification}"]
    if not lowers:
        lines.append("lowered: none")
    for e in lowers:
        info = e.info
        line = f"lowered: {info['node']} at word {e.step} ({e.word}) class={info['class']}"
        lines.append(line)
        if "expelled" in info:
            lines.append(f"expelled: {info['expelled']}")
    return lines


def cmd_compare_strategies(sentence: str, config: CliConfig, out=sys.stdout) -> int:
    lexicon = config.lexicon()
    for strategy in (BOTTOM_UP, TOP_DOWN):
        report = parse_sentence(sentence, config.lang, strategy, lexicon)
        out.write(f"[{strategy}]\n")
        for line in strategy_summary(report):
            out.write(f"  {line}\n")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for conscious garden paths
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    config = _config(ns)
    try:
        if ns.command == "parse":
            return cmd_parse(" ".join(ns.sentence), config, tree=ns.tree)
        if ns.command == "corpus":
            return cmd_corpus(config, output=ns.output)
        if ns.command == "export":
            return cmd_export(" ".join(ns.sentence), config, ns.format, output=ns.output)
        return cmd_compare_strategies(" ".join(ns.sentence), config)
    except (LexiconError, CorpusFormatError, OSError) as exc:
        print(f"dtparse: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
