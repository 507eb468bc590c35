"""Lexical knowledge: projection templates, entries and licensing facts.

Lexicons are YAML documents (``*.lex``).  A template lists its nodes as
category labels with optional features (``NP[num=?n]``), its relations in
the same ``dom A B`` / ``prec A B`` syntax used for descriptions, the
node whose daughter is the input word (``lex``), its root, and its left
and right attachment sites.  Entries pick a template and may add
subcategorization frames, feature values, licensing facts and (for
Japanese verbs) a case frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping, Optional, Union

import yaml

from .description import KINDS, ConsistencyError, Node, Relation, TreeDescription, _make
from .features import parse_label

FORMAT = "dtparse-lexicon"
VERSION = 1
WORD = "word"


class LexiconError(Exception):
    pass


@dataclass(frozen=True)
class AttachmentSite:
    node: str
    category: str
    side: str
    saturated: bool = False

    def saturate(self) -> "AttachmentSite":
        if self.saturated:
            raise ValueError(f"site {self.node} is already saturated")
        return AttachmentSite(self.node, self.category, self.side, True)


@dataclass(frozen=True)
class ProjectionTemplate:
    name: str
    nodes: Mapping[str, tuple]  # var -> (category, features)
    relations: tuple
    root: str
    lex_slot: str
    left_sites: tuple = ()
    right_sites: tuple = ()


@dataclass(frozen=True)
class ArgSpec:
    node: str
    label: str
    side: str
    relations: tuple


@dataclass(frozen=True)
class SubcatFrame:
    name: str
    head_category: str
    argument_specs: tuple


@dataclass(frozen=True)
class CaseFrame:
    verb: str
    required_arguments: tuple  # ((particle, function), ...)
    optional_arguments: tuple = ()

    @property
    def required(self) -> frozenset:
        return frozenset(p for p, _ in self.required_arguments)

    @property
    def allowed(self) -> frozenset:
        return self.required | {p for p, _ in self.optional_arguments}

    def function_of(self, particle: str) -> Optional[str]:
        for p, fn in self.required_arguments + self.optional_arguments:
            if p == particle:
                return fn
        return None


@dataclass(frozen=True)
class LexiconEntry:
    surface: str
    language: str
    category: str
    projection: ProjectionTemplate
    subcat: tuple = ()
    licensing: frozenset = frozenset()
    features: Mapping[str, Mapping[str, str]] = field(default_factory=dict)
    case_frame: Optional[CaseFrame] = None
    reflexive: bool = False


@dataclass(frozen=True)
class SubtreeProjection:
    description: TreeDescription
    root: str
    left_sites: tuple
    right_sites: tuple
    features: Mapping[str, Mapping[str, str]]
    lex_node: str
    head: str
    entry: LexiconEntry
    position: int

    @property
    def word(self) -> str:
        return self.description.nodes[self.lex_node].lexeme


@dataclass(frozen=True)
class Lexicon:
    language: str
    entries: Mapping[str, tuple]
    templates: Mapping[str, ProjectionTemplate] = field(default_factory=dict)
    version: int = VERSION

    def lookup(self, word: str) -> tuple:
        """Entries for ``word`` in preference order; falls back to lower case."""
        found = self.entries.get(word) or self.entries.get(word.lower())
        if not found:
            raise LexiconError(f"unknown word: {word!r}")
        return found

    def __contains__(self, word: str) -> bool:
        return word in self.entries or word.lower() in self.entries


# --------------------------------------------------------------------------
# loading
# --------------------------------------------------------------------------

def _relations(lines, where: str) -> tuple:
    out = []
    for line in lines or ():
        parts = line.split()
        if len(parts) != 3 or parts[0] not in KINDS:
            raise LexiconError(f"{where}: bad relation {line!r}")
        out.append(_make(*parts))
    return tuple(out)


def _template(name: str, spec: dict) -> ProjectionTemplate:
    nodes = {var: parse_label(label) for var, label in (spec.get("nodes") or {}).items()}
    where = f"template {name}"
    for key in ("root", "lex"):
        if spec.get(key) not in nodes:
            raise LexiconError(f"{where}: {key} must name a declared node")
    rels = _relations(spec.get("relations"), where)
    for r in rels:
        for x in (r.left, r.right):
            if x not in nodes:
                raise LexiconError(f"{where}: undeclared node {x}")

    def sites(side):
        out = []
        for var in spec.get(side) or ():
            if var not in nodes:
                raise LexiconError(f"{where}: site {var} is not a node")
            out.append(AttachmentSite(var, nodes[var][0], side))
        return tuple(out)

    left = sites("left")
    if len(left) > 1:
        raise LexiconError(f"{where}: at most one left attachment site")
    return ProjectionTemplate(name, nodes, rels, spec["root"], spec["lex"], left, sites("right"))


def _frame(name: str, spec: dict) -> SubcatFrame:
    args = []
    for arg in spec.get("args") or ():
        side = arg.get("side", "right")
        if side != "right":
            raise LexiconError(f"frame {name}: only right arguments are created by subcat")
        args.append(ArgSpec(arg["node"], arg["category"], side,
                            _relations(arg.get("relations"), f"frame {name}")))
    return SubcatFrame(name, spec.get("head", "V"), tuple(args))


def _feature_overrides(spec) -> dict:
    out = {}
    for var, body in (spec or {}).items():
        _, feats = parse_label(f"X[{body}]")
        out[var] = feats
    return out


def parse_lexicon(data: dict) -> Lexicon:
    if not isinstance(data, dict) or data.get("format") != FORMAT:
        raise LexiconError(f"not a {FORMAT} document")
    if data.get("version") != VERSION:
        raise LexiconError(f"unsupported lexicon version {data.get('version')!r}")
    language = data["language"]
    templates = {n: _template(n, s) for n, s in (data.get("templates") or {}).items()}
    frames = {n: _frame(n, s) for n, s in (data.get("frames") or {}).items()}
    entries: dict[str, list] = {}
    for spec in data.get("entries") or ():
        word = str(spec["word"])
        try:
            template = templates[spec["template"]]
            subcat = tuple(frames[f] for f in spec.get("subcat") or ())
        except KeyError as exc:
            raise LexiconError(f"entry {word}: unknown template or frame {exc}") from None
        category = spec.get("category", template.nodes[template.lex_slot][0])
        if category != template.nodes[template.lex_slot][0]:
            raise LexiconError(f"entry {word}: category {category} differs from lex slot")
        case_frame = None
        if "case_frame" in spec:
            case_frame = CaseFrame(
                word,
                tuple(spec["case_frame"].items()),
                tuple((spec.get("optional_cases") or {}).items()),
            )
        entry = LexiconEntry(
            surface=word,
            language=language,
            category=category,
            projection=template,
            subcat=subcat,
            licensing=frozenset(spec.get("licenses") or ()),
            features=_feature_overrides(spec.get("features")),
            case_frame=case_frame,
            reflexive=bool(spec.get("reflexive", False)),
        )
        validate_entry(entry)
        entries.setdefault(word, []).append(entry)
    return Lexicon(
        language,
        {w: tuple(es) for w, es in entries.items()},
        templates,
        VERSION,
    )


def load_lexicon(path: Union[str, Path]) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(yaml.safe_load(fh))


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("dtparse") / "data" / name))


_BUNDLED: dict = {}


def bundled_lexicon(language: str) -> Lexicon:
    if language not in _BUNDLED:
        _BUNDLED[language] = load_lexicon(bundled_path(f"{language}.lex"))
    return _BUNDLED[language]


# --------------------------------------------------------------------------
# projection
# --------------------------------------------------------------------------

def _rename_value(value: str, position: int) -> str:
    return f"{value}@{position}" if value.startswith("?") else value


def project(word: str, entry: LexiconEntry, position: int) -> SubtreeProjection:
    """Instantiate ``entry``'s template for ``word`` at input ``position``.

    Node ids are ``<var>@<position>``; the word itself becomes the
    terminal ``<word>#<position>`` under the template's lex slot.
    Subcategorized arguments are appended as new right sites.
    """
    if word.lower() != entry.surface.lower():
        raise LexiconError(f"entry for {entry.surface!r} does not match {word!r}")
    t = entry.projection
    ident = {var: f"{var}@{position}" for var in t.nodes}
    labels = dict(t.nodes)
    rels = list(t.relations)
    right = list(t.right_sites)
    for frame in entry.subcat:
        for arg in frame.argument_specs:
            if arg.node in labels:
                raise LexiconError(f"{word}: argument node {arg.node} clashes with template")
            labels[arg.node] = parse_label(arg.label)
            ident[arg.node] = f"{arg.node}@{position}"
            rels.extend(arg.relations)
            right.append(AttachmentSite(arg.node, labels[arg.node][0], "right"))

    nodes, features = [], {}
    for var, (cat, feats) in labels.items():
        nid = ident[var]
        nodes.append(Node(nid, cat, origin=position))
        merged = {k: _rename_value(v, position) for k, v in feats.items()}
        merged.update({k: _rename_value(v, position) for k, v in entry.features.get(var, {}).items()})
        features[nid] = merged
    terminal = f"{word}#{position}"
    nodes.append(Node(terminal, WORD, lexeme=word, origin=position))
    try:
        out_rels = [Relation(r.kind, ident[r.left], ident[r.right]) for r in rels]
    except KeyError as exc:
        raise LexiconError(f"{word}: relation mentions unknown node {exc}") from None
    out_rels.append(Relation("dom", ident[t.lex_slot], terminal))

    def sites(seq):
        return tuple(AttachmentSite(ident[s.node], s.category, s.side) for s in seq)

    try:
        desc = TreeDescription().assert_relations(out_rels, nodes)
    except ConsistencyError as exc:
        raise LexiconError(f"{word}: projection is not a tree description ({exc})") from None
    return SubtreeProjection(
        description=desc,
        root=ident[t.root],
        left_sites=sites(t.left_sites),
        right_sites=sites(right),
        features=features,
        lex_node=terminal,
        head=ident[t.lex_slot],
        entry=entry,
        position=position,
    )


def validate_entry(entry: LexiconEntry) -> None:
    proj = project(entry.surface, entry, 0)
    d = proj.description
    others = set(d.nodes) - {proj.root}
    if not others <= d.closure.below(proj.root):
        raise LexiconError(f"{entry.surface}: root does not dominate every template node")
    for site in proj.left_sites + proj.right_sites:
        if d.closure.below(site.node):
            raise LexiconError(f"{entry.surface}: site {site.node} has daughters")


def licenses(entry: Optional[LexiconEntry], root_category: str, lowered_category: str) -> bool:
    """May a node of ``root_category`` replace one of ``lowered_category``?

    A like-category replacement is adjunction at that level and is always
    licensed.  Otherwise the head governing the position must list the
    new category among its licensed complements.  ``entry`` is None when
    the position is the root of the description, which nothing governs.
    """
    if root_category == lowered_category:
        return True
    if entry is None:
        return True
    return root_category in entry.licensing
