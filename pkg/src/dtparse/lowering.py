"""Reanalysis by tree-lowering.

A node is accessible when it dominates the last word attached and no
unsaturated attachment site.  Lowering unifies the incoming projection's
left site with an accessible node N and asserts, besides the projection,
the relations that place N, rewritten to place the projection's root R
there instead.  The original relations stay; closure keeps them true
once R dominates N.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .attachment import (
    LOWER,
    LOWER_REJECT,
    AttachFailure,
    ParseEvent,
    ParserState,
    combine,
)
from .constraints import lowest_above
from .description import DOM, Node, Relation
from .lexicon import AttachmentSite, SubtreeProjection, licenses

BOTTOM_UP = "bottom_up"
TOP_DOWN = "top_down"
STRATEGIES = (BOTTOM_UP, TOP_DOWN)


class LowerFailure(Exception):
    def __init__(self, reason: str, detail: str = "", rejected: tuple = ()):
        self.reason = reason
        self.detail = detail
        self.rejected = tuple(rejected)
        super().__init__(f"{reason}: {detail}" if detail else reason)


@dataclass(frozen=True)
class AccessibleSet:
    candidates: tuple
    strategy: str
    last_word: Optional[str]

    def __iter__(self):
        return iter(self.candidates)

    def __contains__(self, node) -> bool:
        return node in self.candidates


@dataclass(frozen=True)
class LoweringResult:
    lowered_node: str
    replacement_root: str
    substituted_relations: frozenset
    new_state: ParserState
    kind: str = "argument"  # argument | adjunct | relative


def accessible_nodes(state: ParserState, strategy: str = BOTTOM_UP) -> AccessibleSet:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    d, w = state.description, state.last_word
    if w is None:
        return AccessibleSet((), strategy, None)
    open_sites = [s.node for s in state.unsaturated]
    found = [n for n in d.closure.above(w) if not any(d.dominates(n, s) for s in open_sites)]
    depth = {n: len(d.closure.above(n)) for n in found}
    if strategy == BOTTOM_UP:
        found.sort(key=lambda n: (-depth[n], n))
    else:
        found.sort(key=lambda n: (depth[n], n))
    return AccessibleSet(tuple(found), strategy, w)


def substitute(rels, old: str, new: str) -> frozenset:
    return frozenset(
        Relation(r.kind, new if r.left == old else r.left, new if r.right == old else r.right)
        for r in rels
    )


def governing_entry(state: ParserState, m: frozenset, root: str):
    """Lexical entry heading the node that dominates the lowering position."""
    d = state.description
    parents = [r.left for r in m if r.kind == DOM and r.right == root]
    if not parents:
        return None
    lowest = [p for p in parents if not any(d.dominates(p, q) for q in parents if q != p)]
    return state.head_entry(lowest[0])


def _reject(proj: SubtreeProjection, node: str, reason: str, detail: str = "") -> ParseEvent:
    info = [("node", node), ("reason", reason)]
    if detail:
        info.append(("why", detail))
    return ParseEvent(proj.position, proj.word, LOWER_REJECT, tuple(info))


def tree_lower(
    state: ParserState,
    proj: SubtreeProjection,
    n: str,
    candidate_filter: Optional[Callable] = None,
    strategy: str = BOTTOM_UP,
) -> LoweringResult:
    d = state.description
    if n not in accessible_nodes(state, strategy):
        raise LowerFailure("not-accessible", n)
    if not proj.left_sites:
        raise LowerFailure("no-left-site", proj.word)
    site = proj.left_sites[0]
    if site.category != d.nodes[n].category:
        raise LowerFailure("category-mismatch", f"{site.category} vs {d.nodes[n].category}")
    root = proj.root
    root_cat = proj.description.nodes[root].category
    m = substitute(d.local_relations(n), n, root)
    if not licenses(governing_entry(state, m, root), root_cat, d.nodes[n].category):
        raise LowerFailure("not-licensed", f"{root_cat} in place of {n}")
    kind = "adjunct" if root_cat == d.nodes[n].category else "argument"
    detail = (("node", n), ("root", root), ("M", _fmt_rels(m)), ("class", kind))
    try:
        new = combine(state, proj, {site.node: n}, op=LOWER, detail=detail,
                      extra=m, saturate=[n])
    except AttachFailure as exc:
        raise LowerFailure(exc.reason, exc.detail) from None
    if candidate_filter is not None:
        problem = candidate_filter(new, n)
        if problem:
            raise LowerFailure(*problem)
    return LoweringResult(n, root, m, new, kind)


def select_and_lower(
    state: ParserState,
    proj: SubtreeProjection,
    strategy: str = BOTTOM_UP,
    candidate_filter: Optional[Callable] = None,
) -> LoweringResult:
    """Lower at the first accessible node, in strategy order, that works.

    Only accessible nodes of the left site's category are candidates;
    each rejected candidate is logged with its reason.
    """
    if not proj.left_sites:
        raise LowerFailure("no-left-site", proj.word)
    d = state.description
    want = proj.left_sites[0].category
    rejected = []
    for n in accessible_nodes(state, strategy):
        if d.nodes[n].category != want:
            continue
        try:
            return tree_lower(state.with_events(rejected), proj, n, candidate_filter, strategy)
        except LowerFailure as exc:
            rejected.append(_reject(proj, n, exc.reason, exc.detail))
    raise LowerFailure("exhausted", proj.word, rejected)


def reflexive_filter(gender: str) -> Callable:
    """Candidate filter: the lowered node must be able to bind a reflexive of ``gender``."""

    def check(state: ParserState, node: str):
        have = state.features_of(node).get("gen")
        if have and have != gender:
            return "binding", f"{node} is {have}, reflexive is {gender}"
        return None

    return check


# --------------------------------------------------------------------------
# Japanese relative clauses
# --------------------------------------------------------------------------

def _spine(d, top: str, bottom: str) -> list[str]:
    path = [bottom]
    while path[-1] != top:
        path.append(d.parent(path[-1]))
    return path[::-1]


def words_under(state: ParserState, node: str) -> str:
    d = state.description
    words = [t for t in d.terminals() if d.dominates(node, t)]
    return " ".join(d.nodes[t].lexeme for t in words)


def relative_clause_lower(
    state: ParserState, head: SubtreeProjection, strategy: str = TOP_DOWN
) -> LoweringResult:
    """Reanalyse the clause just completed as a relative clause on ``head``.

    The clausal structure above the lowering node N is rebuilt as a new
    relative clause with empty arguments for the case-frame roles left
    behind; one of them is the gap bound by the head noun (the subject
    when possible).  The head NP, inside a new matrix VP with a fresh
    verb site, takes N's place.  Material above N stays in the matrix
    clause, where the matrix verb's case frame will check it.
    """
    d = state.description
    w = state.last_word
    verb_entry = state.heads.get(d.nodes[w].origin) if w else None
    if verb_entry is None or verb_entry.case_frame is None:
        raise LowerFailure("no-clause", "last word is not a verb")
    frame = verb_entry.case_frame
    verb = d.parent(w)
    clause = lowest_above(d, verb, "S")
    if clause is None or lowest_above(d, clause, "S") is not None:
        raise LowerFailure("case-frame-unsatisfiable", "clause nesting")

    pos = head.position
    rejected = []
    for n in accessible_nodes(state, strategy):
        if not (n == clause or d.dominates(clause, n)) or not (n == verb or d.dominates(n, verb)):
            continue
        spine = _spine(d, clause, n)
        expelled = []
        for level, p in enumerate(spine[:-1]):
            for child in d.children(p):
                case = state.features_of(child).get("case")
                if d.nodes[child].category == "NP" and case in frame.allowed:
                    expelled.append((level, child, case))
        roles = [e for e in expelled if e[2] in frame.required]
        if not roles:
            rejected.append(_reject(head, n, "no-gap", "nothing expelled for the head to bind"))
            continue
        gap = next((e for e in roles if frame.function_of(e[2]) == "subject"), roles[0])
        try:
            result = _build_relative(state.with_events(rejected), head, n, spine, expelled, gap, pos)
        except LowerFailure as exc:
            rejected.append(_reject(head, n, exc.reason, exc.detail))
            continue
        return result
    raise LowerFailure("exhausted", head.word, rejected)


def _build_relative(state, head, n, spine, expelled, gap, pos) -> LoweringResult:
    d = state.description
    copies = [f"{d.nodes[p].category}rel{i}@{pos}" for i, p in enumerate(spine[:-1])]
    site = f"A@{pos}"
    chain = copies + [site]
    nodes = [Node(c, d.nodes[p].category, origin=pos) for c, p in zip(chain, spine)]
    features = {c: {} for c in chain}
    rels = [Relation("dom", a, b) for a, b in zip(chain, chain[1:])]
    empties = []
    for level, np, case in expelled:
        e = f"e{level}{case}@{pos}"
        nodes.append(Node(e, "NP", origin=pos, empty=True))
        features[e] = {"case": case}
        if (level, np, case) == gap:
            features[e]["gap"] = head.root
        rels.append(Relation("dom", copies[level], e))
        if d.precedes(np, spine[level + 1]):
            rels.append(Relation("prec", e, chain[level + 1]))
        else:
            rels.append(Relation("prec", chain[level + 1], e))
        empties.append(e)
    vp, vsite = f"VPm@{pos}", f"Vm@{pos}"
    nodes += [Node(vp, "VP", origin=pos), Node(vsite, "V", origin=pos)]
    features[vp], features[vsite] = {}, {}
    rels += [
        Relation("dom", head.root, copies[0]),
        Relation("prec", copies[0], head.head),
        Relation("dom", vp, head.root),
        Relation("dom", vp, vsite),
        Relation("prec", head.root, vsite),
    ]
    composite = SubtreeProjection(
        description=head.description.assert_relations(rels, nodes),
        root=vp,
        left_sites=(AttachmentSite(site, d.nodes[n].category, "left"),),
        right_sites=head.right_sites + (AttachmentSite(vsite, "V", "right"),),
        features={**head.features, **features},
        lex_node=head.lex_node,
        head=head.head,
        entry=head.entry,
        position=pos,
    )
    m = substitute(d.local_relations(n), n, vp)
    gap_node = f"e{gap[0]}{gap[2]}@{pos}"
    detail = (
        ("node", n),
        ("root", vp),
        ("M", _fmt_rels(m)),
        ("class", "relative"),
        ("gap", gap_node),
        ("expelled", " | ".join(words_under(state, np) for _, np, _ in expelled)),
    )
    try:
        new = combine(state, composite, {site: n}, op=LOWER, detail=detail,
                      extra=m, saturate=[n])
    except AttachFailure as exc:
        raise LowerFailure(exc.reason, exc.detail) from None
    return LoweringResult(n, vp, m, new, "relative")


def _fmt_rels(rels) -> str:
    return "{" + ", ".join(str(r) for r in sorted(rels, key=lambda r: (r.kind, r.left, r.right))) + "}"
