"""Parser state and the two simple attachment operations.

Unifying two nodes always folds the projection's node into the node that
is already in the description, so relations asserted earlier are never
rewritten; only the incoming projection's relations are renamed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Optional

from . import constraints
from .description import ConsistencyError, Relation, TreeDescription
from .features import resolved, unify
from .lexicon import AttachmentSite, LexiconEntry, SubtreeProjection

LEFT_ATTACH = "LeftAttach"
RIGHT_ATTACH = "RightAttach"
LOWER = "Lower"
LOWER_REJECT = "LowerReject"
FAIL = "Fail"


class AttachFailure(Exception):
    """Signal that an operation does not apply; the caller tries the next one."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


@dataclass(frozen=True)
class SecondaryRelation:
    kind: str  # theta-assignment | case-assignment
    assigner: str
    assignee: str


@dataclass(frozen=True)
class ParseEvent:
    step: int
    word: str
    op: str
    detail: tuple = ()
    relations_added: frozenset = frozenset()

    @property
    def info(self) -> dict:
        return dict(self.detail)


@dataclass(frozen=True)
class ParserState:
    description: TreeDescription = field(default_factory=TreeDescription)
    last_word: Optional[str] = None
    sites: tuple = ()
    features: Mapping[str, Mapping[str, str]] = field(default_factory=dict)
    bindings: Mapping[str, str] = field(default_factory=dict)
    events: tuple = ()
    secondary: tuple = ()
    heads: Mapping[int, LexiconEntry] = field(default_factory=dict)
    site_heads: Mapping[str, str] = field(default_factory=dict)
    node_heads: Mapping[str, int] = field(default_factory=dict)

    @property
    def open_right_sites(self) -> list[AttachmentSite]:
        return [s for s in self.sites if s.side == "right" and not s.saturated]

    @property
    def unsaturated(self) -> list[AttachmentSite]:
        return [s for s in self.sites if not s.saturated]

    @property
    def is_empty(self) -> bool:
        return not self.description.nodes

    def head_entry(self, node: str) -> Optional[LexiconEntry]:
        """Entry of the word whose projection supplies ``node``'s head."""
        pos = self.node_heads.get(node)
        return None if pos is None else self.heads.get(pos)

    def features_of(self, node: str) -> dict:
        return resolved(self.features.get(node, {}), self.bindings)

    def with_events(self, events: Iterable[ParseEvent]) -> "ParserState":
        events = tuple(events)
        return replace(self, events=self.events + events) if events else self


def _rename(rel: Relation, table: Mapping[str, str]) -> Relation:
    return Relation(rel.kind, table.get(rel.left, rel.left), table.get(rel.right, rel.right))


def combine(
    state: ParserState,
    proj: SubtreeProjection,
    renames: Mapping[str, str],
    *,
    op: str,
    detail: tuple = (),
    extra: Iterable[Relation] = (),
    saturate: Iterable[str] = (),
    insert_after: Optional[str] = None,
) -> ParserState:
    """Union ``proj`` (and ``extra``) into ``state``.

    ``renames`` maps projection nodes onto description nodes they unify
    with; categories must be identical and features must unify.
    ``saturate`` names sites (by description-side id) closed by the
    unification.  New right sites go right after ``insert_after`` when
    given, otherwise before all existing sites.
    """
    d = state.description
    bindings = dict(state.bindings)
    features = dict(state.features)
    for p, n in renames.items():
        pc, nc = proj.description.nodes[p].category, d.nodes[n].category
        if pc != nc:
            raise AttachFailure("category-mismatch", f"{pc} vs {nc}")
        merged = unify(features.get(n, {}), proj.features.get(p, {}), bindings)
        if merged is None:
            raise AttachFailure("feature-clash", f"{p} vs {n}")
        features[n], bindings = merged
    new_nodes = [x for i, x in proj.description.nodes.items() if i not in renames]
    for x in new_nodes:
        features[x.id] = dict(proj.features.get(x.id, {}))

    rels = {_rename(r, renames) for r in proj.description.asserted}
    rels.update(extra)
    try:
        desc = d.assert_relations(rels, new_nodes)
    except ConsistencyError as exc:
        raise AttachFailure("inconsistent", str(exc)) from None

    saturate = set(saturate)
    incoming = []
    for s in proj.left_sites + proj.right_sites:
        node = renames.get(s.node, s.node)
        site = AttachmentSite(node, s.category, s.side, node in saturate)
        if node not in d.nodes or node in saturate:
            incoming.append(site)
    old = [s.saturate() if s.node in saturate and not s.saturated else s for s in state.sites]
    if insert_after is None:
        sites = tuple(incoming) + tuple(old)
    else:
        k = next(i for i, s in enumerate(old) if s.node == insert_after) + 1
        sites = tuple(old[:k]) + tuple(incoming) + tuple(old[k:])

    site_heads = dict(state.site_heads)
    for s in proj.left_sites + proj.right_sites:
        site_heads.setdefault(renames.get(s.node, s.node), proj.head)
    node_heads = dict(state.node_heads)
    for x in new_nodes:
        node_heads[x.id] = proj.position
    if proj.root in renames:
        # a projection filling a site becomes that node's head
        node_heads[renames[proj.root]] = proj.position
    secondary = list(state.secondary)
    for node in sorted(saturate):
        assigner = site_heads.get(node)
        cat = desc.nodes[node].category
        if cat == "K":
            np = desc.parent(node)
            secondary.append(SecondaryRelation("case-assignment", node, np))
        elif cat == "NP" and assigner is not None:
            secondary.append(SecondaryRelation("theta-assignment", assigner, node))

    added = frozenset(rels - d.asserted)
    event = ParseEvent(proj.position, proj.word, op, tuple(detail), added)
    new = ParserState(
        description=desc,
        last_word=proj.lex_node,
        sites=sites,
        features=features,
        bindings=bindings,
        events=state.events + (event,),
        secondary=tuple(secondary),
        heads={**state.heads, proj.position: proj.entry},
        site_heads=site_heads,
        node_heads=node_heads,
    )
    problem = constraints.violation(new)
    if problem is not None:
        raise AttachFailure(*problem)
    return new


def initial_state(proj: SubtreeProjection) -> ParserState:
    """The first word's projection becomes the description."""
    return combine(ParserState(), proj, {}, op=LEFT_ATTACH, detail=(("initial", proj.root),))


def left_attach(state: ParserState, proj: SubtreeProjection) -> ParserState:
    """Attach the current description at the left corner of ``proj``."""
    if state.is_empty:
        return initial_state(proj)
    if not proj.left_sites:
        raise AttachFailure("no-left-site")
    root = state.description.root()
    site = proj.left_sites[0]
    detail = [("site", site.node), ("root", root)]
    if state.open_right_sites:
        # the description still expects material on its right
        detail.append(("fallback", "open-right-sites"))
    return combine(state, proj, {site.node: root}, op=LEFT_ATTACH,
                   detail=tuple(detail), saturate=[root])


def right_attach(state: ParserState, proj: SubtreeProjection) -> ParserState:
    """Attach ``proj`` at the first open right site of the description."""
    sites = state.open_right_sites
    if not sites:
        raise AttachFailure("no-open-site")
    if proj.left_sites:
        raise AttachFailure("dangling-left-site", proj.left_sites[0].node)
    site = sites[0]
    return combine(state, proj, {proj.root: site.node}, op=RIGHT_ATTACH,
                   detail=(("site", site.node), ("root", proj.root)),
                   saturate=[site.node], insert_after=site.node)
