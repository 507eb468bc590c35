"""Tree descriptions: monotone sets of dominance and precedence relations.

A description holds the *asserted* relations handed to it by parser
operations together with their closure under transitivity of both
relations and inheritance of precedence by descendants.  Every update
returns a new description; the old one stays reachable through
``previous`` so traces can diff consecutive states.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional

DOM = "dom"
PREC = "prec"
KINDS = (DOM, PREC)


class Relation(NamedTuple):
    kind: str
    left: str
    right: str

    def __str__(self) -> str:
        return f"{self.kind}({self.left},{self.right})"


def dom(parent: str, child: str) -> Relation:
    return _make(DOM, parent, child)


def prec(left: str, right: str) -> Relation:
    return _make(PREC, left, right)


def _make(kind: str, a: str, b: str) -> Relation:
    if a == b:
        raise ValueError(f"{kind}({a},{b}) is reflexive")
    return Relation(kind, a, b)


@dataclass(frozen=True)
class Node:
    id: str
    category: str
    lexeme: Optional[str] = None
    origin: int = 0
    empty: bool = False

    @property
    def is_terminal(self) -> bool:
        return self.lexeme is not None


class ConsistencyError(Exception):
    """A description violates exclusivity, antisymmetry or acyclicity."""

    def __init__(self, condition: str, pair: tuple[str, str]):
        self.condition = condition
        self.pair = pair
        super().__init__(f"{condition} violated on {pair[0]},{pair[1]}")


# --------------------------------------------------------------------------
# closure
# --------------------------------------------------------------------------

def closure_of(asserted: Iterable[Relation]) -> frozenset[Relation]:
    """Least set containing ``asserted`` closed under the tree axioms.

    Dominance is closed transitively on its own.  Precedence is first
    pushed down to every descendant of either end point and then closed
    transitively; the result is already closed under inheritance.
    """
    succ: dict[str, set[str]] = {}
    base_prec = []
    for r in asserted:
        if r.kind == DOM:
            succ.setdefault(r.left, set()).add(r.right)
        else:
            base_prec.append(r)

    below: dict[str, set[str]] = {}

    def descendants(x: str) -> set[str]:
        if x not in below:
            seen: set[str] = set()
            stack = list(succ.get(x, ()))
            while stack:
                y = stack.pop()
                if y not in seen:
                    seen.add(y)
                    stack.extend(succ.get(y, ()))
            below[x] = seen
        return below[x]

    out = {Relation(DOM, x, y) for x in list(succ) for y in descendants(x)}

    after: dict[str, set[str]] = {}
    for r in base_prec:
        rights = descendants(r.right) | {r.right}
        for x in descendants(r.left) | {r.left}:
            after.setdefault(x, set()).update(rights)
    # transitive closure of the expanded precedence graph
    changed = True
    while changed:
        changed = False
        for x, ys in after.items():
            extra = set()
            for y in ys:
                extra |= after.get(y, set())
            if not extra <= ys:
                ys |= extra
                changed = True
    out.update(Relation(PREC, x, y) for x, ys in after.items() for y in ys)
    return frozenset(out)


class Closure:
    """Closed relation set with adjacency indexes; extended semi-naively."""

    __slots__ = ("relations", "succ", "pred")

    def __init__(self, relations=frozenset(), succ=None, pred=None):
        self.relations = relations
        self.succ = succ if succ is not None else {DOM: {}, PREC: {}}
        self.pred = pred if pred is not None else {DOM: {}, PREC: {}}

    def __contains__(self, rel: Relation) -> bool:
        return rel in self.relations

    def __iter__(self) -> Iterator[Relation]:
        return iter(self.relations)

    def __len__(self) -> int:
        return len(self.relations)

    def below(self, x: str) -> frozenset[str]:
        return frozenset(self.succ[DOM].get(x, ()))

    def above(self, x: str) -> frozenset[str]:
        return frozenset(self.pred[DOM].get(x, ()))

    def extended(self, new: Iterable[Relation]) -> "Closure":
        rels = set(self.relations)
        succ = {k: {x: set(v) for x, v in d.items()} for k, d in self.succ.items()}
        pred = {k: {x: set(v) for x, v in d.items()} for k, d in self.pred.items()}
        agenda = [r for r in new if r not in rels]
        while agenda:
            r = agenda.pop()
            if r in rels:
                continue
            kind, a, b = r
            rels.add(r)
            succ[kind].setdefault(a, set()).add(b)
            pred[kind].setdefault(b, set()).add(a)
            ds, dp = succ[DOM], pred[DOM]
            ps, pp = succ[PREC], pred[PREC]
            if kind == DOM:
                agenda.extend(Relation(DOM, x, b) for x in dp.get(a, ()))
                agenda.extend(Relation(DOM, a, y) for y in ds.get(b, ()))
                agenda.extend(Relation(PREC, b, z) for z in ps.get(a, ()))
                agenda.extend(Relation(PREC, z, b) for z in pp.get(a, ()))
            else:
                agenda.extend(Relation(PREC, a, c) for c in ps.get(b, ()))
                agenda.extend(Relation(PREC, z, b) for z in pp.get(a, ()))
                agenda.extend(Relation(PREC, x, b) for x in ds.get(a, ()))
                agenda.extend(Relation(PREC, a, y) for y in ds.get(b, ()))
        return Closure(frozenset(rels), succ, pred)


def check_conditions(closure: Iterable[Relation]) -> None:
    """Raise ConsistencyError unless the closed set describes a tree."""
    rels = closure.relations if isinstance(closure, Closure) else frozenset(closure)
    doms = sorted(r for r in rels if r.kind == DOM)
    precs = sorted(r for r in rels if r.kind == PREC)
    for _, a, b in doms:
        if a == b:
            continue
        if Relation(PREC, a, b) in rels or Relation(PREC, b, a) in rels:
            raise ConsistencyError("exclusivity", (a, b))
    for kind, a, b in doms + precs:
        if a != b and Relation(kind, b, a) in rels:
            raise ConsistencyError("antisymmetry", (a, b))
    for kind, a, b in doms + precs:
        if a == b:
            raise ConsistencyError("acyclicity", (a, b))


# --------------------------------------------------------------------------
# descriptions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeDescription:
    nodes: Mapping[str, Node] = field(default_factory=dict)
    asserted: frozenset[Relation] = frozenset()
    closure: Closure = field(default_factory=Closure)
    generation: int = 0
    previous: Optional["TreeDescription"] = field(default=None, repr=False, compare=False)

    def assert_relations(
        self, rels: Iterable[Relation], new_nodes: Iterable[Node] = ()
    ) -> "TreeDescription":
        """Return the description extended by ``rels``.

        Raises ConsistencyError (leaving ``self`` untouched) when the
        closure of the union is not a tree description.
        """
        nodes = dict(self.nodes)
        for n in new_nodes:
            if n.id in nodes and nodes[n.id] != n:
                raise ValueError(f"node {n.id} already declared differently")
            nodes[n.id] = n
        rels = frozenset(rels)
        for r in rels:
            if r.left == r.right:
                raise ValueError(f"{r} is reflexive")
            for x in (r.left, r.right):
                if x not in nodes:
                    raise KeyError(f"unknown node {x} in {r}")
        closure = self.closure.extended(rels - self.closure.relations)
        check_conditions(closure)
        return TreeDescription(nodes, self.asserted | rels, closure, self.generation + 1, self)

    # -- queries ------------------------------------------------------------

    def holds(self, rel: Relation) -> bool:
        return rel in self.closure

    def dominates(self, a: str, b: str) -> bool:
        return Relation(DOM, a, b) in self.closure

    def precedes(self, a: str, b: str) -> bool:
        return Relation(PREC, a, b) in self.closure

    def provenance(self, rel: Relation) -> Optional[str]:
        if rel in self.asserted:
            return "asserted"
        if rel in self.closure:
            return "derived"
        return None

    @property
    def derived(self) -> frozenset[Relation]:
        return self.closure.relations - self.asserted

    def category(self, x: str) -> str:
        return self.nodes[x].category

    def local_relations(self, n: str) -> frozenset[Relation]:
        """Asserted relations fixing the position of ``n``.

        These are the relations in which ``n`` is dominated or takes part
        in precedence.  Relations in which ``n`` dominates something
        describe its contents, which stay with ``n`` when it moves.
        """
        if n not in self.nodes:
            raise KeyError(f"unknown node {n}")
        return frozenset(
            r for r in self.asserted
            if (r.kind == DOM and r.right == n) or (r.kind == PREC and n in (r.left, r.right))
        )

    def roots(self) -> list[str]:
        return sorted(x for x in self.nodes if not self.closure.above(x))

    def root(self) -> str:
        roots = self.roots()
        if len(roots) != 1:
            raise ValueError(f"description has {len(roots)} roots")
        return roots[0]

    def parent(self, x: str) -> Optional[str]:
        """The lowest dominator of ``x``, if the dominators form a chain."""
        ups = self.closure.above(x)
        if not ups:
            return None
        lowest = [u for u in ups if not any(self.dominates(u, v) for v in ups if v != u)]
        if len(lowest) != 1:
            raise ValueError(f"dominators of {x} do not form a chain")
        return lowest[0]

    def children(self, x: str) -> list[str]:
        kids = [y for y in self.closure.below(x) if self.parent(y) == x]
        return sorted(kids, key=lambda y: (sum(self.precedes(z, y) for z in kids), y))

    def terminals(self) -> list[str]:
        """Lexical terminals in surface order."""
        words = [n.id for n in self.nodes.values() if n.is_terminal]
        return sorted(words, key=lambda y: (sum(self.precedes(z, y) for z in words), y))

    def yield_words(self) -> list[str]:
        return [self.nodes[t].lexeme for t in self.terminals()]

    def history(self) -> list["TreeDescription"]:
        out, d = [], self
        while d is not None:
            out.append(d)
            d = d.previous
        return out[::-1]


def local_relations(d: TreeDescription, n: str) -> frozenset[Relation]:
    return d.local_relations(n)


# --------------------------------------------------------------------------
# rendering and serialization
# --------------------------------------------------------------------------

def _chain_word(d: TreeDescription, x: str) -> Optional[str]:
    """The word at the bottom of a unary chain from ``x``, else None."""
    while True:
        node = d.nodes[x]
        if node.is_terminal:
            return node.lexeme
        kids = d.children(x)
        if len(kids) != 1:
            return None
        x = kids[0]


def bracket(d: TreeDescription, x: Optional[str] = None, compact: bool = True) -> str:
    """Labelled bracketing.

    With ``compact`` unary chains collapse to their top label, and a phrase
    whose daughters are all such chains lists its words directly, giving
    ``[NP the truth]`` for ``[NP [D the] [N' [N truth]]]``.
    """
    x = d.root() if x is None else x
    node = d.nodes[x]
    if node.is_terminal:
        return node.lexeme
    label = node.category
    kids = d.children(x)
    if not kids:
        return f"[{label} e]" if node.empty else f"[{label}]"
    if compact:
        words = [_chain_word(d, k) for k in kids]
        if all(w is not None for w in words):
            return f"[{label} {' '.join(words)}]"
    return f"[{label} " + " ".join(bracket(d, k, compact) for k in kids) + "]"


def _rel_key(r: Relation):
    return (r.left, r.right, r.kind)


def to_text(d: TreeDescription, full_closure: bool = False) -> str:
    lines = []
    for nid in sorted(d.nodes):
        n = d.nodes[nid]
        parts = ["node", nid, n.category]
        if n.lexeme is not None:
            parts.append(n.lexeme)
        lines.append(" ".join(parts))
    rels = d.closure.relations if full_closure else d.asserted
    lines.extend(f"{r.kind} {r.left} {r.right}" for r in sorted(rels, key=_rel_key))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> TreeDescription:
    nodes, rels = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "node" and len(rest) in (2, 3):
            nodes.append(Node(rest[0], rest[1], rest[2] if len(rest) == 3 else None))
        elif head in KINDS and len(rest) == 2:
            rels.append(_make(head, *rest))
        else:
            raise ValueError(f"line {lineno}: cannot parse {line!r}")
    return TreeDescription().assert_relations(rels, nodes)


def to_dot(d: TreeDescription, full_closure: bool = False, name: str = "description") -> str:
    """Graphviz text: dominance solid, precedence dashed."""
    out = [f'digraph "{name}" {{', "  node [fontname=Helvetica];"]
    for nid in sorted(d.nodes):
        n = d.nodes[nid]
        if n.is_terminal:
            attrs = f'label="{n.lexeme}", shape=plaintext'
        elif n.empty:
            attrs = f'label="{n.category} e", shape=ellipse, style=dotted'
        else:
            attrs = f'label="{n.category}", shape=ellipse'
        out.append(f'  "{nid}" [{attrs}];')
    rels = d.closure.relations if full_closure else d.asserted
    for r in sorted(rels, key=_rel_key):
        style = "solid" if r.kind == DOM else "dashed"
        extra = "" if r in d.asserted else ", color=gray"
        out.append(f'  "{r.left}" -> "{r.right}" [style={style}{extra}];')
    out.append("}")
    return "\n".join(out) + "\n"
