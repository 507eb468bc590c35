"""Brute-force reference implementations for the property tests.

Nothing here imports the package's closure or accessibility code; relations
are plain ``(kind, left, right)`` triples so the oracles stay independent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

DOM, PREC = "dom", "prec"


def naive_closure(rels) -> set:
    """Apply the closure rules until nothing changes.

    1. dom is transitive.
    2. prec is transitive.
    3. prec is inherited: prec(a,b) and dom(a,x) give prec(x,b);
       prec(a,b) and dom(b,y) give prec(a,y).
    """
    out = {(k, a, b) for k, a, b in rels}
    while True:
        doms = [(a, b) for k, a, b in out if k == DOM]
        precs = [(a, b) for k, a, b in out if k == PREC]
        new = set()
        for a, b in doms:
            for c, d in doms:
                if b == c:
                    new.add((DOM, a, d))
        for a, b in precs:
            for c, d in precs:
                if b == c:
                    new.add((PREC, a, d))
            for c, d in doms:
                if c == a:
                    new.add((PREC, d, b))
                if c == b:
                    new.add((PREC, a, d))
        if new <= out:
            return out
        out |= new


@dataclass
class Tree:
    """Ordered tree as parent pointers plus ordered child lists."""

    label: dict = field(default_factory=dict)
    parent: dict = field(default_factory=dict)
    kids: dict = field(default_factory=dict)

    @property
    def nodes(self) -> list:
        return list(self.label)

    @property
    def root(self):
        return next(n for n in self.label if n not in self.parent)

    def add(self, node, label, parent=None):
        self.label[node] = label
        self.kids[node] = []
        if parent is not None:
            self.parent[node] = parent
            self.kids[parent].append(node)

    def ancestors(self, x) -> list:
        out = []
        while x in self.parent:
            x = self.parent[x]
            out.append(x)
        return out

    def leaves(self) -> list:
        return [n for n in self.label if not self.kids[n]]


def flatten_tree(tree: Tree) -> set:
    """Every relation true of ``tree``, read off by walking it."""
    out = set()
    for x in tree.nodes:
        for a in tree.ancestors(x):
            out.add((DOM, a, x))
    for x in tree.nodes:
        for y in tree.nodes:
            xs = [x] + tree.ancestors(x)
            ys = [y] + tree.ancestors(y)
            for u in xs:
                for v in ys:
                    p = tree.parent.get(u)
                    if p is not None and p == tree.parent.get(v):
                        sibs = tree.kids[p]
                        if sibs.index(u) < sibs.index(v):
                            out.add((PREC, x, y))
    return out


def local_tree_relations(tree: Tree) -> set:
    """Parent-child dominance and adjacent-sister precedence only."""
    out = set()
    for p, kids in tree.kids.items():
        out.update((DOM, p, k) for k in kids)
        out.update((PREC, a, b) for a, b in zip(kids, kids[1:]))
    return out


def random_tree(rng: random.Random, size: int, labels=("S", "NP", "VP", "V", "N", "D")) -> Tree:
    """Random ordered tree on nodes ``t0 .. t{size-1}``; ``t0`` is the root."""
    t = Tree()
    t.add("t0", rng.choice(labels))
    for i in range(1, size):
        t.add(f"t{i}", rng.choice(labels), parent=f"t{rng.randrange(i)}")
    return t


def random_relations(rng: random.Random, max_nodes: int = 12, max_rels: int = 16) -> set:
    """Arbitrary dom/prec triples, consistent or not, never reflexive."""
    names = [f"n{i}" for i in range(rng.randint(1, max_nodes))]
    out = set()
    if len(names) < 2:
        return out
    for _ in range(rng.randint(0, max_rels)):
        a, b = rng.sample(names, 2)
        out.add((rng.choice((DOM, PREC)), a, b))
    return out


def brute_accessible(tree: Tree, last_word, open_sites) -> set:
    """Nodes dominating ``last_word`` and none of ``open_sites``, by tree walk."""
    blocked = set()
    for s in open_sites:
        blocked.update(tree.ancestors(s))
    return {a for a in tree.ancestors(last_word) if a not in blocked}
