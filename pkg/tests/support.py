"""Glue between the oracle's plain trees and the package's parser state."""

import random

from dtparse.attachment import ParserState
from dtparse.description import Node, Relation, TreeDescription
from dtparse.lexicon import AttachmentSite

from oracle import brute_accessible, local_tree_relations, random_tree


def tree_description(tree) -> TreeDescription:
    nodes = [Node(n, tree.label[n]) for n in tree.nodes]
    rels = [Relation(*t) for t in sorted(local_tree_relations(tree))]
    return TreeDescription().assert_relations(rels, nodes)


def random_state(seed: int, max_size: int = 12):
    """A parser state over a random tree, with the oracle's answer for it.

    The last word is a random leaf; a random subset of the other leaves
    stays open as attachment sites.
    """
    rng = random.Random(seed)
    tree = random_tree(rng, rng.randint(2, max_size))
    leaves = tree.leaves()
    last = rng.choice(leaves)
    others = [x for x in leaves if x != last]
    open_sites = sorted(x for x in others if rng.random() < 0.4)
    state = ParserState(
        description=tree_description(tree),
        last_word=last,
        sites=tuple(AttachmentSite(s, tree.label[s], "right") for s in open_sites),
    )
    return state, brute_accessible(tree, last, open_sites)
