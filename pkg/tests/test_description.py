import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtparse.description import (
    Closure,
    ConsistencyError,
    Node,
    Relation,
    TreeDescription,
    bracket,
    check_conditions,
    closure_of,
    dom,
    from_text,
    local_relations,
    prec,
    to_dot,
    to_text,
)
from oracle import flatten_tree, local_tree_relations, naive_closure, random_relations, random_tree


def as_rels(triples):
    return frozenset(Relation(*t) for t in triples)


def nodes_for(rels, known=()):
    names = {x for r in rels for x in (r.left, r.right)} - set(known)
    return [Node(x, x.rstrip("0123456789")) for x in sorted(names)]


def desc(*rels, d=None):
    d = d or TreeDescription()
    return d.assert_relations(rels, nodes_for(rels, d.nodes))


# complement-clause tree: [S [NP1 John] [VP [V knows] [S2 [NP2 [D the] [N truth]] [VP2 hurts]]]]
TREE4 = [
    dom("S", "NP1"), dom("S", "VP"), prec("NP1", "VP"),
    dom("VP", "V"), dom("VP", "S2"), prec("V", "S2"),
    dom("S2", "NP2"), dom("S2", "VP2"), prec("NP2", "VP2"),
    dom("NP2", "D"), dom("NP2", "N"), prec("D", "N"),
]


def test_constructors_reject_reflexive_pairs():
    with pytest.raises(ValueError):
        dom("A", "A")
    with pytest.raises(ValueError):
        prec("A", "A")


def test_empty_closure():
    assert closure_of([]) == frozenset()


def test_dominance_transitivity():
    assert dom("A", "C") in closure_of([dom("A", "B"), dom("B", "C")])


def test_precedence_inherited_by_descendants():
    c = closure_of([prec("NP", "VP"), dom("VP", "V"), dom("NP", "N")])
    assert prec("NP", "V") in c
    assert prec("N", "VP") in c
    assert prec("N", "V") in c


def test_tree4_keeps_old_relations():
    c = closure_of(TREE4)
    assert dom("VP", "NP2") in c
    assert prec("V", "NP2") in c


def test_chain_closure_has_six_dominance_pairs():
    c = naive_closure({("dom", "A", "B"), ("dom", "B", "C"), ("dom", "C", "D")})
    assert len(c) == 6
    assert as_rels(c) == closure_of(as_rels(c))


def test_exclusivity():
    d = desc(dom("NP", "N"), prec("NP", "PP"))
    with pytest.raises(ConsistencyError) as exc:
        desc(dom("NP", "PP"), d=d)
    assert exc.value.condition == "exclusivity"


def test_antisymmetry():
    d = desc(prec("A", "B"))
    with pytest.raises(ConsistencyError) as exc:
        desc(prec("B", "A"), d=d)
    assert exc.value.condition in ("antisymmetry", "acyclicity")


def test_acyclicity_through_chain():
    d = desc(dom("A", "B"), dom("B", "C"))
    with pytest.raises(ConsistencyError):
        desc(dom("C", "A"), d=d)


def test_failed_assert_leaves_state_unchanged():
    d = desc(dom("A", "B"))
    before = (d.asserted, d.closure.relations, d.generation)
    with pytest.raises(ConsistencyError):
        desc(dom("B", "A"), d=d)
    assert (d.asserted, d.closure.relations, d.generation) == before


def test_asserted_is_monotone_and_provenance():
    d1 = desc(dom("S", "NP"))
    d2 = desc(dom("NP", "N"), d=d1)
    assert d1.asserted <= d2.asserted
    assert d2.generation == d1.generation + 1
    assert d2.provenance(dom("S", "N")) == "derived"
    assert d2.provenance(dom("S", "NP")) == "asserted"
    assert d2.history()[-2] is d1


def test_local_relations_exclude_downward_dominance():
    d = desc(*TREE4)
    assert local_relations(d, "NP2") == frozenset({dom("S2", "NP2"), prec("NP2", "VP2")})


def test_parent_children_and_yield():
    d = desc(*TREE4).assert_relations(
        [dom("D", "the#1"), dom("N", "truth#2")],
        [Node("the#1", "word", lexeme="the"), Node("truth#2", "word", lexeme="truth")],
    )
    assert d.parent("NP2") == "S2"
    assert d.children("S2") == ["NP2", "VP2"]
    assert d.root() == "S"
    assert d.yield_words() == ["the", "truth"]


def test_text_round_trip():
    d = desc(*TREE4)
    assert from_text(to_text(d)).asserted == d.asserted
    assert to_text(d) == to_text(from_text(to_text(d)))


def test_dot_hides_derived_relations_by_default():
    d = desc(*TREE4)
    assert "gray" not in to_dot(d)
    assert "gray" in to_dot(d, full_closure=True)
    assert "style=dashed" in to_dot(d)


def test_bracket_of_tree4():
    d = desc(*TREE4).assert_relations(
        [dom("VP2", "hurts#5")], [Node("hurts#5", "word", lexeme="hurts")]
    )
    assert bracket(d).startswith("[S ")


# --------------------------------------------------------------------------
# properties
# --------------------------------------------------------------------------

node_names = st.sampled_from([f"n{i}" for i in range(8)])
relation = st.builds(Relation, st.sampled_from(["dom", "prec"]), node_names, node_names).filter(
    lambda r: r.left != r.right
)
relation_sets = st.frozensets(relation, max_size=14)


@given(relation_sets)
def test_closure_matches_naive_fixpoint(rels):
    assert closure_of(rels) == as_rels(naive_closure(rels))


@given(relation_sets)
def test_closure_idempotent(rels):
    c = closure_of(rels)
    assert closure_of(c) == c


@given(relation_sets, relation_sets)
def test_closure_monotone(a, b):
    assert closure_of(a) <= closure_of(a | b)


@given(st.lists(relation_sets, min_size=1, max_size=5))
def test_incremental_closure_equals_full(batches):
    c = Closure()
    seen = set()
    for batch in batches:
        c = c.extended(batch)
        seen |= batch
        assert c.relations == closure_of(seen)


@settings(max_examples=200)
@given(st.integers(1, 10), st.integers(0, 2**32))
def test_flattened_trees_are_consistent(size, seed):
    tree = random_tree(random.Random(seed), size)
    flat = as_rels(flatten_tree(tree))
    check_conditions(flat)
    # local structure alone closes to the full set of tree relations
    assert closure_of(as_rels(local_tree_relations(tree))) == flat


def test_random_sets_against_oracle_at_12_nodes():
    rng = random.Random(7)
    for _ in range(200):
        rels = as_rels(random_relations(rng))
        assert closure_of(rels) == as_rels(naive_closure(rels))
