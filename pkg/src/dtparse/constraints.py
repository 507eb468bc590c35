"""Grammar filters checked after every structural update.

Two stubs cover what the corpus needs: reflexives must agree in gender
with the subject of their own clause, and Japanese verbs must find
exactly the case-marked arguments their case frame asks for.
"""

from __future__ import annotations

from collections import Counter
from typing import Optional

from .description import TreeDescription


def lowest_above(d: TreeDescription, x: str, category: str) -> Optional[str]:
    ups = [u for u in d.closure.above(x) if d.nodes[u].category == category]
    for u in ups:
        if not any(d.dominates(u, v) for v in ups if v != u):
            return u
    return None


def clause_subject(d: TreeDescription, clause: str) -> Optional[str]:
    for child in d.children(clause):
        if d.nodes[child].category == "NP":
            return child
    return None


def binding_violation(state, terminal: str) -> Optional[str]:
    d = state.description
    np = lowest_above(d, terminal, "NP")
    clause = lowest_above(d, np, "S") if np else None
    subject = clause_subject(d, clause) if clause else None
    if subject is None or subject == np:
        return f"no antecedent for {d.nodes[terminal].lexeme}"
    mine = state.features_of(np).get("gen")
    theirs = state.features_of(subject).get("gen")
    if mine and theirs and mine != theirs:
        return f"{d.nodes[terminal].lexeme} cannot be bound by {subject}"
    return None


def clause_arguments(state, verb_terminal: str) -> list[tuple[str, str]]:
    """(case, NP) pairs on the verb's spine up to and including its S."""
    d = state.description
    x = d.parent(d.parent(verb_terminal))
    out = []
    while x is not None:
        for child in d.children(x):
            if d.nodes[child].category == "NP":
                case = state.features_of(child).get("case")
                if case:
                    out.append((case, child))
        if d.nodes[x].category == "S":
            break
        x = d.parent(x)
    return out


def case_frame_violation(state, terminal: str, frame) -> Optional[str]:
    counts = Counter(case for case, _ in clause_arguments(state, terminal))
    for case, n in sorted(counts.items()):
        if case not in frame.allowed:
            return f"{frame.verb} takes no {case} argument"
        if n > 1:
            return f"{frame.verb} has {n} {case} arguments"
    missing = sorted(frame.required - set(counts))
    if missing:
        return f"{frame.verb} lacks {','.join(missing)}"
    return None


def violation(state) -> Optional[tuple[str, str]]:
    """First (reason, detail) violated by ``state``, or None."""
    d = state.description
    for nid in sorted(d.nodes):
        node = d.nodes[nid]
        if not node.is_terminal:
            continue
        entry = state.heads.get(node.origin)
        if entry is None:
            continue
        if entry.reflexive:
            msg = binding_violation(state, nid)
            if msg:
                return "binding", msg
        if entry.case_frame is not None:
            msg = case_frame_violation(state, nid, entry.case_frame)
            if msg:
                return "case-frame", msg
    return None
