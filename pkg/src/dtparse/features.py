"""Flat feature bundles with shared variables.

Values are plain strings; a value starting with ``?`` is a variable.
Bindings map variables to values or other variables and are treated as
immutable: every successful unification returns a fresh mapping.
"""

from __future__ import annotations

from typing import Mapping, Optional


def is_var(term: str) -> bool:
    return term.startswith("?")


def resolve(term: str, bindings: Mapping[str, str]) -> str:
    while is_var(term) and term in bindings:
        term = bindings[term]
    return term


def unify_terms(a: str, b: str, bindings: Mapping[str, str]) -> Optional[dict]:
    a, b = resolve(a, bindings), resolve(b, bindings)
    if a == b:
        return dict(bindings)
    if is_var(a):
        return {**bindings, a: b}
    if is_var(b):
        return {**bindings, b: a}
    return None


def unify(
    fa: Mapping[str, str], fb: Mapping[str, str], bindings: Mapping[str, str]
) -> Optional[tuple[dict, dict]]:
    """Unify two bundles; returns (merged bundle, bindings) or None on a clash."""
    out = dict(bindings)
    merged = dict(fa)
    for key, value in fb.items():
        if key in merged:
            out = unify_terms(merged[key], value, out)
            if out is None:
                return None
        else:
            merged[key] = value
    return merged, out


def resolved(features: Mapping[str, str], bindings: Mapping[str, str]) -> dict:
    """Bundle with variables replaced; unbound variables are dropped."""
    out = {}
    for key, value in features.items():
        value = resolve(value, bindings)
        if not is_var(value):
            out[key] = value
    return out


def parse_label(label: str) -> tuple[str, dict]:
    """``"NP[num=?n,gen=f]"`` -> ``("NP", {"num": "?n", "gen": "f"})``."""
    label = label.strip()
    if "[" not in label:
        return label, {}
    if not label.endswith("]"):
        raise ValueError(f"bad category label {label!r}")
    cat, body = label[:-1].split("[", 1)
    feats = {}
    for item in filter(None, (p.strip() for p in body.split(","))):
        key, _, value = item.partition("=")
        if not value:
            raise ValueError(f"bad feature {item!r} in {label!r}")
        feats[key.strip()] = value.strip()
    return cat.strip(), feats
