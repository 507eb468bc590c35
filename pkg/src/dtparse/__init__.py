"""Monotone incremental parsing with D-theory tree descriptions.

Words are attached one at a time into a growing set of dominance and
precedence relations.  Reanalysis happens only by lowering an accessible
node under the incoming word's projection; a word that cannot be
incorporated that way marks a conscious garden path.
"""

from .description import (
    ConsistencyError,
    Node,
    Relation,
    TreeDescription,
    bracket,
    check_conditions,
    closure_of,
    dom,
    local_relations,
    prec,
)
from .driver import (
    CONSCIOUS,
    FLUENT,
    UNCONSCIOUS,
    ParseReport,
    classify_corpus,
    parse_sentence,
    read_corpus,
)
from .lexicon import LexiconError, bundled_lexicon, load_lexicon, project
from .lowering import BOTTOM_UP, TOP_DOWN, accessible_nodes, select_and_lower, tree_lower

__version__ = "0.1.0"
