"""
Which node to lower
===================

When more than one accessible node could be lowered, the search order
decides.  Bottom-up search tries the deepest candidate first and top-down
the highest.  The reflexive at the end of the sentence shows which choice
a reader would have needed.
"""

from dtparse import BOTTOM_UP, TOP_DOWN, parse_sentence, select_and_lower
from dtparse.lexicon import bundled_lexicon, project
from dtparse.lowering import reflexive_filter

prefix = "I know the man who believes the countess"
state = parse_sentence(prefix).final_state
killed = project("killed", bundled_lexicon("english").lookup("killed")[0], 9)

for strategy in (BOTTOM_UP, TOP_DOWN):
    result = select_and_lower(state, killed, strategy)
    print(f"{strategy:>9}: lowers {result.lowered_node}")

for ending in ("herself", "himself"):
    r = parse_sentence(f"{prefix} killed {ending}")
    print(f"... killed {ending}: {r.classification}")

# a binding-aware search would move on from the countess to the man
result = select_and_lower(state, killed, BOTTOM_UP, reflexive_filter("m"))
print("with a masculine antecedent required:", result.lowered_node)
