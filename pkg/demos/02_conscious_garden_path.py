"""
When lowering is not enough
===========================

"While John was eating the ice cream melted": "the ice cream" has to leave
the subordinate clause.  No accessible node can be lowered into the
position "melted" needs, so the parser reports a conscious garden path.
"""

from dtparse import parse_sentence
from dtparse.lowering import accessible_nodes

report = parse_sentence("While John was eating the ice cream melted")
print(report.trace())

# what was on offer just before "melted"
state = report.states[-2]
print("accessible, deepest first:", ", ".join(accessible_nodes(state)))
fail = report.events[-1]
print("rejected candidates:", fail.info["rejected"])
