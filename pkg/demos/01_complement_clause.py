"""
Reanalysis without retraction
=============================

"John knows the truth" is a complete clause.  Adding "hurts" turns "the
truth" into the subject of an embedded clause.  The parser never deletes
anything: it lowers the NP under the new clause, and every relation it
had asserted still holds in the final tree.
"""

from dtparse import bracket, parse_sentence
from dtparse.description import dom, prec

report = parse_sentence("John knows the truth hurts")
print(report.trace())

# the object reading after four words
before = report.states[4].description
print(bracket(before))
print("dom(VP,NP2) asserted:", dom("VP@2", "NPobj@2") in before.asserted)

# after reanalysis nothing has been withdrawn; S2 now sits between VP and NP2
after = report.final_description
print(bracket(after))
for rel in (dom("VP@2", "NPobj@2"), prec("V@2", "NPobj@2")):
    print(rel, "still holds:", after.holds(rel))
print("S2 dominates NP2:", after.dominates("S@5", "NPobj@2"))

print("lowered:", report.lowerings[0].info["node"], "M =", report.lowerings[0].info["M"])
