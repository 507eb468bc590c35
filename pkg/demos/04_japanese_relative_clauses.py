"""
Head-final relative clauses
===========================

In Japanese the relative clause comes first and looks like a complete
sentence until its head noun arrives.  Lowering then rebuilds the clause
as a modifier and expels case-marked arguments into the matrix clause.
The strategy decides how much is expelled.
"""

from dtparse import BOTTOM_UP, TOP_DOWN, bracket, parse_sentence

prefix = "John ga ronbun wo kaita"
r = parse_sentence(prefix, "japanese")
print(prefix, "->", r.classification, bracket(r.final_description))

for sentence in ("John ga ronbun wo kaita seito wo hometa",
                 "Yamasita ga yuuzin wo houmonsita kaisya de mikaketa"):
    print()
    print(sentence)
    for strategy in (TOP_DOWN, BOTTOM_UP):
        r = parse_sentence(sentence, "japanese", strategy)
        low = [e.info for e in r.lowerings]
        expelled = low[0]["expelled"] if low else "-"
        print(f"  {strategy:>9}: {r.classification:<15} expelled: {expelled}")
