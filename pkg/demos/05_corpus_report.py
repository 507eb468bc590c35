"""
The bundled corpus
==================

Every sentence carries the label the model should give and the label
readers give.  Rows where the two differ are known limits of the model
and are flagged, not counted as failures.
"""

from dtparse.driver import bundled_corpus, classify_corpus

report = classify_corpus(bundled_corpus())
print(report.format())

for row in report.divergences:
    print(f"diverges: {row.entry.text!r} model={row.result} human={row.entry.human_expected}")
