"""
Classification sweep
====================

Decide every nonempty proper X for small catalog types and compare the
verdicts with the classification rules.  Raise ``max_rank`` to 8 for the
full table (about twenty seconds).
"""
from collections import Counter

from conjstab.classify import rows_to_tsv, summarize, sweep

rows = sweep(max_rank=5, i2_max=8, timing=False)
print(summarize(rows))

# which rules fire, per type
fired = Counter((r.type, r.rule_fired) for r in rows if r.rule_fired)
for (t, rule), n in sorted(fired.items()):
    print(f"{t:6} rule {rule}: {n} subsets")

print(rows_to_tsv([r for r in rows if r.type == "B3"]))
