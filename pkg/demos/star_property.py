"""
Deciding the star property
==========================

For X inside S, every pointwise conjugation between subsets of X realized
in W_S should already be realized in W_X.  When it is not, the decider
returns a witness chain of ribbons in the ambient graph.
"""
from conjstab import decide_star, from_name, witness_is_sound

cases = [
    ("A3", ["s1", "s3"]),
    ("B4", ["s1", "s3", "s4"]),
    ("E6", ["s2", "s3", "s4", "s5", "s6"]),
    ("H4", ["s1", "s2", "s3"]),
    ("F4", ["s1", "s3"]),
]
for name, X in cases:
    graph = from_name(name)
    v = decide_star(graph, X, strategy="oracle")
    print(f"{name} X={','.join(X)}: {'holds' if v.holds else 'fails'}")
    if v.witness is not None:
        w = v.witness
        print("   map    ", w.map.format(graph))
        print("   chain  ", " ".join(str(m) for m in w.chain_in_S.moves))
        print("   sound  ", witness_is_sound(v), "| certificate", w.certificate)

# the hybrid strategy takes candidate maps from ribbons in the ambient graph,
# so its positive verdicts are marked conditional on ribbon completeness
v = decide_star(from_name("E8"), ["s1", "s2", "s3", "s4", "s5", "s6"])
print("\nE6 inside E8:", "holds" if v.holds else "fails", "(conditional)" if v.conditional else "")
