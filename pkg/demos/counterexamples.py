"""
Ribbon chains behind the unstable pairs
=======================================

Each unstable irreducible pair comes with two words g, h of A_X that are
conjugate in A_S by a chain of ribbons, while reachability inside Gamma_X
never carries Supp(g) to Supp(h).
"""
from conjstab import from_name, induced, reachable_maps
from conjstab.verify import verify_counterexample

for case, kw in [("a", {"ambient": "E6"}), ("b", {}), ("c", {}), ("d", {"k": 2}), ("d", {"k": 3}), ("e", {})]:
    check = verify_counterexample(case, **kw)
    d = check.details["conjugate_in_S"]
    print(f"{check.id:10} {check.status}  image {' '.join(d['image'])}  via {len(d['chain'])} moves")

# the two-subset picture inside E7 = Gamma_X for the E7-in-E8 pair
e7 = induced(from_name("E8"), [f"s{i}" for i in range(1, 8)])
reach = reachable_maps(e7, {"s1", "s3", "s4", "s5", "s6"}, adjacent_only=True)
for Z, t, Z2 in sorted(reach.ribbon_edges(), key=lambda e: (sorted(e[0]), e[1])):
    print(f"  {{{','.join(sorted(Z))}}} --{t}--> {{{','.join(sorted(Z2))}}}")
