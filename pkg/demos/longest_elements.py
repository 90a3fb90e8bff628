"""
Conjugation by longest elements
===============================

The longest element w0 of a finite Coxeter group permutes the simple
reflections.  The permutation is trivial exactly when w0 is central.
"""
from conjstab import RootSystem, from_name, longest_element

# the action on the generators, type by type
for name in ["A5", "D5", "D6", "E6", "E7", "H3", "I2(7)", "I2(8)"]:
    rs = RootSystem(from_name(name))
    w0 = longest_element(rs)
    action = " ".join(f"{s}->{w0.simple_conjugate(s)}" for s in rs.graph.vertices)
    print(f"{name:6} length {w0.length():3}  {action}")

# longest element of a parabolic subgroup: the chain s2 - s4 - s5 of E6
rs = RootSystem(from_name("E6"))
w = longest_element(rs, ["s2", "s4", "s5"])
print("\nw0 of W_{s2,s4,s5} =", " ".join(w.reduced_word()))
print("s2 ->", w.simple_conjugate("s2"), "| s1 ->", w.simple_conjugate("s1"), "| s3 ->", w.simple_conjugate("s3"))
