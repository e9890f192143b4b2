"""Patterns, the merge/insert order, and closed posets generated by a few seeds."""

from omega import Pattern, PosetSpec, build_poset, closure, enumerate_patterns, is_closed, maximal_elements

w = Pattern.parse("(1,2,1)")
print(f"{w}: norm {w.norm}, reduced norm {w.reduced_norm}")
print("patterns at d=6:", len(enumerate_patterns(6)))

theta = build_poset(PosetSpec.from_generators(["(3,3)"]), 6)
print("closure of (3,3) at d=6:", ", ".join(map(str, theta.members)))

theta = build_poset(PosetSpec.reduced_norm_at_least(4, 0), 6)
print("reduced norm >= 4 at d=6:", ", ".join(map(str, theta.members)))
print("maximal elements:", ", ".join(map(str, maximal_elements(theta))))

# a set that is not closed comes back with a witness edge
ok, witness = is_closed([Pattern((1, 2, 1))], 6)
print("{(1,2,1)} closed?", ok, "witness:", " -> ".join(map(str, witness)))
print("its closure has", len(closure([Pattern((1, 2, 1))], 6)), "members")
