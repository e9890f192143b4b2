"""Compare complement groups of a generator poset at d and d+2.

<(3,3)> agrees in range.  <(4)> does not: at d=4 the complement of the
discriminant line behaves like a 2-sphere, while at d=6 the same class is gone.
"""

from omega import PosetSpec, stabilization_report

for gens, d, d2 in ((["(3,3)"], 6, 10), (["(4)"], 4, 8)):
    r = stabilization_report(PosetSpec.from_generators(gens), d, d2)
    print(f"<{gens[0]}> {d}->{d2}: pass={r['pass']}")
    for step in r["details"]["steps"]:
        bad = [j for j, v in step["complement"]["details"]["in_range"].items() if not v["agree"]]
        print(f"  step {step['d']}->{step['d+2']}: disagreeing degrees {bad or 'none'}")
