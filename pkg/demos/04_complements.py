"""Complement groups, Euler numbers, bouquets and the Arnold degrees."""

from omega import (
    PosetSpec,
    bouquet_check,
    build_poset,
    complement_cohomology,
    complement_homology,
    euler_discrepancy,
    euler_number,
    stability_quantities,
)

theta = build_poset(PosetSpec.reduced_norm_at_least(4, 0), 6)
e = euler_number(theta)
print(f"reduced norm >= 4, d=6: chi={e.chi}, A={e.absolute}")
print("  complement cohomology:", {j: str(g) for j, g in complement_cohomology(theta).nonzero().items()})

det = euler_discrepancy(6, 3, 0)["details"]
print(f"reduced norm >= 3, d=6: census A={det['census_A_matched']}, SNF rank={det['snf_rank']}, "
      f"quoted value {det['claimed']}, mismatch={det['mismatch_with_claimed']}")

print("bouquet (8,3,2):", bouquet_check(8, 3, 2)["details"]["homology"])

for k in (3, 4):
    t = build_poset(PosetSpec.max_entry_at_least(k), 10)
    print(f"max entry >= {k}, d=10:", {j: str(g) for j, g in complement_cohomology(t).nonzero().items()})

for d in (4, 6, 8):
    t = build_poset(PosetSpec.free_group_complement(), d)
    print(f"free-group family d={d}:", {j: str(g) for j, g in complement_homology(t).nonzero().items()})

s = stability_quantities(build_poset(PosetSpec.from_generators(["(3,3)"]), 6))
print(f"<(3,3)> at d=6: eta={s.eta}, psi={s.psi}, xi={s.xi}")
