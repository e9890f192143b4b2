"""Boundary operators on the free module of patterns and the identities they satisfy."""

from omega import PosetSpec, boundary_chain, build_poset, build_quotient_complex, build_sub_complex, verify_complex

print("boundary of (1,2,1) at d=6:", boundary_chain("(1,2,1)", 6))
print("merge part only:         ", boundary_chain("(1,2,1)", 6, variant="merge_only"))
print("insert part only:        ", boundary_chain("(1,2,1)", 6, variant="insert_only"))

for d in (4, 8, 12):
    r = verify_complex(d)
    print(f"d={d}: basis {r['basis_size']}, identities", {k: v["pass"] for k, v in r["identities"].items()})

theta = build_poset(PosetSpec.reduced_norm_at_least(4, 0), 6)
sub, quo = build_sub_complex(theta), build_quotient_complex(theta)
print("sub-complex ranks:", {n: sub.rank(n) for n in sub.degrees})
print("quotient ranks:   ", {n: quo.rank(n) for n in quo.degrees})
