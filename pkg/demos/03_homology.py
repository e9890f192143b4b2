"""Smith normal form and exact homology, including a small torsion example."""

from omega import GradedComplex, SparseMatrix, build_full_complex, class_order, complex_homology, smith_normal_form

print("SNF of [[2,4],[6,8]]:", smith_normal_form([[2, 4], [6, 8]]).invariants)

for d in (6, 10):
    print(f"full complex d={d}:", complex_homology(build_full_complex(d)).nonzero())

# cellular chains of the projective plane: Z -2-> Z -0-> Z
rp2 = GradedComplex(
    d=0,
    basis={0: ("v",), 1: ("e",), 2: ("f",)},
    differential={2: SparseMatrix.from_dense([[2]]), 1: SparseMatrix.from_dense([[0]])},
    kind="rp2",
)
print("RP^2:", {n: str(g) for n, g in complex_homology(rp2).groups.items()})
print("order of the edge class:", class_order(rp2, 1, {0: 1}))
