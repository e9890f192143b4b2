"""Characteristic chains, the (1,2,...,2,1) family and the Vassiliev ring."""

from omega import VassilievElement, arnold_crosscheck, chain_1221, theta_chain

for w in ("(1,2,2,1)", "(3,1,1,1)", "(1,2,1)", "(3,1)"):
    datum = theta_chain(w, 6)
    print(f"{w}: {datum.boundary}  cycle={datum.is_cycle} nontrivial={datum.nontrivial}")

for n in (1, 2, 3):
    print(f"chain_1221({n}) =", chain_1221(n))

e1 = VassilievElement.basis(8, 4, 1)
print("k=4: e1*e1 =", (e1 * e1).to_json()["coeffs"])
e1 = VassilievElement.basis(12, 3, 1)
print("k=3: e1*e1 =", (e1 * e1).to_json()["coeffs"])
print("Arnold cross-check d=10 k=3:", arnold_crosscheck(10, 3)["pass"])
