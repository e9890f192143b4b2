import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from omega.complexes import (
    Chain,
    GradedComplex,
    boundary_chain,
    build_full_complex,
    build_operator_complex,
    build_quotient_complex,
    build_sub_complex,
    dualize_complex,
    verify_complex,
)
from omega.homology import complex_homology
from omega.patterns import Pattern
from omega.posets import ClosedPoset, PosetError, PosetSpec, build_poset, enumerate_patterns
from omega.sparse import SparseMatrix
from test_posets import builtins


def P(*xs):
    return Pattern(xs)


def C(*terms):
    return Chain({Pattern(w): c for w, c in terms})


class TestBoundary:
    def test_examples(self):
        assert boundary_chain(P(1, 2, 2, 1), 6) == C(((3, 2, 1), 1), ((1, 4, 1), -1), ((1, 2, 3), 1))
        assert boundary_chain(P(3, 1, 1, 1), 6) == C(((4, 1, 1), 1), ((3, 2, 1), -1), ((3, 1, 2), 1))
        # the two (1,2,2,1) inserts cancel
        assert boundary_chain(P(1, 2, 1), 6) == C(((3, 1), 1), ((1, 3), -1), ((2, 1, 2, 1), 1), ((1, 2, 1, 2), -1))
        assert boundary_chain(P(4), 6, "insert_only") == C(((2, 4), 1), ((4, 2), -1))

    def test_variants_split(self):
        w = P(1, 2, 1)
        assert boundary_chain(w, 6, "merge_only") + boundary_chain(w, 6, "insert_only") == boundary_chain(w, 6)

    def test_rejects(self):
        with pytest.raises(ValueError):
            boundary_chain(P(1, 2), 6)
        with pytest.raises(ValueError):
            boundary_chain(P(4, 4), 6)
        with pytest.raises(ValueError):
            boundary_chain(P(2), 6, "sideways")

    @settings(max_examples=200, deadline=None)
    @given(st.sampled_from(oracles.parity_patterns(10)))
    def test_matches_oracle(self, w):
        got = boundary_chain(Pattern(w), 10)
        assert {tuple(v): c for v, c in got.items()} == dict(oracles.boundary(w, 10))


class TestIdentities:
    @pytest.mark.parametrize("d", range(2, 13, 2))
    def test_verify_complex(self, d):
        report = verify_complex(d)
        assert report["pass"], report
        assert set(report["identities"]) == {"dM^2=0", "dI^2=0", "dMdI+dIdM=0", "d^2=0"}

    def test_verify_all_parities(self):
        assert verify_complex(6, "all")["pass"]

    @pytest.mark.parametrize("d", range(2, 11, 2))
    def test_square_zero_on_builtins(self, d):
        for spec in builtins(d):
            theta = build_poset(spec, d)
            for c in (build_sub_complex(theta), build_quotient_complex(theta)):
                assert c.check_square_zero() is None
                assert dualize_complex(c).check_square_zero() is None

    @pytest.mark.parametrize("d", [10, 12])
    def test_square_zero_full_and_operators(self, d):
        for c in (build_full_complex(d), build_operator_complex(d, "merge_only"), build_operator_complex(d, "insert_only")):
            assert c.check_square_zero() is None
            assert dualize_complex(c).check_square_zero() is None

    @pytest.mark.parametrize("d", [2, 4, 6, 8])
    def test_sign_conjugation(self, d):
        # w -> (-1)^(|w|/2) w carries dM + dI to dM - dI
        c = build_full_complex(d)
        flipped = {}
        for n, m in c.differential.items():
            src, tgt = c.basis[n], c.basis[n - 1]
            trip = [(r, j, v * (-1) ** ((src[j].norm + tgt[r].norm) // 2)) for r, j, v in m.triplets()]
            flipped[n] = SparseMatrix.from_triplets(m.nrows, m.ncols, trip)
        other = GradedComplex(d, c.basis, flipped, "full[dM-dI]")
        _, mats = oracles.boundary_matrices(oracles.parity_patterns(d), d, insert_sign=-1)
        for n, m in flipped.items():
            assert m.to_dense() == mats[n].tolist()
        assert complex_homology(other).groups == complex_homology(c).groups

    @pytest.mark.parametrize("d", [4, 6, 8])
    def test_sign_conjugation_on_quotients(self, d):
        for spec in [PosetSpec.reduced_norm_at_least(2, 0), PosetSpec.max_entry_at_least(3), PosetSpec.free_group_complement()]:
            theta = build_poset(spec, d)
            basis = [tuple(w) for w in enumerate_patterns(d) if w not in theta]
            plus = oracles.betti(basis, d, insert_sign=1)
            minus = oracles.betti(basis, d, insert_sign=-1)
            assert plus == minus


class TestAssembly:
    def test_sub_complex_example(self):
        c = build_sub_complex(build_poset(PosetSpec.reduced_norm_at_least(4, 0), 6))
        assert c.degrees == [1, 2]
        assert set(c.basis[2]) == {P(5, 1), P(1, 5), P(4, 2), P(2, 4), P(3, 3)}
        assert c.basis[1] == (P(6),)
        assert c.matrix(2).to_dense() == [[1, 1, 1, 1, 1]]

    def test_dual_example(self):
        c = build_sub_complex(build_poset(PosetSpec.reduced_norm_at_least(4, 0), 6))
        dual = dualize_complex(c)
        assert dual.step == 1 and dual.kind == "dual-of(sub)"
        assert dual.matrix(1).to_dense() == [[1], [1], [1], [1], [1]]

    @pytest.mark.parametrize("d", [4, 6, 8])
    def test_dual_involution(self, d):
        for spec in builtins(d)[:12]:
            c = build_quotient_complex(build_poset(spec, d))
            twice = dualize_complex(dualize_complex(c))
            assert twice.to_json() == c.to_json()

    def test_empty(self):
        c = build_sub_complex(build_poset(PosetSpec.from_generators([]), 6))
        assert c.degrees == [] and dualize_complex(c).degrees == []
        assert build_quotient_complex(build_poset(PosetSpec.full(), 6)).degrees == []

    def test_single_generator(self):
        c = build_sub_complex(build_poset(PosetSpec.from_generators(["(3,3)"]), 6))
        assert max(c.degrees) == 2 and c.basis[2] == (P(3, 3),)

    def test_quotient_examples(self):
        q = build_quotient_complex(build_poset(PosetSpec.reduced_norm_at_least(4, 0), 6))
        assert q.apply(C(((1, 2, 1), 1))) == boundary_chain(P(1, 2, 1), 6)
        q = build_quotient_complex(build_poset(PosetSpec.strictly_below(P(1, 2, 1)), 6))
        assert q.apply(C(((1, 2, 1), 1))) == Chain()

    def test_rejects_non_closed(self):
        bad = ClosedPoset(d=6, members=(P(1, 2, 1),), spec=PosetSpec.from_generators([]))
        with pytest.raises(PosetError, match=r"\(3,1\)"):
            build_sub_complex(bad)

    @pytest.mark.parametrize("d", [6, 8])
    def test_degree_bookkeeping(self, d):
        c = build_full_complex(d)
        for n, m in c.differential.items():
            assert m.shape == (c.rank(n - 1), c.rank(n))
            for r, j, _ in m.triplets():
                assert c.basis[n][j].reduced_norm + 1 == c.basis[n - 1][r].reduced_norm
        for n, ws in c.basis.items():
            assert all(d - w.reduced_norm == n and w.norm % 2 == d % 2 for w in ws)

    def test_json_dump(self):
        c = build_sub_complex(build_poset(PosetSpec.reduced_norm_at_least(4, 0), 6))
        dump = c.to_json()
        assert dump["d"] == 6
        assert dump["degrees"]["1"] == ["(6)"]
        assert dump["boundaries"]["2"] == [[0, j, 1] for j in range(5)]
        assert len(c.fingerprint()) == 64


class TestChain:
    def test_arithmetic(self):
        a = C(((1, 1), 2), ((2,), -1))
        b = C(((1, 1), -2), ((4,), 3))
        assert a + b == C(((2,), -1), ((4,), 3))
        assert a - a == Chain()
        assert (-a).scaled(-1) == a
        assert Chain([(P(2), 0)]) == Chain()

    def test_json_and_str(self):
        ch = boundary_chain(P(1, 2, 2, 1), 6)
        assert Chain.from_json(ch.to_json()) == ch
        assert str(ch) == "(1,2,3) - (1,4,1) + (3,2,1)"
        assert str(Chain()) == "0"
