"""Newton polygon posets: enumeration, covers, rank, chains, export."""

from fractions import Fraction
from math import gcd

import pytest

from isolab.errors import InputError
from isolab.newton import np_dim, np_dual, np_from_pairs, np_precedes, np_sdim, render_pairs
from isolab.poset import (
    dot_export,
    enumerate_polygons,
    longest_chain,
    poset_build,
    poset_to_json,
    specialization_witness,
)


def oracle_enumerate(h, d):
    """Independent enumeration: multisets of coprime pairs with multiplicity,
    chosen in strictly increasing slope order."""
    from math import gcd as _gcd

    pairs = sorted(
        {
            (m, n)
            for m in range(h + 1)
            for n in range(h + 1)
            if (m or n) and _gcd(m, n) == 1 and m + n <= h
        },
        key=lambda mn: Fraction(mn[0], mn[0] + mn[1]),
    )

    found = set()

    def rec(idx, left_h, left_d, acc):
        if left_h == 0:
            if left_d == 0:
                found.add(tuple(sorted(acc)))
            return
        if idx == len(pairs):
            return
        m, n = pairs[idx]
        span = m + n
        k = 0
        while k * span <= left_h and k * m <= left_d:
            rec(idx + 1, left_h - k * span, left_d - k * m, acc + [(m, n)] * k)
            k += 1

    rec(0, h, d, [])
    return {np_from_pairs(list(c)) for c in found if c}


class TestEnumeration:
    def test_h2_d1(self):
        polys = enumerate_polygons(2, 1)
        assert len(polys) == 2

    def test_matches_pair_multiset_oracle(self):
        for h in range(1, 8):
            for d in range(h + 1):
                assert set(enumerate_polygons(h, d)) == oracle_enumerate(h, d)

    def test_height6_exercise(self):
        # all polygons of height 6 and the symmetric ones among them
        total = sum(len(enumerate_polygons(6, d)) for d in range(7))
        assert total == len({z for d in range(7) for z in enumerate_polygons(6, d)})
        sym = enumerate_polygons(6, 3, symmetric=True)
        assert all(z.is_symmetric() for z in sym)
        assert {render_pairs(z.pairs()) for z in sym} == {
            "3*(1,0)+3*(0,1)",
            "2*(1,0)+(1,1)+2*(0,1)",
            "(1,0)+2*(1,1)+(0,1)",
            "(2,1)+(1,2)",
            "3*(1,1)",
        }

    def test_symmetric_flag_validation(self):
        with pytest.raises(InputError):
            enumerate_polygons(5, 2, symmetric=True)


class TestPosetStructure:
    def test_h2d1_hasse(self):
        P = poset_build(2, 1)
        assert len(P.elements) == 2
        assert sum(len(c) for c in P.covers) == 1

    def test_bottom_top(self):
        P = poset_build(7, 3)
        assert P.bottom() == np_from_pairs([(3, 4)])
        assert P.top() == np_from_pairs([(1, 0)] * 3 + [(0, 1)] * 4)
        bi, ti = P.index_of(P.bottom()), P.index_of(P.top())
        assert P.ranks[bi] == 0
        assert P.ranks[ti] == max(P.ranks)

    def test_transitive_reduction(self):
        P = poset_build(6, 3)
        n = len(P.elements)
        for i in range(n):
            for j in P.covers[i]:
                assert np_precedes(P.elements[i], P.elements[j], strict=True)
                # no intermediate element
                for k in range(n):
                    if k in (i, j):
                        continue
                    assert not (
                        np_precedes(P.elements[i], P.elements[k], strict=True)
                        and np_precedes(P.elements[k], P.elements[j], strict=True)
                    )

    def test_ranked_exhaustive(self):
        for h in range(1, 9):
            for d in range(h + 1):
                assert poset_build(h, d).is_ranked()
        for g in range(1, 6):
            assert poset_build(2 * g, g, symmetric=True).is_ranked()

    def test_rank_is_diamond_offset(self):
        for h in range(1, 9):
            for d in range(h + 1):
                P = poset_build(h, d)
                base = np_dim(P.bottom())
                broot = P.ranks[P.index_of(P.bottom())]
                for i, z in enumerate(P.elements):
                    assert P.ranks[i] - broot == np_dim(z) - base

    def test_rank_is_triangle_offset_symmetric(self):
        for g in range(1, 6):
            P = poset_build(2 * g, g, symmetric=True)
            base = np_sdim(P.bottom())
            for i, z in enumerate(P.elements):
                assert P.ranks[i] == np_sdim(z) - base

    def test_all_maximal_chains_equal_length(self):
        # brute-force chain enumeration oracle on (6,3)
        P = poset_build(6, 3)
        n = len(P.elements)

        def chains(i, j):
            if i == j:
                return [[i]]
            out = []
            for k in P.covers[i]:
                if k == j or P._less[k][j]:
                    out.extend([[i] + c for c in chains(k, j)])
            return out

        for i in range(n):
            for j in range(n):
                if P._less[i][j]:
                    lengths = {len(c) for c in chains(i, j)}
                    assert len(lengths) == 1

    def test_dual_gives_order_isomorphism(self):
        for (h, d) in ((5, 2), (6, 2), (7, 3)):
            P = poset_build(h, d)
            Q = poset_build(h, h - d)
            assert len(P.elements) == len(Q.elements)
            for a in P.elements:
                for b in P.elements:
                    assert np_precedes(a, b) == np_precedes(np_dual(a), np_dual(b))

    def test_symmetric_g3_example(self):
        P = poset_build(6, 3, symmetric=True)
        sigma = np_from_pairs([(1, 1)] * 3)
        xi2 = np_from_pairs([(2, 1), (1, 2)])
        assert np_precedes(sigma, xi2, strict=True)
        assert {render_pairs(z.pairs()) for z in P.elements} >= {"3*(1,1)", "(2,1)+(1,2)"}


class TestChains:
    def test_mn_minus_r(self):
        # (m,n) = (3,4): pure 3/7 to ordinary has length mn - r = 9
        P = poset_build(7, 3)
        chain = longest_chain(P, P.bottom(), P.top())
        assert len(chain) - 1 == 9
        for a, b in zip(chain, chain[1:]):
            assert np_precedes(a, b, strict=True)

    def test_trivial_chain(self):
        P = poset_build(4, 2)
        z = P.elements[0]
        assert longest_chain(P, z, z) == [z]

    def test_incomparable_rejected(self):
        P = poset_build(5, 2)
        a = np_from_pairs([(0, 1), (1, 1), (1, 1)])
        b = np_from_pairs([(1, 3), (1, 0)])
        with pytest.raises(InputError):
            longest_chain(P, a, b)

    def test_chain_length_is_rank_difference(self):
        P = poset_build(6, 3)
        for i, a in enumerate(P.elements):
            for j, b in enumerate(P.elements):
                if P._less[i][j]:
                    chain = longest_chain(P, a, b)
                    assert len(chain) - 1 == P.ranks[j] - P.ranks[i]


class TestWitness:
    def test_ordinary_to_supersingular_g2(self):
        ss = np_from_pairs([(1, 1)] * 2)
        ordn = np_from_pairs([(1, 0), (1, 0), (0, 1), (0, 1)])
        chain = specialization_witness(ss, ordn)
        assert chain[0] == ordn and chain[-1] == ss
        assert len(chain) - 1 == 3  # diamond-count difference in (4,2)
        assert np_dim(ordn) - np_dim(ss) == 3

    def test_singleton(self):
        z = np_from_pairs([(1, 1)])
        assert specialization_witness(z, z) == [z]

    def test_chain_length_equals_diamond_difference(self):
        zeta = np_from_pairs([(1, 0), (1, 0), (2, 1), (1, 5)])
        iso = np_from_pairs([(5, 6)])
        assert (iso.h, iso.d) == (zeta.h, zeta.d)
        chain = specialization_witness(iso, zeta)
        assert len(chain) - 1 == np_dim(zeta) - np_dim(iso)

    def test_wrong_direction_rejected(self):
        ss = np_from_pairs([(1, 1)] * 2)
        ordn = np_from_pairs([(1, 0), (1, 0), (0, 1), (0, 1)])
        with pytest.raises(InputError):
            specialization_witness(ordn, ss)


class TestExport:
    def test_h2d1_dot(self):
        P = poset_build(2, 1)
        dot = dot_export(P)
        assert dot.count("->") == 1
        assert '"(1,1)"' in dot and '"(1,0)+(0,1)"' in dot

    def test_byte_identical(self):
        a = dot_export(poset_build(6, 3, symmetric=True))
        b = dot_export(poset_build(6, 3, symmetric=True))
        assert a == b

    def test_symmetric_g2_golden(self):
        dot = dot_export(poset_build(4, 2, symmetric=True))
        assert dot == (
            "digraph newton_poset {\n"
            '  rankdir="BT";\n'
            '  "2*(1,1)" [label="2*(1,1)\\nrank=0"];\n'
            '  "(1,0)+(1,1)+(0,1)" [label="(1,0)+(1,1)+(0,1)\\nrank=1"];\n'
            '  "2*(1,0)+2*(0,1)" [label="2*(1,0)+2*(0,1)\\nrank=2"];\n'
            '  "2*(1,1)" -> "(1,0)+(1,1)+(0,1)";\n'
            '  "(1,0)+(1,1)+(0,1)" -> "2*(1,0)+2*(0,1)";\n'
            "}\n"
        )

    def test_no_duplicate_ids_h6(self):
        for d in range(7):
            dot = dot_export(poset_build(6, d))
            labels = [ln.split(" [")[0] for ln in dot.splitlines() if "[label=" in ln]
            assert len(labels) == len(set(labels))

    def test_json_dump(self):
        P = poset_build(4, 2)
        data = poset_to_json(P)
        assert len(data["elements"]) == len(P.elements)
        assert all(i != j for i, j in data["covers"])
