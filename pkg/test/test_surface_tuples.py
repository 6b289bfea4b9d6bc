import unittest
import sys
import os
import json
import math
import random

from hypothesis import given, settings, strategies as st

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
import src.surface_tuples as tuples
from src.errors import DomainError, IntegrityError
from src.fixtures import TABLE1_N, TABLE1_Q, TABLE1_ROWS


def brute_force_crt(pairs):
    """Scan the residue class of the largest modulus up to the product"""
    product = math.prod(modulus for _, modulus in pairs)
    residue, step = max(pairs, key=lambda pair: pair[1])
    start = residue % step or step
    for x in range(start, product + 1, step):
        if all((x - r) % m == 0 for r, m in pairs):
            return x
    return None


class TestClosedForms(unittest.TestCase):
    def test_surface_invariants(self):
        """Test the derived Hodge data of the (1, 6) hypersurface"""
        inv = tuples.surface_invariants(1, 2)
        self.assertEqual((1, -3), inv.c1_coeffs)
        self.assertEqual((-27, 39, 1, 37, 0, 37, -35), (
            inv.c1sq, inv.c2, inv.chiO, inv.b2, inv.h02, inv.h11, inv.signature
        ))
        self.assertFalse(inv.spin)
        self.assertFalse(inv.ample_canonical)
        self.assertTrue(tuples.surface_invariants(3, 2).ample_canonical)

    def test_invalid_input(self):
        """Test that non-positive p or q are refused"""
        with self.assertRaises(DomainError):
            tuples.surface_invariants(0, 2)
        with self.assertRaises(DomainError):
            tuples.HypersurfaceP1P2(2, 0)

    def test_noether_violation_is_caught(self):
        """Test that invariants breaking Noether's formula are refused"""
        with self.assertRaises(IntegrityError):
            tuples.SurfaceInvariants.from_chern((1,), 1, 2, ample_canonical=False)

    def test_random_pipeline_agreement(self):
        """Test the closed forms against the ring pipeline on 500 random (p, q)"""
        generator = random.Random(1)
        for _ in range(500):
            p, q = generator.randint(1, 50), generator.randint(1, 10)
            self.assertTrue(tuples.pipeline_cross_check(p, q), (p, q))
            inv = tuples.surface_invariants(p, q)
            self.assertEqual(0, (inv.c1sq + inv.c2) % 12)

    def test_invariants_json(self):
        """Test that invariant records survive a trip through json text"""
        inv = tuples.surface_invariants(75228112, 6)
        text = json.dumps(inv.to_json())
        self.assertEqual(inv, tuples.SurfaceInvariants.from_json(json.loads(text)))


class TestCRT(unittest.TestCase):
    def test_random_systems(self):
        """Test the solver against a brute-force scan on 200 random systems"""
        generator = random.Random(7)
        for _ in range(200):
            moduli = []
            for _ in range(generator.randint(1, 4)):
                candidate = generator.randint(2, 60)
                if all(math.gcd(candidate, m) == 1 for m in moduli):
                    if math.prod(moduli) * candidate <= 10**6:
                        moduli.append(candidate)
            if not moduli:
                moduli = [generator.randint(2, 60)]
            pairs = [(generator.randint(-1000, 1000), m) for m in moduli]
            self.assertEqual(brute_force_crt(pairs), tuples.crt_smallest_positive(pairs), pairs)

    def test_published_system(self):
        """Test that the published q values give n = 21740924188"""
        pairs = [(6 * q * (1 - q), (3 * q - 1) ** 2) for q in TABLE1_Q]
        n = tuples.crt_smallest_positive(pairs)
        self.assertEqual(TABLE1_N, n)
        self.assertLess(n, 29597761600)
        for residue, modulus in pairs:
            self.assertEqual(0, (n - residue) % modulus)

    def test_zero_residue_gives_product(self):
        """Test that the smallest positive solution of x = 0 is the modulus"""
        self.assertEqual(15, tuples.crt_smallest_positive([(0, 3), (0, 5)]))

    def test_invalid_systems(self):
        """Test that empty, degenerate or non-coprime systems are refused"""
        with self.assertRaises(DomainError):
            tuples.crt_smallest_positive([])
        with self.assertRaises(DomainError):
            tuples.crt_smallest_positive([(0, 1)])
        with self.assertRaises(DomainError):
            tuples.crt_smallest_positive([(1, 4), (1, 6)])

    @settings(max_examples=100, deadline=None)
    @given(
        st.integers(min_value=-10**6, max_value=10**6),
        st.integers(min_value=-10**6, max_value=10**6),
    )
    def test_solution_satisfies_system(self, a, b):
        """Test that the solution satisfies both congruences and lies in range"""
        pairs = [(a, 25), (b, 64)]
        x = tuples.crt_smallest_positive(pairs)
        self.assertTrue(1 <= x <= 25 * 64)
        self.assertEqual((x - a) % 25, 0)
        self.assertEqual((x - b) % 64, 0)


class TestTupleSearch(unittest.TestCase):
    def test_coprime_selection(self):
        """Test the greedy choice of q values"""
        self.assertEqual([2, 3, 4, 6, 8], tuples.coprime_q_selection(5))
        self.assertEqual([2, 4, 6, 8, 10], tuples.coprime_q_selection(5, parity="even"))
        with self.assertRaises(DomainError):
            tuples.coprime_q_selection(2, parity="prime")

    def test_published_table(self):
        """Test that the published q values reproduce every published entry"""
        result = tuples.tuple_search(5, q_override=list(TABLE1_Q))
        self.assertEqual(TABLE1_N, result.n)
        for expected, row in zip(TABLE1_ROWS, result.rows):
            self.assertEqual(
                (expected["q"], expected["p"], expected["c1sq"], expected["d_c1"]),
                (row.q, row.p, row.c1sq, row.c1_div),
            )
            self.assertEqual(3 * TABLE1_N, row.c2)
        self.assertEqual(5, len(result.groups))

    def test_greedy_search_reproduces_table(self):
        """Test that the greedy choice of five q values is the published one"""
        result = tuples.tuple_search(5, q_override=tuples.coprime_q_selection(5))
        self.assertEqual(TABLE1_N, result.n)

    def test_single_row(self):
        """Test the search with one q value"""
        result = tuples.tuple_search(1, q_override=[2])
        self.assertEqual(13, result.n)
        self.assertEqual(tuples.TupleRow(q=2, p=1, c1sq=-27, c2=39, c1_div=1), result.rows[0])

    def test_row_needs_solution(self):
        """Test that an n outside the congruence class is refused"""
        self.assertEqual(tuples.TupleRow(q=2, p=1, c1sq=-27, c2=39, c1_div=1), tuples.tuple_row(2, 13))
        with self.assertRaises(IntegrityError):
            tuples.tuple_row(2, 14)

    def test_distinct_tuple(self):
        """Test that the chosen surfaces share c2 and have distinct c1^2"""
        result = tuples.tuple_search(2)
        surfaces = tuples.distinct_tuple(result, 2)
        invariants = [surface.invariants() for surface in surfaces]
        self.assertEqual(1, len({inv.c2 for inv in invariants}))
        self.assertEqual(2, len({inv.c1sq for inv in invariants}))
        self.assertEqual(2, len({inv.h02 for inv in invariants}))
        with self.assertRaises(DomainError):
            tuples.distinct_tuple(result, len(result.groups) + 1)

    def test_bad_overrides(self):
        """Test that repeated or non-coprime q values are refused"""
        with self.assertRaises(DomainError):
            tuples.tuple_search(1, q_override=[2, 2])
        with self.assertRaises(DomainError):
            tuples.tuple_search(1, q_override=[2, 7])
        with self.assertRaises(DomainError):
            tuples.tuple_search(3, q_override=[2, 3])

    def test_result_json(self):
        """Test that a search result survives a trip through json text"""
        result = tuples.tuple_search(5, q_override=list(TABLE1_Q))
        text = json.dumps(result.to_json())
        self.assertEqual(result, tuples.TupleSearchResult.from_json(json.loads(text)))
        self.assertEqual("21740924188", json.loads(text)["n"])


if __name__ == "__main__":
    unittest.main()
