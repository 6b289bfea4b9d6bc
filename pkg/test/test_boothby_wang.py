import unittest
import sys
import os
import json
from dataclasses import replace

from hypothesis import given, settings, strategies as st

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
import src.boothby_wang as bw
from src.calculations import mod2
from src.complete_intersection import CompleteIntersectionSpec, wall_invariants
from src.errors import DomainError
from src.fixtures import TABLE1_Q, TABLE2_PAIRS, TABLE2_ROWS
from src.horikawa import xk_invariants
from src.surface_tuples import distinct_tuple, surface_invariants, tuple_search


def threefold(degrees):
    return wall_invariants(CompleteIntersectionSpec.threefold(degrees))


def known_pair(index):
    first, second = TABLE2_PAIRS[index]
    return threefold(TABLE2_ROWS[first]["degrees"]), threefold(TABLE2_ROWS[second]["degrees"])


curves = st.integers(min_value=0, max_value=6).map(bw.HodgeDiamond.curve)
surfaces = st.tuples(st.integers(0, 5), st.integers(1, 30)).map(
    lambda h: bw.HodgeDiamond([[1, 0, h[0]], [0, h[1], 0], [h[0], 0, 1]])
)
diamonds = st.one_of(st.just(bw.HodgeDiamond.point()), curves, surfaces)


class TestClassify(unittest.TestCase):
    def test_k3(self):
        """Test that K3 gives the 21-fold connected sum"""
        report = bw.bw_classify(bw.BaseSurfaceData.k3())
        self.assertEqual("SpinSum(21)", report.manifold.label)
        self.assertTrue(report.contact_c1_zero)
        self.assertFalse(report.negative_type)

    def test_vanishing_c1_has_divisibility_zero(self):
        """Test that c1 = 0 is reported with divisibility 0 and never as a positive value"""
        report = bw.bw_classify(bw.BaseSurfaceData.k3())
        self.assertEqual(0, report.hamilton_div)
        self.assertTrue(report.hamilton_div_exact)
        self.assertEqual(bw.ContactVerdict.INCONCLUSIVE, bw.hamilton_obstruction(report, report))
        self.assertEqual(
            bw.ContactVerdict.INEQUIVALENT,
            bw.hamilton_obstruction(report, replace(report, hamilton_div=1)),
        )
        self.assertEqual(2, bw.contact_structure_lower_bound([report, replace(report, hamilton_div=3)]))

    def test_projective_plane(self):
        """Test that CP^2 with the hyperplane class gives S^5"""
        report = bw.bw_classify(bw.BaseSurfaceData.cp2())
        self.assertEqual(bw.FiveManifold(spin=True, n=0), report.manifold)
        self.assertTrue(report.contact_c1_zero)
        self.assertEqual((0, 1, 1), report.basic_hodge)

    def test_x1_canonical(self):
        """Test X_1 with the primitive canonical class"""
        report = bw.bw_classify(bw.BaseSurfaceData.from_surface(xk_invariants(1)))
        self.assertEqual("SpinSum(153)", report.manifold.label)
        self.assertEqual((16, 122, 154), report.basic_hodge)
        self.assertTrue(report.negative_type)
        self.assertTrue(report.contact_c1_zero)

    def test_other_kahler_class(self):
        """Test a Kaehler class off the canonical ray"""
        inv = surface_invariants(3, 2)
        report = bw.bw_classify(bw.BaseSurfaceData(inv=inv, euler_class=(1, 2)))
        self.assertFalse(report.contact_c1_zero)
        self.assertFalse(report.negative_type)
        self.assertTrue(report.notes)
        self.assertFalse(report.manifold.spin)

    def test_spin_rule(self):
        """Test the spin rule against a direct mod 2 comparison"""
        for p in range(1, 8):
            for q in range(1, 5):
                inv = surface_invariants(p, q)
                for euler_class in ((1, 1), (1, 2), (2, 1), (3, 4)):
                    report = bw.bw_classify(bw.BaseSurfaceData(inv=inv, euler_class=euler_class))
                    expected = inv.spin or mod2(inv.c1_coeffs) == mod2(euler_class)
                    self.assertEqual(expected, report.manifold.spin)
                    self.assertEqual(inv.b2 - 1, report.manifold.n)

    def test_preconditions(self):
        """Test that non-primitive classes and non-simply-connected bases are refused"""
        inv = surface_invariants(3, 2)
        with self.assertRaises(DomainError):
            bw.bw_classify(bw.BaseSurfaceData(inv=inv, euler_class=(2, 4)))
        with self.assertRaises(DomainError):
            bw.bw_classify(bw.BaseSurfaceData(inv=inv, euler_class=(1, 2), simply_connected=False))
        with self.assertRaises(DomainError):
            bw.canonical_euler_class(bw.BaseSurfaceData.k3().inv)

    def test_report_json(self):
        """Test that reports and base records survive a trip through json text"""
        base = bw.BaseSurfaceData.from_surface(xk_invariants(3))
        report = bw.bw_classify(base)
        self.assertEqual(report, bw.BoothbyWangReport.from_json(json.loads(json.dumps(report.to_json()))))
        self.assertEqual(base, bw.BaseSurfaceData.from_json(json.loads(json.dumps(base.to_json()))))


class TestHamilton(unittest.TestCase):
    def test_identical_reports(self):
        """Test that identical reports are inconclusive"""
        report = bw.bw_classify(bw.BaseSurfaceData.from_surface(xk_invariants(2)))
        self.assertEqual(bw.ContactVerdict.INCONCLUSIVE, bw.hamilton_obstruction(report, report))

    def test_symmetry_and_parity(self):
        """Test that exact divisibilities are compared by value and inexact ones by parity"""
        report = bw.bw_classify(bw.BaseSurfaceData.from_surface(xk_invariants(2)))
        five = replace(report, hamilton_div=5)
        odd = replace(report, hamilton_div=1, hamilton_div_exact=False)
        self.assertEqual(bw.ContactVerdict.INEQUIVALENT, bw.hamilton_obstruction(report, five))
        self.assertEqual(bw.ContactVerdict.INEQUIVALENT, bw.hamilton_obstruction(five, report))
        self.assertEqual(bw.ContactVerdict.INEQUIVALENT, bw.hamilton_obstruction(report, odd))
        self.assertEqual(bw.ContactVerdict.INCONCLUSIVE, bw.hamilton_obstruction(five, odd))

    def test_preconditions(self):
        """Test that different manifolds or non-trivial contact c1 are refused"""
        x1 = bw.bw_classify(bw.BaseSurfaceData.from_surface(xk_invariants(1)))
        x2 = bw.bw_classify(bw.BaseSurfaceData.from_surface(xk_invariants(2)))
        with self.assertRaises(DomainError):
            bw.hamilton_obstruction(x1, x2)
        with self.assertRaises(DomainError):
            bw.hamilton_obstruction(x1, replace(x1, contact_c1_zero=False))

    def test_published_tuple(self):
        """Test that the five surfaces give at least two contact structures"""
        surfaces = distinct_tuple(tuple_search(5, q_override=list(TABLE1_Q)), 5)
        reports = bw.tuple_reports(surfaces)
        self.assertEqual(1, len({report.manifold for report in reports}))
        self.assertTrue(all(report.negative_type for report in reports))
        self.assertEqual([1, 1, 1, 5, 1], [report.hamilton_div for report in reports])
        self.assertEqual(2, bw.contact_structure_lower_bound(reports))
        self.assertEqual(0, bw.contact_structure_lower_bound([]))


class TestLinkSign(unittest.TestCase):
    def test_signs(self):
        """Test the three outcomes of sum(w) - d"""
        self.assertEqual(bw.LinkSign.POSITIVE, bw.link_sign((1, 1, 1, 21), 22))
        self.assertEqual(bw.LinkSign.NULL, bw.link_sign((1, 1, 1, 1), 4))
        self.assertEqual(bw.LinkSign.NEGATIVE, bw.link_sign((1, 1, 1, 1), 5))
        with self.assertRaises(DomainError):
            bw.link_sign((0, 1), 1)


class TestHodgeDiamond(unittest.TestCase):
    def test_threefold_diamonds(self):
        """Test the middle rows of the quintic and of CP^3"""
        quintic = bw.ci3_diamond(threefold((5,)), 5)
        self.assertEqual((1, 101, 101, 1), quintic.middle_row())
        self.assertEqual(-200, quintic.euler())
        projective = bw.ci3_diamond(threefold(()), 1)
        self.assertEqual((0, 0, 0, 0), projective.middle_row())
        self.assertEqual([1, 0, 1, 0, 1, 0, 1], projective.betti())

    def test_curve(self):
        """Test the diamond of a genus 2 curve"""
        curve = bw.HodgeDiamond.curve(2)
        self.assertEqual([1, 4, 1], curve.betti())
        self.assertEqual(-2, curve.euler())
        self.assertEqual(bw.HodgeDiamond.curve(3), bw.HodgeDiamond.plane_curve(4))
        self.assertEqual(3, len(curve.pprint().splitlines()))

    def test_surface_from_invariants(self):
        """Test that the diamond of a surface carries its Euler number"""
        inv = xk_invariants(1)
        diamond = bw.HodgeDiamond.surface(inv)
        self.assertEqual(inv.c2, diamond.euler())
        self.assertEqual(inv.h11, diamond[1, 1])

    def test_invalid_diamonds(self):
        """Test that asymmetric or malformed matrices are refused"""
        with self.assertRaises(DomainError):
            bw.HodgeDiamond([[1, 2], [0, 1]])
        with self.assertRaises(DomainError):
            bw.HodgeDiamond([[2]])
        with self.assertRaises(DomainError):
            bw.HodgeDiamond([[1, 0, 0], [0, 1]])

    def test_kunneth_examples(self):
        """Test products with a point, a curve and another quintic"""
        quintic = bw.ci3_diamond(threefold((5,)), 5)
        self.assertEqual(quintic, bw.kunneth_hodge(quintic, bw.HodgeDiamond.point()))
        product = bw.kunneth_hodge(quintic, bw.HodgeDiamond.curve(4))
        self.assertEqual(4, product.dim)
        self.assertEqual(4, product[1, 0])
        self.assertEqual(2, (quintic * quintic)[1, 1])

    @settings(max_examples=60, deadline=None)
    @given(diamonds, diamonds)
    def test_kunneth_commutes(self, a, b):
        """Test commutativity, symmetry and multiplicativity of the Euler number"""
        product = bw.kunneth_hodge(a, b)
        self.assertEqual(product, bw.kunneth_hodge(b, a))
        self.assertTrue(product.is_hodge_symmetric())
        self.assertTrue(product.is_serre_symmetric())
        self.assertEqual(a.euler() * b.euler(), product.euler())

    @settings(max_examples=30, deadline=None)
    @given(diamonds, diamonds, diamonds)
    def test_kunneth_associates(self, a, b, c):
        """Test associativity on sampled triples"""
        self.assertEqual((a * b) * c, a * (b * c))

    def test_diamond_json(self):
        """Test that a diamond survives a trip through json text"""
        w = threefold((70, 16, 16, 14, 7, 6))
        diamond = bw.ci3_diamond(w, w.d)
        text = json.dumps(diamond.to_json())
        self.assertEqual(diamond, bw.HodgeDiamond.from_json(json.loads(text)))
        self.assertEqual("518382430721", json.loads(text)["matrix"][3][0])


class TestPairs(unittest.TestCase):
    def test_seven_dimensional(self):
        """Test the simply connected and cyclic seven-dimensional examples"""
        pair = known_pair(0)
        report = bw.seven_dim_pair(1, pair)
        self.assertEqual("trivial", report.fundamental_group)
        self.assertEqual(7, report.total_dimension)
        self.assertNotEqual(report.diamonds[0].middle_row(), report.diamonds[1].middle_row())
        self.assertEqual("Z/5", bw.seven_dim_pair(5, pair).fundamental_group)

    def test_same_threefold_is_refused(self):
        """Test that a pair with equal c1 is refused"""
        a, _ = known_pair(0)
        with self.assertRaises(DomainError):
            bw.seven_dim_pair(1, (a, a))
        with self.assertRaises(DomainError):
            bw.seven_dim_pair(1, (known_pair(0)[0], known_pair(1)[0]))

    def test_curve_factor(self):
        """Test the nine-dimensional example over a genus 2 curve"""
        report = bw.higher_dim_pair(known_pair(0), bw.HodgeDiamond.curve(2))
        self.assertEqual(9, report.total_dimension)
        self.assertEqual("pi_1(P)", report.fundamental_group)
        self.assertNotEqual(report.diamonds[0][3, 0], report.diamonds[1][3, 0])

    def test_threefold_factor(self):
        """Test the thirteen-dimensional example over the sextic threefold"""
        sextic = bw.ci3_diamond(threefold((6,)), 6)
        report = bw.higher_dim_pair(known_pair(1), sextic, p_simply_connected=True)
        self.assertEqual(13, report.total_dimension)
        self.assertEqual("trivial", report.fundamental_group)
        self.assertEqual(6, report.diamonds[0].dim)

    def test_point_factor(self):
        """Test that a point factor reduces to the seven-dimensional shape"""
        report = bw.higher_dim_pair(known_pair(2), bw.HodgeDiamond.point())
        self.assertEqual(7, report.total_dimension)
        self.assertEqual(bw.seven_dim_pair(1, known_pair(2)).diamonds, report.diamonds)

    def test_factor_needs_ample_canonical(self):
        """Test that a factor without ample canonical bundle is refused"""
        with self.assertRaises(DomainError):
            bw.higher_dim_pair(known_pair(0), bw.HodgeDiamond.curve(1), p_ample_canonical=False)

    def test_report_json(self):
        """Test that a pair report survives a trip through json text"""
        report = bw.higher_dim_pair(known_pair(0), bw.HodgeDiamond.curve(2))
        text = json.dumps(report.to_json())
        self.assertEqual(report, bw.PairReport.from_json(json.loads(text)))


if __name__ == "__main__":
    unittest.main()
