import unittest
import sys
import os
import json
import logging
import shutil
import tempfile
from unittest import mock

from typer.testing import CliRunner

sys.path.append(os.path.dirname(os.path.dirname(__file__)))
import cli.app as cli_app
import src.fixtures as fixtures


class TestCommands(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.directory = tempfile.mkdtemp()
        cls.config = os.path.join(cls.directory, "config.json")
        with open(cls.config, "w") as file:
            json.dump(
                {"Log File": os.path.join(cls.directory, "app.log"), "Log Level": "INFO"}, file
            )
        cls.runner = CliRunner()

    @classmethod
    def tearDownClass(cls):
        root = logging.getLogger()
        for handler in list(root.handlers):
            root.removeHandler(handler)
            handler.close()
        shutil.rmtree(cls.directory)

    def invoke(self, *args):
        return self.runner.invoke(cli_app.app, ["--config", self.config, *args])

    def invoke_json(self, *args):
        result = self.invoke(*args, "--format", "json")
        self.assertEqual(0, result.exit_code, result.output)
        return json.loads(result.output)

    def test_wall_invariants(self):
        """Test the Wall invariants of the first published row"""
        payload = self.invoke_json("ci", "--ambient", "9", "--degrees", "70,16,16,14,7,6", "--wall")
        self.assertEqual(
            ("10536960", "-119", "-5683", "-7767425433600"),
            tuple(payload["wall"][name] for name in ("d", "k", "m", "e")),
        )

    def test_quintic_hodge(self):
        """Test h12 of the quintic"""
        payload = self.invoke_json("ci", "--ambient", "4", "--degrees", "5", "--hodge")
        self.assertEqual("101", payload["hodge"]["h12"])
        self.assertEqual("1", payload["hodge"]["h03"])

    def test_projective_space(self):
        """Test that no degrees gives CP^3 itself"""
        payload = self.invoke_json("ci", "--ambient", "3", "--wall")
        self.assertEqual(("1", "4"), (payload["wall"]["d"], payload["wall"]["k"]))

    def test_diamond_table(self):
        """Test that the table output ends with the diamond picture"""
        result = self.invoke("ci", "--ambient", "4", "--degrees", "5", "--diamond")
        self.assertEqual(0, result.exit_code, result.output)
        self.assertIn("101", result.output.splitlines()[-4])

    def test_malformed_degrees(self):
        """Test that malformed degrees are a usage error"""
        result = self.invoke("ci", "--ambient", "4", "--degrees", "5,x")
        self.assertEqual(2, result.exit_code)

    def test_invalid_input_exit_code(self):
        """Test that a domain error exits with 3"""
        result = self.invoke("ci", "--ambient", "2", "--degrees", "2,2")
        self.assertEqual(3, result.exit_code)

    def test_tuple_search(self):
        """Test the published tuple in json and csv"""
        payload = self.invoke_json("tuple-search", "-k", "5", "--q", "2,3,4,6,8")
        self.assertEqual("21740924188", payload["n"])
        result = self.invoke("tuple-search", "-k", "5", "--q", "2,3,4,6,8", "--format", "csv")
        lines = result.output.splitlines()
        self.assertEqual("q,p,c1sq,c2,d_c1", lines[0])
        self.assertEqual("6,75228112,57549504600,65222772564,5", lines[4])

    def test_horikawa(self):
        """Test the invariants of Y_10"""
        payload = self.invoke_json("horikawa", "--i", "10")
        self.assertEqual("156", payload["invariants"]["c2"])
        self.assertFalse(payload["spin"])
        self.assertFalse(payload["branch_ample"])

    def test_theorem_c(self):
        """Test that k = 2 is told apart by Hamilton's test"""
        result = self.invoke("theorem-c", "--k", "2")
        self.assertEqual(0, result.exit_code, result.output)
        self.assertIn("Inequivalent", result.output)
        self.assertIn("SpinSum(233)", result.output)

    def test_nonspin_tuple(self):
        """Test the configured Euler class and a rejected one"""
        payload = self.invoke_json("nonspin-tuple", "--k", "2")
        self.assertEqual(2, len(payload))
        result = self.invoke("nonspin-tuple", "--k", "2", "--euler", "2,2")
        self.assertEqual(3, result.exit_code)

    def test_classify_named_base(self):
        """Test CP^2 with the hyperplane class"""
        payload = self.invoke_json("bw", "classify", "--base", "cp2")
        self.assertEqual("SpinSum(0)", payload["manifold"])
        self.assertTrue(payload["contact_c1_zero"])

    def test_classify_from_file(self):
        """Test a K3 record read from a json file"""
        path = os.path.join(self.directory, "k3.json")
        with open(path, "w") as file:
            json.dump({"c1_coeffs": [0], "c1sq": 0, "c2": 24, "euler_class": [1]}, file)
        payload = self.invoke_json("bw", "classify", "--from-file", path)
        self.assertEqual("SpinSum(21)", payload["manifold"])

    def test_classify_needs_one_source(self):
        """Test that a file and a named base together are a usage error"""
        result = self.invoke("bw", "classify")
        self.assertEqual(2, result.exit_code)

    def test_pair(self):
        """Test the seven- and thirteen-dimensional examples"""
        payload = self.invoke_json("bw", "pair", "--pair", "1", "--k", "3")
        self.assertEqual(("7", "Z/3"), (payload["total_dimension"], payload["fundamental_group"]))
        payload = self.invoke_json("bw", "pair", "--pair", "2", "--factor", "ci:6")
        self.assertEqual(("13", "trivial"), (payload["total_dimension"], payload["fundamental_group"]))
        payload = self.invoke_json("bw", "pair", "--factor", "curve:2")
        self.assertEqual(("9", "pi_1(P)"), (payload["total_dimension"], payload["fundamental_group"]))

    def test_pair_rejects_non_ample_factor(self):
        """Test that an elliptic curve factor exits with 3"""
        result = self.invoke("bw", "pair", "--factor", "curve:1")
        self.assertEqual(3, result.exit_code)

    def test_link_sign(self):
        """Test a positive link"""
        payload = self.invoke_json("link-sign", "--weights", "1,1,1,21", "--degree", "22")
        self.assertEqual("Positive", payload["sign"])

    def test_pair_search(self):
        """Test that the published multidegrees give three groups"""
        payload = self.invoke_json("pair-search", "--max-r", "7", "--max-degree", "88", "--known-pairs")
        self.assertEqual(3, len(payload))
        self.assertEqual("-119", payload[0]["members"][0]["k"])

    def test_pair_search_spill_dir(self):
        """Test that the spill directory can come from the environment"""
        spill = os.path.join(self.directory, "spill")
        result = self.runner.invoke(
            cli_app.app,
            ["--config", self.config, "pair-search", "--max-r", "2", "--max-degree", "6"],
            env={cli_app.SPILL_ENV: spill},
        )
        self.assertEqual(0, result.exit_code, result.output)
        self.assertTrue(os.path.exists(os.path.join(spill, "checkpoint.json")))

    def test_verify(self):
        """Test seeding, a full match and a tampered table"""
        payload = json.loads(self.invoke("verify", "--seed-tables").output)
        self.assertEqual("21740924188", payload["table1"]["n"])
        self.assertEqual(0, self.invoke("verify", "--k-max", "3").exit_code)
        with mock.patch.object(fixtures, "TABLE1_N", fixtures.TABLE1_N + 1):
            result = self.invoke("verify", "--k-max", "3")
        self.assertEqual(1, result.exit_code)
        self.assertIn("n expected", result.output)

    def test_broken_config(self):
        """Test that an unreadable configuration exits with 3"""
        path = os.path.join(self.directory, "broken.json")
        with open(path, "w") as file:
            file.write("{not json")
        result = self.runner.invoke(cli_app.app, ["--config", path, "link-sign", "--weights", "1", "--degree", "1"])
        self.assertEqual(3, result.exit_code)


if __name__ == "__main__":
    unittest.main()
