"""End-to-end checks of the newton-atlas executable.

usage: test_cli.py <newton-atlas> <report.schema.json>
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

EXE = None
SCHEMA = None

FIG_A = ["--roots", "0,0:4", "--poles", "0.5,0:2;-0.5,0:2"]
FIG_B = ["--roots", "0,0.5:2;0,-0.5:2", "--poles", "0,0:4"]

# One template per cubic table row: (row, flags, conjugate to a polynomial).
TABLE_ROWS = [
    ("IA", ["--roots", "0,0:4", "--poles", "1,0;2,0;0,1"], False),
    ("IB", ["--roots", "0,0:1;1,0:2", "--poles", "2,0:1;0.6666666666666666,0:1"], True),
    ("IC", ["--roots", "0,0;1,0;2,0", "--poles", "1.3333333333333333,0:2"], True),
    ("IIA", ["--poles", "0,0;1,0;0,1"], False),
    ("IIBi", ["--roots", "0,0:2", "--poles", "1,0;-1,0"], True),
    ("IIBii", ["--roots", "0,0", "--poles", "1,0:2;-0.5,0"], True),
    ("IICi", ["--roots", "0,0;1,0", "--poles", "0.5,0:2"], True),
    ("IICii", ["--roots", "0,0;1,0:2", "--poles", "0.5,0"], True),
    ("IID", ["--roots", "0,0;1,0;-1,0"], True),
]


def run(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run([EXE, *args], capture_output=True, env=full_env, check=False)


def cx(obj):
    return complex(obj["re"], obj["im"])


class Base(unittest.TestCase):
    validator = None

    @classmethod
    def setUpClass(cls):
        with open(SCHEMA, encoding="utf-8") as fh:
            schema = json.load(fh)
        jsonschema.Draft202012Validator.check_schema(schema)
        Base.validator = jsonschema.Draft202012Validator(schema)

    def report(self, *args):
        proc = run(*args)
        self.assertEqual(proc.returncode, 0, proc.stderr.decode())
        doc = json.loads(proc.stdout)
        errors = sorted(self.validator.iter_errors(doc), key=str)
        self.assertFalse(errors, "\n".join(e.message for e in errors[:3]))
        return doc

    def fails_with(self, code, *args):
        proc = run(*args)
        self.assertEqual(proc.returncode, code, proc.stderr.decode())
        self.assertEqual(proc.stdout, b"")
        self.assertTrue(proc.stderr.startswith(b"error: "))
        return proc.stderr.decode()


class Analyze(Base):
    def test_first_cubic(self):
        doc = self.report("analyze", *FIG_A)
        self.assertEqual(doc["degree"], 3)
        lambdas = sorted(cx(fp["multiplier"]).real for fp in doc["fixed_points"])
        for got, want in zip(lambdas, [0.0, 0.75, 1.5, 1.5]):
            self.assertAlmostEqual(got, want, places=12)
        self.assertTrue(doc["rfpt_pass"])
        self.assertEqual(doc["julia_class"]["variant"], "JordanCurve")

    def test_quadratic_indices(self):
        doc = self.report("analyze", "--roots", "0,0:2;1,0:1")
        self.assertEqual(doc["degree"], 2)
        indices = sorted(round(cx(fp["index"]).real) for fp in doc["fixed_points"])
        self.assertEqual(indices, [-2, 1, 2])
        self.assertIsNotNone(doc["quad_class"])

    def test_table_rows(self):
        for row, flags, poly in TABLE_ROWS:
            with self.subTest(row=row):
                doc = self.report("analyze", *flags)
                self.assertTrue(doc["rfpt_pass"])
                self.assertEqual(doc["cubic_report"]["case"], row)
                self.assertEqual(doc["cubic_report"]["conjugate_to_poly"], poly)
                if poly:
                    self.assertTrue(doc["cubic_report"]["exceptional_confirmed"])

    def test_validation_errors(self):
        self.assertIn("degree", self.fails_with(2, "analyze", "--num", "0,0.5", "--den", "1"))
        self.assertIn("column 3", self.fails_with(2, "analyze", "--roots", "0,x"))
        self.fails_with(2, "analyze", "--roots", "0,0:0")
        self.fails_with(2, "analyze", "--roots", "0,0;0,0")
        self.fails_with(2, "analyze")
        self.fails_with(2, "analyze", "--roots", "0,0", "--num", "1")

    def test_degenerate(self):
        self.fails_with(3, "analyze", "--roots", "0,0")

    def test_deterministic(self):
        a = run("analyze", *FIG_B)
        b = run("analyze", *FIG_B)
        self.assertEqual(a.returncode, 0)
        self.assertEqual(a.stdout, b.stdout)


class Classify(Base):
    def test_first_cubic(self):
        doc = self.report("classify", *FIG_A)
        self.assertEqual(doc["case"], "IIBi")
        self.assertTrue(doc["conjugate_to_poly"])
        self.assertAlmostEqual(cx(doc["normal_form"]["a"]), 0.75, places=10)
        self.assertAlmostEqual(abs(cx(doc["normal_form"]["b"])), 0.0, places=10)
        self.assertEqual(doc["julia"], "JordanCurve")

    def test_second_cubic(self):
        doc = self.report("classify", *FIG_B)
        self.assertEqual(doc["indices"], [2, 2, -4])
        self.assertEqual(doc["julia"], "SelfIntersectingClosedCurve")

    def test_quadratics(self):
        doc = self.report("classify", "--roots", "0,0:1", "--poles", "1,0:2")
        self.assertEqual((doc["class"], doc["d1"], doc["d2"], doc["julia"]), ("N1", 1, 2, "JordanCurve"))
        doc = self.report("classify", "--poles", "0,0:1;1,0:1")
        self.assertEqual((doc["class"], doc["julia"]), ("N2", "TotallyDisconnected"))
        self.assertLessEqual(doc["witness_error"], 1e-7)

    def test_unsupported_degree(self):
        self.fails_with(4, "classify", "--roots", "0,0;1,0;2,0;3,0")


class Characterize(Base):
    def test_recovers_generator(self):
        doc = self.report("characterize", "--num", "0,0;0.75,0;0,0;1,0", "--den", "1")
        self.assertTrue(doc["is_newton_map"])
        gen = doc["generator"]
        self.assertEqual([f["multiplicity"] for f in gen["root_list"]], [4])
        self.assertAlmostEqual(abs(cx(gen["root_list"][0]["location"])), 0.0, places=9)
        poles = sorted(cx(f["location"]).real for f in gen["pole_list"])
        self.assertAlmostEqual(poles[0], -0.5, places=9)
        self.assertAlmostEqual(poles[1], 0.5, places=9)

    def test_rejections(self):
        doc = self.report("characterize", "--num", "0;0;0;1")
        self.assertFalse(doc["is_newton_map"])
        self.assertIsNone(doc["generator"])
        self.assertEqual(doc["reason"], "multiplier 3 not of form p/q with |p-q|=1")
        doc = self.report("characterize", "--num", "-1;0;1")
        self.assertFalse(doc["is_newton_map"])
        self.assertIn("not of form p/q", doc["reason"])

    def test_needs_raw_input(self):
        self.fails_with(2, "characterize", *FIG_A)


class Render(Base):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def render(self, name, *args, env=None):
        out = os.path.join(self.tmp.name, name)
        proc = run("render", *args, "--out", out, env=env)
        self.assertEqual(proc.returncode, 0, proc.stderr.decode())
        with open(out, "rb") as fh:
            image = fh.read()
        with open(out + ".json", encoding="utf-8") as fh:
            sidecar = json.load(fh)
        self.assertEqual(json.loads(proc.stdout), sidecar)
        errors = list(self.validator.iter_errors(sidecar))
        self.assertFalse(errors, errors[:1])
        return image, sidecar

    @staticmethod
    def pixels(image):
        header, body = image.split(b"\n", 3)[:3], image.split(b"\n", 3)[3]
        w, h = map(int, header[1].split())
        return w, h, [body[k:k + 3] for k in range(0, len(body), 3)]

    def test_header_and_size(self):
        image, sidecar = self.render("a.ppm", *FIG_A, "--size", "64x48")
        self.assertTrue(image.startswith(b"P6\n64 48\n255\n"))
        self.assertEqual(len(image), len(b"P6\n64 48\n255\n") + 64 * 48 * 3)
        self.assertEqual(len(sidecar["attractors"]), 2)

    def test_deterministic_across_runs_and_threads(self):
        one, _ = self.render("a.ppm", *FIG_B, env={"NEWTON_ATLAS_THREADS": "1"})
        again, _ = self.render("b.ppm", *FIG_B, env={"NEWTON_ATLAS_THREADS": "1"})
        four, _ = self.render("c.ppm", *FIG_B, env={"NEWTON_ATLAS_THREADS": "4"})
        self.assertEqual(one, again)
        self.assertEqual(one, four)

    def test_first_cubic_symmetry(self):
        image, sidecar = self.render("a.ppm", *FIG_A)
        self.assertGreaterEqual(sidecar["captured_fraction"], 0.99)
        w, h, px = self.pixels(image)
        black = [p == b"\x00\x00\x00" for p in px]
        self.assertTrue(any(black) and not all(black))
        mismatch_point = sum(black[j * w + i] != black[(h - 1 - j) * w + (w - 1 - i)]
                             for j in range(h) for i in range(w))
        mismatch_mirror = sum(black[j * w + i] != black[(h - 1 - j) * w + i]
                              for j in range(h) for i in range(w))
        self.assertLessEqual(mismatch_point, w * h // 1000)
        self.assertLessEqual(mismatch_mirror, w * h // 1000)

    def test_second_cubic_three_colors(self):
        image, sidecar = self.render("b.ppm", *FIG_B)
        _, _, px = self.pixels(image)
        self.assertEqual(len(set(px)), 3)
        self.assertEqual(len(sidecar["attractors"]), 3)

    def test_linear_map_is_uniform(self):
        image, _ = self.render("h.ppm", "--num", "0;0.5", "--size", "16x16")
        _, _, px = self.pixels(image)
        self.assertEqual(len(set(px)), 1)

    def test_io_error(self):
        self.fails_with(5, "render", *FIG_A, "--out", os.path.join(self.tmp.name, "missing", "x.ppm"))

    def test_bad_viewport(self):
        self.fails_with(2, "render", *FIG_A, "--viewport", "0,0,0,4", "--out", os.path.join(self.tmp.name, "x.ppm"))
        self.fails_with(2, "render", *FIG_A, "--size", "12", "--out", os.path.join(self.tmp.name, "x.ppm"))


if __name__ == "__main__":
    EXE, SCHEMA = sys.argv[1], sys.argv[2]
    unittest.main(argv=sys.argv[:1], verbosity=2)
