import time
import unittest

from src.analyzer.polytopes import build_q, verify_polytope
from src.analyzer.sweep import sweep_n, theorem2_sweep
from src.number_theory.diagonals import lemma3_scan_range

GRID = [(5, 2, (1,)), (6, 2, (1,)), (7, 4, (1, 2)), (9, 4, (2, 4)),
        (8, 3, (1,)), (10, 5, (2, 3)), (12, 6, (1, 2, 5))]


class Benchmark(unittest.TestCase):
    def test_sweep_performance(self):
        start = time.time()
        report = theorem2_sweep(24)
        elapsed = time.time() - start
        print(f"sweep n <= 24: {report.specs_checked} specs, {report.families_checked} families in {elapsed:.1f}s")
        self.assertTrue(report.ok, f"violations: {report.violations[:5]}")
        self.assertLess(elapsed, 600, "Sweep is too slow")

    def test_control_sweep_performance(self):
        start = time.time()
        row = sweep_n(30, include_control=True)
        elapsed = time.time() - start
        print(f"control n = 30: {row.control_specs} specs, {len(row.control_detections)} detections in {elapsed:.1f}s")
        self.assertGreater(len(row.control_detections), 0)
        self.assertLess(elapsed, 300, "Control sweep is too slow")

    def test_lemma3_performance(self):
        start = time.time()
        results = lemma3_scan_range(4, 42)
        elapsed = time.time() - start
        found = sum(len(v) for v in results.values())
        print(f"lemma3 n = 4 .. 42: {found} collisions in {elapsed:.1f}s")
        self.assertLess(elapsed, 120, "Ratio scan is too slow")

    def test_polytope_grid_performance(self):
        start = time.time()
        for _ in range(10):
            for n, d, ks in GRID:
                verify_polytope(build_q(n, d, ks, isotropic=bool(d % 2)))
        avg = (time.time() - start) / 10
        print(f"Average polytope grid time: {avg:.4f}s")
        self.assertLess(avg, 1.0, "Polytope checks are too slow")


if __name__ == "__main__":
    unittest.main()
