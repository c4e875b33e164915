"""Print a checklist for the worked 30-gon, 15-gon, pentagon and polytope examples."""
import sys

from src.analyzer.polygons import classify_polygon, coxeter_lambda, make_combination, recover_ratio
from src.analyzer.polytopes import build_q, interleaved_example, recover_frequencies, verify_polytope
from src.analyzer.recurrence import classify, recurrence_residual, regular_ratio
from src.cyclotomic import fourier_vector, root_power
from src.models import RecurrenceSpec
from src.number_theory.witnesses import remark5_witnesses

failures = 0


def check(label, ok, detail=""):
    global failures
    if not ok:
        failures += 1
    print(f"{'✅' if ok else '❌'} {label}{f'  ({detail})' if detail else ''}")


def main():
    print("[1] 30-gon, (n, m1, m2, k) = (30, 7, 2, 6)")
    spec = RecurrenceSpec(30, 7, 2, 6)
    w = regular_ratio(spec, 1)
    polygon = make_combination(30, {1: 0.8, 11: 0.2})
    check("|w| = 0.85065", abs(abs(w) - 0.8506508083520399) < 1e-12, f"w = {w:.12f}")
    check("recurrence holds", recurrence_residual(polygon, 7, 2, 6, w) < 1e-9)
    check("ratio recovered", abs(recover_ratio(polygon, 7, 2, 6) - w) < 1e-9)
    check("not affinely regular", str(classify_polygon(polygon)) == "Other({1, 11})", str(classify_polygon(polygon)))
    report = classify(spec, w)
    check("classified as counterexample family", str(report.verdict) == "CounterexampleFamily(1,11)", str(report.verdict))
    check("witness (1, 11)", any((x.t, x.t_prime) == (1, 11) for x in remark5_witnesses(spec)))

    print("\n[2] 15-gon, (n, m1, m2, k) = (15, 5, 3, 2)")
    w = root_power(15, 3)
    polygon = make_combination(15, {1: 0.4, 6: 0.7, 11: 0.2})
    check("|w| = 1", abs(abs(w) - 1) < 1e-15)
    check("recurrence holds", recurrence_residual(polygon, 5, 3, 2, w) < 1e-9)
    check("support {1, 6, 11}", classify_polygon(polygon).support == (1, 6, 11))

    print("\n[3] Coxeter lambda")
    lam = coxeter_lambda(fourier_vector(5, 1))
    check("pentagon gives the golden ratio", abs(lam - 1.618033988749895) < 1e-12, f"{lam:.12f}")
    lam = coxeter_lambda(fourier_vector(6, 1))
    check("hexagon gives 2", abs(lam - 2) < 1e-12, f"{lam:.12f}")

    print("\n[4] Symmetric polytopes")
    for n, d, ks in [(7, 4, (1, 2)), (10, 5, (2, 3)), (12, 6, (1, 2, 5))]:
        result = verify_polytope(build_q(n, d, ks), normalize=bool(d % 2))
        check(f"Q{ks} in R^{d}, n={n}", result.passed)
    for k in (3, 4):
        recovery = recover_frequencies(interleaved_example(k))
        check(f"interleaved k={k} gives (1, {k - 1})", recovery.frequencies.ks == (1, k - 1))

    print(f"\n{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
