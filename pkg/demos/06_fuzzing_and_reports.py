"""Deterministic fuzzing, structure files, and machine-readable reports.

The fuzz harness drives every tensor identity in the library over random
structures other than the ones the identities were developed against; a
correct build keeps all residuals at rounding level.
"""
import json

from lcak import Report, fuzz, load_spec, run_report

print("identity fuzzing (seeded, byte-stable):")
for family, seed, count in [("almost_abelian_4d", 0, 40),
                            ("random_unimodular", 1, 40),
                            ("random_hermitian", 2, 40)]:
    summary = fuzz(seed, count, family)
    print(f"  {family:<20} failures={len(summary['identity_failures'])}")
    for name, worst in summary["worst_residuals"].items():
        print(f"      {name:<26} worst {worst:.2e}")

print("\nstructure files are plain JSON; exact fractions stay exact:")
text = """
{
  "dim": 4,
  "name": "demo",
  "brackets": [
    {"i": 2, "j": 4, "coefficients": {"1": "1"}},
    {"i": 3, "j": 4, "coefficients": {"2": "1"}}
  ],
  "J": "split",
  "g": "identity",
  "options": {"arithmetic_mode": "auto"}
}
"""
structure = load_spec(text)
report = run_report(structure)
flags = report.condition_report["flags"]
print("  loaded", report.name, "->", "pluricanonical:", flags["pluricanonical"])

blob = report.to_json()
again = Report.from_json(blob)
print("  report round-trips byte-identically:", again.to_json() == blob)
print("  sample of the serialized report:")
data = json.loads(blob)
print("   ", {k: data[k] for k in ("name", "dim", "arithmetic_mode")})
print("    theta:", data["extras"]["theta"])

print("\nsame machinery from the shell:")
print("  lcak check structure.json --json")
print("  lcak catalog A4_8")
print("  lcak classify-aa --a 0 --b 1,0 --v=-1,0 --A 0,0;0,0")
print("  lcak fuzz --seed 0 --count 200 --family random_hermitian")
