"""Run the whole collection and set iteration counts beside the reference table.

Equivalent to ``ssarc-bench run all`` followed by ``ssarc-bench compare``,
but printed as one side-by-side table.
"""
from ssarc.cli import compare_records, load_reference, run_problems

records = run_problems('all', jobs=4)
reference = {r.problem: r for r in load_reference()}

print(f"{'problem':<10}{'n':>4}{'m':>4}{'NIT':>6}{'ref':>6}{'ratio':>7}{'Res':>11}  status")
for r in records:
    ref = reference.get(r.problem)
    ratio = f"{r.nit / ref.nit:.2f}" if ref and ref.nit else '-'
    print(f"{r.problem:<10}{r.n:>4}{r.m:>4}{r.nit:>6}{ref.nit if ref else '-':>6}"
          f"{ratio:>7}{r.res:>11.2e}  {r.status}")

divergences = compare_records(records, list(reference.values()))
print(f"\n{len(divergences)} divergences at factor 3:")
for d in divergences:
    print(f"  {d.problem}: {d.reason}")
