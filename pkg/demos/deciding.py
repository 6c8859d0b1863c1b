"""Deciding equality by drawing two pictures.

Where the graph functor is faithful, two arrows are equal exactly when
their graphs are. Outside those fragments the verdict is withheld even if
the graphs agree.
"""

from bicoh import equal, interpret, parse_term
from bicoh.decide import check_worked_examples

T = parse_term

pairs = [
    ("pairing of copairings vs copairing of pairings",
     "<[1{p},1{p}],[1{p},1{p}]>", "[<1{p},1{p}>,<1{p},1{p}>]"),
    ("the two projections", "k1{p,p}", "k2{p,p}"),
    ("copy then merge, two ways", "(m{p};w{p})", "((w{p}+w{p});(m{(p*p)}))"),
    ("projections out of O*O", "k1{O,O}", "k2{O,O}"),
    ("injections into I+I", "l1{I,I}", "l2{I,I}"),
]

for label, a, b in pairs:
    f, g = T(a), T(b)
    v = equal(f, g)
    print(f"{label}:")
    print(f"  G = {interpret(f)}  vs  {interpret(g)}")
    print(f"  -> {v.to_json()}")

report = check_worked_examples()
held = sum(r["verdict"] == r["expected"] for r in report["rows"])
print(f"\nworked equations over every letter assignment: {held}/{len(report['rows'])} as expected")
