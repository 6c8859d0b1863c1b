"""Cut elimination and normal forms, one step at a time.

Swapping the factors of p*q twice should come back to the identity; the
normal form says so by turning into the pairing of the two projections.
"""

from bicoh import degree, interpret, normalize, parse_term

t = parse_term("(<K2{p}(1{q}),K1{q}(1{p})>;<K2{q}(1{p}),K1{p}(1{q})>)")
print(f"term:   {t}")
print(f"graph:  {interpret(t)}")

trace = []
nf = normalize(t, trace=trace)
for e in trace:
    extra = f"  degree {tuple(e['degree'])}" if "degree" in e else ""
    print(f"  {e['rule']:>6}  {e['term']}{extra}")
print(f"normal form: {nf}   degree {tuple(degree(nf))}")
assert interpret(nf) == interpret(t)
