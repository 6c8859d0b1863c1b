"""Adding any underivable equation collapses the category to a preorder.

Starting from two arrows with different graphs, the construction wraps
them in contexts until what remains is the pair of projections p*p -> p
(or of injections p -> p+p). Once those are equal, so is every parallel
pair of arrows.
"""

from bicoh import collapse_witness, parse_term, preorder_collapse

T = parse_term
f = T("<K1{p}(l1{p,p}),K2{p}(l2{p,p})>")
g = T("<K1{p}(l2{p,p}),K2{p}(l1{p,p})>")
w = collapse_witness(f, g)
print(f"f = {f}\ng = {g}")
print(f"tracked link: {w.tracked}")
for s in w.stages:
    print(f"  {s.tag:>6} ({s.side}): {s.term}")
print(f"f* = {w.fstar}\ng* = {w.gstar}")
print(f"so {w.conclusion}; certificate: {w.check()}")

d = preorder_collapse(w, T("k1{p,p}"), T("k2{p,p}"))
for lhs, rhs, why in d.steps:
    print(f"  {lhs}  =  {rhs}    [{why}]")
print(f"derivation checks: {d.check()}")
