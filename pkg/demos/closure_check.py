"""Cross-checking the graph functor against brute-force equational reasoning.

All small arrows of a type are closed under the axioms, in both
directions. Where the closure saturates, its classes should be exactly
the classes of equal graphs.
"""

from bicoh import parse_formula, verify_faithfulness
from bicoh.syntax import Fragment

fr = Fragment.from_name("C_x,+")
for src, tgt, bound in [("p*p", "p", 4), ("p*p", "p*p", 5), ("p+p", "p*p", 7)]:
    r = verify_faithfulness(parse_formula(src), parse_formula(tgt), bound, fr)
    print(f"{src} -> {tgt} (size <= {bound}): {r['terms']} terms, "
          f"graph classes {r['g_classes']}, closure classes {r['closure_classes']}, "
          f"saturated={r['saturated']} after {r['rounds']} rounds")
