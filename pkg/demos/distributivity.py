"""Why the graph functor cannot be trusted once products distribute over sums.

Going from (p*q)+(p*r) to p*(q+r) and back links each letter occurrence
to every occurrence it could have come from. The round trip should be the
identity, yet its graph picks up two extra links between the copies of p.
"""

from bicoh.graph import distributivity_fixture, rel_compose, rel_identity
from bicoh.render import render

fx = distributivity_fixture()
outer, middle = fx["outer"], fx["middle"]

print(f"down: {outer} -> {middle}")
print(render(fx["down"], outer, middle))
print()
print(f"up: {middle} -> {outer}")
print(render(fx["up"], middle, outer))
print()

loop = rel_compose(fx["up"], fx["down"])
print("up after down:")
print(render(loop, outer, outer))
print()
extra = sorted(set(loop.pairs) - set(rel_identity(4).pairs))
print(f"links beyond the identity: {extra}")
