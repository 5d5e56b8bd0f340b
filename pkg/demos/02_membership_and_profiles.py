"""Submodule membership, minimal areas and module Dehn profiles.

The profile of <(t-1)^2 a> up to n = 64 takes a few seconds.
"""

from metadehn import SubmodulePresentation, area_search, laurent_divide, module_dehn_profile, parse_module_element
from metadehn import parse_ring_element as P
from metadehn.experiments import dyadic_rows, fit_growth_exponent

print("Division in Z[t, t^-1] decides principal membership.")
for mu, h in (("2t^2 - t - 3", "2t - 3"), ("t^2 + 1", "t - 1")):
    q, r = laurent_divide(P(mu), P(h))
    print(f"  ({mu}) / ({h}) = {q}  remainder {r}")

S = SubmodulePresentation.parse("2t - 3")
res = area_search(parse_module_element("2t^2 - t - 3"), S)
print(f"\nMinimal expression in <(2t - 3) a>: {res.to_json()}")
print(f"3a in <2a>: {area_search(parse_module_element('3'), SubmodulePresentation.parse('2')).status}")

two = SubmodulePresentation.parse("t - 1 | t + 1")
res = area_search(parse_module_element("2t"), two, budget=4)
print(f"With two generators the search is windowed: {res.to_json()}")

print("\nModule Dehn profiles.  Each row is the largest minimal area among")
print("members of norm at most n, computed exactly by a dynamic program.")
for gen, n_max in (("t - 2", 128), ("t - 1", 128), ("t^2 - 2t + 1", 64)):
    prof = module_dehn_profile(SubmodulePresentation.parse(gen), n_max)
    rows = dyadic_rows(prof.values(), (8, 16, 32, 64, 128))
    fit = fit_growth_exponent(rows)
    print(f"  <({gen}) a>: {rows}  slope {fit.slope:.2f}")
    n, v = rows[-1]
    print(f"      witness at n = {n}: alpha = {prof.witnesses[n]} with |alpha| = {v}")

print("\nFor t - 2 the dyadic slope overshoots 1 at these sizes: t^k - 2^k needs")
print("area 2^k - 1 at norm 2^k + 2k + 1, so the profile sits a logarithm below n.")
prof = module_dehn_profile(SubmodulePresentation.parse("t - 2"), 512)
print(f"  values at 128, 256, 512: {[prof.values()[n - 1] for n in (128, 256, 512)]}")
