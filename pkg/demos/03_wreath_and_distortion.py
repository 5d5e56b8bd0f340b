"""Word length in Z wr Z, subgroup length in H_l = <(t-1)^(l-1) a, t>, and distortion."""

from metadehn import (SubgroupSpec, WreathElement, bfs_oracle, distortion_profile, parse_module_element,
                      subgroup_length, witness_family, wreath_length)
from metadehn.experiments import fit_growth_exponent
from metadehn.wreath import standard_generators

g = WreathElement(parse_module_element("t^3 + t^2 + t + 1"))
print(f"|{g}|_W = {wreath_length(g)}")

ball = bfs_oracle(standard_generators(), 6)
bad = sum(wreath_length(x) != d for x, d in ball.items())
print(f"radius-6 ball of Z wr Z: {len(ball)} elements, {bad} disagreements with the length formula")

H2 = SubgroupSpec.parse("t - 1")
c = WreathElement(parse_module_element("t - 1"))
t = WreathElement.shift_generator(1, 1)
hball = bfs_oracle([c, t], 6)
bad = sum(subgroup_length(x, H2) != d for x, d in hball.items())
print(f"H2 ball of radius 6: {len(hball)} elements, {bad} disagreements with |alpha| + walk")

print("\nExact distortion of H2 for small radii (breadth-first over the W-ball):")
for r, v, word, exact in distortion_profile(H2, 6).rows:
    print(f"  r = {r}: sup |g|_H = {v}  via {word}")

print("\nWitness families: W-length linear in n, H-length at least n^l.")
for l in (2, 3):
    rows = []
    for n in (2, 4, 8, 16, 32):
        wit = witness_family(l, n)
        rows.append((wit.w_length, wit.h_length))
    fit = fit_growth_exponent(rows)
    print(f"  l = {l}: (|g|_W, |g|_H) = {rows}  slope {fit.slope:.2f}")
print(f"  witness record: {witness_family(2, 3).to_json()}")
