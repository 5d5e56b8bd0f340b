"""Certified relative-area bounds and the independent checker."""

import copy

from metadehn import (CancellationState, CostTable, Presentation, bs_area_certificate, l2_area_certificate,
                      l2_game_reduce, l2_sequence, lm_area_certificate, parse_word, sample_identity_word,
                      verify_certificate)
from metadehn.errors import CertificateError

print("The L2 cancellation game on the sequence 2,3,5,3,5,8,2,8:")
state = CancellationState([2, 3, 5, 3, 5, 8, 2, 8])
game, cert = l2_game_reduce(state)
print(f"  game cost {game}, path bound {state.path_weight()}, area bound {cert.certified_area_bound}")
for mv in cert.moves:
    params = {k: v for k, v in mv["params"].items() if k not in ("digest", "stage")}
    print(f"    {mv['kind']:<13} {params}  game {mv['game_cost']}  area {mv['area_cost']}")

w = parse_word("t^2 a t a t^-1 a t a t^-3")
print(f"\nl2_sequence({w}) = {list(l2_sequence(w).values)}")

print("\nLong identity words in L2 stay linear:")
P = Presentation.lamplighter(2)
for target in (200, 800, 1600):
    w = sample_identity_word(P, target, 1)
    bound, cert = l2_area_certificate(w)
    print(f"  |w| = {len(w)}: bound {bound}, verified {verify_certificate(w, cert)}")

print("\nBS~(2,3) and L3 go through ordered form, division and relator insertion:")
w = parse_word("t^-1 a^2 t a^-3")
bound, cert = bs_area_certificate(w, 2, 3)
print(f"  {w}: bound {bound}; {cert.diagnostics}")
w = parse_word("t^-1 a^3 t")
print(f"  {w} in L3: bound {lm_area_certificate(w, 3)[0]}")
w = sample_identity_word(Presentation.baumslag_solitar(3, 4), 120, 2)
general = bs_area_certificate(w, 3, 4)[0]
derived = bs_area_certificate(w, 3, 4, CostTable("derivedGenerator"))[0]
print(f"  BS~(3,4), |w| = {len(w)}: general costs {general}, derived-generator costs {derived}")

print("\nTampering is caught by the checker:")
w = sample_identity_word(Presentation.baumslag_solitar(2, 3), 60, 5)
data = bs_area_certificate(w, 2, 3)[1].to_json()
for label in ("cost edit", "deletion", "reordering"):
    bad = copy.deepcopy(data)
    if label == "cost edit":
        bad["moves"][0]["area_cost"] += 1
    elif label == "deletion":
        del bad["moves"][-1]
    else:
        bad["moves"][0], bad["moves"][1] = bad["moves"][1], bad["moves"][0]
    try:
        ok = verify_certificate(w, bad)
    except CertificateError as exc:
        ok = f"rejected ({exc})"
    print(f"  {label}: {ok}")
