"""Group-ring orders, module norms and ordered forms.

Run with ``python demos/01_orders_and_norms.py``.
"""

from metadehn import (compare_monomials, leading_term_and_degree, module_norm, ordered_form,
                      parse_module_element, parse_ring_element, parse_word, word_to_module)


def show(label, value):
    print(f"  {label:<46} {value}")


print("Monomials are compared by degree first, then generator by generator,")
print("with t1 above t1^-1 above t2 and so on.")
show("compare(1, t)", compare_monomials((0,), (1,)))
show("compare(t, t^-1)", compare_monomials((1,), (-1,)))
show("compare(t1^-2, t1^-1 t2)", compare_monomials((-2, 0), (-1, 1)))

lam = parse_ring_element("t^2 - 7t^-2 + 3")
show(f"leading term of {lam}", leading_term_and_degree(lam))

print()
print("The norm of f adds the coefficient mass to the shortest closed walk")
print("through the support.  The sum 1 + t + ... + t^n has norm 3n + 1.")
for n in (1, 3, 10):
    f = parse_module_element(" + ".join(f"t^{j}" for j in range(n + 1)))
    show(f"n = {n}", module_norm(f))

print()
print("Words act on the module by conjugation; [a, t] lands on (t - 1) a.")
w = parse_word("[a, t]")
show(str(w), word_to_module(w))

f = parse_module_element("2t + 1 - t^-2")
of = ordered_form(f)
print()
print("The ordered form lists terms in strictly descending order and renders")
print("each one as a conjugated block.")
show(f"terms of {f}", of.terms)
show("rendered word", of.word)
show("round trip", word_to_module(of.word)[0] == f)
