"""Computing chi over A = k[s, t, x] through the diagonal of A and its copy B.

Run with ``python3 demos/diagonal_walkthrough.py``.
"""

import random

from chiwb import Ideal, build_tensor_model, completed_tor, diagonal_decompose
from chiwb.corpus import diagonal_instance

model = build_tensor_model(("s", "t"), ("x",), ("y",))
A, B = model.left_ring, model.right_ring
I = Ideal(A, ["s", "x"])

for gens in (["t"], ["s", "t"]):
    J = Ideal(B, gens)
    tors = [completed_tor(model, I, J, q) for q in range(3)]
    report = diagonal_decompose(model, I, J)
    print(f"I = {I}, J = {J}")
    print("  Tor ranks over the big ring:", [T.minimal_presentation().rank for T in tors])
    print("  diagonal multiplicities:", report.e_values)
    print("  chi via the diagonal:", report.chi_via_diagonal, " chi in A:", report.chi_direct)

# A few random instances; the two sides must agree exactly.
rng = random.Random("demo")
for base in (0, 2):
    for _ in range(3):
        model, I, J = diagonal_instance(rng, base)
        report = diagonal_decompose(model, I, model.to_right(J))
        print(f"base {base}: e = {report.e_values}, chi = {report.chi_via_diagonal} = {report.chi_direct}")
