"""
Entanglement left behind by a common bath
=========================================

The steady state is a mixture of coupled-basis ground states of each block.
These are entangled between A and B, which we measure with the logarithmic
negativity of the partial transpose.
"""

from spindomains import BlockLayout, steady_state
from spindomains.entanglement import negativity_closed_form_nb1

best = (0, 0.0)
for n in range(1, 16):
    rep = steady_state(BlockLayout.of(n, 1))
    print(f"N={n:2d}  E_N={rep.negativity:.6f}  (closed form {negativity_closed_form_nb1(n):.6f})"
          f"  S={rep.entropy:.4f}")
    if rep.negativity > best[1]:
        best = (n, rep.negativity)

# a single spin in B gets most entangled with a domain of five
print("maximum at N =", best[0])
