"""
Checking the reduced equations against a full Lindblad solve
============================================================

The library integrates closed equations for the coupled-basis density
matrix. Here we compare against the brute-force route, which builds the
Liouvillian superoperator on the product space and exponentiates it.
"""

import numpy as np

from spindomains import BlockLayout, EvolutionParams, initial_state, integrate
from spindomains.oracle import build_liouvillian, evolve_oracle_many
from spindomains.state_space import to_tensor_product

n_a, n_b = 4, 2
rho0 = initial_state(BlockLayout.of(n_a, n_b))
lv = build_liouvillian(n_a, n_b)
print("Liouvillian shape:", lv.matrix.shape, " trace residual:", lv.trace_residual())

times = [0.1, 0.5, 1.0, 5.0]
reference = evolve_oracle_many(lv, to_tensor_product(rho0), times)
for t, ref in zip(times, reference):
    rk4 = integrate(rho0, EvolutionParams(t_end=t, sample_every=10**6)).final
    print(f"t~={t:3.1f}  ||rk4 - expm||_F = {np.linalg.norm(to_tensor_product(rk4).data - ref.data):.2e}")
