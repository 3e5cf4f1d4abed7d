"""
Polarization of the small domain
================================

Once the system relaxes, the smaller domain B can end up with a positive
z-polarization even though the bath is at zero temperature. Sweep the size
of A and watch where the sign changes.
"""

from spindomains import BlockLayout, steady_state
from spindomains.steady_state import negative_temperature_threshold

for n_b in (1, 2):
    print(f"n_b = {n_b}")
    for n_a in range(n_b, 9):
        rep = steady_state(BlockLayout.of(n_a, n_b))
        flag = "  <- inverted" if rep.jz_b > 0 else ""
        print(f"  n_a={n_a:2d}  <Jz_A>={rep.jz_a:+.4f}  <Jz_B>={rep.jz_b:+.4f}{flag}")
    print("  first inverted n_a:", negative_temperature_threshold(n_b))
