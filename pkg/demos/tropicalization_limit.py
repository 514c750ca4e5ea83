"""Two pre-log paths whose leading terms cancel, viewed at growing modulus.

The tropical length gap between the paths is log c / log tau, so it
closes as tau grows while the exact leading coefficients keep ratio c.

    python3 demos/tropicalization_limit.py
"""

import math
from fractions import Fraction

from tropobstruct.kuranishi_leading import cancellation_pair, leading_contribution, tropical_path_length


def main():
    c = Fraction(7, 3)
    for k in (1, 2, 3, 6, 9, 12):
        tau = 10 ** k
        P, Q = cancellation_pair(tau, c)
        gap = tropical_path_length(P, tau) - tropical_path_length(Q, tau)
        ratio = leading_contribution(P).coefficient / leading_contribution(Q).coefficient
        print(f"tau=1e{k:<3} gap={gap:.3e}  log c/log tau={math.log(c) / math.log(tau):.3e}  coefficient ratio={ratio}")


if __name__ == "__main__":
    main()
