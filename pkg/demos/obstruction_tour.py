"""Dual obstruction spaces and dimension counts for the bundled curves.

    python3 demos/obstruction_tour.py
"""

from tropobstruct import fixtures as F
from tropobstruct.curve_model import genus
from tropobstruct.obstruction_space import dual_obstruction_basis, segment_decomposition
from tropobstruct.moduli_space import superabundance_report


def main():
    print(f"{'curve':<22} {'n':>2} {'g':>2} {'exp':>4} {'act':>4} {'dim H':>6}  segment perps")
    for name in sorted(F.CATALOG):
        if name == "unbalanced":
            continue
        c = F.load(name)
        rep = superabundance_report(c)
        try:
            perps = [list(map(list, s.perp)) for s in segment_decomposition(c).segments]
            h = dual_obstruction_basis(c).dimension
        except Exception as err:  # contracted cycles and the like
            perps, h = type(err).__name__, "-"
        print(f"{name:<22} {c.ambient_rank:>2} {genus(c):>2} {rep.expected_dim:>4} {rep.actual_dim:>4} {h!s:>6}  {perps}")


if __name__ == "__main__":
    main()
