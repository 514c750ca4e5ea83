"""Smoothability verdicts across the genus-one space cubics.

Moves the attachment points of the trees hanging off the loop and prints
the path lengths that decide each verdict.

    python3 demos/cubic_family.py
"""

from tropobstruct import fixtures as F
from tropobstruct.curve_model import validate_curve
from tropobstruct.well_spacedness import smoothability_verdict


def show(label, curve):
    v = smoothability_verdict(curve)
    print(f"{label:<28} {v.verdict.value:<15} {v.rule.value}")
    if v.failed_hypothesis:
        print(f"{'':<28} outside scope: assumption {v.failed_hypothesis} fails")
    for w in v.witnesses:
        if not hasattr(w, "entries"):
            continue
        values = ", ".join(f"{e.attachment}={e.value}" for e in w.entries)
        print(f"{'':<28} lengths {values}; branch {w.branch.value}")


def main():
    for name in ("cubic", "cubicnon_a", "cubicnon_b", "cubicweight2", "cubicmove_b_ii", "cubic_weight"):
        show(name, F.load(name))
    print()
    print("sliding the C tree along its edge:")
    for tC in (1, 2, 3):  # at tC = 1 two tree edges overlap
        show(f"cubic(tA=1, tB=1, tC={tC})", validate_curve(F.cubic(1, 1, tC)))
    print("breaking the A/B tie:")
    for tA in (1, 2):
        show(f"cubic(tA={tA}, tB=1, tC=2)", validate_curve(F.cubic(tA, 1, 2)))


if __name__ == "__main__":
    main()
