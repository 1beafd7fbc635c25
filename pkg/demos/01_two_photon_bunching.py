"""Two identical photons meeting at a balanced beam splitter always bunch.

Feed one photon into each port of a 50/50 splitter and the amplitude for
seeing one photon leave each port cancels exactly: the transmitted-transmitted
and reflected-reflected paths are equal and opposite.  Both photons always
exit together through the same (random) port.

The effect needs the splitter to be balanced.  With an unbalanced splitter
the two paths no longer cancel and the coincidence partially survives; the
script shows both cases.
"""

import math

from mzsim import (BALANCED, BeamSplitterCoeffs, basis_state, bs_unitary,
                   evolve)


def show_output(title, coeffs):
    out = evolve(basis_state((1, 1)), bs_unitary(coeffs, 0, 1, 2))
    print(title)
    print(f"  splitter: t = {coeffs.t:.4f}, r = {coeffs.r:.4f}")
    for occ, amp in out.items():
        print(f"  amplitude for |{occ[0]},{occ[1]}> : "
              f"{amp.real:+.6f}{amp.imag:+.6f}i   "
              f"probability {abs(amp) ** 2:.6f}")
    coincidence = abs(out[(1, 1)]) ** 2
    print(f"  coincidence probability (one photon per port): {coincidence:.6f}")
    print()
    return coincidence


def main():
    print(__doc__)
    show_output("Balanced splitter:", BALANCED)
    show_output("70/30 splitter:", BeamSplitterCoeffs.from_angle(math.radians(33.2)))

    print("The balanced coincidence vanishes because the two ways of getting")
    print("one photon per port interfere destructively:")
    print("  t*t + r*r = 0.5 + (i/sqrt2)^2 = 0.5 - 0.5 = 0")


if __name__ == "__main__":
    main()
