"""A two-photon input state that no delay in the network can make interfere.

Running a target state backwards through the input splitter gives the input
that produces it.  Here the target is both photons together in the upper
arm, |2,0>; the required input is the three-term superposition

    (1/2) |2,0> - (1/2) |0,2> - (i/sqrt2) |1,1>

Feeding that into the closed fig2 layout gives an output whose squared
amplitudes carry no phase dependence at all: both photons travel the same
arm, so no relative arm phase is ever picked up, and every scan of every
coincidence is flat even though the amplitudes themselves are nontrivial.
"""

from mzsim import (BALANCED, DetectionPattern, basis_state, bs_unitary, compile,
                   embed, engineered_input, evolve, preset, run_scan)

PATTERNS = ({"D6": 2}, {"D7": 2}, {"D6": 1, "D7": 1},
            {"D10": 2}, {"D11": 2}, {"D10": 1, "D11": 1},
            {"D6": 1, "D10": 1}, {"D7": 1, "D11": 1})


def main():
    print(__doc__)
    pair = engineered_input(basis_state((2, 0)))
    print("Engineered input amplitudes:")
    for occ, amp in pair.items():
        print(f"  |{occ[0]},{occ[1]}> : {amp.real:+.6f}{amp.imag:+.6f}i")
    forward = evolve(pair, bs_unitary(BALANCED, 0, 1, 2))
    print("After the input splitter:")
    for occ, amp in forward.items():
        print(f"  |{occ[0]},{occ[1]}> : {amp.real:+.6f}{amp.imag:+.6f}i")
    print()

    circuit = preset("fig2")
    state = embed(pair, circuit.mode_count, (0, 1))
    zero = {p: 0.0 for p in circuit.parameters}
    out = evolve(state, compile(circuit, zero, ("BS2",)))
    print("Output through the closed layout at zero delays:")
    for occ, amp in out.items():
        hits = ",".join(f"{n} at mode {m}" for m, n in enumerate(occ) if n)
        print(f"  {hits:<26s} amplitude {amp.real:+.4f}{amp.imag:+.4f}i"
              f"   probability {abs(amp) ** 2:.4f}")
    print()

    print("Scan visibilities (rows: coincidence pattern, columns: swept delay):")
    header = "".join(f"{p:>10s}" for p in circuit.parameters)
    print(f"  {'pattern':<16s}{header}")
    for counts in PATTERNS:
        pattern = DetectionPattern(counts)
        cells = []
        for swept in circuit.parameters:
            fixed = {p: 0.3 for p in circuit.parameters if p != swept}
            scan = run_scan(circuit, ("BS2",), state, pattern, swept, fixed,
                            n_samples=64)
            cells.append(f"{scan.visibility:>10.1e}")
        print(f"  {pattern.describe():<16s}" + "".join(cells))
    print()
    print("Every visibility is at numerical zero: the engineered pair shows")
    print("no fringes against any delay, in any coincidence.")


if __name__ == "__main__":
    main()
