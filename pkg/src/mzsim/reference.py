"""Hand-derived closed forms for the shipped layouts.

Everything here is computed from the beam splitter input-output relations by
ordinary algebra, with no use of the numeric evolution engine, so these
expressions serve as an independent reference for tests and the built-in
verification suite.  Helpers returning states build them on the standard
12-mode layout (inputs 0,1; inner detectors 6,7; outer detectors 10,11).

Conventions: the two tap splitters carry amplitudes (t1, r1), the inner
splitters of each arm are balanced with transmission 1/sqrt(2) and
reflection i/sqrt(2), and the arm delays are phi_c (common, upper arm before
the taps), phi_b (upper arm after the taps) and, when the taps are
recombined on a closing splitter, phi_s on the lower tap path.
"""

from __future__ import annotations

import cmath
import math

from .fock import FockState

_SQRT2 = math.sqrt(2.0)


def hom_pair_output() -> FockState:
    """|1,1> through a balanced splitter: photons bunch, (i/sqrt2)(|2,0>+|0,2>)."""
    return FockState({(2, 0): 1j / _SQRT2, (0, 2): 1j / _SQRT2})


# ---------------------------------------------------------------------------
# single-photon row coefficients (creation operator maps)


def rows_monitored_taps(t1: complex, r1: complex, phi_c: float,
                        phi_b: float) -> tuple[dict, dict]:
    """Output-mode coefficients for each input mode, taps wired to detectors.

    Returns (row for input 0, row for input 1), each a map output mode ->
    coefficient of the corresponding creation operator.
    """
    tt, rr = 1 / _SQRT2, 1j / _SQRT2
    ec = cmath.exp(1j * phi_c)
    eb = cmath.exp(1j * phi_b)
    row0 = {6: r1 * rr,
            7: r1 * tt * ec,
            10: t1 * (tt * tt * ec + rr * rr * eb),
            11: t1 * tt * rr * (ec + eb)}
    row1 = {6: r1 * tt,
            7: r1 * rr * ec,
            10: t1 * tt * rr * (ec + eb),
            11: t1 * (tt * tt * eb + rr * rr * ec)}
    return row0, row1


def rows_erased_taps(t1: complex, r1: complex, phi_c: float, phi_b: float,
                     phi_s: float) -> tuple[dict, dict]:
    """Row coefficients when the tap outputs recombine on a closing splitter."""
    tt, rr = 1 / _SQRT2, 1j / _SQRT2
    ec = cmath.exp(1j * phi_c)
    eb = cmath.exp(1j * phi_b)
    es = cmath.exp(1j * phi_s)
    row0 = {6: r1 * tt * rr * (ec + es),
            7: r1 * (tt * tt * ec + rr * rr * es),
            10: t1 * (tt * tt * ec + rr * rr * eb),
            11: t1 * tt * rr * (ec + eb)}
    row1 = {6: r1 * (tt * tt * es + rr * rr * ec),
            7: r1 * tt * rr * (ec + es),
            10: t1 * tt * rr * (ec + eb),
            11: t1 * (tt * tt * eb + rr * rr * ec)}
    return row0, row1


def _pair_state(row0: dict, row1: dict) -> FockState:
    """Two-photon output of one photon per input, from the row maps."""
    amps: dict[tuple, complex] = {}
    modes = sorted(set(row0) | set(row1))
    for i, m in enumerate(modes):
        a, b = row0.get(m, 0j), row1.get(m, 0j)
        occ = [0] * 12
        occ[m] = 2
        amps[tuple(occ)] = _SQRT2 * a * b
        for n in modes[i + 1:]:
            occ = [0] * 12
            occ[m] = 1
            occ[n] = 1
            amps[tuple(occ)] = row0.get(m, 0j) * row1.get(n, 0j) \
                + row0.get(n, 0j) * row1.get(m, 0j)
    return FockState(amps, 12)


def pair_output_monitored(t1: complex, r1: complex, phi_c: float,
                          phi_b: float) -> FockState:
    """Full two-photon output state with taps wired straight to detectors."""
    return _pair_state(*rows_monitored_taps(t1, r1, phi_c, phi_b))


def pair_output_erased(t1: complex, r1: complex, phi_c: float, phi_b: float,
                       phi_s: float) -> FockState:
    """Full two-photon output state with the tap paths recombined."""
    return _pair_state(*rows_erased_taps(t1, r1, phi_c, phi_b, phi_s))


# ---------------------------------------------------------------------------
# coincidence and projection probabilities, one photon per input


def outer_coincidence(t1: complex, phi_c: float, phi_b: float) -> float:
    """P(one photon at each outer detector); same for both tap wirings."""
    return abs(t1) ** 4 * math.cos(phi_b - phi_c) ** 2


def cross_coincidence_monitored(t1: complex, r1: complex) -> float:
    """P(inner & outer detector coincidence), flat: a tap click marks the path."""
    return abs(t1 * r1) ** 2 / 2


def eraser_projector() -> FockState:
    """Superposition of the two tap-side kets whose projection revives fringes."""
    amps = {}
    occ = [0] * 12
    occ[6] = occ[10] = 1
    amps[tuple(occ)] = 1 / _SQRT2
    occ = [0] * 12
    occ[7] = occ[10] = 1
    amps[tuple(occ)] = -1j / _SQRT2
    return FockState(amps, 12)


def eraser_projection(t1: complex, r1: complex, phi_c: float,
                      phi_b: float) -> float:
    """Probability of the fringe-reviving projection on the monitored layout."""
    return abs(t1 * r1) ** 2 * math.cos((phi_b - 2 * phi_c) / 2) ** 2


def inner_coincidence_erased(r1: complex, phi_c: float, phi_s: float) -> float:
    """P(both inner detectors fire) once the tap paths recombine."""
    return abs(r1) ** 4 * math.cos(phi_s - phi_c) ** 2


def cross_coincidence_erased(t1: complex, r1: complex, phi_c: float,
                             phi_b: float, phi_s: float) -> float:
    """P(inner & outer coincidence) with erased path marks: halved frequency."""
    return abs(t1 * r1) ** 2 * math.cos((phi_b + phi_s - 2 * phi_c) / 2) ** 2


def triple_coincidence(t1: complex, r1: complex, t1p: complex, r1p: complex,
                       phi_c: float, phi_b: float, phi_s: float,
                       phi_sp: float) -> float:
    """P(outermost tap & inner tap & first outer detector) for the 3-photon stack."""
    k2 = abs(t1 * t1p * t1p * r1 * r1p) ** 2
    return 0.75 * k2 * (1 + math.sin(3 * phi_c - phi_b - phi_s - phi_sp))


# ---------------------------------------------------------------------------
# reduced state over the outer detector modes


def reduced_outer_entries(t1: complex, r1: complex, phi_c: float,
                          phi_b: float) -> dict:
    """Reduced density matrix over modes (10, 11) after tracing the tap modes.

    Identical for both tap wirings.  Keys are (ket, bra) occupation pairs on
    the two surviving modes.  The two-photon block is the rank-1 square of
    w = |t1|^2 (s/sqrt2, -c, -s/sqrt2) over [(2,0), (1,1), (0,2)], so it
    carries off-diagonal entries alongside the familiar diagonal weights.
    """
    s = math.sin(phi_b - phi_c)
    c = math.cos(phi_b - phi_c)
    t2 = abs(t1) ** 2
    entries = {((0, 0), (0, 0)): complex(abs(r1) ** 4),
               ((1, 0), (1, 0)): complex(abs(t1 * r1) ** 2),
               ((0, 1), (0, 1)): complex(abs(t1 * r1) ** 2)}
    kets = [(2, 0), (1, 1), (0, 2)]
    w = [t2 * s / _SQRT2, -t2 * c, -t2 * s / _SQRT2]
    for i, ki in enumerate(kets):
        for j, kj in enumerate(kets):
            entries[(ki, kj)] = complex(w[i] * w[j])
    return entries


def reduced_outer_diagonal(t1: complex, r1: complex, phi_c: float,
                           phi_b: float) -> dict:
    """The five-weight diagonal mixture of the reduced outer-mode state."""
    s2 = math.sin(phi_b - phi_c) ** 2
    c2 = math.cos(phi_b - phi_c) ** 2
    t4 = abs(t1) ** 4
    tr2 = abs(t1 * r1) ** 2
    return {(2, 0): t4 * s2 / 2,
            (0, 2): t4 * s2 / 2,
            (1, 1): t4 * c2,
            (0, 0): abs(r1) ** 4,
            (1, 0): tr2,
            (0, 1): tr2}


def outer_singles_rate(t1: complex, r1: complex) -> float:
    """Mean count at one outer detector; carries no phase dependence at all."""
    return abs(t1) ** 4 + abs(t1 * r1) ** 2


# ---------------------------------------------------------------------------
# engineered inputs and their outputs


def engineered_pair_input() -> FockState:
    """Two-photon input that exits the first splitter entirely in the upper arm."""
    return FockState({(2, 0): 0.5, (0, 2): -0.5, (1, 1): -1j / _SQRT2})


def engineered_noon3_input() -> FockState:
    """Three-photon input that the first splitter turns into (|3,0>+|0,3>)/sqrt2."""
    g = (1 + 1j) / 4
    r3 = math.sqrt(3.0)
    return FockState({(3, 0): g, (0, 3): g, (2, 1): -r3 * g, (1, 2): -r3 * g})


def noon3_target() -> FockState:
    """The balanced three-photon superposition of all-upper and all-lower."""
    return FockState({(3, 0): 1 / _SQRT2, (0, 3): 1 / _SQRT2})


def engineered_pair_output(t1: complex, r1: complex) -> FockState:
    """Output of the engineered pair through the erased layout at zero phases.

    Every squared amplitude is independent of all three delays, so no scan
    of this configuration shows fringes; this zero-phase state fixes the
    amplitudes themselves.
    """
    amps = {}

    def put(occ_map, value):
        occ = [0] * 12
        for m, k in occ_map.items():
            occ[m] = k
        amps[tuple(occ)] = value

    put({6: 2}, -r1 * r1 / 2)
    put({7: 2}, r1 * r1 / 2)
    put({6: 1, 7: 1}, 1j * r1 * r1 / _SQRT2)
    put({10: 2}, t1 * t1 / 2)
    put({11: 2}, -t1 * t1 / 2)
    put({10: 1, 11: 1}, 1j * t1 * t1 / _SQRT2)
    put({6: 1, 10: 1}, 1j * t1 * r1 / _SQRT2)
    put({6: 1, 11: 1}, -t1 * r1 / _SQRT2)
    put({7: 1, 10: 1}, t1 * r1 / _SQRT2)
    put({7: 1, 11: 1}, 1j * t1 * r1 / _SQRT2)
    return FockState(amps, 12)
