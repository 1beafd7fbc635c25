"""Executable experiments: fringe scans, engineered inputs, classification.

A scan sweeps one delay parameter over [0, 4*pi), long enough to show two
periods even at half frequency, and fits the resulting probabilities to
a + b cos(f phi + c) with f drawn from a small candidate set.  The fitted
visibility b/a then classifies the configuration as showing fringes or not,
which is the qualitative content of the multi-stage scenario table.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, braced, compile
from .errors import (CircuitError, DegenerateStateError,
                     DimensionMismatchError, UnclassifiableScanError)
from .fock import FockState, basis_state, embed
from .measurement import DetectionPattern, pattern_probability
from .optics import BALANCED, bs_unitary, evolve

FREQUENCY_CANDIDATES = (0.5, 1.0, 2.0, 3.0)
FRINGE_VISIBILITY = 0.9
FLAT_VISIBILITY = 0.01
RESIDUAL_LIMIT = 1e-6


@dataclass(frozen=True)
class FringeScan:
    """One swept-parameter scan together with its cosine fit."""

    parameter: str
    samples: tuple[tuple[float, float], ...]
    mean: float
    amplitude: float
    spatial_frequency: float
    phase_offset: float
    visibility: float
    residual: float

    def classify(self) -> str:
        if self.visibility > FRINGE_VISIBILITY:
            return "fringes"
        if self.visibility < FLAT_VISIBILITY:
            return "flat"
        return "ambiguous"

    def to_json(self) -> dict:
        return {"parameter": self.parameter,
                "samples": [[p, v] for p, v in self.samples],
                "fit": {"mean": self.mean,
                        "amplitude": self.amplitude,
                        "spatial_frequency": self.spatial_frequency,
                        "phase_offset": self.phase_offset,
                        "visibility": self.visibility,
                        "residual": self.residual}}

    def to_csv(self) -> str:
        lines = ["phase,probability"]
        lines += [f"{p!r},{v!r}" for p, v in self.samples]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ScenarioReport:
    """Outcome of one configuration in the scenario classification."""

    scenario: str
    toggles: tuple[str, ...]
    pattern: DetectionPattern
    scan: FringeScan
    classification: str
    which_path_available: bool

    def to_json(self) -> dict:
        return {"scenario": self.scenario,
                "toggles": list(self.toggles),
                "pattern": {"counts": dict(self.pattern.counts),
                            "exclusive": self.pattern.exclusive},
                "scan": self.scan.to_json(),
                "classification": self.classification,
                "which_path_available": self.which_path_available}

    def to_json_str(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _fit_samples(parameter: str, phis: np.ndarray,
                 vals: np.ndarray) -> FringeScan:
    best = None
    for f in FREQUENCY_CANDIDATES:
        design = np.stack([np.ones_like(phis),
                           np.cos(f * phis), np.sin(f * phis)], axis=1)
        coef, *_ = np.linalg.lstsq(design, vals, rcond=None)
        resid = float(np.sqrt(np.mean((design @ coef - vals) ** 2)))
        if best is None or resid < best[0]:
            best = (resid, f, coef)
    resid, f, (a, bc, bs) = best
    if resid > RESIDUAL_LIMIT:
        raise UnclassifiableScanError(
            f"scan of {parameter} does not fit any candidate frequency "
            f"{FREQUENCY_CANDIDATES}; rms residual {resid:.3e}")
    amplitude = math.hypot(bc, bs)
    visibility = amplitude / a if a > 1e-12 else 0.0
    return FringeScan(parameter=parameter,
                      samples=tuple((float(p), float(v))
                                    for p, v in zip(phis, vals)),
                      mean=float(a), amplitude=float(amplitude),
                      spatial_frequency=float(f),
                      phase_offset=float(math.atan2(-bs, bc)),
                      visibility=float(visibility), residual=resid)


def _scan_values(circuit: Circuit, toggles, input_state: FockState,
                 patterns, swept: str, fixed, n_samples: int):
    """Evolve once per sample and read every pattern off the same output."""
    if n_samples < 64:
        raise ValueError("a scan needs at least 64 samples")
    if swept not in circuit.parameters:
        raise CircuitError(f"cannot sweep unknown parameter {swept!r}")
    phis = np.linspace(0.0, 4 * math.pi, n_samples, endpoint=False)
    rows = [np.empty(n_samples) for _ in patterns]
    for i, phi in enumerate(phis):
        phases = dict(fixed)
        phases[swept] = float(phi)
        out = evolve(input_state, compile(circuit, phases, toggles))
        for row, pattern in zip(rows, patterns):
            row[i] = pattern_probability(out, pattern, circuit.detectors)
    return phis, rows


def run_scan(circuit: Circuit, toggles, input_state: FockState,
             pattern: DetectionPattern, swept: str, fixed,
             n_samples: int = 256) -> FringeScan:
    """Sweep one delay, collect the pattern probability, fit the fringe."""
    phis, rows = _scan_values(circuit, toggles, input_state, [pattern],
                              swept, fixed, n_samples)
    return _fit_samples(swept, phis, rows[0])


def run_projection_scan(circuit: Circuit, toggles, input_state: FockState,
                        projector: FockState, swept: str, fixed,
                        n_samples: int = 256) -> FringeScan:
    """Like run_scan but against |<projector|psi>|^2 for a superposition."""
    from .fock import inner_product
    if n_samples < 64:
        raise ValueError("a scan needs at least 64 samples")
    if swept not in circuit.parameters:
        raise CircuitError(f"cannot sweep unknown parameter {swept!r}")
    phis = np.linspace(0.0, 4 * math.pi, n_samples, endpoint=False)
    vals = np.empty(n_samples)
    for i, phi in enumerate(phis):
        phases = dict(fixed)
        phases[swept] = float(phi)
        out = evolve(input_state, compile(circuit, phases, toggles))
        vals[i] = abs(inner_product(projector, out)) ** 2
    return _fit_samples(swept, phis, vals)


# ---------------------------------------------------------------------------
# engineered inputs


def engineered_input(target_after_bs1: FockState) -> FockState:
    """Two-mode input whose image under the first splitter is the target.

    Computed by running the target backwards through the balanced input
    splitter, so feeding the result forward reproduces the target exactly.
    """
    if target_after_bs1.mode_count != 2:
        raise DimensionMismatchError(
            "target must live on the two arm modes right after the "
            f"input splitter, got {target_after_bs1.mode_count} modes")
    if abs(target_after_bs1.norm() - 1.0) > 1e-6:
        raise DegenerateStateError("target state must be normalized")
    inverse = bs_unitary(BALANCED, 0, 1, 2).conj().T
    return evolve(target_after_bs1, inverse)


def noon_target(n: int) -> FockState:
    """(|n,0> + |0,n>)/sqrt(2): all photons together on one arm or the other."""
    if n < 1:
        raise ValueError("need at least one photon")
    amp = 1 / math.sqrt(2)
    return basis_state((n, 0)) * amp + basis_state((0, n)) * amp


def one_photon_each_input(circuit: Circuit) -> FockState:
    """|1,1> on the two input modes, vacuum elsewhere."""
    return embed(basis_state((1, 1)), circuit.mode_count, (0, 1))


# ---------------------------------------------------------------------------
# headline scenarios


def run_triple(circuit: Circuit, toggles, phases) -> float:
    """Three-photon coincidence: outermost tap, inner tap, first outer port.

    The input is the engineered three-photon state that the first splitter
    maps onto (|3,0> + |0,3>)/sqrt(2) on the arms.
    """
    state = embed(engineered_input(noon_target(3)), circuit.mode_count, (0, 1))
    out = evolve(state, compile(circuit, phases, toggles))
    pattern = DetectionPattern({"D6p": 1, "D6": 1, "D10": 1})
    return pattern_probability(out, pattern, circuit.detectors)


def delayed_choice_variant(circuit: Circuit, element_name: str) -> Circuit:
    """Move one element to the end of the pipeline, modes permitting.

    When the element shares no modes with anything downstream of it, the
    compiled unitary is unchanged: deciding late is the same as deciding
    early.  That reordering is the simulation-level content of performing
    the erasure choice after the other photon has already left.
    """
    chosen = circuit.element(element_name)
    rest = tuple(e for e in circuit.elements if e.name != element_name)
    return Circuit(circuit.mode_count, rest + (chosen,), dict(circuit.detectors),
                   frozenset(circuit.toggles))


def classify_table1(n: int) -> list[ScenarioReport]:
    """Classify fringe visibility across stage configurations for n photons.

    Three toggle configurations are examined: every tap stage erasing,
    the innermost stage distinguishing, and the outer stages cooperating
    while the innermost stage stays distinguishing and unobserved.  Each is
    scanned at every coincidence order against the outer-arm delay, whose
    effect survives only in full-order exclusive coincidences.
    """
    if not 3 <= n <= 5:
        raise ValueError("supported photon numbers are 3 to 5")
    circuit = braced(n)
    state = embed(engineered_input(noon_target(n)), circuit.mode_count, (0, 1))
    primes = ["p" * k for k in range(n - 2, 0, -1)]
    tap_detectors = [f"D6{s}" for s in primes] + ["D6"]
    all_on = tuple(sorted(circuit.toggles))
    inner_off = tuple(t for t in all_on if t != "BS2")
    fixed = {p: 0.0 for p in circuit.parameters}

    configs = (("all-erased", all_on, tap_detectors, False),
               ("innermost-distinguishing", inner_off, tap_detectors, True),
               ("cooperating-outer-stages", inner_off, tap_detectors[:-1], True))
    reports = []
    for config_id, toggles, dets, which_path in configs:
        patterns, orders = [], []
        for k in range(1, len(dets) + 1):
            patterns.append(DetectionPattern({d: 1 for d in dets[:k]},
                                             exclusive=False))
            orders.append(k)
        patterns.append(DetectionPattern(
            {d: 1 for d in dets} | {"D10": n - len(dets)}))
        orders.append(n)
        phis, rows = _scan_values(circuit, toggles, state, patterns,
                                  "phi_B", fixed, 64)
        for pattern, vals, order in zip(patterns, rows, orders):
            scan = _fit_samples("phi_B", phis, vals)
            reports.append(ScenarioReport(
                scenario=f"photons-{n}/{config_id}/order-{order}",
                toggles=tuple(toggles), pattern=pattern, scan=scan,
                classification=scan.classify(),
                which_path_available=which_path))
    return reports
