"""Witness evaluation on measured stabilizer expectations.

Expectation values come either from a measurement dataset (per-stabilizer
expectation plus shot count) or from the white-noise model in which every
non-identity stabilizer has expectation p.  Witness variances follow from
treating each stabilizer estimate as an independent binomial variable with
variance (1 - <s>^2) / M; the identity contributes expectation 1 and
variance 0.  Shot counts may differ per record, in which case each summand
carries its own 1/M factor.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

from .binary import PauliOperator, parse_pauli
from .groups import StabilizerGroup, span_paulis
from .witnesses import WitnessKind, WitnessSpec

__all__ = [
    "MeasurementDataset",
    "WernerModel",
    "WitnessValue",
    "IncompleteDataError",
    "eval_standard",
    "eval_alternative",
    "eval_two_measurement",
    "evaluate",
    "fidelity",
    "critical_probability",
    "detection_confidence",
]

DataSource = Union["MeasurementDataset", "WernerModel"]


class IncompleteDataError(ValueError):
    """Dataset lacks records for stabilizers a witness needs."""

    def __init__(self, missing: Sequence[str]):
        self.missing = tuple(missing)
        preview = ", ".join(self.missing[:6])
        suffix = "" if len(self.missing) <= 6 else f" (+{len(self.missing) - 6} more)"
        super().__init__(f"missing stabilizer records: {preview}{suffix}")


@dataclass(frozen=True)
class MeasurementDataset:
    """Measured expectation values keyed by Pauli label.

    ``records`` maps each Pauli text label to (expectation, shots).  The
    identity is always served as expectation 1 with zero variance, whether
    or not a record is present.
    """

    n_qubits: int
    records: dict[str, tuple[float, int]] = field(repr=False)

    def __post_init__(self) -> None:
        for label, (expectation, shots) in self.records.items():
            p = parse_pauli(label)
            if p.n_qubits != self.n_qubits:
                raise ValueError(
                    f"label {label!r} is not on {self.n_qubits} qubits"
                )
            if not -1.0 <= expectation <= 1.0:
                raise ValueError(
                    f"expectation {expectation} of {label!r} outside [-1, 1]"
                )
            if shots <= 0:
                raise ValueError(f"non-positive shot count for {label!r}")

    @classmethod
    def from_pairs(
        cls, n_qubits: int, pairs: dict[str, tuple[float, int]]
    ) -> "MeasurementDataset":
        records = {
            parse_pauli(label).to_text(): (float(e), int(m))
            for label, (e, m) in pairs.items()
        }
        return cls(n_qubits, records)

    @classmethod
    def uniform(
        cls, group: StabilizerGroup, expectation: float, shots: int
    ) -> "MeasurementDataset":
        """Same expectation and shot count for every non-identity element."""
        return cls(
            group.n_qubits,
            {
                e.to_text(): (expectation, shots)
                for e in group.non_identity()
            },
        )

    @classmethod
    def from_csv(cls, text: str) -> "MeasurementDataset":
        """Parse the ``pauli,expectation,shots`` CSV format."""
        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError("empty dataset") from None
        if [h.strip().lower() for h in header] != ["pauli", "expectation", "shots"]:
            raise ValueError(
                "dataset header must be exactly 'pauli,expectation,shots'"
            )
        records: dict[str, tuple[float, int]] = {}
        n_qubits = None
        for line_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise ValueError(f"line {line_no}: expected 3 fields")
            label, expectation, shots = (f.strip() for f in row)
            p = parse_pauli(label)
            if n_qubits is None:
                n_qubits = p.n_qubits
            label = p.to_text()
            if label in records:
                raise ValueError(f"line {line_no}: duplicate label {label}")
            records[label] = (float(expectation), int(shots))
        if n_qubits is None:
            raise ValueError("dataset has no records")
        return cls(n_qubits, records)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["pauli", "expectation", "shots"])
        for label in sorted(self.records):
            e, m = self.records[label]
            writer.writerow([label, f"{e:.12g}", m])
        return out.getvalue()

    def missing(self, paulis: Sequence[PauliOperator]) -> list[str]:
        return sorted(
            {
                p.to_text()
                for p in paulis
                if not p.is_identity and p.to_text() not in self.records
            }
        )

    def expectation_of(self, p: PauliOperator) -> float:
        if p.is_identity:
            return 1.0
        try:
            return self.records[p.to_text()][0]
        except KeyError:
            raise IncompleteDataError([p.to_text()]) from None

    def variance_of(self, p: PauliOperator) -> float:
        """Binomial variance of one stabilizer estimate, (1 - <s>^2) / M."""
        if p.is_identity:
            return 0.0
        try:
            e, shots = self.records[p.to_text()]
        except KeyError:
            raise IncompleteDataError([p.to_text()]) from None
        return (1.0 - e * e) / shots


@dataclass(frozen=True)
class WernerModel:
    """White-noise mixture: every non-identity stabilizer has expectation p."""

    p: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"mixing probability {self.p} outside [0, 1]")

    def expectation_of(self, p: PauliOperator) -> float:
        return 1.0 if p.is_identity else self.p

    def variance_of(self, p: PauliOperator) -> float:
        return 0.0

    def missing(self, paulis: Sequence[PauliOperator]) -> list[str]:
        return []


@dataclass(frozen=True)
class WitnessValue:
    """An evaluated witness: expectation, variance, and the detection flag."""

    expectation: float
    variance: float
    detected: bool

    @property
    def stddev(self) -> float:
        return math.sqrt(self.variance)


def _require_records(data: DataSource, paulis: Sequence[PauliOperator]) -> None:
    missing = data.missing(paulis)
    if missing:
        raise IncompleteDataError(missing)


def _finish(
    expectation: float, variance: float, sigma_threshold: float
) -> WitnessValue:
    detected = expectation + sigma_threshold * math.sqrt(variance) < 0.0
    return WitnessValue(expectation, variance, detected)


def _sorted_span(paulis) -> list[PauliOperator]:
    # canonical summation order keeps results bit-identical across bases
    return sorted(span_paulis(list(paulis)), key=lambda p: (p.z_bits, p.x_bits))


def eval_standard(
    w: WitnessSpec, data: DataSource, sigma_threshold: float = 0.0
) -> WitnessValue:
    """Standard witness value 1/2 - 2^-n * sum of subgroup expectations.

    The sum runs over the full spanned subgroup including the identity.
    Variance adds (1 - <s>^2) / (M_s * 2^(2n)) per non-identity member.
    """
    members = _sorted_span(w.basis)
    _require_records(data, members)
    n = len(w.basis)
    scale = 1.0 / (1 << n)
    total = sum(data.expectation_of(s) for s in members)
    variance = sum(data.variance_of(s) for s in members) * scale * scale
    return _finish(0.5 - scale * total, variance, sigma_threshold)


def eval_alternative(
    w: WitnessSpec, data: DataSource, sigma_threshold: float = 0.0
) -> WitnessValue:
    """Alternative witness value (n-1)/2 - 1/2 * sum over the basis only.

    Variance adds (1 - <s>^2) / (2 * M_s) per basis element.
    """
    basis = list(w.basis)
    _require_records(data, basis)
    n = len(basis)
    total = sum(data.expectation_of(s) for s in basis)
    variance = 0.5 * sum(data.variance_of(s) for s in basis)
    return _finish((n - 1) / 2.0 - 0.5 * total, variance, sigma_threshold)


def eval_two_measurement(
    w: WitnessSpec, data: DataSource, sigma_threshold: float = 0.0
) -> WitnessValue:
    """Two-measurement value 3/2 minus the X-span and Z-span projector sums.

    Each span enters as 2^-a * sum over its 2^a members (identity included);
    variances carry the same squared coefficients.
    """
    if w.x_basis is None or w.z_basis is None:
        raise ValueError("witness carries no X/Z split")
    x_members = (
        _sorted_span(w.x_basis)
        if w.x_basis
        else [PauliOperator.identity(w.n_qubits)]
    )
    z_members = (
        _sorted_span(w.z_basis)
        if w.z_basis
        else [PauliOperator.identity(w.n_qubits)]
    )
    _require_records(data, x_members + z_members)
    x_scale = 1.0 / len(x_members)
    z_scale = 1.0 / len(z_members)
    expectation = (
        1.5
        - x_scale * sum(data.expectation_of(s) for s in x_members)
        - z_scale * sum(data.expectation_of(s) for s in z_members)
    )
    variance = (
        sum(data.variance_of(s) for s in x_members) * x_scale * x_scale
        + sum(data.variance_of(s) for s in z_members) * z_scale * z_scale
    )
    return _finish(expectation, variance, sigma_threshold)


_EVALUATORS = {
    WitnessKind.STANDARD: eval_standard,
    WitnessKind.ALTERNATIVE: eval_alternative,
    WitnessKind.TWO_MEASUREMENT: eval_two_measurement,
}


def evaluate(
    w: WitnessSpec, data: DataSource, sigma_threshold: float = 0.0
) -> WitnessValue:
    """Dispatch to the evaluator matching the witness kind."""
    return _EVALUATORS[w.kind](w, data, sigma_threshold)


def fidelity(group: StabilizerGroup, data: DataSource) -> tuple[float, float]:
    """State fidelity 2^-N * sum over all 2^N stabilizers, with variance."""
    members = sorted(group.elements, key=lambda p: (p.z_bits, p.x_bits))
    _require_records(data, members)
    scale = 1.0 / len(members)
    value = scale * sum(data.expectation_of(s) for s in members)
    variance = scale * scale * sum(data.variance_of(s) for s in members)
    return value, variance


def critical_probability(w: WitnessSpec) -> float:
    """The white-noise mixing probability at which the witness hits zero.

    Every witness kind is affine decreasing in p, so the root follows from
    the values at p = 0 and p = 1 (the latter is -1/2 for all kinds).
    """
    at_zero = evaluate(w, WernerModel(0.0)).expectation
    at_one = evaluate(w, WernerModel(1.0)).expectation
    return at_zero / (at_zero - at_one)


def detection_confidence(v: WitnessValue) -> float:
    """One-sided Gaussian probability (in %) that the true value is below 0."""
    if v.variance == 0.0:
        if v.expectation == 0.0:
            raise ValueError(
                "confidence undefined for zero variance at zero expectation"
            )
        return 100.0 if v.expectation < 0 else 0.0
    t = -v.expectation / v.stddev
    return 50.0 * (1.0 + math.erf(t / math.sqrt(2.0)))
