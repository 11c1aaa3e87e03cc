"""Measurement histograms and their CSV form."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IoError


@dataclass
class MeasurementHistogram:
    shots: int
    counts: dict[str, int]

    def __post_init__(self):
        total = sum(self.counts.values())
        if total != self.shots:
            raise ValueError(f"counts sum {total} != shots {self.shots}")

    def probabilities(self) -> dict[str, float]:
        return {k: v / self.shots for k, v in self.counts.items()}


def tv_distance(a: MeasurementHistogram, b: MeasurementHistogram) -> float:
    """Total variation distance: half the L1 gap between outcome frequencies."""
    pa, pb = a.probabilities(), b.probabilities()
    keys = set(pa) | set(pb)
    return 0.5 * sum(abs(pa.get(k, 0.0) - pb.get(k, 0.0)) for k in keys)


def histogram_csv(h: MeasurementHistogram) -> str:
    """outcome,count rows; outcomes are bitstrings with qubit 0 rightmost,
    sorted lexicographically."""
    lines = ["outcome,count"]
    for key in sorted(h.counts):
        lines.append(f"{key},{h.counts[key]}")
    return "\n".join(lines) + "\n"


def parse_histogram_csv(text: str) -> MeasurementHistogram:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "outcome,count":
        raise IoError("histogram CSV must start with 'outcome,count'")
    counts: dict[str, int] = {}
    for ln in lines[1:]:
        key, _, val = ln.partition(",")
        counts[key] = int(val)
    return MeasurementHistogram(shots=sum(counts.values()), counts=counts)
