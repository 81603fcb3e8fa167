"""Plain report records returned by the high-level operations."""

from dataclasses import dataclass, field
from fractions import Fraction


def plain(value):
    """JSON-friendly rendering: ideals and polynomials become strings."""
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return str(value)


@dataclass
class MultiplicityReport:
    dims: tuple
    tor_lengths: list
    chi: int
    e_values: tuple = None
    classification: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def __post_init__(self):
        alt = sum((-1) ** i * t for i, t in enumerate(self.tor_lengths))
        if alt != self.chi:
            raise ValueError("chi must equal the alternating sum of Tor lengths")
        flags = self.classification
        if flags.get("vanishing_case") and flags.get("positivity_case"):
            raise ValueError("vanishing and positivity cases are mutually exclusive")

    def to_dict(self):
        out = {
            "chi": self.chi,
            "tor_lengths": list(self.tor_lengths),
            "dims": list(self.dims),
            "classification": dict(self.classification),
        }
        if self.e_values is not None:
            out["e_values"] = list(self.e_values)
        if self.witnesses:
            out["witnesses"] = plain(self.witnesses)
        return out


@dataclass
class CompletedTorReport:
    modules: list
    e_values: list
    chi_via_diagonal: int
    chi_direct: int
    tor_lengths: list = field(default_factory=list)

    def to_dict(self):
        return {
            "chi_via_diagonal": self.chi_via_diagonal,
            "chi_direct": self.chi_direct,
            "e_values": list(self.e_values),
            "module_ranks": [m.rank for m in self.modules],
        }


@dataclass
class ChartPoint:
    chart: str
    coordinates: tuple
    local_chi: int

    def to_dict(self):
        return {
            "chart": self.chart,
            "coordinates": [str(c) for c in self.coordinates],
            "local_chi": self.local_chi,
        }


@dataclass
class BlowupIntersectionReport:
    chart_points: list
    total_blowup_chi: int
    fulton_lhs: int = None
    fulton_rhs: int = None
    e_values: tuple = None

    def __post_init__(self):
        if self.total_blowup_chi != sum(p.local_chi for p in self.chart_points):
            raise ValueError("total must equal the sum of local values")

    def to_dict(self):
        out = {
            "chart_points": [p.to_dict() for p in self.chart_points],
            "total_blowup_chi": self.total_blowup_chi,
        }
        if self.fulton_lhs is not None:
            out["fulton_lhs"] = self.fulton_lhs
            out["fulton_rhs"] = self.fulton_rhs
        if self.e_values is not None:
            out["e_values"] = list(self.e_values)
        return out


@dataclass
class CheckReport:
    """Outcome of a checked identity together with the numbers involved."""

    check: str
    holds: bool
    values: dict = field(default_factory=dict)

    def to_dict(self):
        return {"check": self.check, "holds": self.holds, **plain(self.values)}
