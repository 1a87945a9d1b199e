"""Report containers with bit-stable JSON and CSV serialization.

Every computed quantity leaves the library inside one of these types.
Serialization rules are deliberately rigid so tests can diff outputs
byte-for-byte: integers are written as exact decimal strings, floats via
``repr`` (shortest round-trip), '.' is the only decimal separator, lines
end with LF, and CSV always carries a header row.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Tuple, Union

Number = Union[int, float]

#: bumped whenever any serialized report shape changes
REPORT_SCHEMA_VERSION = 1


def fmt_number(v: Number) -> str:
    """Exact decimal for ints, shortest round-trip repr for floats."""
    if isinstance(v, bool):  # bools are ints in Python; forbid silently odd CSV
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def _csv_escape(s: str) -> str:
    if any(ch in s for ch in ',"\n'):
        return '"' + s.replace('"', '""') + '"'
    return s


def kv_rows_to_csv(rows: Sequence[Tuple[str, Union[Number, str]]]) -> str:
    """Two-column key/value CSV with header, LF endings."""
    buf = io.StringIO()
    buf.write("field,value\n")
    for k, v in rows:
        sval = v if isinstance(v, str) else fmt_number(v)
        buf.write(f"{_csv_escape(k)},{_csv_escape(sval)}\n")
    return buf.getvalue()


def table_to_csv(header: Sequence[str],
                 rows: Sequence[Sequence[Union[Number, str]]]) -> str:
    """General rectangular CSV with header, LF endings."""
    buf = io.StringIO()
    buf.write(",".join(_csv_escape(h) for h in header) + "\n")
    for row in rows:
        cells = [c if isinstance(c, str) else fmt_number(c) for c in row]
        buf.write(",".join(_csv_escape(c) for c in cells) + "\n")
    return buf.getvalue()


def to_json(payload: Mapping) -> str:
    """Canonical JSON: sorted keys, no trailing spaces, LF-terminated."""
    return json.dumps(payload, sort_keys=True, indent=2,
                      separators=(",", ": ")) + "\n"


@dataclass(frozen=True)
class SumReport:
    """A computed sum with its reference envelopes and ratio diagnostics.

    ``values`` holds the exact computed quantities (often integers),
    ``envelopes`` the reference functions evaluated at the same
    parameters, and ``ratios`` value/envelope pairings.  ``params``
    records every input needed to reproduce the run.
    """

    label: str
    params: Dict[str, Number] = field(default_factory=dict)
    values: Dict[str, Number] = field(default_factory=dict)
    envelopes: Dict[str, float] = field(default_factory=dict)
    ratios: Dict[str, float] = field(default_factory=dict)

    def json_dict(self) -> Dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "kind": "sum_report",
            "label": self.label,
            "params": dict(self.params),
            "values": dict(self.values),
            "envelopes": dict(self.envelopes),
            "ratios": dict(self.ratios),
        }

    def to_json(self) -> str:
        return to_json(self.json_dict())

    def to_csv(self) -> str:
        rows: List[Tuple[str, Union[Number, str]]] = [("label", self.label)]
        for group, data in (("param", self.params), ("value", self.values),
                            ("envelope", self.envelopes), ("ratio", self.ratios)):
            for k in data:
                rows.append((f"{group}.{k}", data[k]))
        return kv_rows_to_csv(rows)

    @staticmethod
    def from_json(text: str) -> "SumReport":
        obj = json.loads(text)
        if obj.get("kind") != "sum_report":
            raise ValueError("not a serialized SumReport")
        return SumReport(label=obj["label"], params=obj["params"],
                         values=obj["values"], envelopes=obj["envelopes"],
                         ratios=obj["ratios"])


@dataclass(frozen=True)
class MeanValueReport:
    """Both mean values at one x with every reference envelope and ratio."""

    x: int
    sum_f1: int
    sum_f2: int
    envelopes: Dict[str, float]
    ratios: Dict[str, float]

    def json_dict(self) -> Dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "kind": "mean_value_report",
            "x": self.x,
            "sum_f1": self.sum_f1,
            "sum_f2": self.sum_f2,
            "envelopes": dict(self.envelopes),
            "ratios": dict(self.ratios),
        }

    def to_json(self) -> str:
        return to_json(self.json_dict())

    def to_csv(self) -> str:
        rows: List[Tuple[str, Union[Number, str]]] = [
            ("x", self.x), ("sum_f1", self.sum_f1), ("sum_f2", self.sum_f2)]
        rows += [(f"envelope.{k}", v) for k, v in self.envelopes.items()]
        rows += [(f"ratio.{k}", v) for k, v in self.ratios.items()]
        return kv_rows_to_csv(rows)

    @staticmethod
    def from_json(text: str) -> "MeanValueReport":
        obj = json.loads(text)
        if obj.get("kind") != "mean_value_report":
            raise ValueError("not a serialized MeanValueReport")
        return MeanValueReport(x=obj["x"], sum_f1=obj["sum_f1"],
                               sum_f2=obj["sum_f2"],
                               envelopes=obj["envelopes"], ratios=obj["ratios"])


@dataclass(frozen=True)
class WeightSumReport:
    """Direct and block-decomposed values of the reduction weight sum.

    ``block_table`` rows are (i, j, block_sum, weight): i indexes the
    dyadic a-range 2^i < a <= 2^(i+1), j the l-range likewise, and the
    designated index -1 holds the a = 1 (resp. l = 1) boundary pairs.
    ``weight`` is the display weight 1/(1 + log2(x) - i - j) recorded for
    each block; block sums are full exact terms, so ``dyadic_value`` must
    reproduce ``direct_value`` up to accumulation rounding.
    """

    x: int
    direct_value: float
    dyadic_value: float
    block_table: Tuple[Tuple[int, int, float, float], ...]

    def json_dict(self) -> Dict:
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "kind": "weight_sum_report",
            "x": self.x,
            "direct_value": self.direct_value,
            "dyadic_value": self.dyadic_value,
            "block_table": [list(row) for row in self.block_table],
        }

    def to_json(self) -> str:
        return to_json(self.json_dict())

    def to_csv(self) -> str:
        head = kv_rows_to_csv([
            ("x", self.x),
            ("direct_value", self.direct_value),
            ("dyadic_value", self.dyadic_value),
        ])
        table = table_to_csv(
            ["i", "j", "block_sum", "weight"],
            [list(row) for row in self.block_table],
        )
        return head + table

    @staticmethod
    def from_json(text: str) -> "WeightSumReport":
        obj = json.loads(text)
        if obj.get("kind") != "weight_sum_report":
            raise ValueError("not a serialized WeightSumReport")
        return WeightSumReport(
            x=obj["x"], direct_value=obj["direct_value"],
            dyadic_value=obj["dyadic_value"],
            block_table=tuple(tuple(r) for r in obj["block_table"]))
