"""Plain-data records for reports, and JSON / CSV / markdown rendering."""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable, Sequence

from .ambiguity import AmbiguityReport
from .classify import BirClassification
from .cones import ChamberDecomposition, Wall

INT64_MAX = 2**63 - 1


def wide_ints(obj: Any) -> Any:
    """Replace integers outside the signed 64-bit range by decimal strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > INT64_MAX else obj
    if isinstance(obj, dict):
        return {k: wide_ints(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [wide_ints(v) for v in obj]
    return obj


def _one_or_many(values: Sequence[Any] | None) -> Any:
    if not values:
        return None
    return values[0] if len(values) == 1 else list(values)


def wall_record(w: Wall) -> dict:
    return {
        "alpha": w.source.alpha,
        "rho": w.source.rho,
        "X": w.witness.x,
        "Y": w.witness.y,
        "ray": [w.ray.x, w.ray.y],
    }


def classification_record(c: BirClassification) -> dict:
    return {
        "n": c.n,
        "t": c.t,
        "group": c.group,
        "aut": c.aut_group,
        "case_jk": list(c.case_jk) if c.case_jk else None,
        "symplectic": _one_or_many(c.symplectic),
        "nu": [c.nu.x, c.nu.y] if c.nu is not None else None,
        "invariant": _one_or_many(c.invariant_descriptor),
        "chambers": c.chambers,
        "walls": [wall_record(w) for w in c.walls],
        "irregular": c.irregular,
        "biregular": c.biregular,
        "regularizable": c.regularizable,
        "not_hilbert_model": c.not_hilbert_model,
    }


def decomposition_record(d: ChamberDecomposition) -> dict:
    return {
        "n": d.params.n,
        "t": d.params.t,
        "boundary": d.boundary,
        "extremal_low": list(d.extremal_low),
        "extremal_high": list(d.extremal_high),
        "upper_slope": [d.upper_slope.numerator, d.upper_slope.denominator],
        "chambers": d.chamber_count,
        "walls": [wall_record(w) for w in d.walls],
    }


def ambiguity_record(n: int, t: int, a: AmbiguityReport) -> dict:
    lab = a.partner_label
    return {
        "n": n,
        "t": t,
        "exists_noninduced_map": a.exists_noninduced_map,
        "partner_isomorphic": a.partner_isomorphic_to_S,
        "fm_partner_count": a.fm_partner_count,
        "partner_label": {"p": lab.p, "q": lab.q, "r": lab.r, "s": lab.s} if lab else None,
        "partner": f"M_S({lab.s}, H, {lab.r})" if lab else None,
        "map_biregular": a.map_biregular,
    }


# -- rendering -----------------------------------------------------------------


def to_json(payload: Any) -> str:
    return json.dumps(wide_ints(payload), ensure_ascii=False, indent=2) + "\n"


def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(wide_ints(v), ensure_ascii=False, separators=(",", ":"))
    return str(v)


def to_csv(rows: Iterable[dict]) -> str:
    rows = list(rows)
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: _cell(v) for k, v in r.items()})
    return buf.getvalue()


def to_markdown(rows: Iterable[dict], headers: Sequence[str] | None = None) -> str:
    rows = list(rows)
    if not rows:
        return ""
    keys = list(rows[0])
    heads = list(headers) if headers is not None else keys
    lines = ["| " + " | ".join(heads) + " |", "|" + "|".join("---" for _ in heads) + "|"]
    for r in rows:
        lines.append("| " + " | ".join(_cell(r[k]) for k in keys) + " |")
    return "\n".join(lines) + "\n"
