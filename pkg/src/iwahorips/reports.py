"""Report emission: JSON schemas and delimited tables.

Serialized forms (stable field order, lexicographic term order):
  scalar   {p, valuation, unit, precision}  (+ {degree, coords} over L)
  series   {p, precision, truncation, variables, terms, truncated}
  matrix   {n, tag, entries}   (row-major scalars)
  vector   series schema + {character: {c: [...]}, n}
"""

from __future__ import annotations

import json

from .actions import Character, PSVector
from .padic import INF, PadicScalar
from .series import TateSeries


def ps_vector_to_json(f: PSVector) -> dict:
    out = f.series.to_json()
    out["character"] = {"c": [c.to_json() for c in f.character.c]}
    out["n"] = f.n
    return out


def ps_vector_from_json(obj: dict) -> PSVector:
    series = TateSeries.from_json(obj)
    c = tuple(PadicScalar.from_json(x) for x in obj["character"]["c"])
    chi = Character(c, series.p, obj.get("e", 1))
    return PSVector(series, chi, int(obj["n"]))


def dump_json(obj, path=None) -> str:
    text = json.dumps(_sanitize(obj), indent=2, sort_keys=False, allow_nan=False)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def _sanitize(x):
    """Strict-JSON form: infinities become the string "inf", fractions a
    {num, den} object, objects their to_json dictionaries."""
    if isinstance(x, dict):
        return {k: _sanitize(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_sanitize(v) for v in x]
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, float) and x == INF:
        return "inf"
    if isinstance(x, (int, float, str)):
        return x
    if hasattr(x, "to_json"):
        return _sanitize(x.to_json())
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return {"num": x.numerator, "den": x.denominator}
    raise TypeError("cannot serialize %r" % type(x))


def tsv_table(headers, rows) -> str:
    lines = ["\t".join(str(h) for h in headers)]
    for row in rows:
        lines.append("\t".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


def margins_table(report: dict) -> str:
    rows = []
    for i, m in enumerate(report["margins"], start=1):
        rows.append((i, "inf" if m == INF else m, "ok" if m == INF or m > 0 else "violated"))
    return tsv_table(("component", "margin_over_bound", "status"), rows)


def decay_table(report: dict) -> str:
    rows = [(deg, val) for deg, val in report["per_degree_min_valuation"].items()]
    return tsv_table(("degree", "min_valuation"), rows)


def violations_table(verdict) -> str:
    rows = []
    for root, value, m in verdict.violations:
        rows.append(("(%d,%d)" % root, repr(value), m))
    if not rows:
        rows.append(("-", "-", "-"))
    return tsv_table(("root", "value", "integer_to_precision"), rows)


def weight_rank_table(report: dict) -> str:
    rows = []
    for w in report["weights"]:
        rows.append(
            (
                ",".join(str(x) for x in w["offset"]),
                w["dim_kostant"],
                w["monomial_count"],
                w["reached_rank"],
                "yes" if w["complete"] else "no",
                w["certified_digits"] if w["certified_digits"] is not None else "-",
            )
        )
    return tsv_table(
        ("offset", "kostant", "monomials", "rank", "complete", "certified_digits"), rows
    )


def weight_rank_json(report: dict, verdict) -> dict:
    return {
        "weights": [
            {
                "xi": [v.to_json() for v in w["weight"].values],
                "offset": list(w["offset"]),
                "kostant": w["dim_kostant"],
                "monomials": w["monomial_count"],
                "rank": w["reached_rank"],
                "complete": w["complete"],
                "certified_digits": w["certified_digits"],
            }
            for w in report["weights"]
        ],
        "verdict": "irreducible" if verdict.irreducible else "reducible",
        "rank_saturated": report["saturated"],
    }


def suite_table(results) -> str:
    rows = [(r["name"], "pass" if r["passed"] else "FAIL", "%.2f" % r["seconds"], r["detail"]) for r in results]
    return tsv_table(("criterion", "status", "seconds", "detail"), rows)
