"""Text exports: CSV and JSON forms of polynomials, matrices, bases and reports.

Complex numbers are written as [re, im] pairs; infinite intersection
dimensions as the string "inf".
"""
import csv
import io
import json
import math

import numpy as np

from .circle import TrigPoly
from .operators import OperatorMatrix


def _c(x):
    x = complex(x)
    return [x.real, x.imag]


def _num(x):
    if isinstance(x, complex):
        return _c(x)
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return x


def _params(params):
    return {k: _num(v) if not isinstance(v, (list, tuple)) else [_num(u) for u in v]
            for k, v in sorted(params.items())}


def dumps(obj):
    """Deterministic JSON text (sorted keys, fixed float repr)."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True)


# --- TrigPoly ---------------------------------------------------------------

def trigpoly_to_csv(f):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "re", "im"])
    for n, c in zip(f.indices, f.coeffs):
        w.writerow([int(n), repr(float(c.real)), repr(float(c.imag))])
    return buf.getvalue()


def trigpoly_from_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    ns = [int(r["n"]) for r in rows]
    order = max(abs(n) for n in ns)
    c = np.zeros(2 * order + 1, dtype=complex)
    for n, r in zip(ns, rows):
        c[n + order] = complex(float(r["re"]), float(r["im"]))
    return TrigPoly(c)


def trigpoly_to_json(f):
    return [_c(c) for c in f.coeffs]


def trigpoly_from_json(data):
    return TrigPoly(np.array([complex(re, im) for re, im in data]))


# --- matrices, bases, reports --------------------------------------------------

def operator_to_json(T):
    e = T.entries
    return {
        "label": T.label,
        "params": _params(T.params),
        "N": T.order,
        "entries": [[[float(v.real), float(v.imag)] for v in row] for row in e],
    }


def operator_from_json(data):
    e = np.array([[complex(re, im) for re, im in row] for row in data["entries"]])
    params = {k: complex(*v) if isinstance(v, list) and len(v) == 2 else v
              for k, v in data.get("params", {}).items()}
    return OperatorMatrix(e, data["label"], params)


def projection_to_json(P):
    out = operator_to_json(P.base)
    out["certificates"] = {"idempotency": P.idempotency_residual,
                           "selfadjoint": P.selfadjoint_residual,
                           "trace": P.trace_estimate, "band": P.band}
    return out


def basis_to_json(B, a=None, sign=None):
    return {
        "source": B.source,
        "a": _c(a if a is not None else B.params.get("a", 0)),
        "sign": sign if sign is not None else B.params.get("sign"),
        "columns": [[_c(v) for v in col] for col in B.columns.T],
    }


def pair_report_to_json(report, a=None, b=None):
    d = report.dims
    return {
        "labels": list(report.labels),
        "a": None if a is None else _c(a),
        "b": None if b is None else _c(b),
        "N": report.order,
        "degree": report.degree,
        "cosines": [float(c) for c in report.principal_cosines],
        "dims": {"meet": _num(d[0]), "meet_perp": _num(d[1]),
                 "perp_meet": _num(d[2]), "perp_perp": _num(d[3])},
        "diff_spectrum": [float(x) for x in report.diff_spectrum],
        "triple_norm": report.triple_norm,
        "product_norm": report.product_norm,
    }


def geodesic_to_json(seg, a, samples):
    return {
        "a": _c(a),
        "N": seg.start.order,
        "normZ": seg.norm_bound,
        "skew_residual": seg.skew_residual,
        "codiag_residual": seg.codiag_residual,
        "endpoint_residual": seg.endpoint_residual(),
        "samples": [[float(t), float(v)] for t, v in samples],
    }


def rows_to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(x) if isinstance(x, float) else x for x in r])
    return buf.getvalue()


def spectrum_to_csv(values):
    return rows_to_csv(["index", "eigenvalue"], [(i, float(v)) for i, v in enumerate(values)])
