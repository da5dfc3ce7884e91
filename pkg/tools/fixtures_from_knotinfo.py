"""Regenerate ``fixtures/knots.gauss`` from a KnotInfo CSV export.

Usage: python tools/fixtures_from_knotinfo.py knotinfo_data_complete.csv

Each table PD code is parsed, converted to a signed Gauss code and checked
against the table's Jones polynomial, Conway polynomial, determinant and
signature (KnotInfo reports the positive trefoil with signature -2).
"""

import csv
import json
import sys

import sympy

from knotgauss.codes import parse_pd_code
from knotgauss.oracles import LaurentPoly, conway, jones, signature_and_det

NAMES = ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "7_2", "8_19", "9_40", "10_145"]


def table_poly(text, var):
    expr = sympy.sympify(text.replace("^", "**"), locals={var: sympy.Symbol(var)})
    x = sympy.Symbol(var)
    terms = {}
    for (e,), c in sympy.Poly(sympy.expand(expr * x**40), x).terms():
        terms[e - 40] = int(c)
    return LaurentPoly(terms)


def main(path):
    csv.field_size_limit(10**9)
    rows = csv.reader(open(path, encoding="utf-8"), delimiter="|")
    hdr = next(rows)
    col = {name: hdr.index(name) for name in
           ("name", "pd_notation", "jones_polynomial", "conway_polynomial",
            "signature", "determinant")}
    out = []
    for r in rows:
        name = r[col["name"]]
        if name not in NAMES:
            continue
        pd = json.loads(r[col["pd_notation"]])
        text = " ".join("X(%d,%d,%d,%d)" % tuple(x) for x in pd)
        d = parse_pd_code(text)
        assert jones(d) == table_poly(r[col["jones_polynomial"]], "t"), name
        cw = table_poly(r[col["conway_polynomial"]], "z")
        assert conway(d).coeffs == tuple(cw.terms.get(k, 0) for k in range(max(cw.terms) + 1))
        sd = signature_and_det(d)
        assert sd.det_abs == int(r[col["determinant"]]), name
        assert sd.sigma_paper == -int(r[col["signature"]]), name
        out.append((name, d.gauss_code()))
    out.sort(key=lambda item: NAMES.index(item[0]))
    for name, code in out:
        print(f"{name}\t{code}")


if __name__ == "__main__":
    main(sys.argv[1])
