#!/usr/bin/env python3
"""Regenerate crates/core/data/fixtures.csv from the KnotInfo/LinkInfo tables
shipped with the `database_knotinfo` Python package.

Usage: python3 tools/gen_fixtures.py [--out PATH]
"""
import argparse
import csv
import os
import re
import sys

import database_knotinfo
import sympy

MAX_KNOT = 9
MAX_LINK = 7
EXTRA_KNOTS = ["10_22", "11a_263"]

HERE = os.path.dirname(os.path.abspath(__file__))
DEFAULT_OUT = os.path.join(HERE, "..", "crates", "core", "data", "fixtures.csv")

t, x = sympy.symbols("t x")


def rows(filename):
    csv.field_size_limit(10**9)
    base = os.path.join(os.path.dirname(database_knotinfo.__file__), "csv_data")
    with open(os.path.join(base, filename), newline="") as fh:
        yield from csv.DictReader(fh, delimiter="|")


def canonical(expr_text, var):
    """Jones polynomial text -> `c*t^(e/2)` terms with doubled exponents."""
    expr = sympy.expand(sympy.sympify(expr_text.replace("^", "**"), locals={"t": t, "x": x}))
    terms = {}
    for term in sympy.Add.make_args(expr):
        coeff, exp = term.as_coeff_exponent(var)
        doubled = int(2 * exp) if var == t else int(exp)
        terms[doubled] = terms.get(doubled, 0) + int(coeff)
    parts = [f"{c}*t^({e}/2)" for e, c in sorted(terms.items()) if c != 0]
    return " + ".join(parts) if parts else "0"


def pd_text(tuples):
    return " ".join("X[" + ",".join(str(v) for v in tup) + "]" for tup in tuples)


def parse_tuples(text):
    nums = [int(n) for n in re.findall(r"-?\d+", text)]
    return [nums[i : i + 4] for i in range(0, len(nums), 4)]


def knot_rows():
    for row in rows("knotinfo_data_complete.csv"):
        cn = row["crossing_number"]
        if not cn.isdigit():
            continue
        if int(cn) > MAX_KNOT and row["name"] not in EXTRA_KNOTS:
            continue
        u = row["unknotting_number"]
        yield {
            "name": row["name"],
            "pd_code": pd_text(parse_tuples(row["pd_notation"])),
            "crossing_number": cn,
            "components": "1",
            "alternating": "true" if row["alternating"] == "Y" else "false",
            "signature": row["signature"],
            "unknotting_number": u if u.isdigit() else "",
            "jones": canonical(row["jones_polynomial"], t),
        }


def link_rows():
    for row in rows("linkinfo_data_complete.csv"):
        cn = row["crossing_number"]
        if not cn.isdigit() or int(cn) > MAX_LINK:
            continue
        yield {
            "name": row["name"],
            "pd_code": pd_text(parse_tuples(row["pd_notation_vector"])),
            "crossing_number": cn,
            "components": row["components"],
            "alternating": "true" if row["alternating"] == "Y" else "false",
            "signature": row["signature"],
            "unknotting_number": "",
            "jones": canonical(row["jones_polynomial"], x),
        }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=DEFAULT_OUT)
    args = ap.parse_args()
    fields = ["name", "pd_code", "crossing_number", "components", "alternating",
              "signature", "unknotting_number", "jones"]
    out = list(knot_rows()) + list(link_rows())
    with open(args.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(out)
    print(f"wrote {len(out)} fixtures to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
