"""Extract the <= 10 crossing rows of the KnotInfo export into data/raw.

Usage: extract_knotinfo.py KNOTINFO_CSV OUT_CSV

KNOTINFO_CSV is knotinfo_data_complete.csv from the `database_knotinfo`
package ('|' delimited, second row holds display names).
"""

import csv
import sys

import sympy

COLUMNS = ["name", "c", "b", "g", "det", "amphichiral", "pd", "jones_knotinfo"]


def jones_pairs(text):
    t = sympy.Symbol("t")
    expr = sympy.expand(sympy.sympify(text.replace("^", "**"), locals={"t": t}))
    terms = sympy.Poly(expr * t**64, t).terms()
    pairs = sorted((e[0] - 64, int(c)) for e, c in terms)
    return " ".join(f"{e}:{c}" for e, c in pairs) or "0:0"


def pd_text(text):
    if not text:
        return "U"
    tuples = sympy.sympify(text)
    return " ".join("X[" + ",".join(str(int(v)) for v in x) + "]" for x in tuples)


def main(src, dst):
    with open(src, newline="") as f:
        rows = csv.reader(f, delimiter="|")
        header = next(rows)
        next(rows)
        col = {k: header.index(k) for k in header}
        out = []
        for row in rows:
            c = int(row[col["crossing_number"]])
            if c > 10:
                continue
            name = row[col["name"]]
            det = int(row[col["determinant"]])
            symmetry = row[col["symmetry_type"]].strip()
            if name == "0_1":
                det = 1  # exported as 0
                symmetry = "fully amphicheiral"
            out.append({
                "name": name,
                "c": c,
                "b": int(row[col["braid_index"]]),
                "g": int(row[col["three_genus"]]),
                "det": det,
                "amphichiral": int(symmetry in ("fully amphicheiral", "negative amphicheiral",
                                                "positive amphicheiral")),
                "pd": pd_text(row[col["pd_notation"]]),
                "jones_knotinfo": jones_pairs(row[col["jones_polynomial"]]),
            })
    with open(dst, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(out)
    print(f"{len(out)} rows -> {dst}")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
