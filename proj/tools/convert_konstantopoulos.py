#!/usr/bin/env python3
"""Convert an export of metafor's dat.konstantopoulos2011 into id,z rows.

In R:
    write.csv(metafor::dat.konstantopoulos2011, "konst.csv", row.names = FALSE)
then:
    tools/convert_konstantopoulos.py konst.csv data/konstantopoulos2011.csv

z = yi / sqrt(vi). Ids are district-school when both columns exist, else the row number.
"""
import argparse
import csv
import math
import sys


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("src")
    ap.add_argument("dst")
    args = ap.parse_args()

    with open(args.src, newline="", encoding="utf-8-sig") as f:
        rows = list(csv.DictReader(f))
    if not rows or "yi" not in rows[0] or "vi" not in rows[0]:
        sys.exit("expected columns yi and vi")

    with open(args.dst, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["id", "z"])
        for k, r in enumerate(rows, 1):
            if "district" in r and "school" in r:
                sid = f"{r['district']}-{r['school']}"
            else:
                sid = str(k)
            w.writerow([sid, repr(float(r["yi"]) / math.sqrt(float(r["vi"])))])
    print(f"wrote {len(rows)} rows to {args.dst}")


if __name__ == "__main__":
    main()
