#!/usr/bin/env python3
"""Build the UCI-derived CSV fixtures used by the acceptance suite.

heart_disease.csv  from the four raw 76-attribute heart-disease files
                   (cleveland.data, hungarian.data, switzerland.data,
                   long-beach-va.data). Records span several lines and end
                   with the token "name". Only the first 282 Cleveland
                   records are well formed; together with the other three
                   files that gives 899 rows of 75 numeric attributes.
pm25_2200_2700.csv data rows 2200..2700 (1-based) of the Beijing PM2.5 file
                   PRSA_data_2010.1.1-2014.12.31.csv, columns pm2.5 and PRES.

Usage: prepare_fixtures.py --heart-dir DIR --prsa FILE [--out tests/fixtures]
"""

import argparse
import csv
import hashlib
from pathlib import Path

HEART_FILES = [
    ("cleveland.data", 282),
    ("hungarian.data", None),
    ("switzerland.data", None),
    ("long-beach-va.data", None),
]
HEART_ATTRIBUTES = 75


def heart_records(path, limit):
    tokens = Path(path).read_text(encoding="latin-1").split()
    records, current = [], []
    for tok in tokens:
        if tok == "name":
            if len(current) == HEART_ATTRIBUTES:
                records.append(current)
            current = []
            if limit is not None and len(records) == limit:
                break
        else:
            current.append(tok)
    return records


def write_heart(heart_dir, out):
    rows = []
    for name, limit in HEART_FILES:
        rows.extend(heart_records(Path(heart_dir) / name, limit))
    with open(out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow([f"a{i}" for i in range(1, HEART_ATTRIBUTES + 1)])
        w.writerows(rows)
    return len(rows)


def write_pm25(prsa, out):
    with open(prsa, newline="") as f:
        data = list(csv.DictReader(f))
    window = data[2199:2700]
    with open(out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["pm2.5", "PRES"])
        for r in window:
            w.writerow([r["pm2.5"], r["PRES"]])
    return len(window)


def sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--heart-dir", help="directory holding the raw heart-disease .data files")
    ap.add_argument("--prsa", help="path to PRSA_data_2010.1.1-2014.12.31.csv")
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests" / "fixtures"))
    args = ap.parse_args()
    if not args.heart_dir and not args.prsa:
        ap.error("nothing to do: pass --heart-dir and/or --prsa")

    out = Path(args.out)
    if args.heart_dir:
        path = out / "heart_disease.csv"
        n = write_heart(args.heart_dir, path)
        print(f"{path}: {n} rows (expected 899)")
        print(f"{sha256(path)}  {path.name}")
    if args.prsa:
        path = out / "pm25_2200_2700.csv"
        n = write_pm25(args.prsa, path)
        print(f"{path}: {n} rows (expected 501)")
        print(f"{sha256(path)}  {path.name}")


if __name__ == "__main__":
    main()
