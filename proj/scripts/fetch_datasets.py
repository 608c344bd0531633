#!/usr/bin/env python3
"""Fetches the benchmark datasets that cannot be redistributed inside this
repository and normalizes them to the loader's format (numeric features,
label in the last column, header row).

Needs network access. wine.csv, balance-scale.csv and two-blobs.csv are
already shipped under data/ (see make_datasets.py); this script adds the
rest of the UCI benchmark suite, most importantly ionosphere and pima which
the acceptance suite checks against published accuracies.

Usage:  python3 scripts/fetch_datasets.py [name ...]    (default: ionosphere pima)
"""

import os
import sys
import urllib.request

OUT = os.path.join(os.path.dirname(__file__), "..", "data")

UCI = "https://archive.ics.uci.edu/ml/machine-learning-databases"

# name -> (url, transform)
SOURCES = {
    "ionosphere": (f"{UCI}/ionosphere/ionosphere.data", "label_last"),
    "pima": (
        "https://raw.githubusercontent.com/jbrownlee/Datasets/master/pima-indians-diabetes.data.csv",
        "label_last",
    ),
    "ecoli": (f"{UCI}/ecoli/ecoli.data", "ecoli"),
    "transfusion": (f"{UCI}/blood-transfusion/transfusion.data", "skip_header"),
    "cmc": (f"{UCI}/cmc/cmc.data", "label_last"),
    "parkinsons": (f"{UCI}/parkinsons/parkinsons.data", "parkinsons"),
}


def fetch(name):
    url, transform = SOURCES[name]
    print(f"fetching {name} from {url}")
    raw = urllib.request.urlopen(url, timeout=60).read().decode("utf-8")
    lines = [ln.strip() for ln in raw.splitlines() if ln.strip()]

    if transform == "skip_header":
        lines = lines[1:]
    elif transform == "ecoli":
        # whitespace-separated, first column is a sequence name
        lines = [",".join(ln.split()[1:]) for ln in lines]
    elif transform == "parkinsons":
        # header present; drop the name column, move 'status' (col 17) last
        header = lines[0].split(",")
        status = header.index("status")
        rows = []
        for ln in lines[1:]:
            cells = ln.split(",")
            label = cells.pop(status)
            rows.append(",".join(cells[1:]) + "," + label)
        lines = rows

    path = os.path.join(OUT, f"{name}.csv")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print(f"wrote {path} ({len(lines)} rows)")


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    names = sys.argv[1:] or ["ionosphere", "pima"]
    for name in names:
        if name not in SOURCES:
            sys.exit(f"unknown dataset '{name}'; choices: {', '.join(sorted(SOURCES))}")
        fetch(name)
