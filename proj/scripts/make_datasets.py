#!/usr/bin/env python3
"""Regenerates the CSV fixtures shipped under data/.

- wine.csv          : the UCI Wine data as bundled with scikit-learn
                      (178 instances, 13 attributes, 3 classes), label last.
- balance-scale.csv : exact reconstruction of UCI Balance Scale; the dataset
                      is the complete 5^4 factorial of (left-weight,
                      left-distance, right-weight, right-distance) with the
                      class decided by the torque comparison (625 instances).
- two-blobs.csv     : synthetic two-gaussian toy problem used by the
                      determinism and initialization experiments.

Run from the repository root:  python3 scripts/make_datasets.py
"""

import math
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "data")


def write_wine():
    from sklearn.datasets import load_wine

    wine = load_wine()
    path = os.path.join(OUT, "wine.csv")
    with open(path, "w") as f:
        cols = [name.replace(" ", "_") for name in wine.feature_names]
        f.write(",".join(cols) + ",class\n")
        for row, label in zip(wine.data, wine.target):
            f.write(",".join(repr(float(v)) for v in row) + f",{int(label)}\n")
    print("wrote", path, wine.data.shape)


def write_balance_scale():
    path = os.path.join(OUT, "balance-scale.csv")
    n = 0
    with open(path, "w") as f:
        f.write("left_weight,left_distance,right_weight,right_distance,class\n")
        for lw in range(1, 6):
            for ld in range(1, 6):
                for rw in range(1, 6):
                    for rd in range(1, 6):
                        left, right = lw * ld, rw * rd
                        cls = "L" if left > right else "R" if right > left else "B"
                        f.write(f"{lw},{ld},{rw},{rd},{cls}\n")
                        n += 1
    print("wrote", path, n, "rows")


def write_two_blobs(n=300, seed=20240601, sigma=0.6):
    # splitmix64-based gaussian so the file is reproducible without numpy
    state = seed & 0xFFFFFFFFFFFFFFFF

    def next_u64():
        nonlocal state
        state = (state + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        return z ^ (z >> 31)

    def unit():
        return (next_u64() >> 11) / float(1 << 53)

    def gauss(mu, s):
        u1 = ((next_u64() >> 11) + 1) / float(1 << 53)
        u2 = unit()
        return mu + s * math.sqrt(-2.0 * math.log(u1)) * math.cos(2 * math.pi * u2)

    path = os.path.join(OUT, "two-blobs.csv")
    with open(path, "w") as f:
        f.write("x,y,class\n")
        for i in range(n):
            c = i % 2
            cx = -2.0 if c == 0 else 2.0
            f.write(f"{gauss(cx, sigma)!r},{gauss(cx, sigma)!r},{'a' if c == 0 else 'b'}\n")
    print("wrote", path, n, "rows")


if __name__ == "__main__":
    os.makedirs(OUT, exist_ok=True)
    write_wine()
    write_balance_scale()
    write_two_blobs()
