#!/usr/bin/env python3
# Copyright 2026 The specguard Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates data/catalog_impact_fixture.json.

An engineered 83-method catalog whose impact table hits fixed target means.
Method names and flags are synthetic; only the per-category counts follow the
real catalog. Deterministic for a given seed.
"""

import argparse
import json
import math
import random
import statistics
from fractions import Fraction

CATEGORIES = [
    ("coding_guidelines", 8), ("architecture_notations", 3), ("architecture_design", 7),
    ("architecture_error_detection", 6), ("architecture_error_handling", 4),
    ("architecture_verification", 7), ("unit_design_notations", 4),
    ("unit_design_implementation", 10), ("unit_verification", 8), ("unit_testing", 5),
    ("unit_test_derivation", 4), ("unit_test_coverage", 3), ("integration_testing", 5),
    ("integration_test_derivation", 4), ("integration_test_coverage", 2),
    ("safety_requirements_verification", 3),
]
VERIFICATION = {"architecture_verification", "unit_verification"}
TESTING = {"unit_testing", "unit_test_derivation", "unit_test_coverage", "integration_testing",
           "integration_test_derivation", "integration_test_coverage",
           "safety_requirements_verification"}
# (mean, std) per (condition, type)
TARGETS = {
    ("spec", "V"): (0.50, 0.00), ("spec", "T"): (0.52, 0.03),
    ("interp", "V"): (0.26, 0.01), ("interp", "T"): (0.97, 0.01),
}
SYMBOLS = ["o", "+", "++"]


def score(methods, flag, asil):
    num = den = 0
    for m in methods:
        r = m["r"][asil]
        den += r
        if not m[flag]:
            num += r
    return Fraction(num, den) if den else None


def cell(methods, flag):
    vals = [score(methods, flag, a) for a in range(4)]
    if any(v is None for v in vals):
        return None
    xs = [float(v) for v in vals]
    return statistics.fmean(xs), statistics.pstdev(xs)


def cost(group, kind):
    total = 0.0
    for cond, flag in (("spec", "spec"), ("interp", "interp")):
        c = cell(group, flag)
        if c is None:
            return float("inf")
        tm, ts = TARGETS[(cond, kind)]
        total += (c[0] - tm) ** 2 + (c[1] - ts) ** 2
    return total


def random_rec(rng):
    # Non-decreasing over ASILs A..D, at least one non-optional entry.
    while True:
        r = sorted(rng.choice([0, 1, 1, 2, 2]) for _ in range(4))
        if r[3] > 0:
            return r


def optimize(group, kind, rng, steps):
    # Simulated annealing on the summed squared error.
    current = cost(group, kind)
    best, best_state = current, snapshot(group)
    for step in range(steps):
        temp = 1e-3 * (1 - step / steps) + 1e-9
        m = rng.choice(group)
        saved = (list(m["r"]), m["spec"], m["interp"])
        move = rng.random()
        if move < 0.4:
            m["r"] = random_rec(rng)
        elif move < 0.7:
            m["spec"] = not m["spec"]
        else:
            m["interp"] = not m["interp"]
        c = cost(group, kind)
        if c <= current or rng.random() < math.exp((current - c) / temp):
            current = c
            if c < best:
                best, best_state = c, snapshot(group)
        else:
            m["r"], m["spec"], m["interp"] = saved
    restore(group, best_state)
    return best


def snapshot(group):
    return [(list(m["r"]), m["spec"], m["interp"]) for m in group]


def restore(group, state):
    for m, (r, sp, it) in zip(group, state):
        m["r"], m["spec"], m["interp"] = list(r), sp, it


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--steps", type=int, default=200000)
    ap.add_argument("--out", default="data/catalog_impact_fixture.json")
    args = ap.parse_args()
    rng = random.Random(args.seed)

    methods = []
    for cat, n in CATEGORIES:
        for i in range(n):
            methods.append({"cat": cat, "idx": i, "r": random_rec(rng),
                            "spec": rng.random() < 0.5, "interp": rng.random() < 0.3})
    for kind, cats in (("V", VERIFICATION), ("T", TESTING)):
        group = [m for m in methods if m["cat"] in cats]
        print(kind, "residual", optimize(group, kind, rng, args.steps))
        for cond in ("spec", "interp"):
            mean, std = cell(group, cond)
            tm, ts = TARGETS[(cond, kind)]
            print(f"  {cond}: mean {mean:.4f} (target {tm}) std {std:.4f} (target {ts})")
            assert abs(mean - tm) <= 0.005, "mean target missed"

    out = {
        "description": "Engineered fixture: synthetic methods whose impact table matches fixed "
                       "targets. Category counts follow the 83-method catalog; names, "
                       "recommendations and flags are synthetic.",
        "methods": [],
    }
    for m in methods:
        out["methods"].append({
            "id": f"{m['cat']}.{m['idx'] + 1}",
            "name": f"Synthetic {m['cat'].replace('_', ' ')} method {m['idx'] + 1}",
            "category": m["cat"],
            "recommendations": {a: SYMBOLS[r] for a, r in zip("ABCD", m["r"])},
            "requires_specification": m["spec"],
            "requires_interpretability": m["interp"],
        })
    with open(args.out, "w") as f:
        json.dump(out, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
