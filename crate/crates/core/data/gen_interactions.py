"""Writes interactions.jsonl: synthetic application history.

Components are uniform on [0, 1]; applied ~ Bernoulli(sigmoid(b . [1, s])).
"""
import json
import math
import random

TRUE_BETA = [-5.0, 1.5, 5.0, 1.5, 0.5, 1.5]
FIELDS = ["s_sem", "s_skill", "s_loc", "s_sal", "s_rec"]


def main(path="interactions.jsonl", n=1000, seed=2026):
    rng = random.Random(seed)
    with open(path, "w") as f:
        for i in range(n):
            s = [round(rng.random(), 4) for _ in FIELDS]
            z = TRUE_BETA[0] + sum(b * x for b, x in zip(TRUE_BETA[1:], s))
            applied = rng.random() < 1.0 / (1.0 + math.exp(-z))
            row = {"user_id": f"u{i % 50:02d}", "job_id": f"j{i:04d}"}
            row.update(dict(zip(FIELDS, s)))
            row["applied"] = applied
            f.write(json.dumps(row) + "\n")


if __name__ == "__main__":
    main()
