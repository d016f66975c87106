"""Reference fit of the bundled interaction log.

Minimizes the ridge-penalized negative log-likelihood
    sum log(1 + exp(z)) - y z  +  0.5 * 1e-3 * |w|^2,  z = w . [1, s]
with scipy's BFGS, independent of the Newton solver under test.
"""
import json
import sys

import numpy as np
from scipy.optimize import minimize

FIELDS = ["s_sem", "s_skill", "s_loc", "s_sal", "s_rec"]
L2 = 1e-3


def load(path):
    rows = [json.loads(l) for l in open(path) if l.strip()]
    x = np.array([[1.0] + [r[f] for f in FIELDS] for r in rows])
    y = np.array([1.0 if r["applied"] else 0.0 for r in rows])
    return x, y


def fit(x, y):
    def f(w):
        z = x @ w
        return np.sum(np.logaddexp(0, z) - y * z) + 0.5 * L2 * w @ w

    def g(w):
        p = 1 / (1 + np.exp(-(x @ w)))
        return x.T @ (p - y) + L2 * w

    res = minimize(f, np.zeros(6), jac=g, method="BFGS", options={"gtol": 1e-10})
    return res.x


if __name__ == "__main__":
    w = fit(*load(sys.argv[1] if len(sys.argv) > 1 else "data/interactions.jsonl"))
    print(json.dumps(dict(zip(["bias", "sem", "skill", "loc", "sal", "rec"], w.tolist()))))
