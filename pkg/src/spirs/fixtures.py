"""Deterministic fixture families consumed by the test suite."""
from __future__ import annotations

import json
from itertools import combinations
from pathlib import Path

import numpy as np

from .gf import GF
from .irs.codec import code_new, format_code_config
from .spi.core import format_instance, random_instance, spi_oracle

FAMILIES = ("spi-small", "halfdist", "ssb-grid")

HALFDIST_CODE = ("b:3:0xb", 7, 2, (3, 3))


def gen_spi_small(out: Path, seed: int = 1, count: int = 100) -> list:
    rng = np.random.default_rng(seed)
    out.mkdir(parents=True, exist_ok=True)
    answers = {}
    written = []
    for j in range(count):
        F = GF(7) if j % 2 else GF(5)
        L = int(rng.integers(1, 4))
        inst = random_instance(rng, F, L, max_deg_m=6, max_D=4)
        name = f"inst_{j:03d}.spi"
        (out / name).write_text(format_instance(inst))
        answers[name] = list(spi_oracle(inst).lam.coeffs)
        written.append(out / name)
    (out / "answers.json").write_text(json.dumps(answers, indent=1, sort_keys=True) + "\n")
    return written + [out / "answers.json"]


def gen_halfdist(out: Path, seed: int = 1, values: int = 3) -> list:
    """Every support of size 1..2 on the GF(8), n=7, L=2, k=(3,3) code with
    ``values`` random nonzero column assignments each."""
    spec, n, L, k = HALFDIST_CODE
    code = code_new(spec, n, L, k)
    rng = np.random.default_rng(seed)
    out.mkdir(parents=True, exist_ok=True)
    cases = []
    for t in (1, 2):
        for sup in combinations(range(n), t):
            for _ in range(values):
                E = [[0] * n for _ in range(L)]
                for l in sup:
                    while True:
                        col = [int(x) for x in rng.integers(0, code.field.q, L)]
                        if any(col):
                            break
                    for i in range(L):
                        E[i][l] = col[i]
                cases.append({"support": list(sup), "E": E})
    (out / "halfdist.code").write_text(format_code_config(code))
    (out / "halfdist.json").write_text(json.dumps(cases) + "\n")
    return [out / "halfdist.code", out / "halfdist.json"]


def gen_ssb_grid(out: Path, seed: int = 1) -> list:
    out.mkdir(parents=True, exist_ok=True)
    grid = [
        {"code": {"field": "b:4:0x13", "n": 15, "L": 2, "k": [7, 7]}, "t": [1, 2, 3, 4, 5],
         "trials": 100000, "seed": seed, "error_model": "uniform"},
        {"code": {"field": "b:4:0x13", "n": 15, "L": 3, "k": [7, 7, 7]}, "t": [3, 4, 5],
         "trials": 10000, "seed": seed, "error_model": "rank"},
        {"code": {"field": "b:3:0xb", "n": 7, "L": 2, "k": [3, 3]}, "t": [0, 1, 2, 3, 4],
         "trials": 500, "seed": seed, "error_model": "uniform"},
    ]
    (out / "ssb_grid.json").write_text(json.dumps(grid, indent=1) + "\n")
    return [out / "ssb_grid.json"]


def gen_fixtures(family: str, out, seed: int = 1) -> list:
    out = Path(out)
    if family == "spi-small":
        return gen_spi_small(out, seed)
    if family == "halfdist":
        return gen_halfdist(out, seed)
    if family == "ssb-grid":
        return gen_ssb_grid(out, seed)
    raise ValueError(f"unknown fixture family {family!r}; choose from {FAMILIES}")
