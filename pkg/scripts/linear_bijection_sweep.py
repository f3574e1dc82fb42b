"""Sweep GF(2)-linear reorderings of X^(m) and report the duality tallies.

Full enumeration (exact arithmetic) up to m = 4; above that, seeded samples of
GL(m,2) are checked for formal self-duality against symmetry in approximate
mode, since the exact Krein tensor grows as d^4.
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from schemedual import APPROX, duality
from schemedual.group_scheme import (MAX_ENUMERATE_M, classify_linear, group_scheme_data,
                                     sample_linear_bijections, sigma_from_matrix)


@dataclass
class SweepConfig:
    m_max: int = 4
    trials_nonlinear: int = 100
    samples_large: int = 200
    seed: int = 0
    nsd_max_m: int = 3   # Krein-tensor comparisons get slow beyond this


def sampled_row(m, cfg):
    data = group_scheme_data(m, APPROX)
    agree = 0
    for S in sample_linear_bijections(m, cfg.samples_large, cfg.seed):
        fsd, _ = duality.is_formally_self_dual(data.spectral, sigma_from_matrix(S))
        agree += fsd == S.symmetric
    return {"m": m, "sampled": cfg.samples_large, "fsd_iff_symmetric": agree}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    for name, val in asdict(SweepConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=val)
    cfg = SweepConfig(**vars(ap.parse_args()))
    rows = []
    for m in range(1, cfg.m_max + 1):
        t0 = time.perf_counter()
        if m <= MAX_ENUMERATE_M:
            rep = classify_linear(m, cfg.trials_nonlinear if m <= cfg.nsd_max_m else 0, cfg.seed,
                                  check_nsd=m <= cfg.nsd_max_m)
            row = rep.as_dict()
        else:
            row = sampled_row(m, cfg)
        row["seconds"] = round(time.perf_counter() - t0, 3)
        rows.append(row)
        print(json.dumps(row), flush=True)


if __name__ == "__main__":
    main()
