"""NSD/FSD agreement and Askey-Wilson residuals across P-polynomial fixtures."""
import argparse
import json
from dataclasses import dataclass, field

from schemedual import APPROX, EXACT
from schemedual.fixtures import FixtureSpec, generate_fixture
from schemedual.polynomial import check_askey_wilson, is_q_polynomial_ordering, verify_theorem_main2
from schemedual.spectral import IrrationalSpectrum, decompose, krein_parameters


@dataclass
class PolySweepConfig:
    hamming: list = field(default_factory=lambda: [(n, 2) for n in range(1, 6)] + [(2, 3), (3, 3)])
    cycles: list = field(default_factory=lambda: list(range(5, 12)))


def run(spec):
    s = generate_fixture(spec)
    try:
        tol = EXACT
        sp = decompose(s, tol=tol)
    except IrrationalSpectrum:
        tol = APPROX
        sp = decompose(s, tol=tol)
    q = krein_parameters(sp, s.params)
    rep = verify_theorem_main2(s.params, sp, q, tol)
    row = {"fixture": spec.label(), "mode": tol.mode.value, **rep.as_dict()}
    if is_q_polynomial_ordering(q, tol):
        row["aw_residual"] = str(check_askey_wilson(s.params, sp, q, tol))
    return row


def main():
    argparse.ArgumentParser(description=__doc__).parse_args()
    cfg = PolySweepConfig()
    specs = [FixtureSpec("hamming", {"n": n, "q": q}) for n, q in cfg.hamming]
    specs += [FixtureSpec("cycle", {"n": n}) for n in cfg.cycles]
    for spec in specs:
        print(json.dumps(run(spec)), flush=True)


if __name__ == "__main__":
    main()
