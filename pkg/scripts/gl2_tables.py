"""Print the six reordered eigenmatrix pairs of X^(2) side by side."""
import argparse

from schemedual.group_scheme import classify_linear


def fmt(table):
    return ["  ".join(f"{int(v):>2}" for v in row) for row in table]


def main():
    argparse.ArgumentParser(description=__doc__).parse_args()
    rep = classify_linear(2)
    for info in rep.solutions:
        tag = "symmetric" if info["symmetric"] else "non-symmetric"
        print(f"S = {info['S']}  ({tag})  order {' '.join(info['sigma_bits'])}  "
              f"FSD={info['fsd']} NSD={info['nsd']}")
        for lp, lq in zip(fmt(info["P"]), fmt(info["Q"])):
            print(f"    {lp}    |    {lq}")
        print()
    print(f"{rep.linear_total} linear, {rep.symmetric} symmetric, {rep.fsd} FSD, {rep.nsd} NSD")


if __name__ == "__main__":
    main()
