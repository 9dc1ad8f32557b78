"""Slopes of the rational non-PL superlinear example as the resolution is refined.

Every extra bit of ray resolution exposes roughly one more linear piece near
the limit ray (0, 1), which is what non-PL behaviour looks like at finite depth.
"""
import argparse

from bdivalg.lattice_cone import RationalCone
from bdivalg.superlinear import NonPLEvidence, PLInconclusive, build_example_3_3, pl_detect


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-resolution", type=int, default=16)
    ap.add_argument("--terms", type=int, default=8, help="how many x_n values to print")
    args = ap.parse_args(argv)

    F = build_example_3_3()
    print(f"limit value f(0, 1) = {F.limit}")
    print(f"{'n':>3}  {'f(x_n)':>28}  {'eps_n':>28}  slope on [x_(n+1), x_n]")
    for n in range(2, 2 + args.terms):
        print(f"{n:>3}  {str(F.fx(n)):>28}  {str(F.eps(n)):>28}  {F.slope(n)}")

    C = RationalCone(((0, 1), (1, 1)))
    print(f"\n{'resolution':>10}  {'distinct slopes':>15}")
    for k in range(4, args.max_resolution + 1, 2):
        try:
            res = pl_detect(F, C, ray_resolution=k, min_evidence=1)
        except PLInconclusive as exc:
            print(f"{'2^-' + str(k):>10}  inconclusive ({exc})")
            continue
        n = res.distinct_slopes() if isinstance(res, NonPLEvidence) else len(res.functionals())
        print(f"{'2^-' + str(k):>10}  {n:>15}")


if __name__ == "__main__":
    main()
