"""Walk v_{n+1} = v_n + u_j towards q x and tabulate d_n at doubling checkpoints.

    python scripts/walk_convergence.py --x 1 "sqrt(2)" --steps 100000 --plot walk.png
"""
import argparse
import time

from bdivalg.diophantine import TargetPoint, build_u_system, find_approximant, walk


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", nargs="+", default=["1", "sqrt(2)"], help="target point descriptors, leading 1 first")
    ap.add_argument("--steps", type=int, default=100_000)
    ap.add_argument("--q-max", type=int, default=10_000)
    ap.add_argument("--no-hyperplanes", action="store_true", help="skip the exact hyperplane check")
    ap.add_argument("--plot", help="write a log-log plot of d_n here")
    args = ap.parse_args(argv)

    x = TargetPoint.parse(args.x)
    a = find_approximant(x, args.q_max)
    system = build_u_system(x, a)
    print(f"q = {a.q}  p = {list(a.p)}  (certified at {a.certified_bits} bits)")
    for u, w in zip(system.u, system.weights):
        print(f"  u = {u}  weight = {w}  ~ {float(w):.6f}")

    t0 = time.perf_counter()
    res = walk(system, x, args.steps, check_hyperplanes=not args.no_hyperplanes)
    elapsed = time.perf_counter() - t0
    rep = res.report
    print(f"\n{'n':>8}  {'d_n':>11}  {'block max':>11}")
    for cp in rep.checkpoints:
        print(f"{cp['n']:>8}  {cp['d']:>11.4e}  {cp['block_max']:>11.4e}")
    print(f"\nblock maxima decreasing after burn-in: {rep.block_maxima_decreasing}")
    print(f"tally {list(rep.tally)} within 10 d_N of the weights: {rep.tally_ok}")
    print(f"hyperplanes {rep.hyperplanes}, exact steps {rep.hyperplane_steps_checked}, "
          f"violations {len(rep.hyperplane_violations)}")
    print(f"{args.steps} steps in {elapsed:.2f}s")
    if args.plot:
        from bdivalg.plots import plot_walk

        plot_walk(rep, args.plot)
        print(f"plot written to {args.plot}")


if __name__ == "__main__":
    main()
