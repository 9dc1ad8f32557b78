"""Randomized saturation chain and generation pipeline over floor-linear systems.

Prints one row per instance; the seed column reproduces any row with
``random_floor_linear_system(seed)``.
"""
import argparse
from concurrent.futures import ProcessPoolExecutor
import random
import time

from bdivalg.curve_algebra import (
    check_saturation,
    dichotomy_check,
    finite_generation_pipeline,
    index_bound_check,
    random_floor_linear_system,
    random_interior_cone,
)
from bdivalg.lattice_cone import RationalCone


def one(seed, bound, pipeline):
    t0 = time.perf_counter()
    inst = random_floor_linear_system(seed)
    m, F = inst.system, inst.F
    row = {"seed": seed, "expr": inst.expressions,
           "sat": check_saturation(m, F, bound, 12).verdict.value,
           "dich": dichotomy_check(m, F, bound).verdict.value,
           "index": index_bound_check(m, F, bound).verdict.value}
    if pipeline:
        rank = m.domain.ambient_dim
        C = random_interior_cone(random.Random(seed), rank) if rank > 1 else RationalCone(((1,),))
        res = finite_generation_pipeline(m, C, F, oracle_degree=20)
        row["pipeline"] = res.certificate.verdict.value
        row["kappa"] = res.kappa
        row["gens"] = len(res.oracle.entries)
    row["secs"] = time.perf_counter() - t0
    return row


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bound", type=int, default=30, help="degree bound for the chain")
    ap.add_argument("--pipeline", action="store_true", help="also run the generation pipeline")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args(argv)

    seeds = [args.seed + i for i in range(args.count)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(one, seeds, [args.bound] * len(seeds), [args.pipeline] * len(seeds)))
    else:
        rows = [one(s, args.bound, args.pipeline) for s in seeds]
    failures = 0
    for r in rows:
        verdicts = [r["sat"], r["dich"], r["index"]] + ([r["pipeline"]] if args.pipeline else [])
        failures += any(v != "pass" for v in verdicts)
        extra = f"  kappa={r['kappa']:<4} gens={r['gens']:<3}" if args.pipeline else ""
        print(f"{r['seed']:>6}  {'/'.join(verdicts):<24}{extra}  {r['secs']:.2f}s  {r['expr']}")
    print(f"\n{len(rows)} instances, {failures} with a non-pass verdict")


if __name__ == "__main__":
    main()
