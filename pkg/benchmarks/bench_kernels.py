"""Compare the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel is timed on identical inputs with both backends; the end-to-end
row decides a batch of random dominance-satisfying instances with each backend
swapped in.
"""

import argparse
import random
import time
import timeit

from prodineq import _pykernels, certify, kernels, poly

try:
    from prodineq import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def random_majorized(rng, n, top):
    q = sorted(rng.randint(1, top) for _ in range(n))
    p = list(q)
    for _ in range(rng.randint(0, 4 * n)):
        i, j = rng.sample(range(n), 2)
        if p[j] - p[i] >= 2:
            p[i] += 1
            p[j] -= 1
    return sorted(p), q


def kernel_cases(rng):
    exps = [rng.randint(1, 40) for _ in range(8)]
    big = _pykernels.power_product(exps)
    shifted = _pykernels.taylor_shift(big, 1)
    other = _pykernels.power_product(exps[:5])
    return {
        "power_product": ("power_product", (exps,)),
        "taylor_shift": ("taylor_shift", (big, 1)),
        "hom_eval": ("hom_eval", (shifted, 7, 3)),
        "divide_linear": ("divide_linear", (big, 1, 1)),
        "prem": ("prem", (big, other)),
    }


def swap_backend(module):
    for name in ("power_product", "taylor_shift", "hom_eval", "divide_linear", "prem"):
        setattr(kernels, name, getattr(module, name))
        setattr(poly.kernels, name, getattr(module, name))


def decide_batch(instances):
    for p, q in instances:
        certify.decide(p, q)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--instances", type=int, default=200)
    args = ap.parse_args()
    rng = random.Random(7)
    backends = [("python", _pykernels)] + ([("cython", _ckernels)] if _ckernels else [])
    print(f"{'kernel':<16}" + "".join(f"{name:>14}" for name, _ in backends) + f"{'speedup':>10}")
    for label, (fn, fargs) in kernel_cases(rng).items():
        times = []
        for _, mod in backends:
            f = getattr(mod, fn)
            times.append(min(timeit.repeat(lambda: f(*fargs), number=10, repeat=args.repeat)) / 10)
        speed = f"{times[0] / times[1]:.2f}x" if len(times) == 2 else "-"
        print(f"{label:<16}" + "".join(f"{t * 1e3:>12.3f}ms" for t in times) + f"{speed:>10}")

    instances = [random_majorized(rng, rng.randint(2, 6), 20) for _ in range(args.instances)]
    times = []
    for _, mod in backends:
        swap_backend(mod)
        t0 = time.perf_counter()
        decide_batch(instances)
        times.append(time.perf_counter() - t0)
    speed = f"{times[0] / times[1]:.2f}x" if len(times) == 2 else "-"
    print(f"{'decide x' + str(args.instances):<16}" + "".join(f"{t * 1e3:>12.1f}ms" for t in times) + f"{speed:>10}")


if __name__ == "__main__":
    main()
