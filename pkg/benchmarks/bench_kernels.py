"""Compare the compiled and pure-Python kernels on the exact Z minimisation.

    python benchmarks/bench_kernels.py [--repeat 3] [--threads 1]
"""

from __future__ import annotations

import argparse
import time

from gsrghw import kernels
from gsrghw.rghw import z_exact, z_full
from gsrghw.semigroup import TowerParams, build_recursive

CASES = [
    # (ell, nu, mu, m)
    (2, 4, 12, 6),
    (3, 6, 21, 3),
    (3, 6, 60, 6),
    (3, 6, 243, 4),
    (4, 6, 80, 5),
    (2, 8, 60, 7),
]


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--threads", type=int, default=1)
    args = parser.parse_args()

    backends = sorted(kernels.available())
    print(f"backends: {', '.join(backends)}")
    header = f"{'case':<24}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}"
    print(header)
    for ell, nu, mu, m in CASES:
        table = build_recursive(TowerParams(ell, nu))
        times = {}
        values = set()
        for b in backends:
            times[b] = _time(
                lambda: values.add(z_exact(table, mu, m, backend=b, threads=args.threads, force=True)),
                args.repeat,
            )
        assert len(values) == 1, f"backends disagree on {(ell, nu, mu, m)}: {values}"
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        row = f"Z H({ell},{nu}) mu={mu} m={m}"
        print(f"{row:<24}" + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends) + f"{speed:>9.1f}x")

    table = build_recursive(TowerParams(3, 6))
    times = {
        b: _time(lambda: [z_full(table, mu, backend=b) for mu in range(1, 244)], args.repeat)
        for b in backends
    }
    speed = times["python"] / times["cython"] if "cython" in times else float("nan")
    row = "z_full H(3,6) mu<=243"
    print(f"{row:<24}" + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends) + f"{speed:>9.1f}x")


if __name__ == "__main__":
    main()
