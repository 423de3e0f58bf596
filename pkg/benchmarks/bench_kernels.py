"""Time the compiled closure kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from conlat import _kernels_py
from conlat.lattice import boolean, chain, product_many, s_lattice

try:
    from conlat import _ckernels
except ImportError:
    _ckernels = None


def workloads():
    amb, _ = product_many([chain(2)] * 4 + [s_lattice()])
    big = boolean(6)
    out = []
    for name, L in (("2^4 x S", amb), ("2^6", big)):
        J = np.ascontiguousarray(L.join, dtype=np.int32)
        M = np.ascontiguousarray(L.meet, dtype=np.int32)
        Jl, Ml = J.tolist(), M.tolist()
        covers = list(L.covers)
        gens = list(range(0, L.size, max(1, L.size // 7)))[:7]

        def py_cong(Jl=Jl, Ml=Ml, covers=covers):
            for a, b in covers:
                _kernels_py.congruence_closure(Jl, Ml, [(a, b)])

        def c_cong(J=J, M=M, covers=covers):
            for a, b in covers:
                _ckernels.congruence_closure(J, M, [(a, b)])

        out.append((f"principal congruences of all covers, {name} ({L.size})", py_cong, c_cong))
        out.append((f"sublattice closure of 7 generators, {name}",
                    lambda Jl=Jl, Ml=Ml, g=gens: _kernels_py.sublattice_closure(Jl, Ml, g),
                    lambda J=J, M=M, g=gens: _ckernels.sublattice_closure(J, M, g)))
        out.append((f"join closure of 7 generators, {name}",
                    lambda Jl=Jl, g=gens: _kernels_py.join_closure(Jl, g, 0),
                    lambda J=J, g=gens: _ckernels.join_closure(J, g, 0)))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'workload':62s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, py, cy in workloads():
        tp = min(timeit.repeat(py, number=1, repeat=args.repeat))
        if _ckernels is None:
            print(f"{name:62s} {tp * 1e3:9.2f}ms {'n/a':>10s}")
            continue
        tc = min(timeit.repeat(cy, number=1, repeat=args.repeat))
        print(f"{name:62s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
