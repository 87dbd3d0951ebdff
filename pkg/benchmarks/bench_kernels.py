"""Compare the compiled and pure-Python hom-search kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--only hom,classes,closure]
"""

import argparse
import statistics
import time

from actpure import _pykernels, kernels
from actpure import classes
from actpure.classes import ABS_PURE, ALMOST_PURE, WEAKLY_F, ActClass, class_contains
from actpure.core import enumerate_homs, product_act
from actpure.enumeration import build_catalog
from actpure.preenvelope import product_preenvelope, reduce_via_pure_closure


def use(impl):
    if impl == "python":
        kernels.hom_search = _pykernels.hom_search
        kernels.unextendable = _pykernels.unextendable
    else:
        from actpure import _ckernels

        kernels.hom_search = _ckernels.hom_search
        kernels.unextendable = _ckernels.unextendable
    classes._contains_builtin.cache_clear()


def bench_hom(cat):
    n = 0
    for S in cat.monoids:
        acts = cat.acts_by_monoid[S.name]
        for A in acts:
            for B in acts:
                n += len(enumerate_homs(A, B))
    return n


def bench_classes(cat):
    kinds = [ActClass(WEAKLY_F), ActClass(ALMOST_PURE), ActClass(ABS_PURE, 4)]
    n = 0
    for S in cat.monoids:
        acts = cat.acts_by_monoid[S.name]
        for A in acts[:6]:
            for B in acts[:6]:
                P = product_act([A, B])
                n += sum(class_contains(c, P) for c in kinds)
    return n


def bench_closure(cat):
    # pure closure of the image inside products of up to 10^4 elements
    total = 0
    for S in cat.monoids[3:]:
        acts = cat.acts_by_monoid[S.name]
        targets = ActClass.extensional([B for B in acts if B.size == 3][:3])
        for A in acts:
            if A.size != 2:
                continue
            pp = product_preenvelope(A, targets, 3)
            if 1 < pp.product.size <= 10_000:
                total += reduce_via_pure_closure(pp.product, pp.phi).act.size
    return total


BENCHES = {"hom": bench_hom, "classes": bench_classes, "closure": bench_closure}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--only", default=",".join(BENCHES))
    args = ap.parse_args()
    cat = build_catalog(3, 3)
    impls = ["python"] + (["cython"] if kernels.IMPLEMENTATION == "cython" else [])
    print(f"{'bench':<10}{'impl':<8}{'median s':>10}{'result':>10}")
    for name in args.only.split(","):
        medians = {}
        for impl in impls:
            use(impl)
            times = []
            for _ in range(args.repeat):
                classes._contains_builtin.cache_clear()
                t = time.perf_counter()
                result = BENCHES[name](cat)
                times.append(time.perf_counter() - t)
            medians[impl] = statistics.median(times)
            print(f"{name:<10}{impl:<8}{medians[impl]:>10.3f}{result:>10}")
        if len(medians) == 2:
            print(f"{name:<10}speedup {medians['python'] / medians['cython']:.1f}x")
    use(kernels.IMPLEMENTATION)


if __name__ == "__main__":
    main()
