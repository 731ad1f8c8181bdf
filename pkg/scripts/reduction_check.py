"""Check the Set Cover -> T-Coloring reduction on every small set family.

With --literal the free space is not inset and the false positives show up.
"""

import argparse
import time

from chanassign.oracles import bf_setcover_positive, bf_tcolor_decide
from chanassign.tcoloring import SetCoverInstance, reduce_setcover_to_tcoloring, small_setcover_family


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--literal", action="store_true")
    p.add_argument("--max-k", type=int, default=3)
    args = p.parse_args(argv)

    runs = wrong = 0
    worst = 0.0
    for n, sets in small_setcover_family():
        for k in range(args.max_k + 1):
            sc = SetCoverInstance(n, sets, k)
            truth = bf_setcover_positive(sc)
            for A in (1, 2):
                for B in (1, 2):
                    if A > sc.m or B > n:
                        continue
                    tc, _ = reduce_setcover_to_tcoloring(sc, A, B, literal=args.literal)
                    t0 = time.perf_counter()
                    sat, _ = bf_tcolor_decide(tc)
                    worst = max(worst, time.perf_counter() - t0)
                    runs += 1
                    if sat != truth:
                        wrong += 1
                        if wrong <= 5:
                            print(f"disagree: n={n} sets={[sorted(S) for S in sets]} k={k} A={A} B={B} "
                                  f"cover={truth} tcoloring={sat}")
    print(f"{runs - wrong}/{runs} runs agree; slowest decision {worst * 1000:.1f} ms")


if __name__ == "__main__":
    main()
