"""Writes the 200-instance corpus to data/corpus, each file carrying its Dreyfus-Wagner optimum.

Instance i uses seed 1000 + i, k = 2 + i % 5 terminals and n = max(k + 1, 6 + (i // 5) % 7)
vertices at density 0.35 with weights in 1..10. The acceptance tests regenerate the same family
and compare graphs, so keep the two in step.
"""

import argparse
import pathlib

import qsteiner


def corpus_config(i):
    k = 2 + i % 5
    n = max(k + 1, 6 + (i // 5) % 7)
    return dict(seed=1000 + i, n=n, k=k, density=0.35, max_weight=10)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=pathlib.Path(__file__).resolve().parent.parent / "data" / "corpus",
                        type=pathlib.Path)
    parser.add_argument("--count", type=int, default=200)
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        inst = qsteiner.generate(**corpus_config(i))
        inst.optimum = qsteiner.dw_solve(inst.graph, inst.terminals).weight
        (args.out / f"{inst.name}.stp").write_text(qsteiner.write_stp(inst))
    print(f"wrote {args.count} instances to {args.out}")


if __name__ == "__main__":
    main()
