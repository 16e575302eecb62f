"""Ramification census over the fourfold corpus.

Runs the local log-monodromy analysis on all 35 reference operators
and tallies the ramification defects. Runs in about ten seconds.
"""
from collections import Counter

from qperiods.goldendata import CORPUS_NAMES, load_operator
from qperiods.monodromy import ramification


def main():
    census = Counter()
    defective = []
    for name in CORPUS_NAMES:
        report = ramification(load_operator(name))
        census[report.defect] += 1
        if report.defect:
            defective.append((name, report.defect))
        print(f"{name:8s} rank {report.rank}  rf {report.rf:3d}  {report.verdict}")

    print("\ncensus by defect:")
    for defect in sorted(census):
        print(f"  defect {defect}: {census[defect]} operators")
    print("\noperators with positive defect:")
    print("  " + ", ".join(name for name, _ in defective))


if __name__ == "__main__":
    main()
