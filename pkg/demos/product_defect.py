"""Ramification defect is not inherited by products.

The operators of the projective line and of the toric threefold B3_7
are both extremal (defect zero). Their product MW4_17 nevertheless has
defect one. The factor operators are reconstructed from scratch here;
the product operator is read from the reference data, because a fresh
reconstruction needs a 520-term series and several minutes (the
acceptance suite does exactly that). Runs in under a minute.
"""
from qperiods.goldendata import load_operator
from qperiods.monodromy import ramification
from qperiods.periods import period_closed_form
from qperiods.qde import reconstruct


def factor_report(name, terms):
    series = period_closed_form(name, terms).regularize()
    result = reconstruct(series)
    report = ramification(result.operator)
    print(f"{name}: order {result.operator.order}, "
          f"degree {result.operator.degree}, rank {report.rank}, "
          f"rf {report.rf}, verdict {report.verdict}")


def main():
    print("factors, reconstructed from their series:")
    factor_report("P1", 120)
    factor_report("B3_7", 250)

    print("\nproduct MW4_17 = P1 x B3_7, reference operator:")
    op = load_operator("MW4_17")
    report = ramification(op)
    print(f"MW4_17: order {op.order}, degree {op.degree}, "
          f"rank {report.rank}, rf {report.rf}, verdict {report.verdict}")

    print("\nlocal data behind the defect:")
    print(report.text())


if __name__ == "__main__":
    main()
