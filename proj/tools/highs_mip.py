#!/usr/bin/env python3
"""Solve an LP-format MIP with HiGHS and write "name value" lines.

Usage: highs_mip.py MODEL.lp SOLUTION.txt

Exits non-zero unless HiGHS proves optimality, so the caller never mistakes
an incumbent for an optimum.
"""

import sys

import highspy


def main(argv):
    if len(argv) != 3:
        print(__doc__, file=sys.stderr)
        return 2
    lp_path, sol_path = argv[1], argv[2]

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("threads", 1)
    h.setOptionValue("mip_rel_gap", 1e-9)
    h.setOptionValue("mip_abs_gap", 1e-9)
    h.setOptionValue("mip_feasibility_tolerance", 1e-9)
    h.setOptionValue("primal_feasibility_tolerance", 1e-9)
    h.setOptionValue("dual_feasibility_tolerance", 1e-9)

    if h.readModel(lp_path) == highspy.HighsStatus.kError:
        print(f"cannot read {lp_path}", file=sys.stderr)
        return 1
    h.run()
    status = h.getModelStatus()
    if status != highspy.HighsModelStatus.kOptimal:
        print(f"HiGHS status: {h.modelStatusToString(status)}", file=sys.stderr)
        return 1

    names = h.getLp().col_names_
    values = h.getSolution().col_value
    with open(sol_path, "w") as out:
        for name, value in zip(names, values):
            out.write(f"{name} {value:.17g}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
