#!/usr/bin/env python3
"""External backend for pcity: solves an LP-format model with HiGHS.

usage: highs_backend.py MODEL.lp SOLUTION.txt [--relax]

Writes `@status`, `@objective` and one `name value` line per column.
"""
import argparse
import sys

import highspy


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("model")
    ap.add_argument("solution")
    ap.add_argument("--relax", action="store_true")
    args = ap.parse_args()

    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    h.setOptionValue("mip_rel_gap", 0.0)
    if h.readModel(args.model) != highspy.HighsStatus.kOk:
        print(f"cannot read {args.model}", file=sys.stderr)
        return 1
    offset = 0.0
    with open(args.model) as f:
        for line in f:
            if line.startswith("\\ offset "):
                offset = float(line.split()[2])
    if args.relax:
        lp = h.getLp()
        h.changeColsIntegrality(lp.num_col_, list(range(lp.num_col_)),
                                [highspy.HighsVarType.kContinuous] * lp.num_col_)
    h.run()
    status = h.getModelStatus()
    with open(args.solution, "w") as out:
        if status == highspy.HighsModelStatus.kOptimal:
            out.write("@status Optimal\n")
            out.write(f"@objective {h.getInfo().objective_function_value + offset!r}\n")
            names = h.getLp().col_names_
            for name, v in zip(names, h.getSolution().col_value):
                out.write(f"{name} {v!r}\n")
        elif status == highspy.HighsModelStatus.kInfeasible:
            out.write("@status Infeasible\n")
        elif status == highspy.HighsModelStatus.kUnbounded:
            out.write("@status Unbounded\n")
        else:
            out.write(f"@status Error {h.modelStatusToString(status)}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
