#!/usr/bin/env python3
"""DIMACS front-end for the pysat solver collection.

Reads a CNF file, solves it with MiniSat 2.2 and prints SAT-competition
output ("s SATISFIABLE"/"s UNSATISFIABLE" plus "v" model lines). Exit codes
follow the competition convention: 10 satisfiable, 20 unsatisfiable.

Usage: dimacs_solver.py <file.cnf> [solver-name]
"""

import sys


def main() -> int:
    if len(sys.argv) not in (2, 3):
        print("c usage: dimacs_solver.py <file.cnf> [solver-name]")
        return 1
    try:
        from pysat.formula import CNF
        from pysat.solvers import Solver
    except ImportError:
        print("c python-sat is not installed (pip install python-sat)")
        return 1

    name = sys.argv[2] if len(sys.argv) == 3 else "m22"
    cnf = CNF(from_file=sys.argv[1])
    with Solver(name=name, bootstrap_with=cnf.clauses) as solver:
        if not solver.solve():
            print("s UNSATISFIABLE")
            return 20
        model = solver.get_model() or []
        print("s SATISFIABLE")
        for start in range(0, len(model), 20):
            print("v " + " ".join(str(lit) for lit in model[start:start + 20]))
        print("v 0")
        return 10


if __name__ == "__main__":
    sys.exit(main())
