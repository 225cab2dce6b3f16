#!/usr/bin/env python3
"""Reference MIP solver for the LP files this project exports.

Reads an LP file (Minimize 0; Subject To / Bounds / Binaries / End), solves
the feasibility MIP by LP relaxation plus branch and bound on the binaries,
and prints the solution in the documented contract:

    t_A 0
    x_A_B 1
    ...

or the single line `infeasible`. Lines starting with `#` are comments.
"""

import sys

import numpy as np
from scipy.optimize import linprog

INT_TOL = 1e-6


def parse_lp(text):
    rows = []          # (terms: {var: coef}, sense, rhs)
    bounds = {}        # var -> (lo, hi)
    binaries = []
    section = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        lowered = line.lower()
        if lowered in ("minimize", "maximize"):
            section = "objective"
            continue
        if lowered == "subject to":
            section = "rows"
            continue
        if lowered == "bounds":
            section = "bounds"
            continue
        if lowered in ("binaries", "binary", "general"):
            section = "binaries"
            continue
        if lowered == "end":
            break
        if section == "objective":
            continue
        if section == "rows":
            name, _, body = line.partition(":")
            if not body:
                raise ValueError(f"bad row: {line!r}")
            tokens = body.split()
            terms = {}
            sign, coef = 1.0, None
            sense = rhs = None
            i = 0
            while i < len(tokens):
                tok = tokens[i]
                if tok in ("<=", ">=", "="):
                    sense = tok
                    rhs = float(tokens[i + 1])
                    break
                if tok == "+":
                    sign, coef = 1.0, None
                elif tok == "-":
                    sign, coef = -1.0, None
                else:
                    try:
                        coef = sign * float(tok)
                    except ValueError:
                        terms[tok] = terms.get(tok, 0.0) + (coef if coef is not None else sign)
                        sign, coef = 1.0, None
                i += 1
            if sense is None:
                raise ValueError(f"row without sense: {line!r}")
            rows.append((terms, sense, rhs))
        elif section == "bounds":
            tokens = line.split()
            # "<lo> <= <var> <= <hi>"
            if len(tokens) == 5 and tokens[1] == "<=" and tokens[3] == "<=":
                bounds[tokens[2]] = (float(tokens[0]), float(tokens[4]))
            else:
                raise ValueError(f"bad bound: {line!r}")
        elif section == "binaries":
            binaries.extend(line.split())
    return rows, bounds, binaries


def complement_pairs(rows, binaries):
    bins = set(binaries)
    pairs = []
    for terms, sense, rhs in rows:
        if sense != "=" or rhs != 1.0 or len(terms) != 2:
            continue
        names = list(terms)
        if all(terms[v] == 1.0 for v in names) and all(v in bins for v in names):
            pairs.append(tuple(names))
    return pairs


def solve(rows, bounds, binaries):
    variables = sorted({v for terms, _, _ in rows for v in terms} | set(bounds) | set(binaries))
    index = {v: i for i, v in enumerate(variables)}
    n = len(variables)

    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for terms, sense, rhs in rows:
        coefs = np.zeros(n)
        for var, coef in terms.items():
            coefs[index[var]] = coef
        if sense == "<=":
            a_ub.append(coefs)
            b_ub.append(rhs)
        elif sense == ">=":
            a_ub.append(-coefs)
            b_ub.append(-rhs)
        else:
            a_eq.append(coefs)
            b_eq.append(rhs)

    base_bounds = []
    for v in variables:
        lo, hi = bounds.get(v, (0.0, None))
        if v in set(binaries):
            lo, hi = 0.0, 1.0
        base_bounds.append((lo, hi))

    pairs = complement_pairs(rows, binaries)
    partner = {}
    for a, b in pairs:
        partner[a] = b
        partner[b] = a
    bin_idx = [index[v] for v in binaries]

    def relax(fixed):
        var_bounds = list(base_bounds)
        for i, val in fixed.items():
            var_bounds[i] = (val, val)
        res = linprog(
            c=np.zeros(n),
            A_ub=np.array(a_ub) if a_ub else None,
            b_ub=np.array(b_ub) if b_ub else None,
            A_eq=np.array(a_eq) if a_eq else None,
            b_eq=np.array(b_eq) if b_eq else None,
            bounds=var_bounds,
            method="highs",
        )
        return res

    def search(fixed):
        res = relax(fixed)
        if res.status == 2:
            return None
        if res.status != 0:
            raise RuntimeError(f"LP relaxation failed: {res.message}")
        x = res.x
        worst, worst_frac = None, INT_TOL
        for i in bin_idx:
            frac = abs(x[i] - round(x[i]))
            if frac > worst_frac:
                worst, worst_frac = i, frac
        if worst is None:
            return x
        for val in (round_away(x[worst]), 1.0 - round_away(x[worst])):
            child = dict(fixed)
            child[worst] = val
            mate = partner.get(variables[worst])
            if mate is not None:
                j = index[mate]
                if child.get(j, 1.0 - val) != 1.0 - val:
                    continue
                child[j] = 1.0 - val
            sol = search(child)
            if sol is not None:
                return sol
        return None

    def round_away(v):
        return 1.0 if v >= 0.5 else 0.0

    solution = search({})
    return variables, solution


def main():
    if len(sys.argv) != 2:
        print("usage: lp_mip_solve.py <model.lp>", file=sys.stderr)
        return 2
    with open(sys.argv[1]) as f:
        rows, bounds, binaries = parse_lp(f.read())
    variables, solution = solve(rows, bounds, binaries)
    if solution is None:
        print("infeasible")
        return 0
    print("# feasible point found by LP relaxation + branch and bound")
    for v, val in zip(variables, solution):
        out = round(val) if abs(val - round(val)) <= INT_TOL else val
        print(f"{v} {out:.12g}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
