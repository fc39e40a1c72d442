"""The partial sequences stop being Hankel-TP once the end height exceeds m.

For each m the 2x2 Hankel minor with a negative coefficient is printed.
"""

from bcflab import compute_partial, generic_S
from bcflab.totalpos import check_tp, hankel_matrix

for m in (1, 2, 3):
    w = generic_S(m)
    for l in range(m + 2):
        seq = compute_partial("S", m, w, l, 6)
        rep = check_tp(hankel_matrix(seq, 3), 2)
        line = f"m={m} l={l}: {rep.verdict}"
        if rep.witness:
            rows, cols, minor = rep.witness
            line += f" rows {list(rows)} cols {list(cols)}: {minor}"
        print(line)
