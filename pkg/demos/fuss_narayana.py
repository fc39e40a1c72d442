"""Fuss-Narayana polynomials and their Fuss-Catalan specializations."""

from bcflab import families as fam
from bcflab import compute_sequence

m = 2
x = fam.xvars(m + 1)
dp = compute_sequence("S", m, fam.periodic(m, m + 1, x), 4)
for n in range(5):
    p = fam.fuss_narayana("P", m, n, 0, x)
    one = p.subs({str(v): 1 for v in x}).constant_value()
    print(f"P_{n} = {p}")
    print(f"    at x=1: {one}   matches DP: {p == dp[n]}")
print("Q(1):", [fam.fuss_narayana("Q", m, n, 0, [1] * (m + 1)).constant_value() for n in range(6)])
print("Fuss-Catalan:", [fam.fuss_catalan(m + 1, n + 1) for n in range(6)])
