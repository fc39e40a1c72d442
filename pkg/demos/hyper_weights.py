"""Weights of the branched fraction for a ratio of contiguous 2F1 series."""

from fractions import Fraction

from bcflab import HyperParams, ratio_verify, ratio_weights, var

p = HyperParams([Fraction(1, 2), Fraction(1, 3)], [Fraction(5, 2)])
w = ratio_weights("first", 2, 1, p)
print(f"branching order m = {w.m}")
for i in range(w.m, w.m + 8):
    print(f"alpha_{i} = {w.alpha(i)}")
print("series check to t^8:", ratio_verify("first", 2, 1, p, 8))

# symbolic parameters work for the rF0 family
a = HyperParams([var("a"), var("b"), 1], [])
w = ratio_weights("rF0", 3, 0, a)
print([str(w.alpha(i)) for i in range(2, 8)])
