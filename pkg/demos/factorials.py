"""Factorial-type sequences from explicit branched weights."""

import math

from bcflab import compute_sequence, parse_weight_spec

CASES = [
    ("table:m=1,alpha=[1,1,2,2,...]", math.factorial),
    ("prealpha:m=2,w=2,pre=repeat3(k+1)", lambda n: math.factorial(n) ** 2),
    ("prealpha:m=2,w=2,pre=cycle(2k+1,2k+2,2k+2)", lambda n: math.factorial(2 * n)),
]

for spec, f in CASES:
    w = parse_weight_spec(spec)
    seq = [s.constant_value() for s in compute_sequence("S", w.m, w, 8)]
    ok = seq == [f(n) for n in range(9)]
    print(f"{spec}\n  {', '.join(map(str, seq))}  {'ok' if ok else 'MISMATCH'}")
