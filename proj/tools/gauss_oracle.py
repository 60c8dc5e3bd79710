#!/usr/bin/env python3
# Brute-force modular data of Z/3 with theta_j = w^(j*j), w = exp(2 pi i/3).
# Elements of Z[w] are pairs (a, b) = a + b*w with w^2 = -1 - w.

import sys


def mul(x, y):
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c - b * d)


def wpow(k):
    return [(1, 0), (0, 1), (-1, -1)][k % 3]


def add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def total(xs):
    s = (0, 0)
    for x in xs:
        s = add(s, x)
    return s


lines = []
out = lines.append

n = 3
theta = [wpow(j * j) for j in range(n)]
dp = total(theta)
dm = total(wpow(-j * j) for j in range(n))
out("delta_plus=%d,%d" % dp)
out("delta_minus=%d,%d" % dm)
out("product=%d,%d" % mul(dp, dm))
for j in range(n):
    out("S[%d]=" % j + ";".join("%d,%d" % wpow(2 * j * k) for k in range(n)))
out("lens2_F=%d,%d" % total(wpow(2 * j * j) for j in range(n)))
tau_d = mul(dm, total(wpow(2 * j * j) for j in range(n)))
out("lens2_tau_times_3D=%d,%d" % tau_d)

text = "\n".join(lines) + "\n"
if len(sys.argv) > 1:
    with open(sys.argv[1]) as f:
        frozen = f.read()
    if frozen != text:
        sys.stdout.write(text)
        sys.exit("frozen values differ from " + sys.argv[1])
    print("frozen values match")
else:
    sys.stdout.write(text)
