# Mahler-measure heights from high-precision roots (mpmath), frozen into test_algebraic.cpp.
from mpmath import mp, polyroots, log, mpf

mp.dps = 60

def height(coeffs):  # highest degree first
    roots = polyroots(coeffs, maxsteps=200, extraprec=200)
    s = log(abs(coeffs[0])) + sum(max(mpf(0), log(abs(r))) for r in roots)
    return s / (len(coeffs) - 1)

print("x^2-x-1", height([1, -1, -1]))
print("x^3-x+1", height([1, 0, -1, 1]))
print("3x^3-2", height([3, 0, 0, -2]))
