# Two independent routes to the same period magnitudes.
#
# Route 1 expands the periods in a q-series with exact rational coefficients
# and sums it at c = exp(-2 pi / sqrt 3).  Route 2 never sees a q-series: it
# finds the three real roots of x^3 + 9x^2 + 24 t^l x + 16 t^(2l), reduces
# each arch to Carlson's R_F, and integrates over t by dyadic panels.
import time

from mpmath import mp

from reglab.bigreal_periods import eval_IJ
from reglab.elliptic_oracle import cubic_roots, direct_periods, inner_integrals

print("roots and arches at l = 5, t = 0.5")
roots = cubic_roots(5, 0.5, p=64)
print(f"  r1 = {roots.r1}")
print(f"  r2 = {roots.r2}")
print(f"  r3 = {roots.r3}")
inner = inner_integrals(5, 0.5, p=64)
print(f"  delta arch = {inner.delta_inner}")
print(f"  gamma arch = {inner.gamma_inner}")
print()

worst = mp.mpf(0)
start = time.time()
print(" l  j   delta (series)      delta (quadrature)   rel")
for l in (5, 7):
    for j in range(1, l):
        pair = eval_IJ(l, j, p=128)
        oracle = direct_periods(l, j, p=64)
        with mp.workprec(96):
            series = 54 * mp.pi / l * pair.I.value
            diff = abs(oracle.delta_abs.value - series) / series
            worst = max(worst, diff)
        print(f"{l:>2} {j:>2}   {mp.nstr(series, 15):<19}  "
              f"{mp.nstr(oracle.delta_abs.value, 15):<19}  {mp.nstr(diff, 2)}")
print(f"worst relative difference {mp.nstr(worst, 3)} "
      f"in {time.time() - start:.1f}s")
