"""
Trochoid shapes
===============

The curve behind the move operator: a point attached to a rolling disc of
radius ``R`` at distance ``B * R`` from its centre.
"""

import numpy as np

from trochoid_search import TrochoidSpec, classify, trochoid_points

###############################################################################
# ``B < 1`` gives a curtate curve, ``B == 1`` the cycloid with cusps and
# ``B > 1`` a prolate curve with loops.
for B in (0.5, 1.0, 2.0):
    spec = TrochoidSpec(R=1.0, B=B)
    pts = trochoid_points(spec, 0.0, 4 * np.pi, 400)
    theta, x, y = pts.T
    print(f"B={B}: {classify(spec).value:8s} y in [{y.min():.2f}, {y.max():.2f}], "
          f"x monotone: {bool(np.all(np.diff(x) >= 0))}")

###############################################################################
# One full turn advances the curve by the circumference.
spec = TrochoidSpec(R=2.0, B=1.5)
(_, x0, _), (_, x1, _) = trochoid_points(spec, 0.3, 0.3 + 2 * np.pi, 2)
print(f"advance per turn {x1 - x0:.12f}, 2*pi*R = {2 * np.pi * spec.R:.12f}")

###############################################################################
# With matplotlib installed the curves can be drawn directly:
#
#   import matplotlib.pyplot as plt
#   for B in (0.5, 1.0, 2.0):
#       _, x, y = trochoid_points(TrochoidSpec(1.0, B), 0, 4 * np.pi, 400).T
#       plt.plot(x, y, label=f"B={B}")
#   plt.axis("equal"); plt.legend(); plt.show()
