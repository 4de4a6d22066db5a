# %% [markdown]
# # CNOT copies populations, not phases
#
# Feed |v(theta, phi)>|0> through a CNOT and look at each qubit on its own.
# Both marginals come out as diag(cos^2(theta/2), sin^2(theta/2)): the phase
# phi has vanished from both sides.

# %%
import math

import numpy as np

from nosplit import BlochAngles, reduced
from nosplit.splitcheck import cnot_demo

np.set_printoptions(precision=4, suppress=True)

# %%
for theta in (0.0, math.pi / 3, math.pi / 2):
    for phi in (0.0, 1.0, math.pi):
        demo = cnot_demo(BlochAngles(theta, phi))
        print(f"theta={theta:.3f} phi={phi:.3f}")
        print("  rho_A diag", np.diag(demo.rho_a).real, " off", abs(demo.rho_a[0, 1]))
        print("  rho_B diag", np.diag(demo.rho_b).real, " off", abs(demo.rho_b[0, 1]))

# %% [markdown]
# The joint state still remembers phi; only the local views forget it.

# %%
a = cnot_demo(BlochAngles(math.pi / 2, 0.0)).psi
b = cnot_demo(BlochAngles(math.pi / 2, math.pi)).psi
print("overlap of the two joint states:", abs(np.vdot(a, b)) ** 2)
print("equal marginals on A:", np.allclose(reduced(a, "A"), reduced(b, "A")))
