# %% [markdown]
# # No random unitary splits
#
# Sample Haar-random (U, w) pairs and record the smallest residual seen.

# %%
import numpy as np

from nosplit import constraint_residuals, haar_unitary, proof_coefficients, splitting_residual
from nosplit.searcher import random_qubit

rng = np.random.default_rng(2024)
totals, constraint_max = [], []
for _ in range(1000):
    u, w = haar_unitary(rng), random_qubit(rng)
    totals.append(splitting_residual(u, w).total)
    constraint_max.append(constraint_residuals(proof_coefficients(u, w)).max)
totals = np.array(totals)

# %%
print("total residual: min %.4f  median %.4f  max %.4f" % (totals.min(), np.median(totals), totals.max()))
print("max constraint residual: min %.4f" % min(constraint_max))
print("histogram:", np.histogram(totals, bins=8)[0])
