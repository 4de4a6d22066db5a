# %% [markdown]
# # Combining is possible
#
# Put theta on one qubit and phi on another, measure ZZ parity, apply a
# CNOT and drop the second qubit. Either outcome leaves a state carrying
# both angles; the odd one just has the phase on |0> instead of |1>.

# %%
import numpy as np

from nosplit import BlochAngles, combiner_statistics, parity_branches
from nosplit.combiner import combiner_input, expected_final, finish_branch
from nosplit.states import fidelity_pure

angles = BlochAngles(1.2, 0.7)
for branch in parity_branches(combiner_input(angles)):
    final = finish_branch(branch).final
    print(branch.label, "p=%.3f" % branch.probability,
          "fidelity=%.12f" % fidelity_pure(final, expected_final(angles, branch.label)))

# %%
stats = combiner_statistics(angles, 100_000, np.random.default_rng(5))
print(stats, "p_hat_even =", stats.n_even / 100_000)
