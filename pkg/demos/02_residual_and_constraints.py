# %% [markdown]
# # Scoring a would-be splitter
#
# A splitter U with ancilla w should leave qubit A carrying only theta and
# qubit B only phi. The residual measures how badly that fails on a grid
# of input angles (trace distances between marginals that should agree).

# %%
import numpy as np

from nosplit import constraint_residuals, output_entanglement, proof_coefficients, splitting_residual
from nosplit import gates
from nosplit.searcher import haar_unitary, random_qubit

ket0 = np.array([1.0, 0.0])

# %%
for name, u in [("identity", gates.I4), ("CNOT", gates.CNOT), ("SWAP", gates.SWAP), ("CZ", gates.CZ)]:
    r = splitting_residual(u, ket0)
    print(f"{name:8s} vA={r.vA:.3f} vB={r.vB:.3f} total={r.total:.3f} "
          f"entanglement={output_entanglement(u, ket0):.3f}")

# %% [markdown]
# Identity keeps both angles on A, so B is constant but A depends on phi.
# CNOT makes A depend on theta alone, but B then depends on theta too.
#
# The algebraic view: expand U|0 w> in the Schmidt basis of U|1 w> and
# check the seven conditions a splitter would have to satisfy.

# %%
pc = proof_coefficients(gates.CNOT, ket0)
print(pc)
print("residual vector:", np.round(constraint_residuals(pc), 12))

# %%
rng = np.random.default_rng(0)
u, w = haar_unitary(rng), random_qubit(rng)
print("random U:", splitting_residual(u, w))
print("max constraint residual:", constraint_residuals(proof_coefficients(u, w)).max)
