# %% [markdown]
# # Trying hard to split
#
# Nelder-Mead over the 16 generator coefficients of U plus the two ancilla
# angles, restarted from seeded random points. A handful of restarts on a
# coarse grid keeps this quick; the command `nosplit search` runs the full
# 100 restarts.

# %%
from nosplit import AngleGrid, SearchOptions, search_splitter

opts = SearchOptions(restarts=5, max_evals_per_restart=4000, seed=11, grid=AngleGrid.uniform(7, 8))
result = search_splitter(opts, progress=lambda r: print(f"restart {r.restart}: {r.total:.5f}"))

# %%
print("best total", result.best_total, "(vA %.4f, vB %.4f)" % (result.best_vA, result.best_vB))
print("evaluations", result.evals)

# %% [markdown]
# Same seed, same answer.

# %%
print("repeat matches:", search_splitter(opts).best_total == result.best_total)
