# %% [markdown]
# # Gate files
#
# Circuits can be written as small text files, one gate per line, and
# compiled to a 4x4 unitary. `nosplit residual --circuit FILE` does the same
# from the command line.

# %%
from pathlib import Path

import numpy as np

from nosplit import compile_program, parse_program, splitting_residual
from nosplit.gatelang import ParseError, load_program

here = Path(__file__).parent
prog = load_program(here / "circuits" / "bell.qg")
print(prog.format())
u = compile_program(prog)
print(np.round(u, 3))
print(splitting_residual(u, np.array([1.0, 0.0])))

# %% [markdown]
# Errors carry a line and column.

# %%
try:
    parse_program("H 0\nCNOT 1 1\n", "inline")
except ParseError as err:
    print(err)
