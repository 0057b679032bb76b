# %% [markdown]
# # Affine spaces of matrices and hyperplanes
#
# Spaces are stored canonically, so equality of sets is equality of data.

# %%
from skewflanders import Matrix, enumerate_hyperplanes, gf_spec, max_rank, reduce, sub_v_h
from skewflanders.flanders import compression, u2_space

F2 = gf_spec(2)
U2 = u2_space()
print("U2 members:")
for M in U2.points():
    print(M, " rank", M.rank())
print("max rank:", max_rank(U2))

# %% [markdown]
# Redundant generators and a shifted offset give the same canonical space.

# %%
E = lambda i, j: Matrix.unit(F2, 2, 2, i, j)
same = reduce(E(0, 0) + E(1, 0), [Matrix.identity(F2, 2), E(1, 0), Matrix.identity(F2, 2) + E(1, 0)])
print("same as U2:", same == U2)

# %% [markdown]
# `V_H` collects the members whose kernel contains the hyperplane `H`.
# For the column compression `R(0, 1)` one hyperplane already kills
# everything; for the row compression `R(1, 0)` none does.

# %%
for name, S in (("R(0,1)", compression(0, 1, 2, 2, F2)), ("R(1,0)", compression(1, 0, 2, 2, F2))):
    dims = [sub_v_h(S, h).dim for h in enumerate_hyperplanes(F2, 2)]
    print(name, "dim V_H over the 3 hyperplanes:", dims)
