# %% [markdown]
# # Rank over a noncommutative ring
#
# Rank is the dimension of the right span of the columns.  Row operations
# multiply on the left, column operations on the right.

# %%
import random

import gmpy2

from skewflanders import Matrix, normal_form, quaternion_spec, rank
from skewflanders.matrix_core import random_matrix_of_rank, regular_rank, transpose_op

H = quaternion_spec()
q = lambda *c: tuple(gmpy2.mpq(x) for x in c)
M = Matrix(H, 2, 2, [[q(0, 1, 0, 0), q(0, 0, 1, 0)], [q(0, 0, 0, 1), q(1, 0, 0, 0)]])
print(M)
print("rank:", rank(M), " regular-representation rank / 4:", regular_rank(M) // 4)

# %% [markdown]
# `[[1, i], [j, k]]` looks singular if you forget that `j i = -k`.

# %%
N = Matrix(H, 2, 2, [[q(1, 0, 0, 0), q(0, 1, 0, 0)], [q(0, 0, 1, 0), q(0, 0, 0, 1)]])
print("rank [[1, i], [j, k]] =", rank(N))

# %% [markdown]
# Normal form with exact witnesses, `P M Q = J_r`.

# %%
rng = random.Random(0)
A = random_matrix_of_rank(H, 3, 3, 2, rng, 4)
cert = normal_form(A)
print("rank", cert.rank, " P A Q == J_r:", cert.verify(A))
print("transpose into H^op keeps the rank:", rank(transpose_op(A)))
