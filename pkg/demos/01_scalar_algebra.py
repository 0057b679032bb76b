# %% [markdown]
# # Division rings from structure constants
#
# A ring is a table `c[i][j][k]` with `e_i e_j = sum_k c[i][j][k] e_k` over a
# central base field.  Finite fields come from `gf_spec`, the rational
# quaternions from `quaternion_spec`.

# %%
import gmpy2

from skewflanders import gf_spec, opposite, quaternion_spec

H = quaternion_spec()
one, i, j, k = (H(*[gmpy2.mpq(int(t == s)) for t in range(4)]) for s in range(4))
print("i*j =", i * j, "  j*i =", j * i, "  k*k =", k * k)

# %% [markdown]
# Inverses solve the left-multiplication system over Q.

# %%
a = one + i + j + k
print("inv(1+i+j+k) =", a.inv(), "  check:", a * a.inv())

# %% [markdown]
# The opposite ring reverses products; for fields it is the ring itself.

# %%
Hop = opposite(H)
print("in H^op, i o j =", Hop(i.coords) * Hop(j.coords))
F4 = gf_spec(2, 2)
print("F4 modulus (low degree first):", F4.modulus, " opposite is itself:", opposite(F4) is F4)
print("invertibility:", F4.verification, "for F4,", H.verification, "for H")
