# %% [markdown]
# # Classifying maximal bounded-rank spaces
#
# Hide a model space behind random invertible `P, Q` and ask `classify`
# to find it again, with witnesses.

# %%
import random

from skewflanders import act_equiv, classify, gf_spec, u2_space
from skewflanders.flanders import Tag, model_space
from skewflanders.matrix_core import random_invertible

F3 = gf_spec(3)
rng = random.Random(1)
for tag, (n, p, r) in ((Tag.COMPRESSION_COLUMNS, (3, 3, 2)), (Tag.COMPRESSION_ROWS, (3, 3, 1))):
    model = model_space(tag, F3, n, p, r)
    P, _ = random_invertible(F3, n, rng)
    Q, _ = random_invertible(F3, p, rng)
    S = act_equiv(model, P, Q)
    res = classify(S, r)
    print(f"hidden {tag.value}: found {res.tag.value}; witnesses reproduce the model:",
          act_equiv(S, res.P, res.Q) == model)

# %% [markdown]
# Over F2 the exceptional space `U2` is its own class.

# %%
res = classify(u2_space(), 1)
print("U2 ->", res.tag.value)
print("P =", res.P, sep="\n")
print("Q =", res.Q, sep="\n")
