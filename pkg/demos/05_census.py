# %% [markdown]
# # Exhaustive census at desk scale
#
# Every affine space one dimension above the bound contains a matrix of
# rank above `r`; at the bound, the rank-`r` spaces fall into the three
# classes.

# %%
from skewflanders import gf_spec
from skewflanders.census import classify_extremal, corollary_census, verify_bound

for q, shape in ((2, (2, 2, 1)), (2, (3, 2, 1)), (3, (2, 2, 1))):
    rep = verify_bound(gf_spec(q), *shape)
    print(f"F{q} {shape}: {rep.total} spaces above the bound, {rep.violations} rank-bounded")

# %%
for q, shape in ((2, (2, 2, 1)), (3, (2, 2, 1)), (2, (3, 2, 1))):
    rep = classify_extremal(gf_spec(q), *shape)
    print(f"F{q} {shape}: {rep.rank_bounded} extremal spaces, tags {rep.counts}")

# %% [markdown]
# Additive subgroups contain 0, so `U2` never shows up among them.

# %%
rep = corollary_census(4, 2, 2, 1)
print(rep.to_json())
