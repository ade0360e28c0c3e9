# coding: utf-8

# # Ring preprocessing on molecules
#
# Ring systems (maximal groups of atoms joined by non-bridge bonds) can be
# contracted before training starts, so an aromatic ring enters the corpus as
# one token instead of six atoms.

# %%

from graphbpe import parse_smiles, preprocess
from graphbpe.topology import find_ring_systems

benzene = parse_smiles("c1ccccc1")
nitro = parse_smiles("c1cc(c(cc1F)[N+](=O)[O-])F")
print(nitro.labels)
print(nitro.edges)


# %%

print(find_ring_systems(benzene))
print(find_ring_systems(nitro))


# %%
# After contraction, benzene is a single hypernode. The substituted ring keeps
# its five substituent atoms as singletons, giving 6 hypernodes and 5 edges.

for g in (benzene, nitro):
    tg = preprocess(g, "ring", "neighborhood")
    print(tg.num_hypernodes, "hypernodes,", len(tg.hyper_edges), "edges")
    for h in tg.hypernodes:
        print("   ", h.nodes, h.identity)


# %%
# Fused rings form one system. Naphthalene contracts to a single hypernode too.

print(preprocess(parse_smiles("c1ccc2ccccc2c1"), "ring", "pse").num_hypernodes)
