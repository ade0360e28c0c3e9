# coding: utf-8

# # From tokenizations to hypergraphs
#
# A tokenized graph gives a hypergraph on the original atoms: each multi-atom
# hypernode becomes a hyperedge, and bonds touching a singleton stay as
# 2-element hyperedges. The centroid construction is a tokenization-free
# baseline with one hyperedge per atom.

# %%

import numpy as np

from graphbpe import centroid_hypergraph, incidence_matrix, parse_smiles, preprocess, to_hypergraph

g = parse_smiles("Cc1ccccc1O")
tg = preprocess(g, "ring", "pse")
hg = to_hypergraph(tg)
print(hg.hyperedges)


# %%
# The incidence matrix has one row per atom and one column per hyperedge.

H = incidence_matrix(hg)
print(H.toarray().astype(int))
print("atoms per hyperedge:", np.asarray(H.sum(axis=0)).ravel())


# %%

cg = centroid_hypergraph(g)
print(len(cg.hyperedges), "hyperedges for", g.num_nodes, "atoms")
print(incidence_matrix(cg).toarray().astype(int))
