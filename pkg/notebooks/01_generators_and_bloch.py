# coding: utf-8

# # Generators and Bloch vectors
#
# The measurement's outcome kets are all we need to build a generator basis.
# For two outcomes it is the Pauli triple, for three the Gell-Mann octet; the
# same construction works when the kets live in a much larger space.

# In[1]:

import numpy as np

import ebr

np.set_printoptions(precision=4, suppress=True)


# In[2]:

gb = ebr.computational_basis(2)
for label, g in zip(gb.labels, gb.generators):
    print(label)
    print(g)


# The Gram matrix ``Tr(L_i L_j)`` is ``2 I``, whatever the ambient dimension.
# Here three random orthonormal kets in a 40-dimensional space:

# In[3]:

from ebr.instances import random_orthonormal_kets, random_state_on_span

rng = np.random.default_rng(1)
kets = random_orthonormal_kets(rng, 3, 40)
gb3 = ebr.build_generators(kets)
print(gb3.generators.shape)
print(np.abs(ebr.generator_gram(gb3) - 2 * np.eye(8)).max())


# A state on the span of those kets has a real 8-vector; pure states sit on
# the unit sphere and the map back reproduces the 40 x 40 operator.

# In[4]:

D = random_state_on_span(rng, kets)
r = ebr.to_bloch(D, gb3)
print(r.coords, r.norm)
print(np.abs(ebr.from_bloch(r, gb3).entries - D.entries).max())


# Not every point of the unit ball is a state once N >= 3: the antipode of a
# vertex has a negative eigenvalue.

# In[5]:

s = ebr.simplex_from_basis(ebr.computational_basis(3))
print(ebr.is_bona_fide(s.vertices[0], ebr.computational_basis(3)))
print(ebr.is_bona_fide(-s.vertices[0], ebr.computational_basis(3)))
