# coding: utf-8

# # The measurement simplex
#
# Outcome vertices form a regular simplex inscribed in the unit sphere.  A
# state falls orthogonally onto it and its barycentric weights are the Born
# probabilities.

# In[1]:

import math

import numpy as np

import ebr
from ebr.simplex import subregion_vertices

np.set_printoptions(precision=4, suppress=True)


# In[2]:

gb = ebr.computational_basis(3)
s = ebr.simplex_from_basis(gb)
print(s.vertices)
print(s.gram())


# A qubit at polar angle theta: probabilities ``cos^2(theta/2)`` and
# ``sin^2(theta/2)``.

# In[3]:

theta = math.pi / 3
r = [math.sin(theta), 0.0, math.cos(theta)]
print(ebr.transition_probabilities(r, ebr.simplex_from_basis(ebr.computational_basis(2))))
print(math.cos(theta / 2) ** 2)


# The weights are also volume ratios.  Replace vertex ``i`` by the on-simplex
# point and compare the volume of what is left with the whole simplex:

# In[4]:

psi = ebr.ket_from_amplitudes([0.3, 0.5 + 0.2j, 0.6])
st = ebr.project_onto_simplex(ebr.to_bloch(psi, gb), s)
total = ebr.cayley_menger_volume(s.vertices)
for i in range(3):
    part = ebr.cayley_menger_volume(subregion_vertices(s.vertices, st.r_par.coords, i))
    print(i, st.bary[i], part / total)
print(np.abs(psi.amplitudes) ** 2)
