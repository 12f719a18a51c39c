# coding: utf-8

# # Degenerate measurements of a high-dimensional state
#
# A coarse measurement groups many basis states into one outcome.  Projecting
# the state onto each group gives one outcome ket per group, and those kets
# carry a small simplex no matter how large the space is.

# In[1]:

import math

import numpy as np

import ebr

np.set_printoptions(precision=6, suppress=True)


# In[2]:

psi = ebr.ket_from_amplitudes(np.sqrt([0.2, 0.2, 0.2, 0.1, 0.1, 0.1, 0.05, 0.05]))
parts = ebr.PartitionProjectors.from_index_sets(8, [[0, 1, 2], [3, 4, 5, 6, 7]])
em = ebr.build_effective_measurement(psi, parts)
print(em.probabilities(), em.simplex.vertices)


# Position on a grid: a Gaussian split at x = 0.5.  The exact left weight is
# ``(1 + erf(1/2)) / 2``; the grid error shrinks like ``dx^2``.

# In[3]:

exact = 0.5 * (1 + math.erf(0.5))
for n_points in (64, 256, 1024, 4096):
    ket, parts, _ = ebr.discretize_position(-8, 8, n_points, lambda x: np.exp(-x**2 / 2), [0.5])
    p = ebr.build_effective_measurement(ket, parts).probabilities()
    print(n_points, p[0], abs(p[0] - exact))


# Rotating the outcome basis inside the same span moves the vertices but
# keeps them on the same sphere.

# In[4]:

h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
print(ebr.rotate_outcome_basis(h, ebr.computational_basis(2)))
