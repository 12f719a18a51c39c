# coding: utf-8

# # Standard frame and volumes in many dimensions
#
# In a frame of N orthogonal vectors the outcome probability becomes a plain
# scalar product, and the simplex vertices approach the orthonormal frame as
# N grows.

# In[1]:

import numpy as np

import ebr
from ebr.volumes import (
    log_ball_volume,
    log_inscribed_simplex_volume,
    log_inscribed_simplex_volume_asymptotic,
    volume_table,
)

np.set_printoptions(precision=4, suppress=True)


# In[2]:

f = ebr.build_standard_frame(4)
p = np.array([0.1, 0.2, 0.3, 0.4])
s = ebr.to_standard_state(p, f)
print(s, ebr.standard_probabilities(s, f))
print([round(ebr.build_standard_frame(n).vertex_limit_defect(), 4) for n in (2, 4, 16, 64)])


# Unit-ball volumes peak at M = 5 and then fall off quickly.

# In[3]:

for M, exact, asym, ratio in volume_table(10):
    print(M, round(exact, 4), ratio)
print(ebr.unit_ball_argmax(), log_ball_volume(10_000))


# The inscribed simplex is much smaller than its ball.  Its leading-order
# form is off by a constant factor that tends to sqrt(e).  Past a few hundred
# dimensions both underflow, so compare logs.

# In[4]:

for M in (10, 100, 1000):
    print(M, np.exp(log_inscribed_simplex_volume(M) - log_inscribed_simplex_volume_asymptotic(M)), np.sqrt(np.e))
