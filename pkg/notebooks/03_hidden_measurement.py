# coding: utf-8

# # Hidden measurement interactions
#
# A measurement draws a point uniformly on the simplex.  The on-simplex state
# cuts the simplex into N regions; the outcome is the region that contains
# the draw.  Frequencies then follow the Born rule.

# In[1]:

import io
import json

import numpy as np

import ebr

np.set_printoptions(precision=4, suppress=True)


# In[2]:

kets = [ebr.basis_ket(3, i) for i in range(3)]
psi = ebr.ket_from_amplitudes(np.sqrt([0.5, 0.3, 0.2]))
rec = ebr.run_measurement(psi, kets, 7)
print(rec.sampled_bary, rec.outcome_index, rec.probabilities)


# A batch with a fixed seed.  The result does not depend on the number of
# worker threads.

# In[3]:

exp = ebr.Experiment(psi, kets, 200_000, seed=7, workers=4)
rep = ebr.run_experiment(exp)
print(rep.empirical, rep.expected, rep.max_sigma_deviation)
print(rep == ebr.run_experiment(ebr.Experiment(psi, kets, 200_000, seed=7)))


# Records stream as JSON lines; any single one can be regenerated later.

# In[4]:

buf = io.StringIO()
ebr.run_experiment(ebr.Experiment(psi, kets, 5, seed=7), records=buf)
lines = [json.loads(x) for x in buf.getvalue().splitlines()]
print(lines[3]["outcome_index"], ebr.replay_record(ebr.Experiment(psi, kets, 5, seed=7), 3).outcome_index)
