# %% [markdown]
# # Start-up of pressure-driven channel flow
#
# The velocity profile is reduced to a single parabola ``v(t) (1 - y^2)``.
# The variational schemes work with the channel-integrated least-squares
# Lagrangian, the baselines with the averaged ODE ``vdot = 1.5 gamma - 3 v``.
# Errors are measured at the centerline against the Fourier-series solution.

# %%
import numpy as np

import dissipative_symplectic as ds
from dissipative_symplectic import harness

from _plot import loglog_errors, print_table

p = ds.ChannelParams(gamma=2.0)
t = np.array([0.0, 0.1, 0.5, 1.0, 3.0, 100.0])
print("exact centerline:", ds.channel_exact_centerline(p, t))

# %%
methods = ["method1", "method2", "implicit-euler", "rk4"]
hs = [0.5, 0.1, 0.01, 0.001]
records, failed = harness.sweep("channel", methods, hs, 3.0, gamma=2.0)
print_table(records)

# %% [markdown]
# A one-mode profile cannot match the true start-up transient, so no
# method converges to zero error.  What differs is the plateau: Method I
# weights the residual over the whole channel and sits well below the rest.

# %%
print("figure:", loglog_errors("channel_flow", records, "channel start-up, gamma = 2"))
