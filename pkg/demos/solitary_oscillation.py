# The single slow oscillation that survives at long times.
#
# Off a freezing point the modes dephase, except near k = pi/2 where the
# quasi-energy is stationary. That stationary point leaves one slow
# frequency omega_Q in M_z(nT), with an amplitude decaying like 1/sqrt(n).

# %%
import numpy as np

from floquet_ising import DriveParams, asymptote, omega_q, time_series
from floquet_ising.analysis import envelope_exponent

d = DriveParams(20.0, 0.1)

# %% [markdown]
# Closed-form frequency and long-time form.

# %%
per_cycle, angular = omega_q(d)
asym = asymptote(d)
print(f"omega_Q = {angular:.5f} per unit time ({per_cycle:.5f} per cycle)")
print(f"T_Q = {2 * np.pi / angular:.4f}")
print(f"M_0 = {asym.m0:.5f}, curvature at pi/2 = {asym.c2:.5f}")

# %% [markdown]
# Compare the stroboscopic series with both asymptotic forms. The plain
# form keeps only the cosine part of the Fresnel integral. The stationary
# phase form keeps the full integral and tracks the data far more closely.

# %%
ts = time_series(d, 4000, 1)
n = np.arange(500, 4000)
plain = np.max(np.abs(asym.evaluate(n) - ts.values[n]))
full = np.max(np.abs(asym.evaluate_stationary_phase(n) - ts.values[n]))
print(f"max error over n in [500, 4000): plain {plain:.2e}, stationary phase {full:.2e}")

# %% [markdown]
# The envelope of the oscillation, fitted on log-log axes.

# %%
fit = envelope_exponent(time_series(d, 5001, 1), n_min=200, n_max=5000)
print(f"envelope exponent {fit.exponent:.4f}, amplitude {fit.amplitude:.4f}")
for i in range(0, fit.n.size, max(1, fit.n.size // 10)):
    print(f"  n={fit.n[i]:5d}  |M_z - mean|={abs(fit.extrema[i]):.3e}")
