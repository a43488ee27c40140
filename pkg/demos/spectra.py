# Two timescales in the Fourier spectrum of M_z(t).

# %%
import numpy as np

from floquet_ising import DriveParams, omega_q, quasienergy_spectrum, time_series
from floquet_ising.analysis import dft_spectrum, peak_frequencies, slow_peak

d = DriveParams(20.0, 0.1)

# %% [markdown]
# 4000 cycles at 20 samples per cycle. A Hann taper keeps the drifting
# 1/sqrt(n) amplitude from leaking across the spectrum.

# %%
spec = dft_spectrum(time_series(d, 4000, 20))
print("strongest peaks:", [(round(f, 4), round(m, 2)) for f, m in peak_frequencies(spec, 4)])
print(f"slow peak {slow_peak(spec, d.period)[0]:.5f} vs closed form {omega_q(d)[1]:.5f}")
print(f"drive frequency 2 pi / T = {2 * np.pi / d.period:.4f}")

# %% [markdown]
# The per-mode quasi-energies. At a freezing point they collapse towards
# zero; away from it they spread over a band.

# %%
for p in (1.0, 1.5):
    qs = quasienergy_spectrum(DriveParams.from_p(p, gamma0=20.0), 256)
    print(f"p={p}: quasi-energy spread per cycle {qs.spread:.5f}, stationary k {qs.stationary_k}")
