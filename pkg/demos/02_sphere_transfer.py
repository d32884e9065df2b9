"""Spherical array transfer function and its sinc limit.

With microphones spread uniformly over a sphere, the summed response to an
external plane wave follows sin(x)/x with x = 2*pi*f*r/c, independent of the
wave direction. The first zero f0 = c/(2r) is the natural test fundamental:
measurements there see the centered source but not the outside world. This
script shows how fast the discrete Fibonacci-lattice array converges to the
continuum curve.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import emtest as em

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

r, c = 0.1, 340.0
medium = em.Medium(c)
f0 = em.fundamental_for_radius(r, c)
print(f"r = {r} m  ->  f0 = {f0} Hz")

freqs = np.linspace(0.0, 4 * f0, 400)
reference = em.transfer_sphere(freqs, r, c)
stim = em.PlaneWave(p0=1.0, f=1.0, direction=(1, 0, 0))

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.2))
errors = []
counts = (64, 256, 1024, 4096)
for n in counts:
    g = em.spherical_em(r, n)
    values = em.numeric_transfer(g, stim, freqs, medium).values
    errors.append(np.max(np.abs(values - reference)))
    if n in (64, 4096):
        ax1.plot(freqs, values, label=f"numeric, n = {n}")
ax1.plot(freqs, reference, "k--", label="sin(x)/x")
ax1.axvline(f0, color="gray", ls=":")
ax1.set_xlabel("frequency, Hz")
ax1.set_ylabel("normalized response")
ax1.set_title("transfer curve")
ax1.legend()

ax2.loglog(counts, errors, "o-")
ax2.set_xlabel("microphone count")
ax2.set_ylabel("sup-norm error")
ax2.set_title("convergence to the continuum")
fig.tight_layout()
fig.savefig(OUT / "sphere_transfer.png", dpi=120)
print("wrote", OUT / "sphere_transfer.png")
for n, err in zip(counts, errors):
    print(f"n = {n:5d}: sup-norm error = {err:.2e}")

# direction independence: two orthogonal stimuli, identical curves
g = em.spherical_em(r, 2048)
a = em.numeric_transfer(g, em.PlaneWave(1.0, 1.0, (1, 0, 0)), freqs, medium).values
b = em.numeric_transfer(g, em.PlaneWave(1.0, 1.0, (0, 1, 0)), freqs, medium).values
print("direction independence, max pointwise difference:", np.max(np.abs(a - b)))
