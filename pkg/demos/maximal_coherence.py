"""The universal maximally coherent mixed state (MCMS): rotating any
state's eigenbasis onto the Fourier basis maximizes every coherence
monotone at once, and the maximum equals the distance to the maximally
mixed state.

Run:  python demos/maximal_coherence.py
"""

import numpy as np

from cohpure import (
    apply_channel,
    c_alpha,
    c_distance,
    c_rel_entropy,
    haar_unitary,
    mcms,
    mio_channel_from_unitary,
    optimal_unitary,
    p_distance,
    random_density,
    stream,
    validate,
)

rng = stream(42)
rho = random_density(3, 3, rng)
print("random qutrit spectrum:", np.round(rho.spectrum.values, 6))

v = optimal_unitary(rho)
rotated = validate(v @ rho.mat @ v.conj().T)
rho_max = mcms(rho.spectrum, 3)
print("|V rho V+ - mcms|_max =", np.max(np.abs(rotated.mat - rho_max.mat)))

print("\nmaximal coherence equals the distance to 1/d:")
for name in ("rel_entropy", "trace_norm", "schatten_2", "one_minus_fidelity"):
    at_max = c_distance(rotated, name)
    ceiling = p_distance(rho, name)
    print(f"  {name:>20}: C(rho_max) = {at_max:.9f}   D(rho, 1/d) = {ceiling:.9f}")

print("\nno unitary can do better (20 Haar draws):")
worst = -np.inf
for _ in range(20):
    u = haar_unitary(3, rng)
    worst = max(worst, c_rel_entropy(validate(u @ rho.mat @ np.conj(u).T)))
print(f"  best over draws: {worst:.9f}  <=  C(rho_max) = {c_rel_entropy(rho_max):.9f}")

print("\nRenyi-family monotones agree on the ordering:")
for alpha in (0.5, 2.0):
    print(f"  alpha = {alpha}: C(rho) = {c_alpha(rho, alpha):.6f}  C(rho_max) = {c_alpha(rho_max, alpha):.6f}")

print("\nthe rotation is implementable by a maximally incoherent channel:")
u = haar_unitary(3, rng)
channel = mio_channel_from_unitary(u)
out = apply_channel(channel, rho_max)
target = u @ rho_max.mat @ np.conj(u).T
print("  |channel(rho_max) - U rho_max U+|_max =", np.max(np.abs(out.mat - target)))
incoherent = apply_channel(channel, validate(np.diag([1.0, 0.0, 0.0])))
print("  incoherent input lands on 1/d:", np.round(np.diagonal(incoherent.mat).real, 12))
