"""Single-qubit geometry: with the trace norm, coherence is the Euclidean
distance to the incoherent axis of the Bloch ball and purity is the
distance to its center.

Run:  python demos/bloch_ball.py
"""

import math

import numpy as np

from cohpure import c_distance, c_l1, c_rel_entropy, from_bloch, p_distance, p_geometric

print("point (x, y, z)      c_trace  dist-to-axis   p_trace  radius    c_l1")
print("-" * 74)
rng = np.random.default_rng(7)
points = [(0.0, 0.0, 0.0), (0.8, 0.0, 0.0), (0.0, 0.0, 0.8), (0.3, 0.4, 0.5)]
points += [tuple(v) for v in rng.uniform(-0.55, 0.55, size=(4, 3))]
for x, y, z in points:
    rho = from_bloch((x, y, z))
    c_tr = c_distance(rho, "trace_norm")
    p_tr = p_distance(rho, "trace_norm")
    axis = math.hypot(x, y)
    radius = math.sqrt(x * x + y * y + z * z)
    print(
        f"({x:+.2f},{y:+.2f},{z:+.2f})   {c_tr:8.5f}  {axis:8.5f}      "
        f"{p_tr:8.5f} {radius:8.5f}  {c_l1(rho):7.5f}"
    )

print()
print("On the incoherent axis the coherence vanishes while purity grows:")
for z in (0.0, 0.25, 0.5, 0.75, 1.0):
    rho = from_bloch((0, 0, z))
    print(
        f"  z = {z:4.2f}: c_rel_entropy = {c_rel_entropy(rho):8.6f}, "
        f"p_trace = {p_distance(rho, 'trace_norm'):8.6f}, p_geometric = {p_geometric(rho):8.6f}"
    )
