"""The smooth dyadic partition of unity and its tensor and cube versions."""
import itertools

import numpy as np

from mixsmooth.dyadic_systems import phi, phi_fattened, phi_tensor, psi, psi0

xi = np.linspace(0, 20, 9)
print("xi        ", np.round(xi, 2))
for j in range(5):
    print(f"phi_{j}     ", np.round(phi(j, xi), 3))

J = 6
print("\nsum_{j<=J} phi_j == phi_0(2^-J xi):",
      np.allclose(sum(phi(j, xi) for j in range(J + 1)), phi(0, xi / 2**J)))
on = phi(2, xi) > 0
print("fattened phi~_2 on supp phi_2:", phi_fattened(2, xi[on]))

# mixed tensor bands telescope to the cube cutoff at the top level
x = np.random.default_rng(0).uniform(-30, 30, (1000, 2))
total = sum(phi_tensor(k, x) for k in itertools.product(range(J + 1), repeat=2))
print("tensor telescoping error:", np.abs(total - psi0(x / 2**J)).max())
print("psi_1 at (1.75, 0):", psi(1, np.array([1.75, 0.0])))
