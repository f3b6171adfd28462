# %% [markdown]
# # Diagonal of S^k versus the leading eigenvector
#
# For a connected similarity graph, the square roots of the diagonal of
# S^k line up with the dominant eigenvector of S as k grows. That is why
# the last surviving center sits where the eigenvector peaks.

# %%
import numpy as np

from cce import from_matrix, gaussian_kernel, principal_eigenvector, run_evolution, verify_theorem

S = from_matrix([
    [1.0000, 0.7245, 0.2852, 0.1832],
    [0.7245, 1.0000, 0.6547, 0.4585],
    [0.2852, 0.6547, 1.0000, 0.2453],
    [0.1832, 0.4585, 0.2453, 1.0000],
])
est = principal_eigenvector(S)
print("u1 =", est.vector, "lambda1 =", est.eigenvalue, "iterations:", est.iterations)

# %%
for k in (1, 2, 4, 8, 16, 32, 64):
    r = verify_theorem(S, k)
    print(f"k={k:3d}  max ratio deviation {r.max_deviation:.3e}  ({r.status})")

# %% [markdown]
# Larger example: the final center of a Gaussian point cloud against the
# eigenvector's largest component.

# %%
rng = np.random.default_rng(3)
S = gaussian_kernel(rng.normal(size=(80, 2)), sigma=0.6)
trace = run_evolution(S, k_max=5000)
u = principal_eigenvector(S).vector
print("final center:", trace[-1].centers, "argmax u1:", int(np.argmax(u)))
print(verify_theorem(S, 256).max_deviation)

# %% [markdown]
# Disconnected graphs get flagged instead of a meaningful number.

# %%
block = np.array([[1.0, 0.5], [0.5, 1.0]])
two = from_matrix(np.kron(np.eye(2), block))
print(verify_theorem(two, 50).status)
