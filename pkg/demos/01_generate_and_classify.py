"""
Generating and classifying control Lie algebras
===============================================

Start from a drift generator A and a control generator B, both
skew-Hermitian, and build an orthonormal basis of the smallest Lie algebra
containing both.  The dimension of that algebra is the whole controllability
story for bilinear systems c' = A c + B c eps(t).
"""

import numpy as np

from reachctl import classify, closure, member

# The workhorse two-level system: drift rotates about z, control about x.
A = np.array([[1j, 0], [0, -1j]])
B = np.array([[0, 1j], [1j, 0]])

basis = closure([A, B])
print(f"generators: 2, closure dimension: {basis.dim}")

# Every basis element carries the bracket word that produced it, so the
# generation process is auditable after the fact.
for word, elem in zip(basis.provenance, basis.elements):
    print(f"  {word}")

# Dimension 3 on a 2-level system means su(2): every traceless
# skew-Hermitian matrix is a reachable direction.
label = classify(basis).label
print(f"label: {label.value}")

# Membership is a numeric query: distance from a candidate matrix to the
# algebra.  i*sigma_y was never a generator, yet it lies inside.
sigma_y = np.array([[0, -1j], [1j, 0]])
print(f"member(i*sigma_y) residual: {member(basis, 1j * sigma_y):.2e}")

# The identity direction i*I is NOT in su(2); the residual reports exactly
# the component outside the algebra.
print(f"member(i*I) residual: {member(basis, 1j * np.eye(2)):.6f} (= sqrt(2))")

# Adding i*I as a third generator upgrades the algebra to all of u(2).
full = closure([1j * np.eye(2), A, B])
print(f"with i*I adjoined: dimension {full.dim}, label {classify(full).label.value}")

# Commuting generators, by contrast, stay one-dimensional no matter how
# many brackets are taken: B = 2A brings nothing new.
flat = closure([A, 2 * A])
print(f"commuting pair: dimension {flat.dim}, label {classify(flat).label.value}")
