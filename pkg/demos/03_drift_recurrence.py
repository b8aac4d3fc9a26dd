"""
Recurrence of the free drift
============================

The drift flow exp(tA) lives on a torus of phases.  When the drift
eigenvalues are rationally independent the flow never exactly closes, yet
it returns arbitrarily close to where it started.  That almost-periodicity
is what lets steering schedules "run time backwards" without ever inverting
anything: waiting is as good as undoing.
"""

import numpy as np

from reachctl import ControlSystem, StateVector, recurrence_scan

# Frequencies 1 and sqrt(2): incommensurate, so the orbit is dense on the
# phase torus and near-returns are governed by how well sqrt(2) is
# approximated by rationals.
A = np.diag([1j, 1j * np.sqrt(2.0)])
sys = ControlSystem(A, 2.0 * A)
s0 = StateVector(np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0))

for tol in (0.3, 0.1, 0.05, 0.01):
    rt = recurrence_scan(sys, s0, tol=tol, t_max=3000.0, dt=1e-3)
    if rt is None:
        print(f"tol {tol:5}: no return within t_max")
    else:
        print(f"tol {tol:5}: first return at t = {rt:10.4f}  (~{rt / np.pi:7.3f} pi)")

# The Pell convergents 3/2, 7/5, 17/12, 41/29, 99/70 of sqrt(2) predict the
# good return times: t ~ 2 pi q for denominators q with q*sqrt(2) nearly an
# integer.  The tol 0.05 return sits at the 41/29 convergent, well before
# the 99/70 one that guarantees a return below 140 pi a priori.
print(f"2 pi * 29 = {2 * np.pi * 29:.4f},  2 pi * 70 = {2 * np.pi * 70:.4f}")

# A tolerance too tight for the horizon reports absence rather than
# guessing; recurrence is guaranteed eventually, not necessarily soon.
short = recurrence_scan(sys, s0, tol=1e-6, t_max=50.0, dt=1e-3)
print(f"tol 1e-06, t_max 50: {short!r}")
