"""Magic of T states: stabilizer enumeration, SDP values, two resources.

Stabilizer states are the joint +1 eigenstates of n independent commuting
Pauli operators; enumerating them gives the explicit constraint list for the
magic-robustness SDP.  T states are the canonical magic states, but they
carry *more* computational-basis coherence than magic, so a work-extraction
protocol tailored to coherence beats the magic-tailored one.
"""

import numpy as np

from robustwork import (
    enumerate_stabilizer_states,
    projector,
    robustness_dual,
    robustness_pure_coherence,
    single_qubit_magic_witness,
    stabilizer_set,
    stabilizer_state_count,
    tstate_magic_robustness,
)
from robustwork.states import t_state

print("=== stabilizer state counts ===")
for n in (1, 2, 3):
    states = enumerate_stabilizer_states(n)
    print(f"n={n}: enumerated {len(states):>4}, product formula {stabilizer_state_count(n):>4}")

print()
print("=== magic robustness of |T>^N ===")
for n in (1, 2):
    res = robustness_dual(projector(t_state(n)), stabilizer_set(n), tol=1e-8)
    print(
        f"N={n}: SDP {res.value:.8f}  closed form {tstate_magic_robustness(n):.8f}  "
        f"gap {res.gap:.1e}"
    )

print()
print("=== the single-qubit optimal magic witness ===")
Y1 = single_qubit_magic_witness()
print(np.round(Y1, 6))
print(f"Tr[Y1 |T><T|] = {np.trace(Y1 @ projector(t_state(1))).real:.10f}  (= 4 - 2 sqrt 2)")
stab1 = stabilizer_set(1)
cons = [np.trace(Y1 @ projector(v)).real for v in stab1.vectors]
print(f"max over the 6 stabilizer states: {max(cons):.10f}  (feasibility is tight)")

print()
print("=== coherence beats magic for every N ===")
print(f"{'N':>2} {'magic (1.1716^N - 1)':>22} {'coherence (2^N - 1)':>20}")
for n in range(1, 11):
    print(f"{n:>2} {tstate_magic_robustness(n):>22.6f} "
          f"{robustness_pure_coherence(t_state(n)):>20.6f}")
print("the coherence-tailored protocol extracts exponentially more work")
