"""The witness-Hamiltonian work-extraction cycle.

Four stages: (a) isothermally ramp the working medium from H = 0 to the
witness Hamiltonian lambda*Y, (b) swap in the fuel state at zero work cost,
(c) rethermalize, harvesting F(rho) - F(tau), (d) ramp back, exactly
refunding stage (a).  The net output is the free-energy excess of the fuel,
and the ratio against the best free state approaches 1 + R as lambda*beta
grows (exactly 1 + R at zero temperature).
"""

import math


from robustwork import (
    INF_BETA,
    ThermoContext,
    incoherent_set,
    projector,
    simulate_protocol,
    theorem1_bound,
    verify_eq10_ratio,
    verify_theorem1,
)
from robustwork.states import golden_state

d = 4
psi = golden_state(d)
rho = projector(psi)
witness = d * rho  # optimal coherence witness for the golden state
spec = incoherent_set(d)

print("=== one protocol run (lambda = 2, beta = 1) ===")
ctx = ThermoContext(beta=1.0, lam=2.0)
trace = simulate_protocol(rho, witness, ctx)
for stage, val in (("a: ramp 0 -> lambda*Y", trace.dw_a),
                   ("b: swap in fuel      ", trace.dw_b),
                   ("c: rethermalize      ", trace.dw_c),
                   ("d: ramp back         ", trace.dw_d)):
    print(f"  stage {stage}  dW = {val:+.6f}")
print(f"  net output = {trace.total:.6f}  (= F(rho) - F(tau) under lambda*Y)")

print()
print("=== the advantage ratio grows to 1 + R with lambda*beta ===")
print(f"{'lambda*beta':>12} {'min ratio over free':>20} {'theorem1 bound':>16}")
for lb in (10.0, 100.0, 1000.0, 10000.0):
    ctx = ThermoContext(beta=1.0, lam=lb)
    rep = verify_theorem1(rho, spec, ctx, witness=witness)
    print(f"{lb:>12.0f} {rep.lhs:>20.8f} {rep.rhs:>16.8f}")

print()
print("=== zero temperature: the ratio is exactly 1 + R = d ===")
ctx = ThermoContext(beta=INF_BETA, lam=1.0)
rep = verify_theorem1(rho, spec, ctx, witness=witness)
print(f"achieved {rep.lhs:.12f}   bound {rep.rhs:.12f}")

print()
print("=== the operational chain behind the bound ===")
ctx = ThermoContext(beta=1.0, lam=1e4 * math.log(d))
rep = verify_eq10_ratio(rho, spec, ctx, epsilon=0.05, witness=witness)
print(f"relative work output >= (1+R)(1-eps): {rep.lhs:.4f} >= {rep.rhs:.4f} "
      f"-> satisfied={rep.satisfied}")
rep1 = verify_theorem1(rho, spec, ctx, witness=witness)
scalar = theorem1_bound(d - 1, 0.0, rep1.detail["S_tau"], ctx)
print(f"scalar bound for comparison: {scalar:.4f}")
