"""Certifying one scenario solution from its observed counts.

A convex scenario program was solved on n = 500 sampled constraints and
turned out to have 3 support constraints; 500 fresh validation samples
produced 2 violations.  How much violation probability can the solution
be certified against, at confidence 1 - 1e-6?

Four certificates are compared:

* the a priori bound, available before seeing anything,
* the additive Chernoff bound from the validation counts alone,
* the exact Clopper-Pearson bound from the validation counts alone,
* the two-indexed bound combining support and validation information.
"""

from scencert import (
    CertificateProblem,
    CoefficientVector,
    apriori_epsilon,
    chernoff_bound,
    clopper_pearson,
    solve_root,
    wait_and_judge,
)

n, m, zeta, beta = 500, 500, 18, 1e-6
support_count, violations = 3, 2

problem = CertificateProblem(n, m, zeta, beta)
weights = CoefficientVector.uniform(problem)

print(f"design samples n = {n}, validation samples m = {m}")
print(f"observed: {support_count} support constraints, "
      f"{violations} validation violations\n")

prior = apriori_epsilon(n, zeta, beta)
print(f"a priori bound (sample size only)          {prior:.4f}")

rho = chernoff_bound(m, violations, beta)
print(f"one-sided Chernoff (validation only)       {rho.value:.4f}"
      + ("  [exceeds 1]" if rho.exceeds_one else ""))

eta = clopper_pearson(m, violations, beta)
print(f"one-sided Clopper-Pearson (validation only) {eta:.4f}")

judged = wait_and_judge(problem, weights)[support_count]
print(f"support-count bound (no validation)        {judged:.4f}")

combined = 1.0 - solve_root(support_count, violations, problem, weights)
print(f"two-indexed bound (support + validation)   {combined:.4f}")

print("\nCombining both information sources certifies the lowest risk:")
print(f"  {combined:.4f} < min({eta:.4f}, {judged:.4f}) < {prior:.4f}")
