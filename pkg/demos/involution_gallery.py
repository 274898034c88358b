"""Tour of Hermitian involutions in dimensions 2, 3, and 4.

Builds operators from closed forms and from projector flips, shows that the
diagonal pins every off-diagonal magnitude in the rank-one-deficiency
branches, and prints the family algebra tables.
"""

import numpy as np

from eigenschaft import (
    DiagSpec,
    H2Params,
    ProjectorSet,
    algebra_table,
    build_from_diag,
    build_h2,
    build_kron_family,
    complement_family,
    from_projector_flip,
    hadamard,
    to_projectors,
    validate,
)


def banner(title):
    print("\n" + "=" * 72)
    print(title)
    print("=" * 72)


banner("Dimension 2: one mixing angle, one phase")
for gamma_deg, dphi_deg in [(45, 0), (0, 0), (60, 45), (90, 90)]:
    op = build_h2(H2Params(np.radians(gamma_deg), np.radians(dphi_deg)))
    rep = validate(op)
    print(f"gamma={gamma_deg:>3} dphi={dphi_deg:>3} deg | "
          f"trace class {op.trace_class} | "
          f"involution residual {rep.involution_residual:.2e}")
print("\nThe 45/0 case is the symmetric 50/50 splitter:")
print(np.round(hadamard().matrix.real, 6))

banner("Dimension 3: the diagonal determines the off-diagonal magnitudes")
spec = DiagSpec(dim=3, alphas=(0.2, 0.3, 0.5), trace_sign=1,
                phases=(0.8, -0.4))
op3 = build_from_diag(spec)
print("diagonal alphas:", spec.alphas, "-> matrix:")
print(np.round(op3.matrix, 4))
rep3 = validate(op3)
print("structural relation residuals:",
      {k: f"{v:.1e}" for k, v in rep3.relation_residuals.items()})
print("note the dependent phase of the (2,3) entry: it is exactly the "
      "difference of the two free phases")

banner("Projector interconversion")
projectors, signs = to_projectors(op3)
print("eigenvalue signs:", signs)
rebuilt = from_projector_flip(projectors, signs)
print("rebuild residual:",
      f"{np.max(np.abs(rebuilt.matrix - op3.matrix)):.2e}")

banner("Dimension 3 family algebra: H1 H2 = -H3, all commuting")
family3 = complement_family(ProjectorSet.standard_basis(3))
table3 = algebra_table(family3)
print("max commutator:", table3.max_commutator)
print("product (1,2) expansion coefficients [I, H1, H2, H3]:",
      np.round(table3.products[(0, 1)].coefficients, 3))
print("direct check |H1 H2 + H3| =",
      np.max(np.abs(family3[0].matrix @ family3[1].matrix
                    + family3[2].matrix)))

banner("Dimension 4: two routes to the traceless commuting triple")
d2 = build_h2(H2Params(0.0, 0.0))          # diag(1, -1)
kron_triple = build_kron_family(d2, d2)
flip_triple = complement_family(ProjectorSet.standard_basis(4),
                                kind="traceless")
for a, b in zip(kron_triple, flip_triple):
    print("kron member diag:", np.round(np.diag(a.matrix).real, 1),
          "| flip member diag:", np.round(np.diag(b.matrix).real, 1))
table4 = algebra_table(list(kron_triple))
print("triple closes under multiplication: H1 H2 = H3, residual",
      f"{table4.products[(0, 1)].residual:.1e}")
