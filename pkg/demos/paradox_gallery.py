"""Four classic operator 'paradoxes', each staged numerically and resolved.

1. In a momentum eigenvector the canonical relation seems to force
   <psi|[x, p]|psi> = i hbar, yet direct evaluation gives 0.  The catch:
   x psi has left the quasi-periodic domain, so the manipulation that
   produced i hbar was illegal.
2. Tr[A, B] = 0 for finite matrices, so [x, p] = i hbar 1 would need
   trace i hbar n.  Truncations pay for the identity with O(1) corner
   entries; the scaled trace vanishes to rounding for every pair.
3. The box Hamiltonian and momentum 'commute' as differential
   expressions, but no box eigenfunction is a momentum eigenfunction:
   the shared-eigenbasis argument needs domains, not formulas.
4. p looks hermitian in a cosine basis on [0, l], but those functions
   lie outside every self-adjoint domain of p: the matrix is
   antisymmetric where it should be symmetric, with a constant -4i/l
   defect on the whole odd sublattice.

Run:  python demos/paradox_gallery.py
"""

from saext import (
    commuting_observables_demo,
    cosine_basis_momentum_matrix,
    eigenvector_commutator_demo,
    hermiticity_defect_demo,
    trace_commutator_check,
)


def fmt(value):
    if isinstance(value, complex):
        return f"{value.real:+.6g}{value.imag:+.6g}i"
    return f"{value:+.6g}"


def show(report):
    print(f"[paradox {report.id}] {report.verdict}")
    for name in sorted(report.quantities):
        q = report.quantities[name]
        print(f"    {name:38s} {fmt(q.value):>24s}   (tol {q.tolerance:g})")
    print()


show(eigenvector_commutator_demo(theta=0.7, n=64, mode=2))

show(trace_commutator_check(n=8, trials=25, seed=3))

show(commuting_observables_demo(a=1.0, n_max=6))

show(hermiticity_defect_demo(l=2.0, m_basis=12))
mat = cosine_basis_momentum_matrix(l=2.0, m_basis=4).p
print("    first rows of the cosine-basis p matrix (note the asymmetry):")
for row in mat:
    print("      " + "  ".join(f"{z.imag:+8.5f}i" if z.imag else f"{z.real:+8.5f} "
                               for z in row))
