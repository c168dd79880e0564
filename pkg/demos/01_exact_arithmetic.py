"""Exact arithmetic in Z[zeta_5] and Q(tau).

Every geometric decision in the package reduces to the sign of some
a + b*tau with rational a, b.  This script shows the pieces.
"""

from penrose_tomo.cyclotomic import TAU_CYC, ZETA, CycInt, Direction, embed, galois, orient
from penrose_tomo.qtau import QTau

# tau is a unit of the ring, tau = -zeta^2 - zeta^3
print("tau^2 == tau + 1:", TAU_CYC * TAU_CYC == TAU_CYC + CycInt(1))

# a number extremely close to zero still has an exact sign
x = QTau(6765, -4181)  # F(20) - F(19) tau
print(f"{x} = {float(x):.3e}, sign {x.sign()}")

# the star map uses the Galois automorphism zeta -> zeta^2
z = CycInt(1, 2, 0, -1)
print("z =", z, " sigma_2(z) =", galois(z, 2))

# directions are parallel classes; the key does not depend on the vector chosen
d = Direction(CycInt(1, 1, 0, 0))
print("same direction after scaling by -tau:", Direction(-CycInt(1, 1, 0, 0) * TAU_CYC) == d)

# lines in a direction are labelled by exact offsets
a = CycInt(0)
print("offset of 0 and of 0 + u along u agree:", d.offset(a) == d.offset(a + d.representative))

# orientation of three points, decided exactly
p, q, r = CycInt(0), CycInt(1), ZETA
print("orient(0, 1, zeta) =", orient(embed(p), embed(q), embed(r)))
