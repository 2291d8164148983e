"""Compare Riemann-Roch genus against section counts of explicit models.

X_12 in P(1,3,4,5,7) realizes q = 8 with basket (5,7); the mu_2 quotient
of {x1^8 + x2^4 + x3 x5 + x4^2 = 0} in P(1,2,3,4,5) realizes the q = 7
torsion row with basket (2,6,10).
"""

from fractions import Fraction

from qfano.basket import Basket, TorsionAssignment
from qfano.riemann_roch import genus, make_geometry


def monomials(weights, degree, action=None, order=1):
    count = 0

    def rec(pos, left, char):
        nonlocal count
        if pos == len(weights):
            count += left == 0 and char % order == 0
            return
        for e in range(left // weights[pos] + 1):
            rec(pos + 1, left - e * weights[pos], char + e * (action[pos] if action else 0))

    rec(0, degree, 0)
    return count


def main():
    g = make_geometry(8, Basket.parse("5:2,7:2"))
    h0 = monomials((1, 3, 4, 5, 7), 8)
    print(f"X_12, q=8, B=(5,7): A^3={g.a_cubed}  h0(-K)={h0}  genus={genus(g)}  dim|-K|={h0 - 1}")

    g = make_geometry(7, Basket.parse("2,6,10:3"), torsion=TorsionAssignment((0, 3, 5), 2))
    h0 = monomials((1, 2, 3, 4, 5), 7, (0, 1, 1, 1, 1), 2)
    print(f"X_8/mu_2, q=7, B=(2,6,10): A^3={g.a_cubed}  h0(-K)={h0}  genus={genus(g)}  dim|-K|={h0 - 1}")
    assert g.a_cubed == Fraction(1, 30)


if __name__ == "__main__":
    main()
