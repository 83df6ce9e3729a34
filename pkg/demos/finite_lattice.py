"""Walk a five-atom closure space: points, lattice, and complements.

Run as a script; prints everything it claims.
"""

from __future__ import annotations

from quasivariety import (
    closure,
    complement_op_discriminated,
    complement_op_maximal,
    complement_witness,
    enumeration_of,
    presentation_operator,
)
from quasivariety.finite import (
    all_points,
    brute_closure,
    finite_quasivariety,
    is_discriminator,
    join,
    maximal_points,
    meet,
)


def main() -> None:
    q = finite_quasivariety(5, [
        ([0], 1),
        ([1, 2], 3),
        ([4], 0),
        ([3, 4], 2),
    ])
    print("rules:")
    for r in q.rules:
        print("  ", r)

    points = all_points(q)
    print(f"\n{len(points)} points; the space is closed under intersection:")
    for p in sorted(points, key=lambda s: (len(s), sorted(s))):
        print("  ", sorted(p))

    a = brute_closure(q, [0])
    b = brute_closure(q, [2])
    print("\nmeet and join of", sorted(a), "and", sorted(b))
    print("  meet:", sorted(meet(q, a, b)))
    print("  join:", sorted(join(q, a, b)))

    print("\nmaximal points (only the full universe sits above them):")
    for m in maximal_points(q):
        print("  ", sorted(m))

    # budgeted saturation agrees with the brute-force fixpoint
    run = closure([0], q.stream(), len(q.rules))
    assert run.derived == a and run.fixpoint_certified
    print("\nengine closure of {0} =", sorted(run.derived), "(fixpoint certified)")

    # certify the complement of a maximal point two ways
    x = max(maximal_points(q), key=len)
    comp = sorted(q.universe() - x)
    f = presentation_operator(q.stream())
    g = complement_op_maximal(f, comp[0])
    certified = [y for y in range(q.n) if complement_witness(g, y, x) is not None]
    print("\ncomplement of the maximal point", sorted(x), "by anchored witness:", certified)

    disc = frozenset(comp)
    assert is_discriminator(q, x, disc)
    gd = complement_op_discriminated(f, enumeration_of(comp))
    certified_d = [y for y in range(q.n) if complement_witness(gd, y, x) is not None]
    print("same complement through the discriminator", comp, ":", certified_d)
    assert certified == certified_d == comp


if __name__ == "__main__":
    main()
