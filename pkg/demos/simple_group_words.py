"""Decide the word problem of the (2, 3, 5) triangle presentation.

The presentation <a, b | a^2, b^3, (ab)^5> marks the 60-element
alternating group.  Since that quotient is simple, a word is trivial
exactly when it lies in the normal closure of the relators, and both
verdicts carry replayable derivations.
"""

from __future__ import annotations

from quasivariety import SaturationEngine
from quasivariety.groups import (
    Decision,
    decide_word_simple,
    group_rules,
    icosahedral_oracle,
    icosahedral_presentation,
    reduced_up_to,
    word_from_str,
    word_to_str,
    word_unrank,
)


def main() -> None:
    pres = icosahedral_presentation()
    oracle = icosahedral_oracle()
    print("relators:", [word_to_str(r) for r in sorted(pres.relators, key=len)])
    print("permutation model order:", oracle.order)

    print("\nfirst kernel words found by saturation:")
    eng = SaturationEngine(pres.relator_ranks(), group_rules(2))
    eng.advance(5000)
    emitted = [atom for atom, _ in eng.enumeration().emits]
    shortest = sorted(emitted, key=lambda a: len(word_unrank(2, a)))[:8]
    print("  ", [word_to_str(word_unrank(2, a)) for a in shortest])

    print("\nverdicts (each replayed against the rule stream):")
    for text in ("-", "aa", "ab", "abab", "ababababab", "bab", "abAB"):
        verdict = decide_word_simple(pres, word_from_str(text, 2))
        print(f"  {text:>12}  {verdict.value}")

    mismatches = 0
    count = reduced_up_to(2, 4)
    for rank in range(count):
        w = word_unrank(2, rank)
        want = Decision.EQUAL if oracle.word_is_identity(w) else Decision.NOT_EQUAL
        if decide_word_simple(pres, w) is not want:
            mismatches += 1
    print(f"\nall {count} reduced words of length <= 4 agree with the oracle "
          f"({mismatches} mismatches)")


if __name__ == "__main__":
    main()
