"""The orbit of (ab)^infinity: complements, recurrence, and recovery.

A minimal subshift is a maximal point of the subshift space, so its
admissible words (the complement of the forbidden language) are
enumerable from the forbidden words, with a certificate for each one.
The quasiperiodicity bound g then turns the reduction around: the
forbidden language is recoverable from the admissible one.
"""

from __future__ import annotations

from quasivariety import (
    complement_op_maximal,
    complement_witness,
    enumeration_of,
    presentation_operator,
    recover_from_bound,
)
from quasivariety.subshift import (
    FIBONACCI,
    Alphabet,
    SftPresentation,
    WindowOperator,
    forbidden_words,
    is_minimal_sft,
    minimal_complement_hint,
    oracle_from_sft,
    quasiperiodicity,
    subshift_rules,
    substitution_stream,
    word_rank,
    word_unrank,
    words_up_to,
)


def main() -> None:
    ab = Alphabet("ab")
    orbit = SftPresentation(ab, frozenset({(0, 0), (1, 1)}))
    assert is_minimal_sft(orbit)
    print("forbidden blocks: aa, bb; the subshift is minimal")

    # admissible words, each with a replayable certificate
    cap = 6
    seen = frozenset(word_rank(2, w) for w in forbidden_words(orbit, cap + 4))
    g = complement_op_maximal(presentation_operator(subshift_rules(ab)), 0)
    hint = minimal_complement_hint(orbit, cap + 4)
    admissible = []
    for atom in range(words_up_to(2, cap)):
        if complement_witness(g, atom, seen, hint=hint) is not None:
            admissible.append(ab.word_to_str(word_unrank(2, atom)))
    print(f"certified admissible words to length {cap}:")
    print("  ", " ".join(admissible))

    lang = oracle_from_sft(orbit)
    print("\nquasiperiodicity: every admissible g(n)-word contains every n-word")
    for n in range(1, 5):
        print(f"  g({n}) = {quasiperiodicity(lang, n, 32)}")

    # turn the bound into a reduction from admissible back to forbidden
    bound = {n: quasiperiodicity(lang, n, 32) for n in range(9)}
    op = WindowOperator(ab, max_window=12)
    comp = enumeration_of(sorted(
        word_rank(2, w) for n in range(10) for w in lang(n)))
    recovered = recover_from_bound(
        op, lambda atom: bound[len(word_unrank(2, atom))],
        comp, words_up_to(2, 8))
    want = {word_rank(2, w) for w in forbidden_words(orbit, 8)}
    got = set(recovered.atoms())
    print(f"\nrecovered the forbidden language to length 8: "
          f"{len(got)} words, exact match: {got == want}")

    fib_lang, _ = substitution_stream(FIBONACCI, ab, 6)
    print("\nFibonacci substitution (a -> ab, b -> a):")
    print("  g(1) =", quasiperiodicity(fib_lang, 1, 32))


if __name__ == "__main__":
    main()
