"""Batch front door for saturations, complements, decisions, and suites.

One command is one deterministic run: identical invocations print
byte-identical output.  Human output starts with a ``#`` header that
records every budget and cap in effect; ``--porcelain`` drops the header
and emits tab-separated records instead.

Exit codes: 0 success (or verdict Equal), 1 verdict NotEqual or a failed
verification, 2 malformed input, 3 guard or hypothesis violation,
4 verdict Undecided, 5 failed precondition (with a witness).
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Optional, Sequence

from . import finite, groups, polyideal, subshift
from .certify import complement_witness
from .engine import SaturationEngine
from .enumeration import enumeration_of
from .errors import GuardError, ParseError, PreconditionError
from .operators import (
    EnumerationOperator,
    complement_op_below_family,
    complement_op_discriminated,
    complement_op_maximal,
    complement_op_uniform,
    presentation_operator,
)
from .rules import RuleStream
from .verify import SUITES, run_suites

POLY_GRAMMAR = """\
polynomial literals:
  A literal is a signed sum of terms over the variable t, highest degree
  first, written without spaces: 3/2t^2-1t+4.  Each term is
  [sign][num[/den]][t[^exp]]; the coefficient is an integer or a
  fraction of naturals, the variable part is t or t^k.  Printed output
  always spells the coefficient magnitude (1t, not t) while the parser
  also accepts bare t and t^k.  The zero polynomial is 0.
"""

DEFAULT_GROUP_BUDGET = 1000
DEFAULT_IDEAL_BUDGET = 20000
DEFAULT_WORD_CAP = 6
DEFAULT_GROUP_CAP = 3
DEFAULT_HEIGHT_CAP = 2
DEFAULT_ROW_CAP = 4
DEFAULT_SEARCH_CAP = 32
SFT_PREFIX_PAD = 4


# ---------------------------------------------------------------------------
# Instances: one adapter per universe kind


class Instance:
    kind: str

    def stream(self) -> RuleStream:
        raise NotImplementedError

    def seeds(self) -> list[int]:
        return []

    def display(self, atom: int) -> str:
        raise NotImplementedError

    def parse_atom(self, text: str) -> int:
        raise NotImplementedError


class FiniteInstance(Instance):
    kind = "finite"

    def __init__(self, q: finite.FiniteQuasivariety):
        self.q = q

    def stream(self) -> RuleStream:
        return self.q.stream()

    def display(self, atom: int) -> str:
        return str(atom)

    def parse_atom(self, text: str) -> int:
        try:
            atom = int(text)
        except ValueError:
            raise ParseError(f"bad atom {text!r}; expected a natural") from None
        if not 0 <= atom < self.q.n:
            raise ParseError(f"atom {atom} outside 0..{self.q.n - 1}")
        return atom

    def default_budget(self) -> int:
        return len(self.q.rules)


class GroupInstance(Instance):
    kind = "group"

    def __init__(self, p: groups.GroupPresentation):
        self.p = p

    def stream(self) -> RuleStream:
        return groups.group_rules(self.p.k)

    def seeds(self) -> list[int]:
        return sorted(self.p.relator_ranks())

    def display(self, atom: int) -> str:
        return groups.word_to_str(groups.word_unrank(self.p.k, atom))

    def parse_atom(self, text: str) -> int:
        try:
            w = groups.word_from_str(text, self.p.k)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        return groups.word_rank(self.p.k, w)

    def default_budget(self) -> int:
        return DEFAULT_GROUP_BUDGET


class SubshiftInstance(Instance):
    kind = "subshift"

    def __init__(self, p: subshift.SftPresentation):
        self.p = p

    def stream(self) -> RuleStream:
        return subshift.subshift_rules(self.p.alphabet)

    def seeds(self) -> list[int]:
        return subshift.forbidden_seeds(self.p)

    def display(self, atom: int) -> str:
        s = self.p.alphabet.size
        return self.p.alphabet.word_to_str(subshift.word_unrank(s, atom))

    def parse_atom(self, text: str) -> int:
        try:
            w = self.p.alphabet.word_from_str(text)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        return subshift.word_rank(self.p.alphabet.size, w)

    def default_budget(self) -> int:
        return subshift.budget_for_length(self.p.alphabet, DEFAULT_WORD_CAP)


class IdealInstance(Instance):
    kind = "ideal"

    def __init__(self, gens: Sequence[polyideal.Poly]):
        self.gens = list(gens)

    def stream(self) -> RuleStream:
        return polyideal.ideal_rules()

    def seeds(self) -> list[int]:
        return sorted(polyideal.poly_rank(g) for g in self.gens)

    def display(self, atom: int) -> str:
        return polyideal.poly_to_str(polyideal.poly_unrank(atom))

    def parse_atom(self, text: str) -> int:
        return polyideal.poly_rank(polyideal.poly_from_str(text))

    def default_budget(self) -> int:
        return DEFAULT_IDEAL_BUDGET


def load_instance(path: str) -> Instance:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    kind = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            parts = line.split()
            kind = parts[1] if len(parts) >= 2 and parts[0] == "universe" else None
            break
    if kind == "finite":
        return FiniteInstance(finite.parse_rule_file(text))
    if kind == "group":
        return GroupInstance(groups.parse_group_file(text))
    if kind == "subshift":
        return SubshiftInstance(subshift.parse_sft_file(text))
    if kind == "ideal":
        return IdealInstance(polyideal.parse_ideal_file(text))
    raise ParseError("unrecognized instance file: expected a 'universe <kind> ...' header")


# ---------------------------------------------------------------------------
# Shared output helpers


def _header(args: argparse.Namespace, text: str) -> None:
    if not args.porcelain:
        print(f"# {text}")


def _atom_csv(inst: Instance, text: str) -> list[int]:
    return [inst.parse_atom(tok) for tok in text.split(",") if tok] if text else []


# ---------------------------------------------------------------------------
# saturate


def cmd_saturate(args: argparse.Namespace) -> int:
    inst = load_instance(args.file)
    budget = args.budget if args.budget is not None else inst.default_budget()
    present = _atom_csv(inst, args.present)
    seeds = sorted(set(inst.seeds()) | set(present))
    _header(args, f"saturate kind={inst.kind} budget={budget} "
                  f"present={','.join(map(str, present)) or '-'}")
    engine = SaturationEngine(seeds, inst.stream())
    engine.advance(budget)
    for atom, step in engine.enumeration().emits:
        if args.porcelain:
            print(f"{atom}\t{inst.display(atom)}\t{step}")
        elif args.steps:
            print(f"{inst.display(atom)}\t{step}")
        else:
            print(inst.display(atom))
    return 0


# ---------------------------------------------------------------------------
# complement


def _group_generator_hint(inst: GroupInstance, seen: frozenset[int]):
    decider = groups.SimpleDecider(inst.p)
    k = inst.p.k

    def hint(stream: RuleStream, target: int, base: frozenset[int]):
        extra = next(iter(base - seen), None)
        tw = groups.word_unrank(k, target)
        if extra is None or len(tw) != 1 or tw[0] % 2:
            return None
        w = groups.word_unrank(k, extra)
        for effort in range(1, groups.DECIDE_CAP + 1):
            seq = decider.derive_generator_over(w, tw[0] // 2, effort)
            if seq is not None:
                return seq
        return None

    return hint


def _complement_finite(args: argparse.Namespace, inst: FiniteInstance) -> int:
    q = inst.q
    x = finite.brute_closure(q, _atom_csv(inst, args.present))
    f = presentation_operator(q.stream())
    comp = sorted(q.universe() - x)
    if args.uniform:
        mode, g = "uniform", complement_op_uniform(f, sorted(q.universe()))
    elif args.discriminator is not None:
        y = _atom_csv(inst, args.discriminator)
        mode, g = "discriminator", complement_op_discriminated(f, enumeration_of(sorted(set(y))))
    elif args.family is not None:
        raise ParseError("finite instances have no named families")
    else:
        if not comp:
            _header(args, f"complement kind=finite mode=witness point={sorted(x)}")
            return 0
        anchor = inst.parse_atom(args.witness) if args.witness is not None else comp[0]
        mode, g = "witness", complement_op_maximal(f, anchor)
    _header(args, f"complement kind=finite mode={mode} point={sorted(x)}")
    for atom in range(q.n):
        wit = complement_witness(g, atom, x)
        if wit is not None:
            print(f"{atom}\t{inst.display(atom)}" if args.porcelain else inst.display(atom))
    return 0


def _complement_group(args: argparse.Namespace, inst: GroupInstance) -> int:
    k = inst.p.k
    cap = args.cap if args.cap is not None else DEFAULT_GROUP_CAP
    budget = args.budget if args.budget is not None else inst.default_budget()
    engine = SaturationEngine(inst.seeds(), inst.stream())
    engine.advance(budget)
    seen = engine.derived
    candidates = range(groups.reduced_up_to(k, cap))

    if args.family is not None:
        if args.family != "z":
            raise ParseError(f"unknown family {args.family!r}; known families: z")
        if k != 1:
            raise ParseError("family z needs a presentation with one generator")
        g: EnumerationOperator = complement_op_below_family(
            presentation_operator(inst.stream()), groups.z_family())
        _header(args, f"complement kind=group mode=family family=z cap={cap}")
        for atom in candidates:
            w = groups.word_unrank(1, atom)
            if not w:
                continue
            m = len(w) if w[0] == 0 else -len(w)
            wit = complement_witness(g, atom, frozenset({groups.word_rank(1, ())}),
                                     budget=groups.z_certificate_budget(m))
            if wit is not None:
                print(f"{atom}\t{inst.display(atom)}" if args.porcelain else inst.display(atom))
        return 0

    f = presentation_operator(inst.stream())
    hint = _group_generator_hint(inst, seen)
    if args.uniform or args.witness is None:
        anchors = [groups.word_rank(k, (2 * i,)) for i in range(k)]
        mode, g = "uniform", complement_op_uniform(f, anchors)
    else:
        mode, g = "witness", complement_op_maximal(f, inst.parse_atom(args.witness))
    _header(args, f"complement kind=group mode={mode} budget={budget} cap={cap}")
    for atom in candidates:
        wit = complement_witness(g, atom, seen, hint=hint)
        if wit is not None:
            print(f"{atom}\t{inst.display(atom)}" if args.porcelain else inst.display(atom))
    return 0


def _complement_subshift(args: argparse.Namespace, inst: SubshiftInstance) -> int:
    if args.uniform or args.family is not None or args.discriminator is not None:
        raise ParseError("subshift complements use the anchored witness form")
    p = inst.p
    s = p.alphabet.size
    cap = args.cap if args.cap is not None else DEFAULT_WORD_CAP
    prefix_len = cap + SFT_PREFIX_PAD
    anchor = inst.parse_atom(args.witness) if args.witness is not None else 0
    seen = frozenset(subshift.word_rank(s, w)
                     for w in subshift.forbidden_words(p, prefix_len))
    g = complement_op_maximal(presentation_operator(inst.stream()), anchor)
    hint = subshift.minimal_complement_hint(p, prefix_len)
    _header(args, f"complement kind=subshift mode=witness cap={cap} prefix={prefix_len}")
    for atom in range(subshift.words_up_to(s, cap)):
        wit = complement_witness(g, atom, seen, hint=hint)
        if wit is not None:
            print(f"{atom}\t{inst.display(atom)}" if args.porcelain else inst.display(atom))
    return 0


def _complement_ideal(args: argparse.Namespace, inst: IdealInstance) -> int:
    if args.uniform or args.family is not None or args.discriminator is not None:
        raise ParseError("ideal complements use the anchored witness form")
    if len(inst.gens) != 1:
        raise ParseError("ideal complements need exactly one generator")
    gen = inst.gens[0]
    cap = args.cap if args.cap is not None else DEFAULT_HEIGHT_CAP
    budget = args.budget if args.budget is not None else inst.default_budget()
    anchor = inst.parse_atom(args.witness) if args.witness is not None \
        else polyideal.poly_rank(polyideal.ONE_POLY)
    engine = SaturationEngine(inst.seeds(), inst.stream())
    engine.advance(budget)
    seen = engine.derived
    g = complement_op_maximal(presentation_operator(inst.stream()), anchor)
    _header(args, f"complement kind=ideal mode=witness budget={budget} height={cap}")
    use_hint = anchor == polyideal.poly_rank(polyideal.ONE_POLY)
    for atom in range(polyideal.poly_count(cap)):
        hint = None
        if use_hint:
            q = polyideal.poly_unrank(atom)
            hint = lambda _s, _t, _b, w=q: polyideal.unit_derivation(gen, w)
        wit = complement_witness(g, atom, seen, hint=hint)
        if wit is not None:
            print(f"{atom}\t{inst.display(atom)}" if args.porcelain else inst.display(atom))
    return 0


def cmd_complement(args: argparse.Namespace) -> int:
    inst = load_instance(args.file)
    if isinstance(inst, FiniteInstance):
        return _complement_finite(args, inst)
    if isinstance(inst, GroupInstance):
        return _complement_group(args, inst)
    if isinstance(inst, SubshiftInstance):
        return _complement_subshift(args, inst)
    assert isinstance(inst, IdealInstance)
    return _complement_ideal(args, inst)


# ---------------------------------------------------------------------------
# decide


def cmd_decide(args: argparse.Namespace) -> int:
    inst = load_instance(args.file)
    if not isinstance(inst, GroupInstance):
        raise ParseError("decide needs a group presentation file")
    try:
        w = groups.word_from_str(args.word, inst.p.k)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    cap = args.cap if args.cap is not None else groups.DECIDE_CAP
    _header(args, f"decide kind=group cap={cap} word={groups.word_to_str(w)}")
    verdict = groups.Decision.UNDECIDED
    rounds = cap
    for effort in range(1, cap + 1):
        verdict = groups.decide_word_simple(inst.p, w, cap=effort)
        if verdict is not groups.Decision.UNDECIDED:
            rounds = effort
            break
    if args.porcelain:
        print(f"{verdict.value}\t{rounds}")
    else:
        print(f"{verdict.value} ({rounds} rounds)")
    if verdict is groups.Decision.EQUAL:
        return 0
    if verdict is groups.Decision.NOT_EQUAL:
        return 1
    return 4


# ---------------------------------------------------------------------------
# pi01


def cmd_pi01(args: argparse.Namespace) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {args.file}: {exc.strerror}") from None
    fam = finite.parse_partial_map_file(text)
    converted = finite.pi01_to_rules(fam)
    _header(args, f"pi01 n={fam.n} maps={len(fam.maps)} rules={len(converted.rules)}")
    sys.stdout.write(finite.format_rule_file(converted))
    if args.verify:
        same = set(finite.all_points(converted)) == set(fam.class_members())
        print("EQUAL" if same else "UNEQUAL")
        if not same:
            return 1
    return 0


# ---------------------------------------------------------------------------
# quasiperiodicity

SUBSTITUTIONS: dict[str, dict[int, tuple[int, ...]]] = {
    "fibonacci": subshift.FIBONACCI,
}


def cmd_quasiperiodicity(args: argparse.Namespace) -> int:
    rows = args.cap if args.cap is not None else DEFAULT_ROW_CAP
    search = args.budget if args.budget is not None else DEFAULT_SEARCH_CAP
    if (args.file is None) == (args.substitution is None):
        raise ParseError("need exactly one source: an SFT file or --substitution")
    if args.substitution is not None:
        rules = SUBSTITUTIONS.get(args.substitution)
        if rules is None:
            known = ", ".join(sorted(SUBSTITUTIONS))
            raise ParseError(f"unknown substitution {args.substitution!r}; known: {known}")
        try:
            lang, _ = subshift.substitution_stream(rules, subshift.Alphabet("ab"))
        except ValueError as exc:
            raise GuardError(str(exc)) from None
        source = args.substitution
    else:
        inst = load_instance(args.file)
        if not isinstance(inst, SubshiftInstance):
            raise ParseError("quasiperiodicity needs a subshift file or --substitution")
        if not subshift.is_minimal_sft(inst.p):
            raise GuardError("not minimal: quasiperiodicity needs a minimal subshift")
        lang = subshift.oracle_from_sft(inst.p)
        source = args.file
    _header(args, f"quasiperiodicity source={source} rows={rows} search-cap={search}")
    for n in range(1, rows + 1):
        value = subshift.quasiperiodicity(lang, n, search)
        print(f"{n}\t{'>cap' if value is None else value}")
    return 0


# ---------------------------------------------------------------------------
# lattice


def cmd_lattice(args: argparse.Namespace) -> int:
    inst = load_instance(args.file)
    if not isinstance(inst, FiniteInstance):
        raise ParseError("lattice needs a finite rule file")
    x = frozenset(_atom_csv(inst, args.x))
    y = frozenset(_atom_csv(inst, args.y))
    try:
        lo = finite.meet(inst.q, x, y)
        hi = finite.join(inst.q, x, y)
    except ValueError as exc:
        raise GuardError(str(exc)) from None
    _header(args, f"lattice kind=finite x={sorted(x)} y={sorted(y)}")
    for name, s in (("meet", lo), ("join", hi)):
        body = " ".join(str(a) for a in sorted(s)) or "-"
        print(f"{name}\t{body}" if args.porcelain else f"{name}: {body}")
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite is not None and args.suite not in SUITES:
        known = ", ".join(SUITES)
        raise ParseError(f"unknown suite {args.suite!r}; known suites: {known}")
    names = [args.suite] if args.suite is not None else list(SUITES)
    _header(args, f"verify seed={args.seed} suites={len(names)}")
    results = run_suites(names, seed=args.seed)
    for r in results:
        if args.porcelain:
            print(f"{r.name}\t{'pass' if r.passed else 'fail'}\t{r.detail}")
        else:
            print(f"{'pass' if r.passed else 'FAIL'} {r.name}: {r.detail}")
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# Argument wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qvar",
        description="Saturations, certified complements, and decision procedures "
                    "over finite, subshift, group, and ideal universes.",
        epilog=POLY_GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help="rule indices fetched by saturation runs")
    common.add_argument("--cap", type=int, default=None,
                        help="size cap: word length, height, rows, or rounds")
    common.add_argument("--steps", action="store_true",
                        help="append the emission step to each printed atom")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--porcelain", action="store_true",
                        help="machine mode: tab-separated records, no header")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("saturate", parents=[common],
                       help="print the emission log of a budgeted closure run")
    p.add_argument("file", help="instance file")
    p.add_argument("--present", default="", help="comma-separated seed atoms")
    p.set_defaults(func=cmd_saturate)

    p = sub.add_parser("complement", parents=[common],
                       help="print certified complement atoms of a point")
    p.add_argument("file", help="instance file")
    p.add_argument("--present", default="",
                   help="comma-separated presentation of the point (finite only)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--witness", default=None, metavar="ATOM",
                      help="anchor atom outside the point (instance default otherwise)")
    mode.add_argument("--uniform", action="store_true",
                      help="anchor at a finite presentation of the full universe")
    mode.add_argument("--family", default=None, metavar="NAME",
                      help="certify below a named family (groups: z)")
    mode.add_argument("--discriminator", default=None, metavar="ATOMS",
                      help="comma-separated discriminator set (finite only)")
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("decide", parents=[common],
                       help="decide word = 1 in a finite simple quotient")
    p.add_argument("file", help="group presentation file")
    p.add_argument("word", help="reduced word, e.g. abAB; - is the identity")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("pi01", parents=[common],
                       help="convert a forbidden-pattern class to an equivalent rule file")
    p.add_argument("file", help="partial-map file")
    p.add_argument("--verify", action="store_true",
                   help="also compare both point sets exhaustively")
    p.set_defaults(func=cmd_pi01)

    p = sub.add_parser("quasiperiodicity", parents=[common],
                       help="print n, g(n) rows for a minimal subshift")
    p.add_argument("file", nargs="?", default=None, help="SFT file")
    p.add_argument("--substitution", default=None,
                   help="built-in substitution source (fibonacci)")
    p.set_defaults(func=cmd_quasiperiodicity)

    p = sub.add_parser("lattice", parents=[common],
                       help="meet and join of two points of a finite space")
    p.add_argument("file", help="finite rule file")
    p.add_argument("--x", required=True, help="comma-separated atoms of the first point")
    p.add_argument("--y", required=True, help="comma-separated atoms of the second point")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("verify", parents=[common],
                       help="run the acceptance suites and report pass/fail")
    p.add_argument("--suite", default=None, help="run a single named suite")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return 5
    except GuardError as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
