"""
Main entry point for the megagreedoid invariants toolkit

Reads a JSON structure document (a file path, `-` for stdin, or one of the
bundled examples `@rooted-graph`, `@greedoid`, `@polymatroid`), runs one
command, and prints deterministic text. Exit codes: 0 success, 1
verification failure, 2 input error.
"""

import argparse
import sys

from config import Config
from megagreedoids.complex import ShellingError, verify_shelling
from megagreedoids.constructions import (
    InvalidGreedoidError,
    InvalidPolymatroidError,
    RootedMultigraph,
    UnsupportedInputError,
)
from megagreedoids.core import AxiomViolationError, MegagreedoidError, format_permutation
from megagreedoids.corpus import generate_corpus
from megagreedoids.documents import (
    DocumentError,
    build_megagreedoid,
    build_structure,
    parse_documents,
    render_document,
    render_documents,
)
from megagreedoids.hopf import antipode, verify_hopf_axioms
from megagreedoids.invariants import (
    chi_F,
    chi_polynomial,
    count_rooted_acyclic_orientations,
    descent_reports,
    is_feasible,
    is_generic,
    is_strongly_feasible,
    reciprocity_eval,
)
from megagreedoids.qsym import count_specialize, evaluate, render, render_polynomial, to_basis
from megagreedoids.reports import render_certificate, render_oracle_table, render_report
from workflow import VerificationWorkflow, create_example_documents

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2


class VerificationFailure(Exception):
    """A check ran to completion and found a counterexample"""


def progress(message: str):
    if Config.VERBOSE:
        print(message, file=sys.stderr)


def load_documents(argument: str) -> list:
    """Read the document argument: a path, `-` for stdin, or `@name` for a bundled example"""
    if argument.startswith("@"):
        bundled = create_example_documents()
        name = argument[1:]
        if name not in bundled:
            raise DocumentError(f"unknown bundled example {argument!r}; choose from {sorted(bundled)}")
        return [bundled[name]]
    if argument == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(argument, encoding="utf-8") as f:
                text = f.read()
        except OSError as exc:
            raise DocumentError(f"cannot read {argument}: {exc.strerror}") from exc
    return parse_documents(text)


def load_single(argument: str):
    documents = load_documents(argument)
    if len(documents) != 1:
        raise DocumentError(f"expected one document, found {len(documents)}")
    return documents[0]


def cmd_check(args) -> str:
    document = load_single(args.document)
    try:
        build_megagreedoid(document)
    except AxiomViolationError as exc:
        raise VerificationFailure("fail\n" + "\n".join(exc.report.describe(exc.ground))) from exc
    except (InvalidGreedoidError, InvalidPolymatroidError) as exc:
        raise VerificationFailure(f"fail\n{exc}") from exc
    return "pass"


def cmd_chi(args) -> str:
    m = build_megagreedoid(load_single(args.document))
    return render(to_basis(chi_F(m, args.reading), args.basis))


def cmd_poly(args) -> str:
    m = build_megagreedoid(load_single(args.document))
    polynomial = chi_polynomial(m, args.reading)
    if not args.at:
        return render_polynomial(polynomial)
    return "\n".join(str(evaluate(polynomial, value)) for value in args.at)


def cmd_perms(args) -> str:
    m = build_megagreedoid(load_single(args.document))
    lines = []
    for report in descent_reports(m, args.reading):
        if args.descents:
            lines.append(report.describe(m.ground))
        else:
            lines.append(format_permutation(m.ground, report.permutation))
    return "\n".join(lines)


def cmd_generic(args) -> str:
    m = build_megagreedoid(load_single(args.document))
    if args.count is not None:
        return str(count_specialize(chi_F(m, args.reading), args.count))
    if args.fn is None:
        raise DocumentError("generic needs --fn or --count")
    try:
        values = [int(part) for part in args.fn.split(",")]
    except ValueError as exc:
        raise DocumentError(f"--fn must be comma-separated integers, got {args.fn!r}") from exc
    return "\n".join([
        f"feasible: {str(is_feasible(m, values)).lower()}",
        f"strongly feasible: {str(is_strongly_feasible(m, values)).lower()}",
        f"generic: {str(is_generic(m, values)).lower()}",
    ])


def cmd_shelling(args) -> str:
    m = build_megagreedoid(load_single(args.document))
    try:
        certificate = verify_shelling(m)
    except ShellingError as exc:
        raise VerificationFailure(str(exc)) from exc
    return render_certificate(m, certificate)


def cmd_reciprocity(args) -> str:
    m = build_megagreedoid(load_single(args.document))
    return str(reciprocity_eval(m, args.n))


def cmd_orientations(args) -> str:
    structure = build_structure(load_single(args.document))
    if not isinstance(structure, RootedMultigraph):
        raise UnsupportedInputError("orientations needs a rooted_graph document")
    return str(count_rooted_acyclic_orientations(structure))


def cmd_antipode(args) -> str:
    m = build_megagreedoid(load_single(args.document))
    return antipode(m).render()


def cmd_hopf_verify(args) -> str:
    megagreedoids = [build_megagreedoid(document) for document in load_documents(args.document)]
    if len(megagreedoids) == 1:
        megagreedoids = megagreedoids * 3
    report = verify_hopf_axioms(megagreedoids)
    lines = [f"{axiom}: {count} checks" for axiom, count in sorted(report.checks.items())]
    if not report.passed:
        lines += [f"counterexample ({failure.axiom}): {failure.witness}" for failure in report.failures]
        raise VerificationFailure("\n".join(["fail"] + lines))
    return "\n".join(["pass"] + lines)


def cmd_oracle(args) -> str:
    workflow = VerificationWorkflow(max_n=args.max_n)
    rows = []
    for document in load_documents(args.document):
        progress(f"📊 Oracle battery on {document.name}")
        rows.extend(workflow.run_oracle(document))
    table = render_oracle_table(rows)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as f:
            f.write(render_report(rows))
        progress(f"📁 Report written to {args.report}")
    if not all(row.passed for row in rows):
        raise VerificationFailure(table)
    return table


def cmd_corpus(args) -> str:
    return render_documents(generate_corpus(seed=args.seed, size=args.size, max_ground=args.max_ground))


def cmd_render(args) -> str:
    documents = load_documents(args.document)
    if len(documents) == 1:
        return render_document(documents[0])
    return render_documents(documents)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="megagreedoids",
        description="Exact invariants of megagreedoids: quasisymmetric functions, shellings, Hopf structure.",
    )
    parser.add_argument("--verbose", action="store_true", help="print progress to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text, document=True):
        sub = commands.add_parser(name, help=help_text)
        if document:
            sub.add_argument("document", help="JSON file, '-' for stdin, or @rooted-graph/@greedoid/@polymatroid")
        sub.add_argument("--literal", dest="reading", action="store_const", const="literal", default=None,
                         help="use the literal descent reading (diagnostic)")
        sub.set_defaults(handler=handler)
        return sub

    add("check", cmd_check, "check the megagreedoid axioms")
    add("chi", cmd_chi, "the generic quasisymmetric function").add_argument(
        "--basis", choices=["F", "M"], default="F")
    add("poly", cmd_poly, "the counting polynomial, or its values").add_argument(
        "--at", type=int, action="append", help="evaluate at this integer (repeatable)")
    add("perms", cmd_perms, "feasible permutations in greedy order").add_argument(
        "--descents", action="store_true", help="print descent sets")
    generic = add("generic", cmd_generic, "test a function or count generic functions")
    generic.add_argument("--fn", help="comma-separated values in ground order")
    generic.add_argument("--count", type=int, help="count generic functions into [n]")
    add("shelling", cmd_shelling, "verify the greedy shelling and print the certificate")
    add("reciprocity", cmd_reciprocity, "(-1)^|I| chi(M, -n)").add_argument("--n", type=int, default=1)
    add("orientations", cmd_orientations, "count acyclic orientations draining to the root")
    add("antipode", cmd_antipode, "the antipode as a formal sum")
    add("hopf-verify", cmd_hopf_verify, "check the Hopf monoid axioms")
    oracle = add("oracle", cmd_oracle, "run the cross-check battery")
    oracle.add_argument("--max-n", type=int, default=None)
    oracle.add_argument("--report", help="also write a Markdown report here")
    corpus = add("corpus", cmd_corpus, "emit a seeded random corpus", document=False)
    corpus.add_argument("--seed", type=int, default=Config.CORPUS_SEED)
    corpus.add_argument("--size", type=int, default=Config.CORPUS_SIZE)
    corpus.add_argument("--max-ground", type=int, default=Config.CORPUS_MAX_GROUND)
    add("render", cmd_render, "re-emit the normalized document")
    return parser


def main(argv=None) -> int:
    """Main function: parse arguments, run one command, map failures to exit codes"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        Config.VERBOSE = True

    try:
        Config.validate_config()
    except ValueError as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    progress(f"🚀 megagreedoids {args.command}")
    try:
        output = args.handler(args)
    except VerificationFailure as e:
        print(str(e))
        progress("❌ Verification failed")
        return EXIT_VERIFICATION_FAILED
    except (MegagreedoidError, ValueError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    print(output)
    progress("✅ Done")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
