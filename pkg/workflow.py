"""
Verification workflow for megagreedoid invariants

This module runs the cross-check battery phase by phase: every invariant is
computed in several independent ways (descents, the character formula, the
relative complex and its shelling, brute-force counting) and the results are
compared exactly. Results are saved as JSON and a Markdown report.
"""

import json
import os
import sys
from datetime import datetime

from config import Config
from megagreedoids.complex import face_qsym, shelling_qsym, verify_shelling, ShellingError
from megagreedoids.constructions import (
    Poset,
    RootedMultigraph,
    has_universal_root,
)
from megagreedoids.core import Megagreedoid, check_axioms
from megagreedoids.corpus import generate_corpus
from megagreedoids.documents import (
    GreedoidStructure,
    PolymatroidStructure,
    RootedGraphStructure,
    StructureDocument,
    build_megagreedoid,
    build_structure,
)
from megagreedoids.hopf import antipode_convolution, verify_hopf_axioms
from megagreedoids.invariants import (
    chi_F,
    chi_flag,
    chromatic_polynomial,
    convolution_sides,
    count_linear_extension_qsym,
    count_rooted_acyclic_orientations,
    descent_reports,
    oracle_count_generic,
    reciprocity_eval,
    reciprocity_sum,
)
from megagreedoids.qsym import count_specialize, evaluate, render, to_basis
from megagreedoids.reports import OracleRow, render_report, summarize


class VerificationWorkflow:
    """Runs the oracle battery over a list of structure documents"""

    def __init__(self, max_n: int | None = None, verbose: bool | None = None):
        self.max_n = Config.ORACLE_MAX_N if max_n is None else max_n
        self.verbose = Config.VERBOSE if verbose is None else verbose

    def _progress(self, message: str):
        if self.verbose:
            print(message, file=sys.stderr)

    def run_oracle(self, document: StructureDocument, m: Megagreedoid | None = None) -> list[OracleRow]:
        """
        Run every cross-check on one document

        Args:
            document: the structure to check
            m: its megagreedoid, if already built

        Returns:
            One OracleRow per comparison
        """
        m = build_megagreedoid(document) if m is None else m
        name = document.name
        rows: list[OracleRow] = []

        def compare(check: str, expected, actual):
            rows.append(OracleRow(name, check, str(expected), str(actual), expected == actual))

        report = check_axioms(m.ground, m.family, m.ranks())
        compare("axioms", "pass", "pass" if report.passed else "; ".join(report.describe(m.ground)))

        expansion = chi_F(m)
        flag = chi_flag(m)
        compare("chi_F = flag formula", render(expansion), render(to_basis(flag, "F")))
        compare("face qsym = flag formula", render(flag), render(face_qsym(m)))

        try:
            certificate = verify_shelling(m)
        except ShellingError as exc:
            compare("shelling", "valid certificate", str(exc))
        else:
            compare("shelling qsym = chi_F", render(expansion), render(shelling_qsym(certificate)))
            descent_sets = {report.permutation: report.descent_set for report in descent_reports(m)}
            mismatched = [
                step.permutation for step in certificate.steps
                if descent_sets[step.permutation] != step.descent_set
            ]
            compare("rho(R(F)) = Des", 0, len(mismatched))

        top = self.max_n if self.max_n is not None else m.size + 1
        for n in range(1, top + 1):
            compare(f"generic count n={n}", oracle_count_generic(m, n), count_specialize(expansion, n))

        for total in range(0, min(top, 5) + 1):
            for n in range(total + 1):
                left, right = convolution_sides(m, n, total - n)
                compare(f"convolution ({n},{total - n})", left, right)

        for n in range(1, min(top, 3) + 1):
            compare(f"reciprocity n={n}", reciprocity_eval(m, n), reciprocity_sum(m, n))

        if m.size:
            compare("antipode convolution", "0", antipode_convolution(m).render())

        rows.extend(self._classical_checks(document, m, expansion, top))
        return rows

    def _classical_checks(self, document, m, expansion, top) -> list[OracleRow]:
        """Checks that only make sense for a particular input kind"""
        rows = []
        structure = build_structure(document)
        if isinstance(structure, RootedMultigraph) and not structure.half_edges:
            rows.append(self._row(document.name, "acyclic orientations", reciprocity_eval(m, 1),
                                  count_rooted_acyclic_orientations(structure)))
            if has_universal_root(structure):
                plain_edges = [edge for edge in structure.full_edges if structure.root not in edge]
                polynomial = chromatic_polynomial(structure.ground.elements, plain_edges)
                for n in range(1, top + 1):
                    rows.append(self._row(document.name, f"chromatic polynomial n={n}", evaluate(polynomial, n),
                                          count_specialize(expansion, n)))
        if isinstance(structure, Poset):
            rows.append(self._row(document.name, "P-partition expansion",
                                  render(count_linear_extension_qsym(structure)), render(expansion)))
        return rows

    @staticmethod
    def _row(instance, check, expected, actual) -> OracleRow:
        return OracleRow(instance, check, str(expected), str(actual), expected == actual)

    def execute_verification_workflow(self, documents: list[StructureDocument], save: bool = True) -> dict:
        """
        Execute the full verification workflow

        Args:
            documents: structure documents to check
            save: write JSON and Markdown outputs to Config.OUTPUT_DIR

        Returns:
            Dictionary with the oracle rows, the Hopf report and a summary
        """
        self._progress("🚀 Starting megagreedoid verification workflow")
        self._progress("=" * 50)

        # Phase 1: Ingestion
        self._progress(f"\n📋 Phase 1: Building {len(documents)} megagreedoids...")
        built = [(document, build_megagreedoid(document)) for document in documents]
        self._progress("✅ All documents passed ingestion")

        # Phase 2: Oracle battery
        self._progress("\n📊 Phase 2: Running the oracle battery...")
        rows: list[OracleRow] = []
        for document, m in built:
            instance_rows = self.run_oracle(document, m)
            rows.extend(instance_rows)
            failed = sum(1 for row in instance_rows if not row.passed)
            self._progress(f"   {'✅' if not failed else '❌'} {document.name}: {len(instance_rows)} checks")

        # Phase 3: Hopf monoid axioms
        self._progress("\n🔄 Phase 3: Checking Hopf monoid axioms...")
        hopf_report = verify_hopf_axioms([m for _, m in built], check_antipode=False)
        for axiom, count in sorted(hopf_report.checks.items()):
            failures = [f for f in hopf_report.failures if f.axiom == axiom]
            rows.append(OracleRow("corpus", f"hopf {axiom}", str(count), str(count - len(failures)), not failures))
        self._progress("✅ Hopf axioms checked" if hopf_report.passed else "❌ Hopf axiom counterexamples found")

        results = {
            "summary": summarize(rows),
            "rows": rows,
            "hopf_failures": [{"axiom": f.axiom, "witness": f.witness} for f in hopf_report.failures],
            "execution_timestamp": datetime.now().isoformat(),
        }

        if save:
            self._progress("\n📁 Phase 4: Saving results...")
            os.makedirs(Config.OUTPUT_DIR, exist_ok=True)
            self._save_results(results)
            self._save_report(render_report(rows))
            results["output_files"] = self._list_output_files()

        self._progress("\n🎉 Verification workflow completed")
        return results

    def _save_results(self, results: dict) -> str:
        """Write the summary JSON: totals, each instance's checks, then Hopf witnesses"""
        instances: dict[str, list[dict]] = {}
        for row in results["rows"]:
            instances.setdefault(row.instance, []).append(
                {"check": row.check, "expected": row.expected, "actual": row.actual, "status": row.status}
            )
        payload = {
            "generated": results["execution_timestamp"],
            "summary": results["summary"],
            "instances": instances,
            "hopf_failures": results["hopf_failures"],
        }
        path = os.path.join(Config.OUTPUT_DIR, Config.SUMMARY_FILE)
        with open(path, "w") as handle:
            json.dump(payload, handle, indent=2)
        return path

    def _save_report(self, text: str):
        filepath = os.path.join(Config.OUTPUT_DIR, Config.REPORT_FILE)
        with open(filepath, "w") as f:
            f.write(text)

    def _list_output_files(self) -> list:
        if os.path.exists(Config.OUTPUT_DIR):
            return sorted(os.listdir(Config.OUTPUT_DIR))
        return []


def create_example_documents() -> dict:
    """The three worked examples: a rooted graph, a greedoid and a polymatroid"""
    rooted_graph = StructureDocument(
        name="rooted-graph",
        order=["a", "f", "p", "s"],
        structure=RootedGraphStructure(
            root="c",
            edges=[("c", "f"), ("c", "a"), ("f", "p"), ("f", "a"), ("p", "s"), ("s", "a")],
        ),
    )
    greedoid = StructureDocument(
        name="greedoid",
        order=["f", "n", "u"],
        structure=GreedoidStructure(
            ranks=[
                ([], "0"), (["f"], "1"), (["n"], "1"), (["u"], "0"),
                (["f", "n"], "2"), (["f", "u"], "2"), (["n", "u"], "2"), (["f", "n", "u"], "2"),
            ]
        ),
    )
    polymatroid = StructureDocument(
        name="polymatroid",
        order=["f", "n", "u"],
        structure=PolymatroidStructure(
            ranks=[
                ([], "0"), (["f"], "3"), (["n"], "3"), (["u"], "3"),
                (["f", "n"], "6"), (["f", "u"], "5"), (["n", "u"], "5"), (["f", "n", "u"], "6"),
            ]
        ),
    )
    return {doc.name: doc for doc in (rooted_graph, greedoid, polymatroid)}


def create_verification_documents(seed: int | None = None, size: int | None = None) -> list:
    """Bundled examples followed by the seeded corpus"""
    return list(create_example_documents().values()) + generate_corpus(seed=seed, size=size)
