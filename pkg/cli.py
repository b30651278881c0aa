#!/usr/bin/env python3
"""
Heffter array toolkit
Commands: generate, verify, search, coverage
"""

import argparse
import json
import sys
from typing import List, Optional, TextIO

from config import settings
from core.models import HeffterArray, Verdict
from core.verifier import is_shiftable, is_strippable, verify
from features.dispatch import CONJECTURE, CoverageTable, coverage_table, construct, existence_status
from features.documents import ArrayDocument, format_document, load_array, write_document
from features.search import SearchConfig, SearchMode, SearchOutcome, solve
from utils.decorators import ExitCode, error_handler
from utils.helpers import TextHelper
from utils.logger import setup_logger

VERDICT_EXIT_CODES = {
    Verdict.EXISTS: ExitCode.OK,
    Verdict.DOES_NOT_EXIST: ExitCode.NEGATIVE,
    Verdict.UNKNOWN: ExitCode.UNKNOWN,
    Verdict.OUT_OF_SCOPE: ExitCode.OUT_OF_SCOPE,
}

SEARCH_EXIT_CODES = {
    SearchOutcome.FOUND: ExitCode.OK,
    SearchOutcome.NONE_EXISTS: ExitCode.NEGATIVE,
    SearchOutcome.INCONCLUSIVE: ExitCode.UNKNOWN,
}

COVERAGE_SYMBOLS = {
    Verdict.EXISTS: "+",
    Verdict.DOES_NOT_EXIST: "x",
    Verdict.UNKNOWN: "?",
    Verdict.OUT_OF_SCOPE: ".",
}


class HeffterCLI:
    def __init__(self, out: Optional[TextIO] = None, err: Optional[TextIO] = None):
        self.out = out or sys.stdout
        self.err = err or sys.stderr

    def build_parser(self) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog="heffter", description="Construct, verify and search for Heffter arrays H(n;k).")
        parser.add_argument("--log-level", default=None, help=f"Log level (default {settings.log_level})")
        commands = parser.add_subparsers(dest="command", required=True)

        generate = commands.add_parser("generate", help="Construct H(n;k) when a construction is known")
        generate.add_argument("--n", type=int, required=True)
        generate.add_argument("--k", type=int, required=True)
        generate.add_argument("--format", choices=["grid", "json"], default=settings.default_format)
        generate.add_argument("--out", default=None, help="Output file (default stdout)")
        generate.set_defaults(handler=self.cmd_generate)

        check = commands.add_parser("verify", help="Check an array file against the Heffter axioms")
        check.add_argument("path")
        check.add_argument("--shiftable", action="store_true", help="Also require equal positive/negative counts per line")
        check.add_argument("--strippable", action="store_true", help="Also require a primary transversal that strips evenly")
        check.add_argument("--search-transversal", action="store_true", help="Search all transversals, not only the main diagonal")
        check.set_defaults(handler=self.cmd_verify)

        search = commands.add_parser("search", help="Backtracking search for H(n;k)")
        search.add_argument("--n", type=int, required=True)
        search.add_argument("--k", type=int, required=True)
        search.add_argument("--exhaust", action="store_true", help="Explore the whole space and count solutions")
        search.add_argument("--all", action="store_true", help="Print every solution (implies --exhaust)")
        search.add_argument("--budget", type=int, default=settings.search_node_budget, help="Node budget")
        search.add_argument("--workers", type=int, default=settings.search_workers)
        search.add_argument("--no-symmetry", action="store_true", help="Disable symmetry breaking")
        search.set_defaults(handler=self.cmd_search)

        coverage = commands.add_parser("coverage", help="Existence status of every 3 <= n, k <= N")
        coverage.add_argument("--max-n", type=int, required=True)
        coverage.add_argument("--format", choices=["table", "json"], default="table")
        coverage.add_argument("--workers", type=int, default=settings.coverage_workers)
        coverage.add_argument("--build", action="store_true", help="Construct and verify every Exists cell")
        coverage.set_defaults(handler=self.cmd_coverage)
        return parser

    def _write_array(self, array: HeffterArray, fmt: str, path: Optional[str]) -> None:
        doc = ArrayDocument.from_array(array)
        if path:
            write_document(doc, path, fmt)  # type: ignore[arg-type]
        else:
            self.out.write(format_document(doc, fmt))  # type: ignore[arg-type]

    @error_handler
    def cmd_generate(self, args: argparse.Namespace) -> int:
        status = existence_status(args.n, args.k)
        if status.verdict is not Verdict.EXISTS:
            self.err.write(f"H({args.n};{args.k}): {status.verdict.value}: {status.reason}\n")
            return VERDICT_EXIT_CODES[status.verdict]

        array = construct(args.n, args.k)
        report = verify(array)
        if not report.valid:
            self.err.write(TextHelper.format_report(report) + "\n")
            return ExitCode.NEGATIVE
        self._write_array(array, args.format, args.out)
        return ExitCode.OK

    @error_handler
    def cmd_verify(self, args: argparse.Namespace) -> int:
        array = load_array(args.path)
        report = verify(array)
        self.out.write(TextHelper.format_report(report) + "\n")
        if not report.valid:
            return ExitCode.NEGATIVE

        code = ExitCode.OK
        if args.shiftable:
            shiftable = is_shiftable(array)
            self.out.write(f"shiftable: {'yes' if shiftable else 'no'}\n")
            if not shiftable:
                code = ExitCode.NEGATIVE
        if args.strippable:
            if array.k % 2 == 0:
                self.out.write("strippable: undefined for even k\n")
                return ExitCode.NEGATIVE
            result = is_strippable(array, search=args.search_transversal)
            if result.found:
                cells = " ".join(f"({r},{c})" for r, c in result.transversal.cells)
                self.out.write(f"strippable: yes, transversal {cells}\n")
            else:
                detail = "no transversal exists" if result.exhausted else "none found under the configured effort"
                self.out.write(f"strippable: no ({detail})\n")
                code = ExitCode.NEGATIVE
        return code

    @error_handler
    def cmd_search(self, args: argparse.Namespace) -> int:
        mode = SearchMode.FIRST_SOLUTION
        if args.all or args.exhaust:
            mode = SearchMode.EXHAUST_ALL if args.all else SearchMode.COUNT_ONLY
        config = SearchConfig(
            n=args.n,
            k=args.k,
            mode=mode,
            node_budget=args.budget if args.workers == 1 else None,
            symmetry_breaking=False if args.no_symmetry else None,
            workers=args.workers,
        )
        result = solve(config)
        self.out.write(
            f"{result.outcome.value} nodes={result.nodes_explored} solutions={result.solution_count} "
            f"elapsed={TextHelper.format_elapsed(result.elapsed)}\n"
        )
        shown = result.solutions if args.all else ([result.array] if result.array else [])
        for array in shown:
            self._write_array(array, "grid", None)
        return SEARCH_EXIT_CODES[result.outcome]

    @error_handler
    def cmd_coverage(self, args: argparse.Namespace) -> int:
        table = coverage_table(args.max_n, workers=args.workers, build=args.build)
        if args.format == "json":
            payload = {
                "n_max": table.n_max,
                "counts": {verdict.value: count for verdict, count in table.counts.items()},
                "cells": [
                    {
                        "n": e.status.n,
                        "k": e.status.k,
                        "verdict": e.status.verdict.value,
                        "route": e.status.route.value if e.status.route else None,
                        "verified": e.verified,
                    }
                    for e in table.entries
                ],
            }
            self.out.write(json.dumps(payload, separators=(",", ":")) + "\n")
        else:
            self.out.write("\n".join(self._coverage_lines(table.n_max, table)) + "\n")
        if args.build and any(e.verified is False for e in table.entries):
            return ExitCode.NEGATIVE
        return ExitCode.OK

    def _coverage_lines(self, n_max: int, table: CoverageTable) -> List[str]:
        verdicts = {(e.status.n, e.status.k): e.status.verdict for e in table.entries}
        width = len(str(n_max))
        ks = range(3, n_max + 1)
        lines = [" " * (width + 3) + " ".join(str(k).rjust(width) for k in ks)]
        for n in range(3, n_max + 1):
            symbols = (COVERAGE_SYMBOLS[verdicts[(n, k)]].rjust(width) for k in ks)
            lines.append(f"{str(n).rjust(width)} | " + " ".join(symbols))
        lines.append("")
        lines.append("counts: " + ", ".join(f"{v.value}={c}" for v, c in table.counts.items()))
        lines.append("by class (n mod 4, k mod 4):")
        for (n_class, k_class), labels in table.residue_summary().items():
            lines.append(f"  n={n_class} k={k_class}: {', '.join(labels)}")
        lines.append(f"conjecture: {CONJECTURE}")
        return lines

    def run(self, argv: Optional[List[str]] = None) -> int:
        args = self.build_parser().parse_args(argv)
        setup_logger(args.log_level)
        return int(args.handler(args))


def main(argv: Optional[List[str]] = None) -> int:
    return HeffterCLI().run(argv)


if __name__ == "__main__":
    sys.exit(main())
