"""Main entry point for the application.

This module provides the command-line interface: every subcommand reads or
generates states, runs the library, writes a JSON document to stdout (or to
``-o FILE``) and prints a human summary on stderr.

Example:
    Generate a state and look at its signature:
        $ slocc gen --family chi3 --n 4 -o chi3.json
        $ slocc signature chi3.json

    Compare two states (exit 0 = inequivalent, 3 = inconclusive):
        $ slocc compare ghz4.json w4.json

    Check the covariance equations with a seeded run:
        $ slocc check-covariance chi5_6.json --kind all --trials 50 --seed 7
"""

from typing import Callable, Dict, List, Optional, Sequence
import argparse
import logging
import sys

from rich.console import Console
from rich.table import Table
from rich.theme import Theme

import numpy as np

from slocc import __version__
from slocc.classifiers import (
    Outcome,
    compare,
    independence_rank,
    measure,
    signature,
    vanishing_table,
)
from slocc.constants import CONSOLE_STYLE, LOG_LEVEL, TOOL_NAME, ZERO_FACTOR
from slocc.determinants import evaluate
from slocc.matrices import ALL_KINDS, InvariantKind, parse_kind
from slocc.operators import covariance_trials, per_qubit_covariance_suite
from slocc.scalars import Backend
from slocc.serializers import (
    CovarianceFile,
    InvariantsReport,
    SignatureReport,
    TableReport,
    TableRow,
    compare_report,
    covariance_entry,
    dump_report,
    independence_report,
    invariant_entry,
    measure_report,
    read_state,
    serialize_state,
    signature_block,
    write_output,
)
from slocc.states import FAMILIES, gen_family
from slocc.utils.errors import SloccError
from slocc.utils.progress import ProgressManager

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

BANNER = """
 ____  _     ___   ____ ____
/ ___|| |   / _ \\ / ___/ ___|
\\___ \\| |  | | | | |  | |
 ___) | |__| |_| | |__| |___
|____/|_____\\___/ \\____\\____|

🧮 slocc - Determinant SLOCC invariants of even-n qubit states.

📝 Description:
  Builds the four coefficient-matrix invariants (Θ, Π, Γ, Ω) of a 2^n
  amplitude vector, evaluates them exactly over Gaussian rationals or in
  log space, checks how they transform under invertible local operators and
  uses their vanishing pattern to certify that two states are inequivalent.

📋 Common Use Cases:
  1. Generate a named state:
     slocc gen --family chi1 --n 6 -o chi1_6.json

  2. All four invariants, exact or floating:
     slocc invariants chi1_6.json --backend float

  3. Inequivalence verdict (exit 0 inequivalent, 3 inconclusive):
     slocc compare chi1_6.json chi3_6.json

  4. Seeded covariance check, report to a file:
     slocc check-covariance chi1_6.json --kind all --trials 50 --seed 7 -o cov.json

  5. Vanishing table of every named family:
     slocc table --n 8
"""


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1: {text!r}")
    return value


def _single_kind(text: str) -> str:
    try:
        return parse_kind(text).value
    except SloccError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _kind_choice(text: str) -> str:
    if text.lower() == 'all':
        return 'all'
    return _single_kind(text)


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subparser per command."""
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description=BANNER,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Exit codes: 0 success or inequivalent, 1 error, 2 usage, 3 inconclusive.",
    )
    parser.add_argument('--version', action='version', version=f"{TOOL_NAME} {__version__}")
    parser.add_argument('-v', '--verbose', action='store_true', help="🔍 Debug logging on stderr")

    common = argparse.ArgumentParser(add_help=False)
    output_group = common.add_argument_group('📥 Output Options')
    output_group.add_argument('-o', '--output', metavar='FILE',
                              help="💾 Write the JSON document to FILE (atomic) instead of stdout")

    numeric = argparse.ArgumentParser(add_help=False)
    numeric_group = numeric.add_argument_group('⚙️ Numeric Options')
    numeric_group.add_argument('--backend', choices=[b.value for b in Backend],
                               help="exact (Gaussian rationals) or float (log-domain LU); "
                                    "default: the file's own backend")
    numeric_group.add_argument('--zero-factor', type=_positive_float, default=ZERO_FACTOR,
                               help=f"float zero test |det| <= factor * Hadamard bound "
                                    f"(default {ZERO_FACTOR:g})")

    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    gen = commands.add_parser('gen', parents=[common], help="Generate a named state")
    gen.add_argument('--family', required=True, metavar='NAME',
                     help=f"State family: {', '.join(FAMILIES)}")
    gen.add_argument('--n', '-n', dest='n', type=int, required=True, help="Even qubit count")
    gen.add_argument('--l', '-l', dest='l', type=int, help="Dicke excitation number")

    invariants = commands.add_parser('invariants', parents=[common, numeric],
                                     help="Evaluate all four invariants")
    invariants.add_argument('file', help="State file")

    sig = commands.add_parser('signature', parents=[common, numeric], help="Zero/nonzero pattern")
    sig.add_argument('file', help="State file")

    cmp_ = commands.add_parser('compare', parents=[common, numeric],
                               help="Inequivalence verdict for two states")
    cmp_.add_argument('file_a', help="First state file")
    cmp_.add_argument('file_b', help="Second state file")

    cov = commands.add_parser('check-covariance', parents=[common],
                              help="Random-chain covariance checks")
    cov.add_argument('file', help="State file")
    cov.add_argument('--kind', type=_kind_choice, default='all', help="1..4, I..IV or all")
    cov.add_argument('--trials', type=_positive_int, default=20, help="Random chains (default 20)")
    cov.add_argument('--seed', type=int, default=0, help="Generator seed (default 0)")
    cov.add_argument('--backend', choices=[b.value for b in Backend],
                     help="default: the file's own backend")
    cov.add_argument('--per-qubit', action='store_true',
                     help="Also apply one operator at each qubit position")

    meas = commands.add_parser('measure', parents=[common],
                               help="|P| of the normalized state")
    meas.add_argument('file', help="State file")
    meas.add_argument('--kind', type=_single_kind, required=True, help="1..4 or I..IV")
    meas.add_argument('--backend', choices=[b.value for b in Backend],
                      help="default: the file's own backend")

    table = commands.add_parser('table', parents=[common, numeric],
                                help="Signatures of every named family")
    table.add_argument('--n', '-n', dest='n', type=int, required=True, help="Even qubit count")

    indep = commands.add_parser('independence', parents=[common],
                                help="Exact rank of the invariant value matrix")
    indep.add_argument('--n', '-n', dest='n', type=int, required=True, help="Even qubit count")
    indep.add_argument('--samples', type=_positive_int, default=8, help="Random states (default 8)")
    indep.add_argument('--seed', type=int, default=0, help="Generator seed (default 0)")

    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments.

    Returns:
        argparse.Namespace: Parsed command line arguments
    """
    return build_parser().parse_args(argv)


def _backend(args: argparse.Namespace) -> Optional[Backend]:
    value = getattr(args, 'backend', None)
    return Backend(value) if value else None


def _kinds(choice: str) -> List[InvariantKind]:
    return list(ALL_KINDS) if choice == 'all' else [parse_kind(choice)]


def _pattern_table(title: str, rows) -> Table:
    table = Table(title=title)
    table.add_column("state")
    for kind in ALL_KINDS:
        table.add_column(kind.symbol, justify="center")
    for label, sig in rows:
        table.add_row(label or '-', *("[info]0[/info]" if z else "[success]≠0[/success]"
                                      for z in sig.pattern))
    return table


def cmd_gen(args: argparse.Namespace, console: Console) -> int:
    state = gen_family(args.family, args.n, args.l)
    write_output(serialize_state(state), args.output)
    console.print(f"[success]✓[/success] {state.label} on {state.n} qubits, "
                  f"{state.nonzero_count()} terms, norm² = {state.norm_squared}")
    return EXIT_OK


def cmd_invariants(args: argparse.Namespace, console: Console) -> int:
    state = read_state(args.file)
    backend = _backend(args) or state.backend
    values = [evaluate(kind, state, backend) for kind in ALL_KINDS]
    report = InvariantsReport(command='invariants', backend=backend.value, n=state.n,
                              label=state.label,
                              invariants=[invariant_entry(v, v.vanishes(args.zero_factor))
                                          for v in values])
    write_output(dump_report(report), args.output)

    table = Table(title=f"Invariants of {state.label or args.file} (n={state.n}, {backend.value})")
    table.add_column("kind")
    table.add_column("degree", justify="right")
    table.add_column("normalized")
    for value in values:
        table.add_row(value.kind.symbol, str(value.degree), str(value.normalized))
    console.print(table)
    return EXIT_OK


def cmd_signature(args: argparse.Namespace, console: Console) -> int:
    state = read_state(args.file)
    sig = signature(state, _backend(args), args.zero_factor)
    report = SignatureReport(command='signature', backend=sig.backend.value, n=state.n,
                             zero_factor=sig.zero_factor,
                             signature=signature_block(sig, state.label))
    write_output(dump_report(report), args.output)
    console.print(_pattern_table(f"Signature (n={state.n}, {sig.backend.value})",
                                 [(state.label or args.file, sig)]))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace, console: Console) -> int:
    first = read_state(args.file_a)
    second = read_state(args.file_b)
    verdict = compare(first, second, _backend(args), args.zero_factor)
    report = compare_report(verdict, first.n, (first.label, second.label))
    write_output(dump_report(report), args.output)

    console.print(_pattern_table("Signatures", [(first.label or args.file_a, verdict.first),
                                                (second.label or args.file_b, verdict.second)]))
    if verdict.outcome is Outcome.INEQUIVALENT:
        kinds = ', '.join(k.symbol for k in verdict.separating_kinds)
        console.print(f"[success]Inequivalent[/success] under SLOCC (separated by {kinds})")
        return EXIT_OK
    console.print("[warning]Inconclusive[/warning]: matching signatures do not certify equivalence")
    return EXIT_INCONCLUSIVE


def cmd_check_covariance(args: argparse.Namespace, console: Console) -> int:
    state = read_state(args.file)
    backend = _backend(args) or state.backend
    kinds = _kinds(args.kind)
    rng = np.random.default_rng(args.seed)

    with ProgressManager(enabled=console.is_terminal, target=console) as progress:
        task = progress.add_task("Covariance trials", total=args.trials)
        reports = covariance_trials(kinds, state, args.trials, rng, backend,
                                    on_trial=progress.callback(task))
    entries = [covariance_entry(r, trial=i // len(kinds)) for i, r in enumerate(reports)]
    if args.per_qubit:
        for kind in kinds:
            suite = per_qubit_covariance_suite(kind, state, backend, rng)
            reports.extend(suite)
            entries.extend(covariance_entry(r) for r in suite)

    failures = sum(not r.passed for r in reports)
    worst = max(range(len(reports)), key=lambda i: reports[i].magnitude, default=None)
    report = CovarianceFile(command='check-covariance', backend=backend.value, n=state.n,
                            label=state.label, seed=args.seed, trials=args.trials,
                            kinds=[k.value for k in kinds], checks=len(reports),
                            failures=failures, passed=failures == 0,
                            worst=None if worst is None else entries[worst], results=entries)
    write_output(dump_report(report), args.output)

    if failures:
        console.print(f"[error]✗[/error] {failures} of {len(reports)} covariance checks failed")
        return EXIT_ERROR
    console.print(f"[success]✓[/success] {len(reports)} covariance checks passed "
                  f"(exponent {reports[0].exponent})")
    return EXIT_OK


def cmd_measure(args: argparse.Namespace, console: Console) -> int:
    state = read_state(args.file)
    kind = parse_kind(args.kind)
    result = measure(kind, state, _backend(args))
    write_output(dump_report(measure_report(result, state)), args.output)
    exact = f", |{kind.symbol}|² = {result.squared}" if result.squared is not None else ''
    console.print(f"|{kind.symbol}| = {result.value:.12g}{exact}")
    return EXIT_OK


def cmd_table(args: argparse.Namespace, console: Console) -> int:
    backend = _backend(args) or Backend.EXACT
    rows = vanishing_table(args.n, backend, args.zero_factor)
    report = TableReport(command='table', backend=backend.value, n=args.n,
                         zero_factor=args.zero_factor if backend is Backend.FLOAT else None,
                         rows=[TableRow(label=label, pattern=sig.describe(), zeros=list(sig.pattern))
                               for label, sig in rows])
    write_output(dump_report(report), args.output)
    console.print(_pattern_table(f"Vanishing table (n={args.n}, {backend.value})", rows))
    return EXIT_OK


def cmd_independence(args: argparse.Namespace, console: Console) -> int:
    with ProgressManager(enabled=console.is_terminal, target=console) as progress:
        task = progress.add_task("Sampling states", total=args.samples)
        cert = independence_rank(args.n, args.samples, args.seed, on_sample=progress.callback(task))
    write_output(dump_report(independence_report(cert)), args.output)
    if cert.independent:
        console.print(f"[success]✓[/success] rank {cert.rank}: the four invariants are "
                      f"linearly independent at n={cert.n}")
        return EXIT_OK
    console.print(f"[warning]rank {cert.rank} of {len(cert.values)}[/warning]: inconclusive")
    return EXIT_ERROR


COMMANDS: Dict[str, Callable[[argparse.Namespace, Console], int]] = {
    'gen': cmd_gen,
    'invariants': cmd_invariants,
    'signature': cmd_signature,
    'compare': cmd_compare,
    'check-covariance': cmd_check_covariance,
    'measure': cmd_measure,
    'table': cmd_table,
    'independence': cmd_independence,
}


def make_console() -> Console:
    theme = Theme({
        "info": "blue",
        "warning": "dark_orange",
        "error": "red bold",
        "success": "dark_green"
    }) if CONSOLE_STYLE == 'light' else Theme({
        "info": "cyan",
        "warning": "yellow",
        "error": "red bold",
        "success": "green"
    })
    return Console(theme=theme, stderr=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the application.

    Returns:
        int: Process exit code (0 ok/inequivalent, 1 error, 2 usage, 3 inconclusive)
    """
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logging.basicConfig(
        level=logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    logging.getLogger(TOOL_NAME).setLevel(
        logging.DEBUG if args.verbose else getattr(logging, LOG_LEVEL, logging.WARNING))
    logger.debug(f"Parsed arguments: {vars(args)}")

    console = make_console()
    try:
        return COMMANDS[args.command](args, console)
    except SloccError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        console.print(f"[error]Error:[/error] {e}")
        return EXIT_ERROR
