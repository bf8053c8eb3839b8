"""Main module for ewens-ldp.

This module serves as the command-line entry point: sample, pmf, rate, verify
and table commands, plus an interactive mode with suite completion.
"""
import argparse
import logging
import sys
from typing import Dict, List, Optional

from prompt_toolkit import prompt
from prompt_toolkit.completion import Completer, Completion
from prompt_toolkit.formatted_text import HTML

from constants import Command, OutputFormat
from core import PARAM_TYPES, REQUIRED, RunConfig, parse_params, run, targets_for
from errors import UsageError
from ldp_lab import SUITES

EXIT_USAGE = 2

PARAM_HELP = {
    "theta": "mutation rate theta > 0",
    "n": "sample size (also m for irwin-hall, pinned n for a regime)",
    "k": "number of alleles, or oldest age-class size",
    "ks": "age-class sizes k_1,...,k_r",
    "K": "number of alleles of the finite model, or simplex dimension",
    "m": "number of summands",
    "alpha": "symmetric Dirichlet parameter",
    "c": "case C ratio theta/n",
    "b": "case B exponent, n = theta^b",
    "d": "case D exponent, n = theta^d",
    "e": "theta = s * K^e for dirichlet-curve",
    "s": "theta = s * K^e for dirichlet-curve",
    "x": "point, e.g. K_n/n or a stick fraction",
    "xs": "comma-separated point",
    "p": "comma-separated frequencies",
    "t": "cumulant argument",
    "t_grid": "start:stop:count for mgf tables",
    "grid": "start:factor:count geometric theta (or K) grid",
    "delta": "ball radius",
    "N": "number of draws",
    "seed": "master seed",
    "stream": "stream index",
    "count": "number of GEM atoms",
    "top_m": "number of largest PD atoms",
    "eps": "PD tail tolerance",
    "index": "stick index i",
    "tolerance": "suite tolerance override",
    "budget": "wall-clock seconds for 'verify all'",
    "case": "regime A, B, C or D",
    "event": "event kind for rate-curve and delta-sweep",
    "scale": "kn-ball scale: sample or theta-log",
    "partition": "allelic counts a_1,...,a_n",
}


class SuiteCompleter(Completer):
    """Completer for verification suite ids with their descriptions."""

    def __init__(self, suites: Dict[str, 'Suite']):
        self.suites = suites

    def get_completions(self, document, complete_event):
        word = document.get_word_before_cursor(WORD=True)
        if not word:
            return
        for suite_id, suite in self.suites.items():
            if suite_id.lower().startswith(word.lower()):
                yield Completion(
                    suite_id,
                    start_position=-len(word),
                    display=HTML(f'<b>{word}{suite_id[len(word):]}</b>'),
                    display_meta=suite.description,
                )


class ChoiceCompleter(Completer):
    """Completer for a fixed list of choices."""

    def __init__(self, choices: List[str]):
        self.choices = choices

    def get_completions(self, document, complete_event):
        word = document.get_word_before_cursor(WORD=True)
        for choice in self.choices:
            if word.lower() in choice.lower():
                yield Completion(choice, start_position=-len(word), display=HTML(f'<b>{choice}</b>'))


def _select(title: str, choices: List[str]) -> str:
    """Numbered selection; the choice name itself is accepted too."""
    print(f"\n{title}:")
    print("\n".join(f"{i + 1}. {choice}" for i, choice in enumerate(choices)))
    while True:
        selection = prompt("Select (enter number): ").strip()
        if selection in choices:
            return selection
        try:
            index = int(selection) - 1
        except ValueError:
            print("Please enter a valid number or name")
            continue
        if 0 <= index < len(choices):
            return choices[index]
        print(f"Please enter a number between 1 and {len(choices)}")


def _parse_pairs(text: str) -> Dict[str, str]:
    raw = {}
    for pair in text.split():
        key, sep, value = pair.partition("=")
        if not sep:
            raise UsageError(f"expected key=value, got '{pair}'", key=key)
        raw[key.strip().lstrip("-").replace("-", "_")] = value
    return raw


def interactive_mode():
    """Run ewens-ldp in interactive mode."""
    command = _select("Commands", Command.get_options())

    if command == Command.Verify:
        target = prompt("Suite id: ", completer=SuiteCompleter(SUITES)).strip()
        if target not in SUITES:
            print(f"Suite '{target}' not found.")
            return EXIT_USAGE
        required = ()
    else:
        target = prompt(f"{command} target: ", completer=ChoiceCompleter(targets_for(Command(command)))).strip()
        required = REQUIRED[Command(command)].get(target)
        if required is None:
            print(f"Target '{target}' not found.")
            return EXIT_USAGE

    raw = {}
    for key in required:
        raw[key] = prompt(f"{key} ({PARAM_HELP[key]}): ")
    try:
        raw.update(_parse_pairs(prompt("Other parameters (key=value ..., leave empty for defaults): ")))
        params = parse_params(raw)
    except UsageError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    format_type = _select("Output formats", OutputFormat.get_options())
    output = prompt("Enter output file path (leave empty for stdout): ", default="") or None

    try:
        result = run(RunConfig(command, target, params, output, format_type))
    except (ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if result.path:
        print(f"Table saved to {result.path}.")
    return result.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ewens-ldp",
        description="Exact laws, samplers and large-deviation checks for Poisson-Dirichlet and Ewens sampling.",
        allow_abbrev=False,
    )
    parser.add_argument('command', nargs='?', choices=Command.get_options(), help='Command to run')
    parser.add_argument('target', nargs='?', help='Target of the command, or a suite id for verify')
    for key in PARAM_TYPES:
        parser.add_argument(f"--{key.replace('_', '-')}", dest=key, metavar=key.upper(), help=PARAM_HELP[key])
    parser.add_argument('--output', help='Output file path (default: $EWENS_LDP_OUTPUT_DIR or stdout)')
    parser.add_argument('--format', choices=OutputFormat.get_options(), default=OutputFormat.JSON,
                        help='Output format (default: json)')
    parser.add_argument('--verbose', '-v', action='store_true', help='Log progress to stderr')
    parser.add_argument('--interactive', '-i', action='store_true', help='Run in interactive mode')
    return parser


def main(argv: Optional[List[str]] = None):
    """Run ewens-ldp from the command line."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    # Run in interactive mode if requested or if no command is provided
    if args.interactive or not args.command:
        return interactive_mode()

    if not args.target:
        parser.error(f"the following arguments are required: target (one of {targets_for(Command(args.command))})")

    try:
        params = parse_params({key: getattr(args, key) for key in PARAM_TYPES})
        result = run(RunConfig(args.command, args.target, params, args.output, args.format))
    except (ValueError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    return result.exit_code


if __name__ == '__main__':
    sys.exit(main())
