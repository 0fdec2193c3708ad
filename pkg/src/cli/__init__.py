"""
`okalab` command line: one subcommand per analysis, text reports by default and exact JSON with `--json`.

Exit status is 0 on success, 1 when the input is rejected or a check fails (with `{"error": code, "message": ...}`
on stderr), and 2 for usage errors.
"""

from __future__ import annotations as _annotations

import argparse
import json
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, TextIO

import numpy as np
from pydantic import BaseModel, TypeAdapter, ValidationError

import logfire

from ..arrangement import Arrangement, ProjectivePoint, classify, oka_witness, parse_arrangement
from ..common import Settings, configure_logfire, load_settings, resolve_seed
from ..common.errors import InputNotFoundError, MalformedDocumentError, OkalabError, VerificationFailedError
from ..graphcomp import (
    SUITES,
    UniPolyQ,
    decompose,
    localise_limit_check,
    m_nu_loop,
    m_nu_outcome,
    parse_poly,
    run_suites,
    winding_number,
)
from ..relations import (
    attach_circuits,
    circuits,
    diagonal_hyperplanes,
    entire_curve_obstructions,
    tangent_direction_subspaces,
)
from .render import (
    CircuitsOutput,
    DecomposeOutput,
    DiagonalsOutput,
    LimitCheckOutput,
    ObstructionsOutput,
    Output,
    VerifyOutput,
    WindingOutput,
    WitnessOutput,
    render_json,
    render_text,
)

__all__ = 'build_parser', 'run', 'main'


class DecomposeDocument(BaseModel):
    h: list[Any]
    k: list[Any]


_loop_adapter = TypeAdapter(list[tuple[float, float]])


def _read(path: str) -> bytes:
    p = Path(path)
    if not p.is_file():
        raise InputNotFoundError(f'{path}: no such file')
    return p.read_bytes()


def _arrangement(args: argparse.Namespace) -> Arrangement:
    return parse_arrangement(_read(args.input))


def _complex_list(text: str) -> list[complex]:
    try:
        return [complex(part.replace(' ', '').replace('i', 'j')) for part in text.split(',')]
    except ValueError as exc:
        raise MalformedDocumentError(f'invalid complex vector {text!r}') from exc


def cmd_classify(args: argparse.Namespace, settings: Settings) -> Output:
    arr = _arrangement(args)
    report = classify(arr)
    return attach_circuits(report, arr) if args.with_circuits else report


def cmd_circuits(args: argparse.Namespace, settings: Settings) -> Output:
    return CircuitsOutput(circuits=tuple(circuits(_arrangement(args))))


def cmd_diagonals(args: argparse.Namespace, settings: Settings) -> Output:
    arr = _arrangement(args)
    found = [d for idx, c in enumerate(circuits(arr)) for d in diagonal_hyperplanes(c, arr, idx)]
    return DiagonalsOutput(diagonal_hyperplanes=tuple(found))


def cmd_obstructions(args: argparse.Namespace, settings: Settings) -> Output:
    arr = _arrangement(args)
    point = ProjectivePoint.of(part.strip() for part in args.point.split(','))
    report = entire_curve_obstructions(arr, point)
    return ObstructionsOutput(
        report=report,
        tangent_subspaces=tuple(tangent_direction_subspaces(arr, point, report)),
    )


def cmd_witness(args: argparse.Namespace, settings: Settings) -> Output:
    return WitnessOutput(matrix=oka_witness(_arrangement(args)))


def cmd_graph_verify(args: argparse.Namespace, settings: Settings) -> Output:
    seed = resolve_seed(args.seed if args.seed is not None else settings.seed)
    samples = args.samples or settings.samples
    records = run_suites(np.random.default_rng(seed), samples, args.suite)
    return VerifyOutput(seed=seed, records=tuple(records))


def cmd_decompose(args: argparse.Namespace, settings: Settings) -> Output:
    try:
        doc = DecomposeDocument.model_validate_json(_read(args.input))
    except ValidationError as exc:
        raise MalformedDocumentError(f'invalid decomposition document: {exc.error_count()} errors') from exc
    return DecomposeOutput(decomposition=decompose(UniPolyQ(doc.h), UniPolyQ(doc.k)))


def cmd_winding(args: argparse.Namespace, settings: Settings) -> Output:
    samples = args.samples or settings.loop_samples
    if args.loop is not None:
        try:
            pairs = _loop_adapter.validate_json(_read(args.loop))
        except ValidationError as exc:
            raise MalformedDocumentError(f'invalid loop document: {exc.error_count()} errors') from exc
        return WindingOutput(
            source=args.loop, samples=len(pairs), winding=winding_number([complex(*p) for p in pairs])
        )
    decomposition = m_nu_outcome(args.nu, samples)
    assert decomposition.winding is not None
    return WindingOutput(
        source=f'm_{args.nu} on {{y = e^(i theta), x = y^-{args.nu}}}',
        samples=len(m_nu_loop(args.nu, samples)),
        winding=decomposition.winding,
        decomposition=decomposition,
    )


def cmd_limit_check(args: argparse.Namespace, settings: Settings) -> Output:
    g = parse_poly(_read(args.poly))
    twist = 1 if args.single_twist else 2
    check = localise_limit_check(
        g,
        _complex_list(args.x0),
        _complex_list(args.s),
        _complex_list(args.direction),
        steps=args.steps or settings.limit_steps,
        twist=twist,
    )
    return LimitCheckOutput.of(check, twist)


Command = Callable[[argparse.Namespace, Settings], Output]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='okalab', description='Oka classification of hyperplane arrangements.')
    sub = parser.add_subparsers(dest='command', required=True)

    def add(name: str, func: Command, help: str, input_file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument('--json', action='store_true', help='print the exact JSON report')
        if input_file:
            p.add_argument('input', help='arrangement document: {"n": ..., "forms": [[...], ...]}')
        return p

    p = add('classify', cmd_classify, 'Oka or not, with certificate')
    p.add_argument('--with-circuits', action='store_true', help='include the circuits in the report')
    add('circuits', cmd_circuits, 'minimal linear relations among the forms')
    add('diagonals', cmd_diagonals, 'diagonal hyperplanes of every circuit')
    p = add('obstructions', cmd_obstructions, 'subspaces containing entire curves through a point')
    p.add_argument('--point', required=True, help='homogeneous coordinates, e.g. "1,2,3"')
    add('witness', cmd_witness, 'coordinate change to coordinate hyperplanes')

    p = add('graph-verify', cmd_graph_verify, 'numeric checks of the covering space and sprays', input_file=False)
    p.add_argument('--samples', type=int, help='samples per suite (default $OKALAB_SAMPLES or 1000)')
    p.add_argument('--seed', type=int, help='RNG seed (default $OKALAB_SEED or random)')
    p.add_argument('--suite', action='append', choices=list(SUITES), help='run only this suite, repeatable')

    p = add('decompose', cmd_decompose, 'polynomial f + 1/g decomposition of h/k', input_file=False)
    p.add_argument('input', help='document {"h": [...], "k": [...]} with ascending exact coefficients')

    p = add('winding', cmd_winding, 'winding number of a loop, or the m_nu obstruction', input_file=False)
    p.add_argument('loop', nargs='?', help='JSON list of [re, im] samples, omit for the m_nu preset')
    p.add_argument('--nu', type=int, default=1, help='exponent of the m_nu = x/(x y^nu - 1) preset')
    p.add_argument('--samples', type=int, help='loop resolution (default $OKALAB_LOOP_SAMPLES or 512)')

    p = add('limit-check', cmd_limit_check, 'localisation limit 1/g(x) - 1/g(x + g(x)^2 s)', input_file=False)
    p.add_argument('--poly', required=True, help='polynomial document {"variables": n, "coefficients": [...]}')
    p.add_argument('--x0', required=True, help='zero of g, comma separated complex numbers')
    p.add_argument('--s', required=True, help='spray direction')
    p.add_argument('--direction', required=True, help='approach direction')
    p.add_argument('--steps', type=int, help='number of halvings (default $OKALAB_LIMIT_STEPS or 20)')
    p.add_argument('--single-twist', action='store_true', help='use g(x) instead of g(x)^2')
    return parser


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)

    with logfire.span('okalab {command=}', command=args.command) as span:
        try:
            output = args.func(args, load_settings())
        except OkalabError as exc:
            span.set_attribute('error_code', exc.code)
            logfire.warn(
                '{command=} failed {code=}: {message}', command=args.command, code=exc.code, message=exc.message
            )
            stderr.write(json.dumps(exc.as_dict()) + '\n')
            return 1

    stdout.write((render_json(output) if args.json else render_text(output)) + '\n')
    if isinstance(output, VerifyOutput) and not output.ok:
        failed = [r.name for r in output.records if not r.ok]
        stderr.write(json.dumps(VerificationFailedError(f'failed checks: {", ".join(failed)}').as_dict()) + '\n')
        return 1
    return 0


def main() -> None:
    configure_logfire()
    sys.exit(run())
