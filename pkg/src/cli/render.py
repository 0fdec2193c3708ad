"""
Report documents printed by the CLI, as JSON (`--json`) or as plain text.
"""

from __future__ import annotations as _annotations

from pydantic import BaseModel, ConfigDict

from ..arrangement import Circuit, ClassificationReport, Verdict
from ..exactlin import MatrixQ
from ..graphcomp import Decomposition, LimitCheck, VerificationRecord, complex_pair
from ..relations import DiagonalHyperplane, ObstructionReport, TangentSubspace

__all__ = (
    'CircuitsOutput',
    'DiagonalsOutput',
    'ObstructionsOutput',
    'WitnessOutput',
    'VerifyOutput',
    'DecomposeOutput',
    'WindingOutput',
    'LimitCheckOutput',
    'Output',
    'render_json',
    'render_text',
)


class _Output(BaseModel):
    model_config = ConfigDict(frozen=True)


class CircuitsOutput(_Output):
    circuits: tuple[Circuit, ...]


class DiagonalsOutput(_Output):
    diagonal_hyperplanes: tuple[DiagonalHyperplane, ...]


class ObstructionsOutput(_Output):
    report: ObstructionReport
    tangent_subspaces: tuple[TangentSubspace, ...]


class WitnessOutput(_Output):
    matrix: MatrixQ


class VerifyOutput(_Output):
    seed: int
    records: tuple[VerificationRecord, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)


class DecomposeOutput(_Output):
    decomposition: Decomposition


class WindingOutput(_Output):
    source: str
    samples: int
    winding: int
    decomposition: Decomposition | None = None


class LimitCheckOutput(_Output):
    twist: int
    estimates: tuple[tuple[float, float], ...]
    target: tuple[float, float]
    final_error: float
    skipped: int
    verdict: str

    @classmethod
    def of(cls, check: LimitCheck, twist: int) -> LimitCheckOutput:
        return cls(
            twist=twist,
            estimates=tuple(tuple(complex_pair(e)) for e in check.estimates),
            target=tuple(complex_pair(check.target)),
            final_error=check.final_error,
            skipped=check.skipped,
            verdict=check.verdict,
        )


Output = (
    ClassificationReport
    | CircuitsOutput
    | DiagonalsOutput
    | ObstructionsOutput
    | WitnessOutput
    | VerifyOutput
    | DecomposeOutput
    | WindingOutput
    | LimitCheckOutput
)


def render_json(output: Output) -> str:
    return output.model_dump_json(indent=2)


def _indices(indices: tuple[int, ...]) -> str:
    return '{' + ', '.join(map(str, indices)) + '}'


def _circuit(c: Circuit) -> str:
    coefficients = ', '.join(str(x) for x in c.coefficients)
    return f'{_indices(c.indices)} coefficients ({coefficients})'


def _conditions(rows: tuple[object, ...]) -> str:
    return '; '.join(str(r) for r in rows) or '(none)'


def render_text(output: Output) -> str:
    lines: list[str] = []
    match output:
        case ClassificationReport() as r:
            lines.append(f'verdict: {r.verdict}')
            lines.append(f'reason: {r.reason}')
            lines.append(f'dominable by C^n: {str(r.dominable_by_cn).lower()}')
            lines.append(f'C-connected: {str(r.c_connected).lower()}')
            lines.append(f'chain-C-connected: {str(r.chain_c_connected).lower()}')
            if r.failing_subset is not None:
                lines.append(f'dependent subset: {_indices(r.failing_subset)}')
            if r.verdict == Verdict.OKA and r.product_profile is not None:
                profile = r.product_profile
                if profile.whole_projective_space:
                    lines.append(f'complement: P^{r.n}')
                else:
                    lines.append(f'complement: (C*)^{profile.punctured_factors} x C^{profile.plane_factors}')
            if r.oka_witness is not None:
                lines.append('witness:')
                lines.extend(f'  {row}' for row in r.oka_witness.rows)
            if r.circuits is not None:
                lines.append(f'circuits: {len(r.circuits)}')
                lines.extend(f'  {_circuit(c)}' for c in r.circuits)
        case CircuitsOutput(circuits=circuits):
            lines.append(f'{len(circuits)} circuits')
            lines.extend(f'  {_circuit(c)}' for c in circuits)
        case DiagonalsOutput(diagonal_hyperplanes=diagonals):
            lines.append(f'{len(diagonals)} diagonal hyperplanes')
            lines.extend(f'  circuit {d.circuit_index} J={_indices(d.subset)}: {d.form} = 0' for d in diagonals)
        case ObstructionsOutput(report=report, tangent_subspaces=tangents):
            lines.append(f'point: {report.point}')
            if report.is_empty:
                lines.append('no circuits: entire curves through the point are unconstrained')
            for entry in report.entries:
                lines.append(f'circuit {entry.circuit_index} {_circuit(entry.circuit)}')
                for d in entry.diagonal_hyperplanes:
                    lines.append(f'  diagonal hyperplane J={_indices(d.subset)}: {d.form} = 0')
                if (sub := entry.associated_subspace) is not None:
                    conditions = [f'{f} = 0' for f in sub.conditions()]
                    lines.append(f'  associated subspace (dim {sub.projective_dimension}): {"; ".join(conditions)}')
            for t in tangents:
                lines.append(
                    f'tangent ({t.source}, circuit {t.circuit_index}, chart x{t.chart}=1): {_conditions(t.conditions)}'
                )
        case WitnessOutput(matrix=m):
            lines.extend(str(row) for row in m.rows)
        case VerifyOutput(seed=seed, records=records):
            lines.append(f'seed: {seed}')
            for rec in records:
                status = 'ok' if rec.ok else 'FAILED'
                lines.append(f'{rec.name}: {rec.passed}/{rec.checked} max error {rec.max_error:.3e} {status}')
        case DecomposeOutput(decomposition=d):
            lines.append(f'{d.outcome}: {d.message}')
        case WindingOutput(source=source, samples=samples, winding=winding, decomposition=d):
            lines.append(f'{source} ({samples} samples): winding {winding}')
            if d is not None:
                lines.append(f'{d.outcome}: {d.message}')
        case LimitCheckOutput() as c:
            lines.append(f'twist {c.twist}, target {complex(*c.target):.9g}')
            for j, (re, im) in enumerate(c.estimates, start=1):
                lines.append(f'  {j:>3}: {complex(re, im):.12g}')
            lines.append(f'{c.verdict} (final error {c.final_error:.3e}, {c.skipped} skipped)')
    return '\n'.join(lines)
