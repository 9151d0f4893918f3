import logging
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel

from gammoidkit.bridge import (
    DualPair,
    bipartite_to_digraph,
    digraph_to_bipartite,
    verify_cotransversal_duality,
    verify_orthogonality,
    verify_representations,
)
from gammoidkit.coder import encoder
from gammoidkit.enums import CheckName, CommandName, OutputFormat
from gammoidkit.exceptions import GammoidkitError, ParseError
from gammoidkit.field import BaseField, load_field
from gammoidkit.gammoid import gammoid_matroid, gammoid_representation, lgv_suite, sinkify
from gammoidkit.linalg import QQ, FieldMatrix
from gammoidkit.matroid import Matroid, dual, rank_of, validate_basis_exchange
from gammoidkit.models import CheckReport, RunConfig
from gammoidkit.parser import Document, convert, parse_input, render_digraph, render_presentation
from gammoidkit.transversal import transversal_matroid, transversal_representation

logger = logging.getLogger(__name__)

CHECK_ORDER = (CheckName.exchange, CheckName.lgv, CheckName.orthogonal, CheckName.duality)


class RunResult(BaseModel):
    exit_code: int = 0
    output: str = ""
    error: str = ""


class Command:
    """
    Execute one command of the command line tool against a parsed input.
    """

    def __init__(self, config: RunConfig, document: Optional[Document] = None) -> None:
        self.config = config
        self.field: BaseField = load_field(config.field.value)
        self._document = document

    @property
    def document(self) -> Document:
        if self._document is None:
            if not self.config.input:
                raise ParseError("no input given, use --input", source="<input>", line=0)
            self._document = parse_input(self.config.input)
        return self._document

    def header(self) -> Dict[str, Any]:
        return {
            "command": self.config.command.value,
            "field": self.field.describe(),
            "seed": self.config.seed,
        }

    def matroid(self) -> Matroid:
        doc = self.document
        if doc.presentation is not None:
            return transversal_matroid(doc.presentation)
        if doc.digraph is not None:
            return gammoid_matroid(doc.digraph, doc.sinks)
        return doc.matroid

    def pair(self) -> DualPair:
        doc = self.document
        if doc.digraph is not None:
            return digraph_to_bipartite(doc.digraph, doc.sinks)
        if doc.presentation is not None:
            return bipartite_to_digraph(doc.presentation, doc.matching)
        raise ParseError(
            "this command needs a presentation or a digraph", source=doc.source, line=1, column=1
        )

    def bases(self) -> Matroid:
        return self.matroid()

    def rank(self) -> Dict[str, Any]:
        subset = self.config.subset or ()
        m = self.matroid()
        return {"subset": list(subset), "rank": rank_of(m, subset)}

    def dualize(self) -> Matroid:
        return dual(self.matroid())

    def represent(self) -> Dict[str, Any]:
        doc = self.document
        config = self.config
        if doc.presentation is not None:
            x = transversal_representation(
                doc.presentation,
                seed=config.seed,
                normalize=config.normalize,
                matching=doc.matching,
                field=self.field,
            )
            return {
                "matrix": "X",
                "rows": x.matrix,
                "weights": [
                    {"entry": list(key), "value": self.field.render(value)}
                    for key, value in sorted(x.weights.items())
                ],
            }
        if doc.digraph is not None:
            y = gammoid_representation(
                doc.digraph,
                doc.sinks,
                seed=config.seed,
                field=self.field,
                max_retries=config.max_retries,
            )
            return {
                "matrix": "Y",
                "rows": y.matrix,
                "weights": [
                    {"entry": list(key), "value": self.field.render(value)}
                    for key, value in sorted(y.weights.items())
                ],
            }
        raise ParseError(
            "a matroid document has no representation", source=doc.source, line=1, column=1
        )

    def convert(self) -> str:
        converted = convert(self.document)
        if converted.digraph is not None:
            return render_digraph(converted.digraph, converted.sinks)
        return render_presentation(converted.presentation, converted.matching)

    def check_exchange(self) -> CheckReport:
        m = self.matroid()
        m_star = dual(m)
        report, dual_report = validate_basis_exchange(m), validate_basis_exchange(m_star)
        involution = dual(m_star) == m
        return CheckReport(
            check=CheckName.exchange.value,
            passed=report.ok and dual_report.ok and involution,
            details={"matroid": report, "dual": dual_report, "involution": involution},
        )

    def check_lgv(self, pair: DualPair) -> CheckReport:
        g = sinkify(pair.digraph, pair.sinks)
        if not g.is_acyclic():
            logger.warning("Skipping the LGV check: the digraph has a directed cycle")
            return CheckReport(
                check=CheckName.lgv.value, passed=True, details={"skipped": "cyclic"}
            )
        reports = lgv_suite(g, pair.sinks, seed=self.config.seed, field=QQ)
        failures = [list(report.subset) for report in reports if not report.equal]
        return CheckReport(
            check=CheckName.lgv.value,
            passed=not failures,
            details={
                "field": QQ.describe(),
                "subsets": len(reports),
                "nonzero": sum(1 for report in reports if report.routings),
                "failures": failures,
            },
        )

    def check_orthogonal(self, pair: DualPair) -> CheckReport:
        config = self.config
        runs = {
            self.field.NAME: verify_orthogonality(
                pair, seed=config.seed, field=self.field, max_retries=config.max_retries
            )
        }
        digraph = pair.digraph
        fully_weighted = all(edge in digraph.weights for edge in digraph.edges)
        if self.field != QQ and digraph.is_acyclic() and fully_weighted:
            runs[QQ.NAME] = verify_orthogonality(pair, seed=config.seed, field=QQ)
        representations = verify_representations(
            pair, seed=config.seed, field=self.field, max_retries=config.max_retries
        )
        passed = all(
            run.complementary and run.rows_satisfy_recurrence for run in runs.values()
        ) and all(representations.values())
        return CheckReport(
            check=CheckName.orthogonal.value,
            passed=passed,
            details={**runs, **representations},
        )

    def check_duality(self, pair: DualPair) -> CheckReport:
        report = verify_cotransversal_duality(pair)
        return CheckReport(
            check=CheckName.duality.value,
            passed=report.equal,
            details={
                "gammoid": report.left,
                "dual_transversal": report.right,
                "diff": report.diff,
            },
        )

    def verify(self) -> List[CheckReport]:
        check = self.config.check
        names = CHECK_ORDER if check == CheckName.all else (check,)
        reports = []
        pair: Optional[DualPair] = None
        for name in names:
            if name == CheckName.exchange:
                reports.append(self.check_exchange())
                continue
            if self.document.matroid is not None:
                reports.append(
                    CheckReport(check=name.value, passed=True, details={"skipped": "matroid input"})
                )
                continue
            try:
                pair = pair or self.pair()
            except GammoidkitError as e:
                reports.append(
                    CheckReport(
                        check=name.value,
                        passed=False,
                        details={"error": type(e).__name__, "message": str(e)},
                    )
                )
                continue
            reports.append(getattr(self, f"check_{name.value}")(pair))
        return reports


def _render_text(config: RunConfig, header: Dict[str, Any], result: Any) -> str:
    field = header["field"]
    head = f"# gammoidkit {header['command']} field={field['name']}"
    if "modulus" in field:
        head += f" modulus={field['modulus']}"
    head += f" seed={header['seed']}"
    lines = [head]
    if isinstance(result, Matroid):
        lines.append(encoder(result))
    elif config.command == CommandName.rank:
        subset = ",".join(map(str, result["subset"]))
        lines.append(f"rank({subset}) = {result['rank']}")
    elif config.command == CommandName.represent:
        matrix: FieldMatrix = result["rows"]
        lines.append(f"{result['matrix']} {matrix.nrows}x{matrix.ncols}")
        lines.extend(" ".join(row) for row in matrix.render())
        for weight in result["weights"]:
            i, j = weight["entry"]
            lines.append(f"weight {i} {j} {weight['value']}")
    elif config.command == CommandName.convert:
        return result
    else:
        for report in result:
            status = "pass" if report.passed else "FAIL"
            lines.append(f"{report.check}: {status} {encoder(report.details)}")
    return "\n".join(lines) + "\n"


def run(config: RunConfig, document: Optional[Document] = None) -> RunResult:
    """
    run one command; output is a function of (input, flags, seed) only
    :param config:
    :param document: already parsed input, else config.input is read
    :return: exit code 0 on success, 1 on a failed verification, 2 on input or usage errors
    """
    command = Command(config, document)
    try:
        result = getattr(command, config.command.value)()
    except GammoidkitError as e:
        if config.format == OutputFormat.json:
            return RunResult(
                exit_code=2, output=encoder({"error": type(e).__name__, "message": str(e)}) + "\n"
            )
        return RunResult(exit_code=2, error=str(e))
    exit_code = 0
    if config.command == CommandName.verify and not all(report.passed for report in result):
        exit_code = 1
    if config.format == OutputFormat.json:
        output = encoder({**command.header(), "result": result}) + "\n"
    else:
        output = _render_text(config, command.header(), result)
    return RunResult(exit_code=exit_code, output=output)


__all__: Tuple[str, ...] = ("Command", "RunResult", "run")
