from fractions import Fraction

from ..common.linear_algebra import ExactMatrix
from .tc_element import TCElement


def _matrix_to_list(matrix: ExactMatrix | None) -> list[list[str]] | None:
    if matrix is None:
        return None

    rows = [[str(value) for value in row] for row in matrix.to_lists()]

    return rows


class GerbeCheckResult:
    holds: bool
    residual: TCElement

    def __init__(self, residual: TCElement):
        self.residual = residual
        self.holds = residual.is_zero

    def to_dict(self) -> dict:
        obj = {"holds": self.holds, "residual": self.residual.render()}

        return obj

    def __repr__(self):
        return f"GerbeCheckResult(holds={self.holds}, residual={self.residual.render()})"


class KernelParts:
    """Degree-zero kernel split into its pure and mixed parts."""

    e_part: TCElement
    e_hat_part: TCElement
    mixed: dict[tuple[int, int], Fraction]
    is_quadratic: bool

    def __init__(
        self,
        e_part: TCElement,
        e_hat_part: TCElement,
        mixed: dict[tuple[int, int], Fraction],
    ):
        self.e_part = e_part
        self.e_hat_part = e_hat_part
        self.mixed = mixed
        self.is_quadratic = all(
            bin(left).count("1") == 1 and bin(right).count("1") == 1
            for left, right in mixed
        )

    def to_dict(self) -> dict:
        obj = {
            "E": self.e_part.render(),
            "Ehat": self.e_hat_part.render(),
            "mixed": {f"{left},{right}": str(value) for (left, right), value in sorted(self.mixed.items())},
        }

        return obj


class NondegeneracyResult:
    is_nondegenerate: bool
    matrix: ExactMatrix | None
    rank: int
    reason: str | None

    def __init__(
        self,
        is_nondegenerate: bool,
        matrix: ExactMatrix | None = None,
        rank: int = 0,
        reason: str | None = None,
    ):
        self.is_nondegenerate = is_nondegenerate
        self.matrix = matrix
        self.rank = rank
        self.reason = reason

    def to_dict(self) -> dict:
        obj = {
            "is_nondegenerate": self.is_nondegenerate,
            "rank": self.rank,
            "reason": self.reason,
            "matrix": _matrix_to_list(self.matrix),
        }

        return obj

    def __repr__(self):
        return f"NondegeneracyResult(is_nondegenerate={self.is_nondegenerate}, rank={self.rank}, reason={self.reason})"


class ChainMapResult:
    is_chain_map: bool
    witness: TCElement | None
    defect: TCElement | None

    def __init__(self, witness: TCElement | None = None, defect: TCElement | None = None):
        self.witness = witness
        self.defect = defect
        self.is_chain_map = witness is None

    def to_dict(self) -> dict:
        obj = {
            "is_chain_map": self.is_chain_map,
            "witness": None if self.witness is None else self.witness.render(),
            "defect": None if self.defect is None else self.defect.render(),
        }

        return obj


class DegreeCheckResult:
    holds: bool
    is_vacuous: bool
    expected: int
    observed: int | None

    def __init__(self, expected: int, observed: int | None):
        self.expected = expected
        self.observed = observed
        self.is_vacuous = observed is None
        self.holds = observed is None or observed == expected

    def to_dict(self) -> dict:
        obj = {
            "holds": self.holds,
            "is_vacuous": self.is_vacuous,
            "expected": self.expected,
            "observed": self.observed,
        }

        return obj


class DualityVerdict:
    """Outcome of the gerbe and nondegeneracy checks for one scenario."""

    gerbe: GerbeCheckResult
    nondegeneracy: NondegeneracyResult | None
    shortcut: bool | None
    error: str | None

    def __init__(
        self,
        gerbe: GerbeCheckResult,
        nondegeneracy: NondegeneracyResult | None = None,
        shortcut: bool | None = None,
        error: str | None = None,
    ):
        self.gerbe = gerbe
        self.nondegeneracy = nondegeneracy
        self.shortcut = shortcut
        self.error = error

    @property
    def is_dual(self) -> bool:
        is_dual = (
            self.gerbe.holds
            and self.nondegeneracy is not None
            and self.nondegeneracy.is_nondegenerate
        )

        return is_dual

    def to_dict(self) -> dict:
        obj = {
            "is_dual": self.is_dual,
            "gerbe": self.gerbe.to_dict(),
            "nondegeneracy": None if self.nondegeneracy is None else self.nondegeneracy.to_dict(),
            "quadratic_shortcut": self.shortcut,
            "error": self.error,
        }

        return obj

    def render(self) -> str:
        lines = [
            f"gerbe trivialization: {'holds' if self.gerbe.holds else 'fails'}",
        ]

        if not self.gerbe.holds:
            lines.append(f"  residual dF - (H - Hhat): {self.gerbe.residual.render()}")

        if self.nondegeneracy is not None:
            state = "holds" if self.nondegeneracy.is_nondegenerate else "fails"
            lines.append(f"nondegeneracy: {state} (rank {self.nondegeneracy.rank})")

            if self.nondegeneracy.reason:
                lines.append(f"  {self.nondegeneracy.reason}")

        if self.shortcut is not None:
            lines.append(f"quadratic shortcut: {'invertible' if self.shortcut else 'singular'}")

        if self.error:
            lines.append(f"error: {self.error}")

        lines.append(f"T-dual: {'yes' if self.is_dual else 'no'}")

        text = "\n".join(lines)

        return text


class DualComparison:
    """Twisted cohomology of both sides and how the transform relates them."""

    dimensions: dict[str, int]
    dual_dimensions: dict[str, int]
    images_closed: bool | None
    images_span: bool | None

    def __init__(
        self,
        dimensions: dict[str, int],
        dual_dimensions: dict[str, int],
        images_closed: bool | None = None,
        images_span: bool | None = None,
    ):
        self.dimensions = dimensions
        self.dual_dimensions = dual_dimensions
        self.images_closed = images_closed
        self.images_span = images_span

    @property
    def dimensions_agree(self) -> bool:
        return self.dimensions == self.dual_dimensions

    @property
    def is_isomorphic(self) -> bool:
        is_isomorphic = self.dimensions_agree and self.images_closed is not False and self.images_span is not False

        return is_isomorphic

    def to_dict(self) -> dict:
        obj = {
            "E": self.dimensions,
            "Ehat": self.dual_dimensions,
            "dimensions_agree": self.dimensions_agree,
            "images_closed": self.images_closed,
            "images_span": self.images_span,
        }

        return obj

    def render(self) -> str:
        lines = [
            f"twisted cohomology E: {self.dimensions}",
            f"twisted cohomology Ehat: {self.dual_dimensions}",
            f"dimensions agree: {'yes' if self.dimensions_agree else 'no'}",
        ]

        if self.images_closed is not None:
            lines.append(f"transformed cocycles closed: {'yes' if self.images_closed else 'no'}")

        if self.images_span is not None:
            lines.append(f"transformed classes span: {'yes' if self.images_span else 'no'}")

        text = "\n".join(lines)

        return text


class AlgebroidDecomposition:
    """Ranks of the summands of the Clifford-Courant algebroid of a single generator model."""

    ranks: dict[str, int]
    total_rank: int

    def __init__(self, ranks: dict[str, int], total_rank: int):
        self.ranks = ranks
        self.total_rank = total_rank

    @property
    def is_direct(self) -> bool:
        return sum(self.ranks.values()) == self.total_rank

    def to_dict(self) -> dict:
        obj = {"ranks": self.ranks, "total_rank": self.total_rank, "is_direct": self.is_direct}

        return obj

    def render(self) -> str:
        width = max(len(name) for name in self.ranks)
        lines = [f"  {name.ljust(width)}  {rank}" for name, rank in self.ranks.items()]
        lines.append(f"  {'direct'.ljust(width)}  {'yes' if self.is_direct else 'no'}")

        text = "\n".join(lines)

        return text
