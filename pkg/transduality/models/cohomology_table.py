from ..common.enums import CohomologyGrading, Parity
from .tc_element import TCElement

GradingKey = int | Parity


class CohomologyTable:
    """Dimensions and representatives of cohomology, by degree or by parity."""

    _subject: str
    _grading: CohomologyGrading
    _dimensions: dict[GradingKey, int]
    _representatives: dict[GradingKey, list[TCElement]]

    def __init__(
        self,
        subject: str,
        grading: CohomologyGrading,
        dimensions: dict[GradingKey, int],
        representatives: dict[GradingKey, list[TCElement]] | None = None,
    ):
        self._subject = subject
        self._grading = grading
        self._representatives = representatives or {}

        if grading == CohomologyGrading.PARITY:
            self._dimensions = {
                parity: dimensions.get(parity, 0) for parity in (Parity.EVEN, Parity.ODD)
            }

        else:
            self._dimensions = dict(sorted(dimensions.items()))

    @property
    def subject(self) -> str:
        return self._subject

    @property
    def grading(self) -> CohomologyGrading:
        return self._grading

    @property
    def dimensions(self) -> dict[GradingKey, int]:
        return dict(self._dimensions)

    @property
    def representatives(self) -> dict[GradingKey, list[TCElement]]:
        return dict(self._representatives)

    @property
    def total(self) -> int:
        return sum(self._dimensions.values())

    @property
    def euler_characteristic(self) -> int:
        result = 0

        for key, dimension in self._dimensions.items():
            odd = key == Parity.ODD if isinstance(key, Parity) else key % 2 == 1
            result += -dimension if odd else dimension

        return result

    def dimension(self, key: GradingKey) -> int:
        return self._dimensions.get(key, 0)

    def as_parity(self) -> dict[Parity, int]:
        if self._grading == CohomologyGrading.PARITY:
            return {Parity(key): value for key, value in self._dimensions.items()}

        result = {Parity.EVEN: 0, Parity.ODD: 0}

        for degree, dimension in self._dimensions.items():
            result[Parity.of(degree)] += dimension

        return result

    def to_dict(self) -> dict:
        obj = {
            "subject": self._subject,
            "grading": str(self._grading),
            "dimensions": {str(key): value for key, value in self._dimensions.items()},
            "representatives": {
                str(key): [element.render() for element in elements]
                for key, elements in self._representatives.items()
            },
        }

        return obj

    def render(self, with_representatives: bool = False) -> str:
        header = "parity" if self._grading == CohomologyGrading.PARITY else "degree"
        keys = [str(key) for key in self._dimensions]
        width = max([len(header)] + [len(key) for key in keys])

        lines = [self._subject, f"  {header.ljust(width)}  dim"]

        for key, dimension in self._dimensions.items():
            lines.append(f"  {str(key).ljust(width)}  {dimension}")

            if with_representatives:
                for element in self._representatives.get(key, []):
                    lines.append(f"  {''.ljust(width)}    {element.render()}")

        text = "\n".join(lines)

        return text

    def __repr__(self):
        return f"CohomologyTable({self._subject}: {self._dimensions})"
