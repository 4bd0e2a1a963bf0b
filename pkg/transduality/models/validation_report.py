from ..common.enums import ViolationKind


class Violation:
    kind: ViolationKind
    detail: str
    witness: tuple[str, ...]

    def __init__(self, kind: ViolationKind, detail: str, witness: tuple[str, ...] = ()):
        self.kind = kind
        self.detail = detail
        self.witness = witness

    def to_dict(self) -> dict:
        obj = {
            "kind": str(self.kind),
            "detail": self.detail,
            "witness": list(self.witness),
        }

        return obj

    def __repr__(self):
        witness = ", ".join(self.witness)

        return f"{self.kind}: {self.detail} [{witness}]"


class ValidationReport:
    _subject: str
    _violations: list[Violation]

    def __init__(self, subject: str):
        self._subject = subject
        self._violations = []

    @property
    def subject(self) -> str:
        return self._subject

    @property
    def violations(self) -> list[Violation]:
        return list(self._violations)

    @property
    def is_valid(self) -> bool:
        return not self._violations

    @property
    def kinds(self) -> set[ViolationKind]:
        kinds = {violation.kind for violation in self._violations}

        return kinds

    def add(self, kind: ViolationKind, detail: str, *witness: str):
        self._violations.append(Violation(kind, detail, tuple(witness)))

    def merge(self, other: "ValidationReport"):
        for violation in other.violations:
            self._violations.append(
                Violation(
                    violation.kind, f"{other.subject}: {violation.detail}", violation.witness
                )
            )

    def to_dict(self) -> dict:
        obj = {
            "subject": self._subject,
            "is_valid": self.is_valid,
            "violations": [violation.to_dict() for violation in self._violations],
        }

        return obj

    def render(self) -> str:
        if self.is_valid:
            return f"{self._subject}: valid"

        lines = [f"{self._subject}: {len(self._violations)} violation(s)"]
        lines.extend(f"  - {violation}" for violation in self._violations)

        text = "\n".join(lines)

        return text

    def __repr__(self):
        return self.render()
