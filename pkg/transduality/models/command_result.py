from ..common.consts import REPORT_KEY_COMMAND, REPORT_KEY_EXIT_CODE, REPORT_KEY_SCENARIO
from ..common.enums import Command, ExitCode


class CommandResult:
    """Text and machine readable outcome of one command on one input file."""

    command: Command
    subject: str
    exit_code: ExitCode
    text: str
    data: dict

    def __init__(
        self,
        command: Command,
        subject: str,
        exit_code: ExitCode = ExitCode.SUCCESS,
        text: str = "",
        data: dict | None = None,
    ):
        self.command = command
        self.subject = subject
        self.exit_code = exit_code
        self.text = text
        self.data = data or {}

    @property
    def is_success(self) -> bool:
        return self.exit_code == ExitCode.SUCCESS

    def to_dict(self) -> dict:
        obj = {
            REPORT_KEY_COMMAND: str(self.command),
            REPORT_KEY_SCENARIO: self.subject,
            REPORT_KEY_EXIT_CODE: int(self.exit_code),
            **self.data,
        }

        return obj

    def render(self) -> str:
        header = f"== {self.command} {self.subject} (exit {int(self.exit_code)})"
        text = f"{header}\n{self.text}" if self.text else header

        return text

    def __repr__(self):
        return f"CommandResult({self.command}, {self.subject}, exit={int(self.exit_code)})"
