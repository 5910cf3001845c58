"""Law reports shared by every verifier."""

from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Tuple


@dataclass(frozen=True)
class LawCheck:
    """Outcome of one law over all of its instances."""

    law: str
    passed: bool
    instances: int = 0
    witness: Optional[Mapping[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "law": self.law,
            "status": "pass" if self.passed else "fail",
            "instances": self.instances,
        }
        if self.witness is not None:
            data["witness"] = dict(self.witness)
        return data


@dataclass(frozen=True)
class LawReport:
    """A named group of law checks; passes when every check passes."""

    subject: str
    checks: Tuple[LawCheck, ...] = ()
    mode: str = "exhaustive"
    seed: Optional[int] = None
    extra: Mapping[str, Any] = field(default_factory=dict)

    @classmethod
    def single(
        cls,
        law: str,
        passed: bool,
        instances: int,
        witness: Optional[Mapping[str, Any]] = None,
        **kwargs: Any,
    ) -> "LawReport":
        return cls(law, (LawCheck(law, passed, instances, witness),), **kwargs)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def instances(self) -> int:
        return sum(check.instances for check in self.checks)

    @property
    def first_failure(self) -> Optional[LawCheck]:
        return next((check for check in self.checks if not check.passed), None)

    @property
    def witness(self) -> Optional[Mapping[str, Any]]:
        failure = self.first_failure
        return None if failure is None else failure.witness

    def check(self, law: str) -> LawCheck:
        for item in self.checks:
            if item.law == law:
                return item
        raise KeyError(law)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "law": self.subject,
            "status": "pass" if self.passed else "fail",
            "instances": self.instances,
            "mode": self.mode,
        }
        if self.seed is not None:
            data["seed"] = self.seed
        failure = self.first_failure
        if failure is not None:
            data["failed_law"] = failure.law
            if failure.witness is not None:
                data["witness"] = dict(failure.witness)
        if len(self.checks) > 1 or (self.checks and self.checks[0].law != self.subject):
            data["checks"] = [check.to_dict() for check in self.checks]
        data.update(self.extra)
        return data
