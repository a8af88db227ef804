"""Domain model for covering arrays: specs, combinations, rows, suites.

Also houses the coverage-verification oracle and the two on-disk formats
(suite CSV, compact spec string). Values are 0-based integers throughout;
mapping to symbolic values is somebody else's job.

``verify_coverage`` deliberately enumerates interaction elements with
``itertools`` rather than reusing the generators in :mod:`cakit.combgen`,
so it stays an independent check on everything built on top of them.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Sequence, Union

_RUN_TERM = re.compile(r"^(\d+)\^(\d+)$")


@dataclass(frozen=True)
class CoveringArraySpec:
    """Shape of a covering array: strength t, k parameters, per-parameter domain sizes."""

    t: int
    k: int
    domains: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "domains", tuple(self.domains))
        if self.t < 1 or self.k < 1 or self.t > self.k:
            raise ValueError(f"need 1 <= t <= k, got t={self.t}, k={self.k}")
        if len(self.domains) != self.k:
            raise ValueError(
                f"expected {self.k} domain sizes, got {len(self.domains)}"
            )
        for i, v in enumerate(self.domains):
            if v < 1:
                raise ValueError(f"domain size of parameter {i} must be >= 1, got {v}")

    @classmethod
    def uniform(cls, t: int, k: int, v: int) -> "CoveringArraySpec":
        return cls(t=t, k=k, domains=(v,) * k)

    @classmethod
    def from_string(cls, text: str) -> "CoveringArraySpec":
        """Parse the compact form ``t=<t>;k=<k>;v=<v1>,<v2>,...``.

        A value term ``x^n`` stands for n repetitions of x, so
        ``t=2;k=10;v=10^10`` is ten parameters with ten values each.
        """
        fields: dict[str, str] = {}
        for part in text.strip().split(";"):
            if "=" not in part:
                raise ValueError(f"malformed spec string field {part!r}")
            key, _, value = part.partition("=")
            fields[key.strip()] = value.strip()
        missing = {"t", "k", "v"} - fields.keys()
        if missing:
            raise ValueError(f"spec string missing field(s): {sorted(missing)}")
        try:
            t = int(fields["t"])
            k = int(fields["k"])
        except ValueError as exc:
            raise ValueError(f"non-integer t or k in spec string {text!r}") from exc
        domains: list[int] = []
        for term in fields["v"].split(","):
            term = term.strip()
            run = _RUN_TERM.match(term)
            if run:
                value, n = int(run.group(1)), int(run.group(2))
                domains.extend([value] * n)
            elif term.isdigit():
                domains.append(int(term))
            else:
                raise ValueError(f"malformed domain term {term!r} in spec string")
        return cls(t=t, k=k, domains=tuple(domains))

    def to_string(self) -> str:
        """Compact string form; uses the ``x^n`` shorthand for uniform domains."""
        if self.k > 1 and len(set(self.domains)) == 1:
            v = f"{self.domains[0]}^{self.k}"
        else:
            v = ",".join(str(d) for d in self.domains)
        return f"t={self.t};k={self.k};v={v}"

    def validate_combination(self, combo: "Combination") -> None:
        if len(combo.indices) != self.t:
            raise ValueError(
                f"combination has {len(combo.indices)} indices, spec strength is {self.t}"
            )
        if combo.indices and combo.indices[-1] >= self.k:
            raise ValueError(
                f"combination index {combo.indices[-1]} out of range for k={self.k}"
            )

    def validate_row(self, assignment: Sequence[int]) -> None:
        if len(assignment) != self.k:
            raise ValueError(
                f"test case has {len(assignment)} values, spec has k={self.k}"
            )
        for i, (x, v) in enumerate(zip(assignment, self.domains)):
            if not 0 <= x < v:
                raise ValueError(
                    f"value {x} of parameter {i} outside its domain 0..{v - 1}"
                )


@dataclass(frozen=True)
class Combination:
    """Strictly increasing tuple of parameter indices."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "indices", tuple(self.indices))
        if not self.indices:
            raise ValueError("combination must select at least one parameter")
        if self.indices[0] < 0:
            raise ValueError(f"negative parameter index {self.indices[0]}")
        for a, b in itertools.pairwise(self.indices):
            if a >= b:
                raise ValueError(
                    f"combination indices must be strictly increasing, got {self.indices}"
                )

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


@dataclass(frozen=True)
class InteractionElement:
    """A combination plus one concrete value per selected parameter."""

    combo: Combination
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != len(self.combo):
            raise ValueError(
                f"{len(self.values)} values for a {len(self.combo)}-parameter combination"
            )


@dataclass(frozen=True)
class TestCase:
    """One value assignment per parameter (a covering-array row)."""

    __test__ = False  # not a pytest class, despite the name

    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(self.assignment))

    def __len__(self) -> int:
        return len(self.assignment)


RowLike = Union[TestCase, Sequence[int]]


def as_assignment(row: RowLike) -> Sequence[int]:
    """Accept a TestCase or a bare value sequence; return the value sequence."""
    return row.assignment if isinstance(row, TestCase) else row


@dataclass(frozen=True)
class TestSuite:
    """A spec plus N rows, each valid against the spec."""

    __test__ = False  # not a pytest class, despite the name

    spec: CoveringArraySpec
    rows: tuple[TestCase, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(self.rows))
        for row in self.rows:
            self.spec.validate_row(row.assignment)

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a coverage check: totals plus the exact list of missing elements."""

    total: int
    covered: int
    missing: tuple[InteractionElement, ...]

    @property
    def is_complete(self) -> bool:
        return not self.missing


def extract_element(row: TestCase, combo: Combination) -> InteractionElement:
    """Project a row onto a combination's parameter indices."""
    assignment = row.assignment
    if combo.indices[-1] >= len(assignment):
        raise ValueError(
            f"combination index {combo.indices[-1]} out of range for a "
            f"{len(assignment)}-parameter row"
        )
    return InteractionElement(combo=combo, values=tuple(assignment[i] for i in combo.indices))


def verify_coverage(suite: TestSuite) -> VerificationReport:
    """Check that every interaction element occurs in at least one row.

    Missing elements are reported in deterministic order: combinations
    lexicographic, value tuples in odometer order (last value fastest).
    """
    spec = suite.spec
    total = 0
    covered = 0
    missing: list[InteractionElement] = []
    assignments = [row.assignment for row in suite.rows]
    for indices in itertools.combinations(range(spec.k), spec.t):
        required = itertools.product(*(range(spec.domains[i]) for i in indices))
        seen = {tuple(a[i] for i in indices) for a in assignments}
        combo = Combination(indices)
        for values in required:
            total += 1
            if values in seen:
                covered += 1
            else:
                missing.append(InteractionElement(combo=combo, values=values))
    return VerificationReport(total=total, covered=covered, missing=tuple(missing))


def write_suite_csv(suite: TestSuite, path: str) -> None:
    """One row per line, comma-separated 0-based integers, no header."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in suite.rows:
            fh.write(",".join(map(str, row.assignment)))
            fh.write("\n")


def read_suite_csv(path: str, spec: CoveringArraySpec) -> TestSuite:
    """Read a suite CSV and validate every row against the spec."""
    rows: list[TestCase] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                values = tuple(int(x) for x in line.split(","))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-integer cell") from exc
            rows.append(TestCase(values))
    return TestSuite(spec=spec, rows=tuple(rows))
