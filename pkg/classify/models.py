"""
Classification results and background jobs.

SignCondition, Cell, ClassificationResult and CrossValidationReport are plain
values returned by the drivers in utils.py; ClassificationJob stores a run
requested over HTTP.
"""

import uuid
from dataclasses import dataclass, field

from django.conf import settings
from django.db import models

from arith.utils import render


@dataclass(frozen=True)
class SignCondition:
    """Strict signs of the labelled polynomials, e.g. M2 > 0 and M3 < 0."""

    labels: tuple
    signs: tuple

    def __post_init__(self):
        object.__setattr__(self, 'labels', tuple(self.labels))
        object.__setattr__(self, 'signs', tuple(int(s) for s in self.signs))
        if len(self.labels) != len(self.signs):
            raise ValueError(f"{len(self.signs)} signs for {len(self.labels)} polynomials")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError(f"Signs must be -1 or 1, got {self.signs}")

    def variations(self, leading=1):
        """Sign changes along (leading, signs...)."""
        sequence = (leading,) + self.signs
        return sum(1 for a, b in zip(sequence, sequence[1:]) if a != b)

    def as_text(self):
        if not self.labels:
            return 'true'
        return ' and '.join(f"{label} {'>' if s > 0 else '<'} 0" for label, s in zip(self.labels, self.signs))


@dataclass(frozen=True)
class Cell:
    condition: SignCondition
    sample: tuple
    count: int

    def to_json(self):
        return {
            'signs': list(self.condition.signs),
            'sample': [str(c) for c in self.sample],
            'count': self.count,
        }


@dataclass(frozen=True)
class ClassificationResult:
    """
    Output of one classification driver.

    ``boundary`` maps names ('w_infinity', 'w_H', 'minors', 'subresultants',
    ...) to polynomials or lists of polynomials. ``formulas`` maps a root
    count to the sign conditions describing where it is reached;
    ``realizability`` is 'realized' when every condition was met at a sample
    point and 'possible-superset' for the fast-mode disjunctions.
    """

    algorithm: str
    labels: tuple
    boundary: dict
    cells: tuple
    formulas: dict
    realizability: str = 'realized'
    x_order: tuple = ()
    seed: int | None = None
    details: dict = field(default_factory=dict)

    def counts(self):
        return sorted({cell.count for cell in self.cells})

    def conditions(self):
        """Distinct sign vectors met at the sample points."""
        return sorted({cell.condition.signs for cell in self.cells})

    def by_count(self):
        grouped = {}
        for cell in self.cells:
            grouped.setdefault(cell.count, set()).add(cell.condition.signs)
        return {count: sorted(signs) for count, signs in sorted(grouped.items())}

    def to_json(self):
        boundary = {}
        for name, value in self.boundary.items():
            if isinstance(value, (list, tuple)):
                boundary[name] = [render(p) for p in value]
            else:
                boundary[name] = render(value)
        return {
            'algorithm': self.algorithm,
            'x_order': list(self.x_order),
            'seed': self.seed,
            'labels': list(self.labels),
            'boundary': boundary,
            'cells': [cell.to_json() for cell in self.cells],
            'formulas': {
                str(count): [list(condition.signs) for condition in conditions]
                for count, conditions in sorted(self.formulas.items())
            },
            'realizability': self.realizability,
            **self.details,
        }

    def as_text(self):
        lines = [f"{self.algorithm}: {len(self.cells)} sample points, counts {self.counts()}"]
        for name, value in self.boundary.items():
            if isinstance(value, (list, tuple)):
                for label, p in zip(self.boundary_labels(name, value), value):
                    lines.append(f"  {label} = {render(p)}")
            else:
                lines.append(f"  {name} = {render(value)}")
        for count, conditions in sorted(self.formulas.items()):
            lines.append(f"{count} real solutions when")
            for condition in conditions:
                lines.append(f"    {condition.as_text()}")
        if self.realizability != 'realized':
            lines.append(f"(conditions are a {self.realizability})")
        return '\n'.join(lines)

    @staticmethod
    def boundary_labels(name, value):
        prefix = {'minors': 'M', 'subresultants': 's'}.get(name)
        if prefix == 'M':
            return [f"M{i + 1}" for i in range(len(value))]
        if prefix == 's':
            return [f"s{i}" for i in range(len(value))]
        return [f"{name}[{i}]" for i in range(len(value))]


@dataclass(frozen=True)
class CrossValidationReport:
    checked: int
    skipped: int
    hermite_counts: tuple
    sturm_counts: tuple
    seed: int | None = None

    def to_json(self):
        return {
            'algorithm': 'cross-validate',
            'seed': self.seed,
            'checked': self.checked,
            'skipped': self.skipped,
            'hermite_counts': list(self.hermite_counts),
            'sturm_counts': list(self.sturm_counts),
        }

    def as_text(self):
        return (
            f"cross-validate: {self.checked} points agree ({self.skipped} skipped), "
            f"Hermite counts {list(self.hermite_counts)}, Sturm counts {list(self.sturm_counts)}"
        )


class ClassificationJob(models.Model):
    """A classification run requested through the API and executed by Celery."""

    class Status(models.TextChoices):
        PENDING = 'pending', 'Pending'
        RUNNING = 'running', 'Running'
        SUCCEEDED = 'succeeded', 'Succeeded'
        FAILED = 'failed', 'Failed'

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    owner = models.ForeignKey(
        settings.AUTH_USER_MODEL, on_delete=models.CASCADE, null=True, blank=True,
        related_name='classification_jobs',
    )
    system = models.TextField(help_text="System in the params:/vars:/polys: format")
    mode = models.CharField(max_length=20, default='hermite-full')
    seed = models.BigIntegerField(null=True, blank=True)
    fast_mode = models.CharField(max_length=4, default='auto')
    x_order = models.JSONField(null=True, blank=True)
    status = models.CharField(max_length=20, choices=Status.choices, default=Status.PENDING)
    result = models.JSONField(null=True, blank=True)
    error = models.TextField(blank=True, default='')
    exit_code = models.IntegerField(null=True, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=['owner', 'status'], name='classify_job_owner_status_idx'),
        ]

    def __str__(self):
        return f"ClassificationJob {self.id} - {self.mode} - {self.status}"

    def mark_running(self):
        self.status = self.Status.RUNNING
        self.save(update_fields=['status', 'updated_at'])

    def mark_succeeded(self, result):
        self.status = self.Status.SUCCEEDED
        self.result = result
        self.exit_code = 0
        self.save(update_fields=['status', 'result', 'exit_code', 'updated_at'])

    def mark_failed(self, error, exit_code=1):
        self.status = self.Status.FAILED
        self.error = str(error)
        self.exit_code = exit_code
        self.save(update_fields=['status', 'error', 'exit_code', 'updated_at'])
