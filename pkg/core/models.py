# core/models.py
from django.conf import settings
from django.core.validators import MinValueValidator
from django.db import models


# -----------------------------------
# Dichotomy checks
# -----------------------------------
class CheckRun(models.Model):
    THEORETICAL = (
        ("UnitaryExpected", "Unitary expected"),
        ("NotCoisometricExpected", "Not co-isometric expected"),
        ("Indeterminate", "Indeterminate"),
    )
    NUMERICAL = (
        ("PassUnitary", "Pass (unitary)"),
        ("FailCoisometry", "Fail (co-isometry)"),
        ("Inconclusive", "Inconclusive"),
    )
    AGREEMENT = (("true", "Agree"), ("false", "Disagree"), ("n/a", "No prediction"))

    owner = models.ForeignKey(
        settings.AUTH_USER_MODEL, on_delete=models.CASCADE,
        related_name="check_runs", null=True, blank=True,
    )
    # Literals exactly as submitted, e.g. 'hgamma:gamma=2', 'aut:lambda=1+0i,a=0.5+0i'
    space_spec = models.CharField(max_length=255)
    phi = models.CharField(max_length=255)
    f = models.CharField(max_length=255)
    N = models.PositiveIntegerField(validators=[MinValueValidator(2)])
    k = models.PositiveIntegerField(validators=[MinValueValidator(1)])
    tol = models.FloatField()

    theoretical = models.CharField(max_length=32, choices=THEORETICAL, db_index=True)
    numerical = models.CharField(max_length=32, choices=NUMERICAL, db_index=True)
    agreement = models.CharField(max_length=8, choices=AGREEMENT, db_index=True)
    report = models.JSONField(default=dict)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ["-created_at", "-id"]

    def __str__(self) -> str:
        return f"{self.space_spec} / {self.phi} / {self.f} -> {self.numerical}"
