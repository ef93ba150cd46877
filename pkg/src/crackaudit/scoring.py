"""Intent scoring: group difference signs, weighted score, class mapping.

For each scoring group the official and cracked request counts are
compared; the sign of the difference (official minus cracked) is the
group's contribution, so a group comes out negative exactly when the
cracked build requests more tracked permissions in it. The weighted sum
of the three signs is the intention score ``s`` in ``[-1, 1]``, mapped
onto four classes:

    malicious          s < lower        (default lower = -0.4)
    rather malicious   lower <= s < 0
    rather benign      0 <= s <= upper  (default upper = 0.4)
    benign             otherwise

All arithmetic is exact: signs are taken on integer sums and scores are
rational numbers, so boundary comparisons never hinge on float rounding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import CatalogMismatch, InvalidThresholds
from .permissions import (
    GROUP_COUNT,
    GroupWeights,
    PermissionCatalog,
    PermissionVector,
    builtin_catalog,
)


class IntentionClass(enum.Enum):
    """Verdict band for one official/cracked pair."""

    MALICIOUS = "malicious"
    RATHER_MALICIOUS = "rather_malicious"
    RATHER_BENIGN = "rather_benign"
    BENIGN = "benign"

    @property
    def display(self) -> str:
        return self.value.replace("_", " ")


#: Classes counted as flagged (suspected of carrying a payload).
FLAGGED_CLASSES = (IntentionClass.MALICIOUS, IntentionClass.RATHER_MALICIOUS)


@dataclass(frozen=True)
class GroupDifferences:
    """Per-group signs, each exactly -1, 0, or +1."""

    values: tuple[int, int, int]

    def __post_init__(self) -> None:
        if len(self.values) != GROUP_COUNT or any(v not in (-1, 0, 1) for v in self.values):
            raise ValueError(f"group differences must be three of -1/0/+1, got {self.values}")


@dataclass(frozen=True)
class ClassThresholds:
    """Boundaries of the class bands, stored as exact rationals."""

    lower: Fraction = Fraction(-4, 10)
    upper: Fraction = Fraction(4, 10)

    def __post_init__(self) -> None:
        if not (-1 <= self.lower <= 0 <= self.upper <= 1):
            raise InvalidThresholds(
                f"need -1 <= lower <= 0 <= upper <= 1, got ({self.lower}, {self.upper})"
            )

    @classmethod
    def parse(cls, text: str) -> "ClassThresholds":
        parts = [p for p in text.replace(",", " ").split() if p]
        if len(parts) != 2:
            raise InvalidThresholds(f"expected two comma-separated thresholds: {text!r}")
        try:
            lower, upper = (Fraction(p) for p in parts)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidThresholds(f"bad threshold in {text!r}: {exc}") from None
        return cls(lower, upper)

    def as_floats(self) -> tuple[float, float]:
        return float(self.lower), float(self.upper)


@dataclass(frozen=True)
class IntentionScore:
    """Weighted score plus the inputs that produced it."""

    value: Fraction
    deltas: GroupDifferences
    weights: GroupWeights

    def __float__(self) -> float:
        return float(self.value)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _require_same_catalog(official: PermissionVector, cracked: PermissionVector) -> None:
    if official.catalog is not cracked.catalog and official.catalog != cracked.catalog:
        raise CatalogMismatch("official and cracked vectors use different catalogs")


def group_difference(
    official: PermissionVector, cracked: PermissionVector, group: int
) -> int:
    """Sign of the official-minus-cracked request count in one group.

    -1 means the cracked build requests strictly more tracked permissions
    in the group; the sign of zero is zero.
    """
    _require_same_catalog(official, cracked)
    members = official.catalog.group_members(group)
    diff = sum(official.bits[j - 1] - cracked.bits[j - 1] for j in members)
    return _sign(diff)


def group_differences(
    official: PermissionVector, cracked: PermissionVector
) -> GroupDifferences:
    return GroupDifferences(
        tuple(group_difference(official, cracked, g) for g in range(1, GROUP_COUNT + 1))
    )


def intention_score(deltas: GroupDifferences, weights: GroupWeights) -> IntentionScore:
    """Weighted sum of the group signs; exact, always within [-1, 1]."""
    value = sum(
        (weights.weight(g) * deltas.values[g - 1] for g in range(1, GROUP_COUNT + 1)),
        start=Fraction(0),
    )
    return IntentionScore(value=value, deltas=deltas, weights=weights)


def classify(
    score: IntentionScore | Fraction, thresholds: ClassThresholds | None = None
) -> IntentionClass:
    """Map a score onto its class band with exact boundary comparisons."""
    thresholds = thresholds or ClassThresholds()
    s = score.value if isinstance(score, IntentionScore) else score
    if s < thresholds.lower:
        return IntentionClass.MALICIOUS
    if s < 0:
        return IntentionClass.RATHER_MALICIOUS
    if s <= thresholds.upper:
        return IntentionClass.RATHER_BENIGN
    return IntentionClass.BENIGN


@dataclass(frozen=True)
class PairScore:
    """Full scoring result for one official/cracked vector pair."""

    deltas: GroupDifferences
    score: IntentionScore
    intent_class: IntentionClass
    #: Per group (1..3): names whose request flag differs between builds,
    #: in catalog order. Kept so a verdict can be explained.
    differing: tuple[tuple[str, ...], ...]

    def to_json(self) -> dict:
        return {
            "deltas": list(self.deltas.values),
            "score": float(self.score.value),
            "class": self.intent_class.value,
            "differing_permissions": {
                f"group{g}": list(self.differing[g - 1]) for g in range(1, GROUP_COUNT + 1)
            },
        }


def score_pair(
    official: PermissionVector,
    cracked: PermissionVector,
    weights: GroupWeights | None = None,
    catalog: PermissionCatalog | None = None,
    thresholds: ClassThresholds | None = None,
) -> PairScore:
    """Score one official/cracked pair and map it to a class."""
    catalog = catalog or builtin_catalog()
    if official.catalog != catalog or cracked.catalog != catalog:
        raise CatalogMismatch("vectors were not built against the given catalog")
    _require_same_catalog(official, cracked)
    weights = weights or GroupWeights.default()
    deltas = group_differences(official, cracked)
    score = intention_score(deltas, weights)
    intent_class = classify(score, thresholds)
    differing = tuple(
        tuple(
            catalog.entry(j).name
            for j in catalog.group_members(g)
            if official.bits[j - 1] != cracked.bits[j - 1]
        )
        for g in range(1, GROUP_COUNT + 1)
    )
    return PairScore(deltas=deltas, score=score, intent_class=intent_class, differing=differing)
