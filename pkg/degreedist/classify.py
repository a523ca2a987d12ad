from typing import Iterable

from .results import AlternativeComparison, DegreeClass, GofResult, Verdict


def classify(
    gof: GofResult, comparisons: Iterable[AlternativeComparison], gof_threshold: float = 0.1
) -> str:
    """Four-way label from the goodness of fit and the likelihood-ratio rows.

    Rows whose fit failed carry no verdict and are ignored.
    """
    if gof.pvalue < gof_threshold:
        return DegreeClass.IMPROBABLE
    rows = [c for c in comparisons if c.verdict is not None]
    if any(c.nested and c.verdict == Verdict.FAVORS_ALTERNATIVE for c in rows):
        return DegreeClass.CUTOFF
    non_nested = [c.verdict for c in rows if not c.nested]
    if Verdict.FAVORS_ALTERNATIVE in non_nested:
        return DegreeClass.IMPROBABLE
    if Verdict.UNDECIDED in non_nested:
        return DegreeClass.MODERATE
    return DegreeClass.PROBABLE
