"""
Text rendering for shelling certificates, oracle tables and the Markdown
verification report
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from datetime import datetime

import pandas as pd
from jinja2 import Environment, StrictUndefined

from .complex import ShellingCertificate
from .core import Megagreedoid, format_permutation

_environment = Environment(undefined=StrictUndefined, trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=False)

CERTIFICATE_TEMPLATE = _environment.from_string(
    """{{ order }} shelling: {{ steps|length }} facet{{ '' if steps|length == 1 else 's' }}, degree {{ degree }}
{% for step in steps %}
{{ "%3d"|format(loop.index) }}. {{ step.permutation }}  Des={{ step.descents }}  R={{ step.restriction }}  new={{ step.new_faces }}
{% endfor %}"""
)

REPORT_TEMPLATE = _environment.from_string(
    """# Megagreedoid Verification Report

**Generated:** {{ generated }}
**Instances:** {{ instances }}
**Checks:** {{ total }} ({{ passed }} passed, {{ failed }} failed)

## Results

| Instance | Check | Expected | Actual | Status |
|---|---|---|---|---|
{% for row in rows %}
| {{ row.instance }} | {{ row.check }} | `{{ row.expected }}` | `{{ row.actual }}` | {{ row.status }} |
{% endfor %}
{% if failures %}

## Failures

{% for row in failures %}
- **{{ row.instance }}** / {{ row.check }}: expected `{{ row.expected }}`, got `{{ row.actual }}`
{% endfor %}
{% endif %}
"""
)


@dataclass(frozen=True)
class OracleRow:
    instance: str
    check: str
    expected: str
    actual: str
    passed: bool

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


def render_certificate(m: Megagreedoid, cert: ShellingCertificate) -> str:
    steps = [
        {
            "permutation": format_permutation(m.ground, step.permutation),
            "descents": "{" + ",".join(str(i) for i in step.descent_set) + "}",
            "restriction": step.restriction_face.describe(m),
            "new_faces": step.new_faces,
        }
        for step in cert.steps
    ]
    return CERTIFICATE_TEMPLATE.render(steps=steps, degree=cert.degree, order=cert.order).rstrip("\n")


def oracle_frame(rows: list[OracleRow]) -> pd.DataFrame:
    frame = pd.DataFrame([asdict(row) for row in rows], columns=["instance", "check", "expected", "actual", "passed"])
    frame["status"] = frame["passed"].map({True: "PASS", False: "FAIL"})
    return frame.drop(columns=["passed"])


def render_oracle_table(rows: list[OracleRow]) -> str:
    if not rows:
        return "no checks run"
    return oracle_frame(rows).to_string(index=False)


def summarize(rows: list[OracleRow]) -> dict:
    """Per-check pass counts, via a pandas group-by"""
    if not rows:
        return {"total": 0, "passed": 0, "failed": 0, "by_check": {}}
    frame = pd.DataFrame([asdict(row) for row in rows])
    grouped = frame.groupby("check")["passed"].agg(["sum", "count"])
    return {
        "total": int(len(frame)),
        "passed": int(frame["passed"].sum()),
        "failed": int((~frame["passed"]).sum()),
        "by_check": {check: {"passed": int(r["sum"]), "total": int(r["count"])} for check, r in grouped.iterrows()},
    }


def render_report(rows: list[OracleRow], generated: datetime | None = None) -> str:
    summary = summarize(rows)
    return REPORT_TEMPLATE.render(
        generated=(generated or datetime.now()).strftime("%Y-%m-%d %H:%M:%S"),
        instances=len({row.instance for row in rows}),
        total=summary["total"],
        passed=summary["passed"],
        failed=summary["failed"],
        rows=rows,
        failures=[row for row in rows if not row.passed],
    )
