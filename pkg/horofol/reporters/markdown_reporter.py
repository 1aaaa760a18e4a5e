"""
Markdown summary of a pipeline run, rendered from a Jinja2 template
"""
from pathlib import Path

from jinja2 import Environment

from ..models import PipelineResult

SUMMARY_TEMPLATE = """\
# Pipeline summary: {{ result.spec_name }}

**Word length:** {{ result.max_word_length }}
**Linear form:** ({{ result.psi | join(', ') }})

## Artifacts

| Kind | File |
|------|------|
{% for kind, path in result.artifacts.items() %}
| {{ kind }} | `{{ path }}` |
{% endfor %}
{% if result.refused %}

## Refused

{% for reason in result.refused %}
- {{ reason }}
{% endfor %}
{% endif %}
{% if records.delta %}

## Critical exponent

- delta = {{ '%.6f' | format(records.delta.delta) }} from {{ records.delta.buckets_used }} buckets
- divergence-type evidence: {{ 'yes' if records.delta.divergence_type_evidence else 'no' }} \
(growth {{ '%.4f' | format(records.delta.growth) }})
{% endif %}
{% if records.transversality %}

## Transversality

- divergent: {{ 'ok' if records.transversality.transversality.divergent_ok else 'FAILED' }}
- antipodal: {{ 'ok' if records.transversality.transversality.antipodal_ok else 'FAILED' }}
- componentwise shadow radius: {{ '%.4f' | format(records.transversality.componentwise_shadow.max_radius) }}
{% endif %}
{% if records.non_arithmeticity %}

## Spectrum

- rank {{ records.non_arithmeticity.rank }}, best covolume {{ records.non_arithmeticity.lattice_covolume }}
- dense heuristic: {{ 'yes' if records.non_arithmeticity.dense_heuristic else 'no' }}
{% endif %}
{% if records.residual %}

## Conformality residuals

| Generator | Residual |
|-----------|----------|
{% for word, value in records.residual.items() %}
| {{ word }} | {{ '%.6f' | format(value) }} |
{% endfor %}
{% endif %}
{% if records.quasi_invariance %}

## Quasi-invariance

- phi = {{ records.quasi_invariance.phi }}, ratio error {{ '%.3e' | format(records.quasi_invariance.ratio_error) }}
{% endif %}
"""


class MarkdownReporter:
    """Generate the Markdown summary of a pipeline run"""

    def __init__(self):
        env = Environment(trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)
        self.template = env.from_string(SUMMARY_TEMPLATE)

    def render(self, result: PipelineResult) -> str:
        return self.template.render(result=result, records=result.records)

    def generate(self, result: PipelineResult, output_path: str) -> None:
        """Generate Markdown report"""
        output_file = Path(output_path)
        output_file.parent.mkdir(parents=True, exist_ok=True)
        output_file.write_text(self.render(result))
