"""Layered first-match rule engine.

A normalisation runs four stages over the whitespace-normalised expression:

1. extension rules; the first full match produces the result and skips 2-3
2. manipulation rules; the first full match rewrites the text, once
3. base rules over the (possibly rewritten) text; the first full match produces
4. post-manipulation rules; every match may enrich the value, in priority order

Rules live in a :class:`Catalog`, which also owns the registries that map the
builder and transformer names used in action specs to Python callables.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .errors import CatalogError, TimexError
from .model import Dct, TimexType, TimexValue

log = logging.getLogger(__name__)


class RuleLayer(str, Enum):
    EXTENSION = "extension"
    MANIPULATION = "manipulation"
    BASE = "base"
    POST_MANIPULATION = "post"

    @property
    def stage(self) -> int:
        return _STAGE_ORDER.index(self)

    def __str__(self):
        return self.value


_STAGE_ORDER = [RuleLayer.EXTENSION, RuleLayer.MANIPULATION, RuleLayer.BASE,
                RuleLayer.POST_MANIPULATION]


@dataclass(frozen=True)
class Produce:
    timex_type: TimexType
    builder: str
    args: tuple = ()

    def spec(self):
        return " ".join(["produce", self.timex_type.value, self.builder, *self.args])


@dataclass(frozen=True)
class Rewrite:
    template: str

    def spec(self):
        return f"rewrite {self.template}"


@dataclass(frozen=True)
class Enrich:
    transformer: str
    args: tuple = ()

    def spec(self):
        return " ".join(["enrich", self.transformer, *self.args])


Action = Union[Produce, Rewrite, Enrich]

_ALLOWED_ACTIONS = {
    RuleLayer.EXTENSION: Produce,
    RuleLayer.BASE: Produce,
    RuleLayer.MANIPULATION: Rewrite,
    RuleLayer.POST_MANIPULATION: Enrich,
}

_MACRO_RE = re.compile(r"%([A-Z_]+)%")


def expand_macros(pattern: str, macros: Mapping[str, str]) -> str:
    def sub(m):
        try:
            return macros[m.group(1)]
        except KeyError:
            raise KeyError(f"unknown macro %{m.group(1)}%") from None
    return _MACRO_RE.sub(sub, pattern)


@dataclass(frozen=True)
class Rule:
    id: str
    layer: RuleLayer
    priority: int
    pattern: str
    action: Action
    example: str = ""
    enabled: bool = True


@dataclass(frozen=True)
class Finding:
    kind: str
    rule_id: str
    message: str

    def __str__(self):
        return f"{self.kind} [{self.rule_id}]: {self.message}"


def validate_catalog(rules: Iterable[Rule], builders: Optional[Mapping] = None,
                     transformers: Optional[Mapping] = None,
                     macros: Optional[Mapping[str, str]] = None) -> list[Finding]:
    """Check a rule list; problems are returned as findings, never raised."""
    findings = []
    seen_ids = set()
    seen_prio = {}
    for rule in rules:
        if rule.id in seen_ids:
            findings.append(Finding("duplicate-id", rule.id, "id used more than once"))
        seen_ids.add(rule.id)
        key = (rule.layer, rule.priority)
        if key in seen_prio:
            findings.append(Finding(
                "duplicate-priority", rule.id,
                f"{rule.layer.value} priority {rule.priority} also used by {seen_prio[key]}"))
        else:
            seen_prio[key] = rule.id
        expected = _ALLOWED_ACTIONS.get(rule.layer)
        if expected is None or not isinstance(rule.action, expected):
            findings.append(Finding(
                "layer-action-mismatch", rule.id,
                f"{type(rule.action).__name__} action on {rule.layer} rule"))
        try:
            re.compile(expand_macros(rule.pattern, macros or {}))
        except (re.error, KeyError) as exc:
            findings.append(Finding("bad-pattern", rule.id, str(exc)))
        if isinstance(rule.action, Produce) and builders is not None \
                and rule.action.builder not in builders:
            findings.append(Finding("unknown-builder", rule.id, rule.action.builder))
        if isinstance(rule.action, Enrich) and transformers is not None \
                and rule.action.transformer not in transformers:
            findings.append(Finding("unknown-transformer", rule.id, rule.action.transformer))
    return findings


def normalise_text(text: str) -> str:
    """Trim, case-fold and collapse whitespace."""
    text = text.replace("’", "'").replace("‘", "'")
    return " ".join(text.split()).casefold()


@dataclass(frozen=True)
class NormalisationResult:
    text: str
    timex_type: TimexType
    value: TimexValue
    trace: tuple
    rewritten_text: Optional[str] = None
    fired = True

    @property
    def value_str(self) -> str:
        return self.value.render()


@dataclass(frozen=True)
class NoRuleFired:
    """Outcome for an expression outside rule coverage."""

    text: str
    trace: tuple = ()
    rewritten_text: Optional[str] = None
    timex_type = None
    value = None
    value_str = None
    fired = False


Outcome = Union[NormalisationResult, NoRuleFired]


@dataclass
class StageRecord:
    layer: RuleLayer
    text: str
    attempted: list = field(default_factory=list)
    fired: list = field(default_factory=list)
    captures: Optional[dict] = None
    notes: list = field(default_factory=list)


@dataclass
class Explanation:
    text: str
    normalised: str
    stages: list
    outcome: Outcome

    def stage(self, layer) -> StageRecord:
        layer = RuleLayer(layer)
        for record in self.stages:
            if record.layer is layer:
                return record
        return StageRecord(layer, "")

    def format(self) -> str:
        lines = [f"input: {self.text!r} -> {self.normalised!r}"]
        for st in self.stages:
            lines.append(f"[{st.layer.value}] on {st.text!r}: "
                         f"{len(st.attempted)} attempted, fired={st.fired or '-'}")
            if st.captures:
                caps = ", ".join(f"{k}={v!r}" for k, v in st.captures.items() if v is not None)
                lines.append(f"    captures: {caps}")
            for note in st.notes:
                lines.append(f"    note: {note}")
        if self.outcome.fired:
            lines.append(f"result: {self.outcome.timex_type.value} {self.outcome.value_str}")
        else:
            lines.append("result: NoRuleFired")
        return "\n".join(lines)


@dataclass(frozen=True)
class CatalogManifest:
    version: str
    counts: dict
    rule_ids: tuple


class Catalog:
    """An immutable, compiled rule catalog."""

    def __init__(self, rules: Sequence[Rule], builders: Mapping[str, Callable],
                 transformers: Mapping[str, Callable], macros: Mapping[str, str] = None,
                 version: str = "unversioned"):
        self.rules = tuple(rules)
        self.builders = dict(builders)
        self.transformers = dict(transformers)
        self.macros = dict(macros or {})
        self.version = version
        findings = validate_catalog(self.rules, self.builders, self.transformers, self.macros)
        if findings:
            raise CatalogError(findings)
        self._compiled = {
            r.id: re.compile(expand_macros(r.pattern, self.macros), re.IGNORECASE)
            for r in self.rules
        }
        self._by_id = {r.id: r for r in self.rules}

    @cached_property
    def _layers(self):
        out = {layer: [] for layer in RuleLayer}
        for r in self.rules:
            if r.enabled:
                out[r.layer].append(r)
        for rules in out.values():
            rules.sort(key=lambda r: r.priority)
        return out

    def layer(self, layer) -> list[Rule]:
        return list(self._layers[RuleLayer(layer)])

    def __getitem__(self, rule_id: str) -> Rule:
        return self._by_id[rule_id]

    def __len__(self):
        return len(self.rules)

    def _derive(self, rules):
        return Catalog(rules, self.builders, self.transformers, self.macros, self.version)

    def without(self, *rule_ids: str) -> "Catalog":
        drop = set(rule_ids)
        return self._derive([r for r in self.rules if r.id not in drop])

    def only_layers(self, *layers) -> "Catalog":
        keep = {RuleLayer(x) for x in layers}
        return self._derive([r for r in self.rules if r.layer in keep])

    def with_enabled(self, *rule_ids: str, enabled: bool = True) -> "Catalog":
        ids = set(rule_ids)
        missing = ids - set(self._by_id)
        if missing:
            raise KeyError(f"unknown rule ids: {sorted(missing)}")
        return self._derive([
            Rule(r.id, r.layer, r.priority, r.pattern, r.action, r.example, enabled)
            if r.id in ids else r for r in self.rules])

    def manifest(self) -> CatalogManifest:
        counts = {layer.value: len(self._layers[layer]) for layer in RuleLayer}
        return CatalogManifest(self.version, counts, tuple(r.id for r in self.rules))

    def _produce(self, rule, m, dct):
        action = rule.action
        fn = self.builders[action.builder]
        return fn(m.groupdict(), dct, *action.args)

    def _first_producer(self, layer, text, dct, record):
        for rule in self._layers[layer]:
            m = self._compiled[rule.id].fullmatch(text)
            if record is not None:
                record.attempted.append(rule.id)
            if m is None:
                continue
            try:
                value = self._produce(rule, m, dct)
            except TimexError as exc:
                value = None
                if record is not None:
                    record.notes.append(f"{rule.id}: {exc}")
            if value is None:
                continue
            if record is not None:
                record.fired.append(rule.id)
                record.captures = m.groupdict() or {str(i + 1): g for i, g in enumerate(m.groups())}
            return rule, value
        return None

    def _rewrite(self, text, record):
        for rule in self._layers[RuleLayer.MANIPULATION]:
            m = self._compiled[rule.id].fullmatch(text)
            if record is not None:
                record.attempted.append(rule.id)
            if m is None:
                continue
            groups = {k: (v or "") for k, v in m.groupdict().items()}
            rewritten = " ".join(rule.action.template.format_map(groups).split())
            if not rewritten or rewritten == text:
                continue
            if record is not None:
                record.fired.append(rule.id)
                record.captures = m.groupdict()
            return rule, rewritten
        return None

    def _enrich(self, text, timex_type, value, dct, record):
        fired = []
        for rule in self._layers[RuleLayer.POST_MANIPULATION]:
            m = self._compiled[rule.id].fullmatch(text)
            if record is not None:
                record.attempted.append(rule.id)
            if m is None:
                continue
            fn = self.transformers[rule.action.transformer]
            try:
                new = fn(value, m.groupdict(), dct, *rule.action.args)
            except TimexError as exc:
                new = None
                if record is not None:
                    record.notes.append(f"{rule.id}: {exc}")
            if new is None or new == value:
                continue
            value = new
            fired.append(rule.id)
            if record is not None:
                record.fired.append(rule.id)
        return value, fired

    def _run(self, text: str, dct: Optional[Dct], stages: Optional[list]) -> Outcome:
        norm = normalise_text(text)

        def record(layer, on_text):
            if stages is None:
                return None
            rec = StageRecord(layer, on_text)
            stages.append(rec)
            return rec

        if not norm:
            return NoRuleFired(text)
        trace = []
        rewritten = None
        hit = self._first_producer(RuleLayer.EXTENSION, norm, dct,
                                   record(RuleLayer.EXTENSION, norm))
        effective = norm
        if hit is None:
            rw = self._rewrite(norm, record(RuleLayer.MANIPULATION, norm))
            if rw is not None:
                trace.append(rw[0].id)
                rewritten = effective = rw[1]
            hit = self._first_producer(RuleLayer.BASE, effective, dct,
                                       record(RuleLayer.BASE, effective))
        if hit is None:
            return NoRuleFired(text, tuple(trace), rewritten)
        rule, value = hit
        trace.append(rule.id)
        timex_type = rule.action.timex_type
        value, enriched = self._enrich(effective, timex_type, value, dct,
                                       record(RuleLayer.POST_MANIPULATION, effective))
        trace.extend(enriched)
        return NormalisationResult(text, timex_type, value, tuple(trace), rewritten)

    def normalise(self, text: str, dct: Optional[Dct] = None) -> Outcome:
        """Normalise one pre-identified temporal expression.

        Returns a NormalisationResult, or a NoRuleFired value when no producing
        rule matches. Deictic rules do not fire when ``dct`` is None.
        """
        return self._run(text, dct, None)

    def explain(self, text: str, dct: Optional[Dct] = None) -> Explanation:
        stages = []
        outcome = self._run(text, dct, stages)
        return Explanation(text, normalise_text(text), stages, outcome)


# -- declarative rule files ---------------------------------------------------

_LAYER_NAMES = {layer.value: layer for layer in RuleLayer}


def parse_action(spec: str) -> Action:
    verb, _, rest = spec.strip().partition(" ")
    rest = rest.strip()
    if verb == "produce":
        parts = rest.split()
        if len(parts) < 2:
            raise ValueError(f"produce needs a type and a builder: {spec!r}")
        return Produce(TimexType(parts[0]), parts[1], tuple(parts[2:]))
    if verb == "rewrite":
        if not rest:
            raise ValueError("rewrite needs a template")
        return Rewrite(rest)
    if verb == "enrich":
        parts = rest.split()
        if not parts:
            raise ValueError("enrich needs a transformer")
        return Enrich(parts[0], tuple(parts[1:]))
    raise ValueError(f"unknown action verb {verb!r}")


def parse_rules(text: str) -> tuple[list[Rule], str]:
    """Parse a rule file.

    One rule per line, tab-separated: ``id layer priority pattern action
    [example [flags]]``. Lines starting with ``#`` are comments, except
    ``#% version: X`` which sets the catalog version.
    """
    rules = []
    version = "unversioned"
    for line_no, line in enumerate(text.splitlines(), 1):
        line = line.rstrip("\r")
        if line.startswith("#%"):
            key, _, val = line[2:].partition(":")
            if key.strip() == "version":
                version = val.strip()
            continue
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 5 or len(fields) > 7:
            raise ValueError(f"rule line {line_no}: expected 5-7 fields, got {len(fields)}")
        rule_id, layer, prio, pattern, action = fields[:5]
        example = fields[5] if len(fields) > 5 else ""
        flags = fields[6].split(",") if len(fields) > 6 else []
        try:
            rules.append(Rule(
                id=rule_id.strip(), layer=_LAYER_NAMES[layer.strip()],
                priority=int(prio), pattern=pattern, action=parse_action(action),
                example=example, enabled="disabled" not in flags))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"rule line {line_no}: {exc}") from None
    return rules, version


def format_rules(rules: Iterable[Rule], version: str = "") -> str:
    out = []
    if version:
        out.append(f"#% version: {version}")
    for r in rules:
        fields = [r.id, r.layer.value, str(r.priority), r.pattern, r.action.spec(), r.example]
        if not r.enabled:
            fields.append("disabled")
        out.append("\t".join(fields))
    return "\n".join(out) + "\n"


def read_rules(path) -> tuple[list[Rule], str]:
    return parse_rules(Path(path).read_text(encoding="utf-8"))
