"""Tab-separated timex corpora and TimeML input/output.

Corpus lines have four tab-separated fields::

    text<TAB>TYPE<TAB>VALUE<TAB>UTTERANCE

where UTTERANCE is the document creation time as ``YYYYMMDD`` or
``YYYYMMDD:HHMMSS``. Values are kept as raw strings.
"""

from __future__ import annotations

import logging
import re
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional
from xml.sax.saxutils import escape, quoteattr

from .errors import FormatError, MalformedDct, XmlError
from .model import Dct, TimexType, parse_dct

log = logging.getLogger(__name__)

HEADER_NAMES = {"text", "expression", "timex", "type", "value", "utterance", "dct"}
_TID_RE = re.compile(r"t\d+")


@dataclass(frozen=True)
class CorpusRecord:
    text: str
    timex_type: TimexType
    gold_value: str
    utterance_raw: str
    utterance: Optional[Dct] = None

    def key(self):
        return (self.text, self.timex_type.value, self.gold_value, self.utterance_raw)

    def to_line(self) -> str:
        return "\t".join(self.key())


def make_record(text, timex_type, gold_value, utterance_raw) -> CorpusRecord:
    """Build a record, parsing the utterance leniently."""
    try:
        dct = parse_dct(utterance_raw) if utterance_raw else None
    except MalformedDct:
        dct = None
    return CorpusRecord(text, TimexType(timex_type), gold_value, utterance_raw, dct)


def parse_corpus(lines: Iterable[str]) -> tuple[list[CorpusRecord], list[FormatError]]:
    records, errors = [], []
    for line_no, line in enumerate(lines, 1):
        line = line.rstrip("\n").rstrip("\r")
        fields = line.split("\t")
        if line_no == 1 and {f.strip().lower() for f in fields} <= HEADER_NAMES:
            log.warning("skipping header row %r", line)
            continue
        if len(fields) != 4:
            errors.append(FormatError(line_no, f"expected 4 tab-separated fields, got {len(fields)}", line))
            continue
        text, type_, value, utterance = fields
        if not text or not value:
            errors.append(FormatError(line_no, "empty text or value", line))
            continue
        try:
            records.append(make_record(text, type_, value, utterance))
        except ValueError:
            errors.append(FormatError(line_no, f"unknown timex type {type_!r}", line))
    return records, errors


def read_corpus(path) -> tuple[list[CorpusRecord], list[FormatError]]:
    """Read a corpus file; returns the records and any per-line errors.

    Records with an unparseable utterance are kept with ``utterance=None``.
    """
    text = Path(path).read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return parse_corpus(lines)


def format_corpus(records: Iterable[CorpusRecord]) -> str:
    return "".join(r.to_line() + "\n" for r in records)


def write_corpus(records: Iterable[CorpusRecord], path) -> None:
    Path(path).write_text(format_corpus(records), encoding="utf-8")


def dedupe(records: Iterable[CorpusRecord]) -> list[CorpusRecord]:
    """Drop records whose (text, type, value, utterance) tuple was already seen."""
    seen = set()
    out = []
    for r in records:
        k = r.key()
        if k not in seen:
            seen.add(k)
            out.append(r)
    return out


@dataclass(frozen=True)
class DistributionReport:
    counts: dict
    total: int

    def format(self) -> str:
        rows = [f"{t.value}\t{self.counts[t.value]}" for t in TimexType]
        rows.append(f"TOTAL\t{self.total}")
        return "\n".join(rows)


def distribution(records: Iterable[CorpusRecord]) -> DistributionReport:
    c = Counter(r.timex_type.value for r in records)
    counts = {t.value: c.get(t.value, 0) for t in TimexType}
    return DistributionReport(counts, sum(counts.values()))


# -- TimeML -------------------------------------------------------------------

_MONTH_ABBR = {m: i + 1 for i, m in enumerate(
    ["jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec"])}

_DCT_TEXT_PATTERNS = [
    re.compile(r"(?P<y>\d{4})-(?P<m>\d{2})-(?P<d>\d{2})"
               r"(?:T(?P<H>\d{2}):(?P<M>\d{2})(?::(?P<S>\d{2}))?)?"),
    re.compile(r"(?<!\d)(?P<y>\d{4})(?P<m>\d{2})(?P<d>\d{2})(?::(?P<H>\d{2})(?P<M>\d{2})(?P<S>\d{2}))?(?!\d)"),
    re.compile(r"(?P<mon>[A-Za-z]{3})[a-z]*\.? (?P<d>\d{1,2}),? (?P<y>\d{4})"),
    re.compile(r"(?P<m>\d{1,2})/(?P<d>\d{1,2})/(?P<y>\d{4})"),
]


def parse_dct_text(text: str) -> Optional[Dct]:
    """Find a creation date in free DCT text such as "2012, Manchester, Apr 17, 2012"."""
    for pattern in _DCT_TEXT_PATTERNS:
        for m in pattern.finditer(text):
            g = m.groupdict()
            if g.get("mon"):
                month = _MONTH_ABBR.get(g["mon"].lower())
                if month is None:
                    continue
            else:
                month = int(g["m"])
            clock = (None, None, None)
            if g.get("H"):
                clock = (int(g["H"]), int(g["M"]), int(g.get("S") or 0))
            try:
                return Dct(int(g["y"]), month, int(g["d"]), *clock, raw=m.group(0))
            except MalformedDct:
                continue
    return None


def _document_dct(root) -> tuple[Optional[Dct], Optional[ET.Element]]:
    dct_el = root.find(".//DCT")
    if dct_el is None:
        return None, None
    inner = dct_el.find("TIMEX3")
    if inner is not None and inner.get("value"):
        found = parse_dct_text(inner.get("value"))
        if found is not None:
            return found, inner
    return parse_dct_text("".join(dct_el.itertext())), inner


def extract_timex3(timeml_xml: str) -> list[CorpusRecord]:
    """One record per TIMEX3 element, in document order.

    The utterance comes from the DCT element. A TIMEX3 nested inside the DCT
    describes the creation time itself and is not emitted as a record.
    """
    try:
        root = ET.fromstring(timeml_xml)
    except ET.ParseError as exc:
        raise XmlError(str(exc)) from None
    dct, dct_timex = _document_dct(root)
    if dct is None:
        log.warning("document has no usable DCT; records carry no utterance")
    utterance_raw = dct.corpus_form() if dct is not None else ""
    records = []
    for el in root.iter("TIMEX3"):
        if el is dct_timex:
            continue
        text = "".join(el.itertext())
        try:
            timex_type = TimexType(el.get("type"))
        except ValueError:
            raise XmlError(f"TIMEX3 {el.get('tid')!r} has bad type {el.get('type')!r}") from None
        records.append(CorpusRecord(text, timex_type, el.get("value", ""), utterance_raw, dct))
    return records


def emit_timex3(text: str, result, tid: str) -> str:
    """Render a TIMEX3 element with tid, type and value attributes, in that order."""
    if not _TID_RE.fullmatch(tid):
        raise ValueError(f"bad tid {tid!r}")
    return (f"<TIMEX3 tid={quoteattr(tid)} type={quoteattr(result.timex_type.value)} "
            f"value={quoteattr(result.value_str)}>{escape(text)}</TIMEX3>")


def emit_timeml(body: str, dct: Optional[Dct] = None, docid: str = "document") -> str:
    """Wrap already-annotated text in a minimal TimeML document.

    ``body`` is inserted verbatim, so it must already be escaped XML.
    """
    lines = ['<?xml version="1.0" ?>', "<TimeML>", f"    <DOCID>{escape(docid)}</DOCID>"]
    if dct is not None:
        lines.append(f"    <DCT>{dct.iso_form()}</DCT>")
    lines += ["    <TEXT>", f"        {body}", "    </TEXT>", "</TimeML>"]
    return "\n".join(lines) + "\n"


def annotate(text: str, spans: Iterable[str], dct: Optional[Dct], catalog) -> str:
    """Escape ``text`` and wrap the first occurrence of each span in a TIMEX3.

    Spans that no rule normalises are left untagged.
    """
    pieces = []
    pos = 0
    tid = 1
    for span in spans:
        idx = text.find(span, pos)
        if idx < 0:
            raise ValueError(f"span {span!r} not found in text")
        result = catalog.normalise(span, dct)
        pieces.append(escape(text[pos:idx]))
        if result.fired:
            pieces.append(emit_timex3(span, result, f"t{tid}"))
            tid += 1
        else:
            pieces.append(escape(span))
        pos = idx + len(span)
    pieces.append(escape(text[pos:]))
    return "".join(pieces)
