"""Classify, chunk, index, and retrieve project design documents.

Retrieval is lexical Okapi scoring over an inverted index; the tokenizer is
identifier-aware so code-ish queries (snake_case, camelCase) hit prose that
mentions the same identifiers.
"""

from __future__ import annotations

import json
import math
import re
import zlib
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

INDEX_MAGIC = b"CGIX"
INDEX_VERSION = 1

DEFAULT_K1 = 1.2
DEFAULT_B = 0.75
DEFAULT_CHUNK_SIZE = 1600
DEFAULT_OVERLAP = 200


class DocstoreError(Exception):
    pass


class DocType(Enum):
    REQUIREMENTS = "Requirements"
    ARCHITECTURE = "Architecture"
    DETAILED_DESIGN = "DetailedDesign"
    IMPLEMENTATION = "Implementation"
    TEST = "Test"
    PROJECT_MANAGEMENT = "ProjectManagement"
    CONFIGURATION_MANAGEMENT = "ConfigurationManagement"
    PROJECT_INFRASTRUCTURE = "ProjectInfrastructure"
    USER_SOFTWARE = "UserSoftware"


# Observed share (%) of repositories carrying each document type; used as
# the tie-break prior (all values distinct, so ordering is total).
TYPE_FREQUENCY = {
    DocType.REQUIREMENTS: 24,
    DocType.ARCHITECTURE: 62,
    DocType.DETAILED_DESIGN: 16,
    DocType.IMPLEMENTATION: 72,
    DocType.TEST: 48,
    DocType.PROJECT_MANAGEMENT: 28,
    DocType.CONFIGURATION_MANAGEMENT: 64,
    DocType.PROJECT_INFRASTRUCTURE: 22,
    DocType.USER_SOFTWARE: 96,
}


@dataclass(frozen=True)
class DesignDoc:
    doc_id: str
    path: str
    doc_type: DocType
    title: str
    content: str

    def __post_init__(self):
        if not self.content.strip():
            raise DocstoreError(f"document has empty content: {self.path}")


@dataclass(frozen=True)
class DocChunk:
    chunk_id: str
    doc: DesignDoc
    ordinal: int
    text: str
    span: tuple[int, int]  # offsets into doc.content

    @property
    def terms(self) -> Counter:
        return Counter(tokenize(self.text))


# ---------------------------------------------------------------------------
# classification


# (pattern, weight) applied to lowercased content; path rules applied to the
# lowercased file name / path.
_CONTENT_RULES: dict[DocType, list[tuple[str, int]]] = {
    DocType.REQUIREMENTS: [
        (r"\bshall\b", 2), ("acceptance criteria", 3), ("functional requirement", 3),
        ("requirement", 2), ("operational requirement", 2),
    ],
    DocType.ARCHITECTURE: [
        ("architecture", 3), ("module diagram", 3), ("decomposition", 2),
        ("data exchange", 2), ("component", 1), ("interface", 1), ("subsystem", 2),
    ],
    DocType.DETAILED_DESIGN: [
        ("detailed design", 4), (r"\buml\b", 3), ("class diagram", 3),
        ("sequence diagram", 3), ("object model", 2), ("use case", 1),
        ("behavior model", 2), ("data model", 2),
    ],
    DocType.IMPLEMENTATION: [
        ("implementation", 2), ("implemented", 1), ("complex logic", 2),
        ("algorithm", 1), ("rationale", 1), ("internals", 2), ("source file", 1),
    ],
    DocType.TEST: [
        ("test plan", 3), ("test case", 3), ("test report", 2), ("testing", 2),
        ("verification", 1), ("coverage", 1), ("assertion", 1),
    ],
    DocType.PROJECT_MANAGEMENT: [
        ("project plan", 3), ("gantt", 3), ("milestone", 2), ("schedule", 2),
        ("sprint", 2), ("roadmap", 2), ("tracking", 1), ("status report", 2),
    ],
    DocType.CONFIGURATION_MANAGEMENT: [
        ("repository structure", 3), ("configuration item", 3), ("version control", 2),
        ("branching", 2), ("versioning", 2), ("release process", 2), ("changelog", 2),
        ("release notes", 2),
    ],
    DocType.PROJECT_INFRASTRUCTURE: [
        ("coding convention", 3), ("style guide", 3), ("contributing", 2),
        ("code of conduct", 2), ("reporting procedure", 2), ("ci pipeline", 2),
        ("workflow", 1), ("template", 1),
    ],
    DocType.USER_SOFTWARE: [
        ("user guide", 3), ("online help", 3), ("manual", 2), ("tutorial", 2),
        ("error messages", 2), ("getting started", 2), (r"\bfaq\b", 2),
        ("how to use", 2), ("installation", 1), ("usage", 1),
    ],
}

_PATH_RULES: dict[DocType, list[tuple[str, int]]] = {
    DocType.REQUIREMENTS: [("requirement", 4), (r"\bsrs\b", 4)],
    DocType.ARCHITECTURE: [("architecture", 4), (r"\barch\b", 3)],
    DocType.DETAILED_DESIGN: [("design", 3)],
    DocType.IMPLEMENTATION: [("implementation", 3), ("internals", 3), ("hacking", 3)],
    DocType.TEST: [("test", 3)],
    DocType.PROJECT_MANAGEMENT: [("roadmap", 3), ("milestone", 3), ("schedule", 2)],
    DocType.CONFIGURATION_MANAGEMENT: [("changelog", 4), ("release", 2), ("versioning", 3)],
    DocType.PROJECT_INFRASTRUCTURE: [("contributing", 4), ("convention", 3), ("styleguide", 3)],
    DocType.USER_SOFTWARE: [("readme", 4), ("manual", 4), ("tutorial", 4), (r"\bfaq\b", 4),
                            ("userguide", 4), ("user_guide", 4), ("help", 3)],
}


def classify_doc(path: str | Path, content: str) -> DocType:
    """Assign one of the nine document types via weighted keyword/path rules.

    Ties (including the no-cue case) go to the type most frequently seen in
    mined repositories.
    """
    if not content.strip():
        raise DocstoreError(f"cannot classify empty document: {path}")
    lower = content.lower()
    name = str(path).lower()
    scores: dict[DocType, int] = {t: 0 for t in DocType}
    for doc_type, rules in _CONTENT_RULES.items():
        for pattern, weight in rules:
            hits = len(re.findall(pattern, lower))
            if hits:
                scores[doc_type] += weight * min(hits, 3)
    for doc_type, rules in _PATH_RULES.items():
        for pattern, weight in rules:
            if re.search(pattern, name):
                scores[doc_type] += weight
    return max(DocType, key=lambda t: (scores[t], TYPE_FREQUENCY[t]))


_TAG_RE = re.compile(r"<[^>\n]+>")


def load_doc(path: str | Path, doc_id: str | None = None) -> DesignDoc:
    """Read a document file, reduce it to plain text, and classify it."""
    path = Path(path)
    text = path.read_text(encoding="utf-8", errors="replace")
    if path.suffix.lower() in (".html", ".htm"):
        text = _TAG_RE.sub(" ", text)
    title = path.stem
    for line in text.splitlines():
        stripped = line.strip().lstrip("#").strip()
        if stripped:
            title = stripped[:120]
            break
    return DesignDoc(
        doc_id=doc_id or path.name,
        path=str(path),
        doc_type=classify_doc(path, text),
        title=title,
        content=text,
    )


# ---------------------------------------------------------------------------
# chunking


def chunk_doc(doc: DesignDoc, chunk_size: int = DEFAULT_CHUNK_SIZE,
              overlap: int = DEFAULT_OVERLAP) -> list[DocChunk]:
    """Sliding-window chunks, split at paragraph, then sentence, then hard cuts.

    Consecutive chunks overlap by up to ``overlap`` characters; together
    they cover the whole document.
    """
    if not 0 <= overlap < chunk_size:
        raise DocstoreError(f"overlap must satisfy 0 <= overlap < chunk_size, got {overlap}/{chunk_size}")
    content = doc.content
    n = len(content)
    chunks: list[DocChunk] = []
    start = 0
    ordinal = 0
    while start < n:
        if n - start <= chunk_size:
            end = n
        else:
            end = _split_point(content, start, start + chunk_size)
        text = content[start:end]
        chunks.append(DocChunk(f"{doc.doc_id}#{ordinal}", doc, ordinal, text, (start, end)))
        ordinal += 1
        if end >= n:
            break
        start = max(end - overlap, start + 1)
    return chunks


def _split_point(content: str, start: int, limit: int) -> int:
    window = content[start:limit]
    # prefer to end a chunk right after a blank line
    para = window.rfind("\n\n")
    if para > len(window) // 4:
        return start + para + 2
    sentence = max(window.rfind(". "), window.rfind(".\n"),
                   window.rfind("! "), window.rfind("? "))
    if sentence > len(window) // 4:
        return start + sentence + 2
    newline = window.rfind("\n")
    if newline > len(window) // 4:
        return start + newline + 1
    return limit


# ---------------------------------------------------------------------------
# tokenization


_WORD_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|[0-9]+")
_CAMEL_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+")


def split_identifier(word: str) -> list[str]:
    """Split snake_case and camelCase identifiers into subtokens."""
    parts: list[str] = []
    for piece in word.split("_"):
        if not piece:
            continue
        parts.extend(_CAMEL_RE.findall(piece))
    return parts


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens; multi-part identifiers also emit their parts."""
    out: list[str] = []
    for m in _WORD_RE.finditer(text):
        word = m.group(0)
        out.append(word.lower())
        parts = split_identifier(word)
        if len(parts) > 1:
            out.extend(p.lower() for p in parts)
    return out


# ---------------------------------------------------------------------------
# index


@dataclass
class Index:
    postings: dict[str, list[tuple[str, int]]]  # term -> [(chunk_id, tf)]
    doc_freq: dict[str, int]
    chunk_len: dict[str, int]
    avg_len: float
    params: dict[str, float]
    chunks: dict[str, DocChunk] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.chunk_len)


def build_index(chunks: list[DocChunk], k1: float = DEFAULT_K1, b: float = DEFAULT_B) -> Index:
    """Inverted index over chunk terms; insertion-order independent."""
    if not chunks:
        raise DocstoreError("cannot build an index over zero chunks")
    postings: dict[str, list[tuple[str, int]]] = {}
    chunk_len: dict[str, int] = {}
    by_id: dict[str, DocChunk] = {}
    for chunk in chunks:
        terms = chunk.terms
        chunk_len[chunk.chunk_id] = sum(terms.values())
        by_id[chunk.chunk_id] = chunk
        for term, tf in terms.items():
            postings.setdefault(term, []).append((chunk.chunk_id, tf))
    for term in postings:
        postings[term].sort()
    doc_freq = {term: len(plist) for term, plist in postings.items()}
    avg_len = sum(chunk_len.values()) / len(chunk_len)
    return Index(postings, doc_freq, chunk_len, avg_len,
                 {"k1": k1, "b": b}, by_id)


def okapi_idf(n_chunks: int, df: int) -> float:
    return math.log((n_chunks - df + 0.5) / (df + 0.5) + 1.0)


def retrieve(index: Index, query: str, k: int) -> list[tuple[DocChunk, float]]:
    """Top-k chunks by Okapi score.

    Ties break toward the more common document type, then ascending
    chunk_id, so results are totally ordered and stable.
    """
    if k < 1:
        raise DocstoreError(f"k must be >= 1, got {k}")
    terms = tokenize(query)
    if not terms:
        return []
    scores: dict[str, float] = {}
    for term in set(terms):
        plist = index.postings.get(term)
        if not plist:
            continue
        weight = terms.count(term)
        idf = okapi_idf(index.size, index.doc_freq[term])
        k1 = index.params["k1"]
        b = index.params["b"]
        for chunk_id, tf in plist:
            length = index.chunk_len[chunk_id]
            norm = k1 * (1.0 - b + b * length / index.avg_len)
            scores[chunk_id] = scores.get(chunk_id, 0.0) + \
                weight * idf * tf * (k1 + 1.0) / (tf + norm)
    ranked = sorted(
        scores.items(),
        key=lambda kv: (-kv[1], -_chunk_prior(index, kv[0]), kv[0]),
    )
    return [(index.chunks[chunk_id], score) for chunk_id, score in ranked[:k]]


def _chunk_prior(index: Index, chunk_id: str) -> int:
    chunk = index.chunks.get(chunk_id)
    return TYPE_FREQUENCY[chunk.doc.doc_type] if chunk else 0


def query_for_unit(signature: str, code: str, file_name: str) -> str:
    """Build the retrieval query for a code unit: signature, identifiers, file."""
    idents = _WORD_RE.findall(code)
    seen: list[str] = []
    for ident in idents:
        if ident not in seen:
            seen.append(ident)
    return " ".join([signature, " ".join(seen[:40]), file_name])


# ---------------------------------------------------------------------------
# persistence


def save_index(index: Index, path: str | Path) -> None:
    """Persist as magic + version byte + zlib-compressed JSON."""
    docs: dict[str, dict] = {}
    chunk_rows = []
    for chunk in index.chunks.values():
        doc = chunk.doc
        docs[doc.doc_id] = {
            "doc_id": doc.doc_id, "path": doc.path, "doc_type": doc.doc_type.value,
            "title": doc.title, "content": doc.content,
        }
        chunk_rows.append({
            "chunk_id": chunk.chunk_id, "doc_id": doc.doc_id, "ordinal": chunk.ordinal,
            "text": chunk.text, "span": list(chunk.span),
        })
    payload = {
        "postings": {t: [[c, f] for c, f in pl] for t, pl in index.postings.items()},
        "doc_freq": index.doc_freq,
        "chunk_len": index.chunk_len,
        "avg_len": index.avg_len,
        "params": index.params,
        "docs": docs,
        "chunks": chunk_rows,
    }
    blob = zlib.compress(json.dumps(payload, sort_keys=True).encode("utf-8"))
    with Path(path).open("wb") as fh:
        fh.write(INDEX_MAGIC)
        fh.write(bytes([INDEX_VERSION]))
        fh.write(blob)


def load_index(path: str | Path) -> Index:
    raw = Path(path).read_bytes()
    if raw[:4] != INDEX_MAGIC:
        raise DocstoreError(f"not an index file (bad magic): {path}")
    if raw[4] != INDEX_VERSION:
        raise DocstoreError(f"unsupported index version {raw[4]} in {path}")
    payload = json.loads(zlib.decompress(raw[5:]).decode("utf-8"))
    docs = {
        doc_id: DesignDoc(doc_id=d["doc_id"], path=d["path"],
                          doc_type=DocType(d["doc_type"]), title=d["title"],
                          content=d["content"])
        for doc_id, d in payload["docs"].items()
    }
    chunks = {}
    for row in payload["chunks"]:
        chunks[row["chunk_id"]] = DocChunk(
            chunk_id=row["chunk_id"], doc=docs[row["doc_id"]],
            ordinal=row["ordinal"], text=row["text"], span=tuple(row["span"]),
        )
    return Index(
        postings={t: [(c, f) for c, f in pl] for t, pl in payload["postings"].items()},
        doc_freq=payload["doc_freq"],
        chunk_len=payload["chunk_len"],
        avg_len=payload["avg_len"],
        params=payload["params"],
        chunks=chunks,
    )


def index_directory(docs_dir: str | Path, chunk_size: int = DEFAULT_CHUNK_SIZE,
                    overlap: int = DEFAULT_OVERLAP,
                    doc_type_filter: DocType | None = None) -> Index:
    """Load, classify, chunk, and index every document under ``docs_dir``."""
    docs_dir = Path(docs_dir)
    exts = (".md", ".txt", ".rst", ".html", ".htm")
    chunks: list[DocChunk] = []
    for path in sorted(docs_dir.rglob("*")):
        if not (path.is_file() and path.suffix.lower() in exts):
            continue
        try:
            doc = load_doc(path, doc_id=path.relative_to(docs_dir).as_posix())
        except DocstoreError:
            continue
        if doc_type_filter is not None and doc.doc_type != doc_type_filter:
            continue
        chunks.extend(chunk_doc(doc, chunk_size, overlap))
    if not chunks:
        raise DocstoreError(f"no indexable documents under {docs_dir}")
    return build_index(chunks)
