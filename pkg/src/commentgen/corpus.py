"""Mine C/C++ repositories into code-comment pairs.

Everything here works on the decoded file text; spans are character offsets
into that text (files are read as UTF-8). The lexer is comment- and
string-aware but deliberately not a C parser: preprocessor lines are opaque
tokens and macro expansion is left to the real compiler (see ``astx``).
"""

from __future__ import annotations

import fnmatch
import json
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

log = logging.getLogger(__name__)

C_EXTENSIONS = {".c": "C", ".h": "C"}
CPP_EXTENSIONS = {".cc": "CPP", ".cpp": "CPP", ".hpp": "CPP", ".hh": "CPP"}
SOURCE_EXTENSIONS = {**C_EXTENSIONS, **CPP_EXTENSIONS}

DEFAULT_IGNORE_GLOBS = (
    "build/*",
    "*/build/*",
    "third_party/*",
    "*/third_party/*",
    "vendor/*",
    "*/vendor/*",
    ".git/*",
    "*/.git/*",
    "node_modules/*",
    "*/node_modules/*",
)

_HEX_DIGITS = set("0123456789abcdefABCDEF")

# Keywords that can immediately precede a "(" without being a call/definition.
_CONTROL_KEYWORDS = {
    "if", "while", "for", "switch", "return", "sizeof", "catch", "throw",
    "do", "else", "case", "goto", "new", "delete", "alignof", "typeid",
    "defined", "_Static_assert", "static_assert", "decltype",
}

_TRAILING_WORDS = {"const", "noexcept", "override", "final", "volatile", "try", "&", "&&"}


class CorpusError(Exception):
    """Base class for mining failures."""


class UnterminatedCommentError(CorpusError):
    def __init__(self, offset: int):
        self.offset = offset
        super().__init__(f"unterminated block comment opened at offset {offset}")


class UnbalancedBracesError(CorpusError):
    def __init__(self, offset: int, path: str = ""):
        self.offset = offset
        self.path = path
        where = f" in {path}" if path else ""
        super().__init__(f"unbalanced braces{where} near offset {offset}")


class CommentStyle(Enum):
    LINE = "Line"
    BLOCK = "Block"
    DOXYGEN = "Doxygen"


@dataclass(frozen=True)
class ScanConfig:
    ignore_globs: tuple[str, ...] = DEFAULT_IGNORE_GLOBS


@dataclass(frozen=True)
class SourceFile:
    repo_id: str
    path: str
    language: str  # "C" or "CPP"
    content: str
    size_bytes: int


@dataclass(frozen=True)
class CommentBlock:
    raw: str     # including delimiters; re-inserting at span reproduces the file
    text: str    # delimiter-stripped, decoration removed
    style: CommentStyle
    span: tuple[int, int]


@dataclass(frozen=True)
class CodeUnit:
    id: str
    file: SourceFile
    name: str
    signature: str
    body_span: tuple[int, int]  # full definition: declaration start to closing brace
    leading_comment: CommentBlock | None
    loc: int

    @property
    def code(self) -> str:
        return self.file.content[self.body_span[0]:self.body_span[1]]


# ---------------------------------------------------------------------------
# scanning


def scan_repo(root: str | Path, config: ScanConfig = ScanConfig(), repo_id: str | None = None) -> list[SourceFile]:
    """Collect C/C++ sources under ``root`` in lexicographic path order.

    Unreadable individual files are logged and skipped; an unreadable root
    is fatal.
    """
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"repository root not readable: {root}")
    repo = repo_id if repo_id is not None else root.name

    files: list[SourceFile] = []
    for path in sorted(root.rglob("*")):
        if not path.is_file():
            continue
        lang = SOURCE_EXTENSIONS.get(path.suffix)
        if lang is None:
            continue
        rel = path.relative_to(root).as_posix()
        if _ignored(rel, config.ignore_globs):
            continue
        try:
            data = path.read_bytes()
            content = data.decode("utf-8", errors="replace")
        except OSError as exc:
            log.warning("skipping unreadable file %s: %s", rel, exc)
            continue
        files.append(SourceFile(repo, rel, lang, content, len(data)))
    files.sort(key=lambda f: f.path)
    return files


def _ignored(rel_path: str, globs: tuple[str, ...]) -> bool:
    return any(fnmatch.fnmatch(rel_path, g) for g in globs)


# ---------------------------------------------------------------------------
# comment stripping


def _scan_literal(content: str, i: int, quote: str) -> int:
    """Return the index just past the literal opened at ``content[i]``."""
    j = i + 1
    n = len(content)
    while j < n:
        c = content[j]
        if c == "\\":
            j += 2
            continue
        if c == quote:
            return j + 1
        if c == "\n" and quote == "'":
            # unterminated char literal; don't swallow the rest of the file
            return j
        j += 1
    return n


def _is_digit_separator(content: str, i: int) -> bool:
    # C++14 literals like 1'000'000 or 0xFF'EC: a quote between hex digits.
    if i == 0 or i + 1 >= len(content):
        return False
    return content[i - 1] in _HEX_DIGITS and content[i + 1] in _HEX_DIGITS


def strip_comments(content: str) -> str:
    """Remove // and /* */ comments, preserving literals and line structure.

    Block comments become a single space plus any newlines they contained;
    line comments drop the remainder of the line (a trailing backslash
    continues the comment onto the next line, as the preprocessor would).
    Raises UnterminatedCommentError for an unclosed block comment.
    """
    out: list[str] = []
    i = 0
    n = len(content)
    while i < n:
        c = content[i]
        nxt = content[i + 1] if i + 1 < n else ""
        if c == "/" and nxt == "/":
            j = i + 2
            while j < n:
                if content[j] == "\n":
                    k = j - 1
                    if k >= 0 and content[k] == "\r":
                        k -= 1
                    if k >= 0 and content[k] == "\\":
                        out.append("\n")  # spliced line: comment continues
                        j += 1
                        continue
                    break
                j += 1
            i = j
        elif c == "/" and nxt == "*":
            start = i
            j = i + 2
            newlines = 0
            closed = False
            while j < n:
                if content[j] == "*" and j + 1 < n and content[j + 1] == "/":
                    closed = True
                    break
                if content[j] == "\n":
                    newlines += 1
                j += 1
            if not closed:
                raise UnterminatedCommentError(start)
            out.append(" ")
            out.append("\n" * newlines)
            i = j + 2
        elif c == '"':
            j = _scan_literal(content, i, '"')
            out.append(content[i:j])
            i = j
        elif c == "'":
            if _is_digit_separator(content, i):
                out.append(c)
                i += 1
            else:
                j = _scan_literal(content, i, "'")
                out.append(content[i:j])
                i = j
        else:
            out.append(c)
            i += 1
    return "".join(out)


# ---------------------------------------------------------------------------
# comment blocks


def find_comment_blocks(content: str) -> list[CommentBlock]:
    """Locate comments, merging adjacent // lines into a single block."""
    spans: list[tuple[int, int]] = []  # raw comment spans, in order
    i = 0
    n = len(content)
    while i < n:
        c = content[i]
        nxt = content[i + 1] if i + 1 < n else ""
        if c == "/" and nxt == "/":
            j = i + 2
            while j < n and content[j] != "\n":
                j += 1
            spans.append((i, j))
            i = j
        elif c == "/" and nxt == "*":
            j = content.find("*/", i + 2)
            if j < 0:
                raise UnterminatedCommentError(i)
            spans.append((i, j + 2))
            i = j + 2
        elif c == '"':
            i = _scan_literal(content, i, '"')
        elif c == "'":
            if _is_digit_separator(content, i):
                i += 1
            else:
                i = _scan_literal(content, i, "'")
        else:
            i += 1

    blocks: list[CommentBlock] = []
    k = 0
    while k < len(spans):
        start, end = spans[k]
        if content.startswith("//", start):
            # merge a run of // lines separated only by one newline + indent
            while k + 1 < len(spans):
                nstart, nend = spans[k + 1]
                gap = content[end:nstart]
                if content.startswith("//", nstart) and gap.count("\n") == 1 and gap.strip() == "":
                    end = nend
                    k += 1
                else:
                    break
        raw = content[start:end]
        blocks.append(CommentBlock(raw, _comment_text(raw), _comment_style(raw), (start, end)))
        k += 1
    return blocks


def _comment_style(raw: str) -> CommentStyle:
    if raw.startswith(("/**", "/*!", "///", "//!")):
        return CommentStyle.DOXYGEN
    if raw.startswith("/*"):
        return CommentStyle.BLOCK
    return CommentStyle.LINE


def _comment_text(raw: str) -> str:
    """Strip delimiters and leading decoration from each comment line."""
    if raw.startswith("/*"):
        body = raw[2:]
        if body.startswith(("*", "!")) and not body.startswith("*/"):
            body = body[1:]
        if body.endswith("*/"):
            body = body[:-2]
        lines = body.split("\n")
        cleaned = []
        for line in lines:
            s = line.strip()
            if s.startswith("*"):
                s = s[1:].strip()
            cleaned.append(s)
        return "\n".join(cleaned).strip()
    lines = []
    for line in raw.split("\n"):
        s = line.strip()
        for prefix in ("///", "//!", "//"):
            if s.startswith(prefix):
                s = s[len(prefix):]
                break
        lines.append(s.strip())
    return "\n".join(lines).strip()


# ---------------------------------------------------------------------------
# tokenizer for function extraction


@dataclass(frozen=True)
class _Token:
    kind: str  # ident | punct | string | char | number | pp
    text: str
    start: int
    end: int


_IDENT_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")
_NUMBER_RE = re.compile(r"\.?\d(?:[\w.']|[eEpP][+-])*")


def _lex(content: str) -> list[_Token]:
    """Tokenize comment-free regions of the file. Comments never yield tokens."""
    tokens: list[_Token] = []
    i = 0
    n = len(content)
    line_start = True
    while i < n:
        c = content[i]
        nxt = content[i + 1] if i + 1 < n else ""
        if c == "\n":
            line_start = True
            i += 1
            continue
        if c in " \t\r\v\f":
            i += 1
            continue
        if c == "/" and nxt == "/":
            j = content.find("\n", i)
            i = n if j < 0 else j
            continue
        if c == "/" and nxt == "*":
            j = content.find("*/", i + 2)
            if j < 0:
                raise UnterminatedCommentError(i)
            i = j + 2
            continue
        if c == "#" and line_start:
            # opaque preprocessor line, honoring backslash continuations
            j = i
            while j < n:
                if content[j] == "\n":
                    k = j - 1
                    if k >= 0 and content[k] == "\r":
                        k -= 1
                    if k >= 0 and content[k] == "\\":
                        j += 1
                        continue
                    break
                j += 1
            tokens.append(_Token("pp", content[i:j], i, j))
            i = j
            continue
        line_start = False
        if c == '"':
            j = _scan_literal(content, i, '"')
            tokens.append(_Token("string", content[i:j], i, j))
            i = j
            continue
        if c == "'":
            if _is_digit_separator(content, i):
                i += 1
                continue
            j = _scan_literal(content, i, "'")
            tokens.append(_Token("char", content[i:j], i, j))
            i = j
            continue
        m = _IDENT_RE.match(content, i)
        if m:
            tokens.append(_Token("ident", m.group(0), i, m.end()))
            i = m.end()
            continue
        if c.isdigit() or (c == "." and nxt.isdigit()):
            m = _NUMBER_RE.match(content, i)
            end = m.end() if m else i + 1
            tokens.append(_Token("number", content[i:end], i, end))
            i = end
            continue
        # multi-char operators we care about for declarator walking
        if content.startswith("->", i):
            tokens.append(_Token("punct", "->", i, i + 2))
            i += 2
            continue
        if content.startswith("::", i):
            tokens.append(_Token("punct", "::", i, i + 2))
            i += 2
            continue
        tokens.append(_Token("punct", c, i, i + 1))
        i += 1
    return tokens


def _check_balance(tokens: list[_Token], path: str) -> None:
    depth = 0
    last_open: list[int] = []
    for t in tokens:
        if t.kind == "punct" and t.text == "{":
            depth += 1
            last_open.append(t.start)
        elif t.kind == "punct" and t.text == "}":
            depth -= 1
            if last_open:
                last_open.pop()
            if depth < 0:
                raise UnbalancedBracesError(t.start, path)
    if depth != 0:
        raise UnbalancedBracesError(last_open[-1] if last_open else 0, path)


def _match_back(tokens: list[_Token], close_idx: int, open_text: str, close_text: str) -> int:
    """Index of the opener matching the closer at ``close_idx``, or -1."""
    depth = 0
    for k in range(close_idx, -1, -1):
        t = tokens[k]
        if t.kind != "punct":
            continue
        if t.text == close_text:
            depth += 1
        elif t.text == open_text:
            depth -= 1
            if depth == 0:
                return k
    return -1


def _match_forward(tokens: list[_Token], open_idx: int) -> int:
    """Index of the closer matching the ``{`` at ``open_idx``, or -1."""
    depth = 0
    for k in range(open_idx, len(tokens)):
        t = tokens[k]
        if t.kind != "punct":
            continue
        if t.text == "{":
            depth += 1
        elif t.text == "}":
            depth -= 1
            if depth == 0:
                return k
    return -1


def _walk_back_name(tokens: list[_Token], idx: int) -> tuple[int, str] | None:
    """From the token before a '(', consume an identifier chain backwards.

    Returns (index of chain start, function name) or None. Handles
    qualified names (ns::Cls::f), destructors (~X), and operator ids.
    """
    if idx < 0:
        return None
    t = tokens[idx]
    if t.kind != "ident":
        # operatorX( with X a punctuation sequence: accept operator +,-,[] etc.
        j = idx
        sym = []
        while j >= 0 and tokens[j].kind == "punct" and tokens[j].text not in "(){};,":
            sym.append(tokens[j].text)
            j -= 1
        if j >= 0 and tokens[j].kind == "ident" and tokens[j].text == "operator":
            return j, "operator" + "".join(reversed(sym))
        return None
    name = t.text
    if name in _CONTROL_KEYWORDS or name in _BLOCK_HEAD_KEYWORDS or name in ("noexcept", "throw"):
        return None
    chain_start = idx
    k = idx - 1
    if k >= 0 and tokens[k].kind == "punct" and tokens[k].text == "~":
        name = "~" + name
        chain_start = k
        k -= 1
    # swallow qualifiers: A::B::name
    while k - 1 >= 0 and tokens[k].kind == "punct" and tokens[k].text == "::" and tokens[k - 1].kind == "ident":
        chain_start = k - 1
        k -= 2
    return chain_start, name


def _is_access_colon(tokens: list[_Token], idx: int) -> bool:
    return idx - 1 >= 0 and tokens[idx - 1].kind == "ident" and \
        tokens[idx - 1].text in ("public", "private", "protected")


def _find_declarator(tokens: list[_Token], brace_idx: int) -> tuple[int, str] | None:
    """Decide whether the '{' at brace_idx opens a function body.

    Walks backwards over trailing specifiers and an optional constructor
    initializer list to the parameter list, then reads the declarator name.
    Returns (index of parameter-list '(' owner chain start, name) or None.
    """
    k = brace_idx - 1
    steps = 0
    while k >= 0 and steps < 64:
        steps += 1
        t = tokens[k]
        if t.kind == "ident" and t.text in _TRAILING_WORDS:
            k -= 1
            continue
        if t.kind == "punct" and t.text in ("&", "&&"):
            k -= 1
            continue
        if t.kind == "punct" and t.text == ")":
            open_k = _match_back(tokens, k, "(", ")")
            if open_k <= 0:
                return None
            before = open_k - 1
            got = _walk_back_name(tokens, before)
            if got is None:
                # could be noexcept(...) / throw(...) trailing group
                if before >= 0 and tokens[before].kind == "ident" and tokens[before].text in ("noexcept", "throw"):
                    k = before - 1
                    continue
                return None
            chain_start, name = got
            # is this parenthesized group an initializer-list entry? look left
            prev = chain_start - 1
            if prev >= 0 and tokens[prev].kind == "punct" and tokens[prev].text == ",":
                k = prev - 1
                continue
            if prev >= 0 and tokens[prev].kind == "punct" and tokens[prev].text == ":" \
                    and not _is_access_colon(tokens, prev):
                # member-init list: the real param list is left of the ':'
                k = prev - 1
                continue
            return chain_start, name
        if t.kind == "punct" and t.text == "}":
            # brace-init entry in a ctor initializer list: b{2}
            open_k = _match_back(tokens, k, "{", "}")
            if open_k <= 0:
                return None
            before = open_k - 1
            if before >= 0 and tokens[before].kind == "ident":
                k = before - 1
                continue
            return None
        if t.kind == "punct" and t.text == ",":
            k -= 1
            continue
        if t.kind == "punct" and t.text == ":" and not _is_access_colon(tokens, k):
            # start of a ctor initializer list whose first entry used braces
            k -= 1
            continue
        if t.kind == "ident" or t.kind == "punct" and t.text in (">", "::"):
            # trailing return type "-> foo" or "-> std::vector<int>": scan left
            j = k
            while j >= 0 and (tokens[j].kind in ("ident", "number") or
                              (tokens[j].kind == "punct" and tokens[j].text in ("::", "<", ">", "*", "&"))):
                j -= 1
            if j >= 0 and tokens[j].kind == "punct" and tokens[j].text == "->":
                k = j - 1
                continue
            return None
        return None
    return None


def _decl_start(tokens: list[_Token], chain_start: int) -> int:
    """Walk back from the declarator to the start of the declaration."""
    k = chain_start - 1
    while k >= 0:
        t = tokens[k]
        if t.kind == "pp":
            break
        if t.kind == "punct" and t.text in (";", "{", "}"):
            break
        if t.kind == "punct" and t.text == ":":
            # stop at access specifiers (public:) and label-like colons,
            # but not inside a template argument or scope qualifier
            if k - 1 >= 0 and tokens[k - 1].kind == "ident" and \
                    tokens[k - 1].text in ("public", "private", "protected"):
                break
        if t.kind == "string" and not (k - 1 >= 0 and tokens[k - 1].text == "extern"):
            break
        k -= 1
    return k + 1


_BLOCK_HEAD_KEYWORDS = {"namespace", "class", "struct", "union", "enum", "extern"}


def _block_kind(tokens: list[_Token], brace_idx: int) -> str:
    """Classify a non-function '{' by scanning its head backwards."""
    k = brace_idx - 1
    steps = 0
    while k >= 0 and steps < 40:
        steps += 1
        t = tokens[k]
        if t.kind == "punct" and t.text in (";", "{", "}", "=", ",", "(", "["):
            if t.text == "=":
                return "init"
            return "other"
        if t.kind == "pp":
            return "other"
        if t.kind == "ident" and t.text in _BLOCK_HEAD_KEYWORDS:
            if t.text == "namespace":
                return "namespace"
            if t.text == "extern":
                return "extern"
            if t.text == "enum":
                return "enum"
            return "class"
        k -= 1
    return "other"


def extract_pairs(file: SourceFile) -> list[CodeUnit]:
    """Extract one CodeUnit per top-level or class-scope function definition.

    A leading comment is attached when a comment block ends at most one
    blank line above the start of the declaration. Raises
    UnbalancedBracesError when the lexed token stream has unmatched braces.
    """
    content = file.content
    tokens = _lex(content)
    _check_balance(tokens, file.path)
    comments = find_comment_blocks(content)
    comment_end_lines = [(content.count("\n", 0, b.span[1]), b) for b in comments]

    units: list[CodeUnit] = []
    scope: list[str] = []  # enclosing descendable blocks
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if t.kind == "punct" and t.text == "{":
            decl = _find_declarator(tokens, i)
            if decl is not None:
                chain_start, name = decl
                close = _match_forward(tokens, i)
                if close < 0:
                    raise UnbalancedBracesError(t.start, file.path)
                ds = _decl_start(tokens, chain_start)
                start = tokens[ds].start
                end = tokens[close].end
                sig_raw = strip_comments(content[start:t.start])
                signature = " ".join(sig_raw.split())
                if signature and name in signature:
                    unit = _make_unit(file, name, signature, (start, end), content,
                                      comment_end_lines)
                    units.append(unit)
                i = close + 1
                continue
            kind = _block_kind(tokens, i)
            if kind in ("namespace", "class", "extern"):
                scope.append(kind)
                i += 1
                continue
            # enum bodies, initializers, unknown blocks: skip wholesale
            close = _match_forward(tokens, i)
            if close < 0:
                raise UnbalancedBracesError(t.start, file.path)
            i = close + 1
            continue
        if t.kind == "punct" and t.text == "}":
            if scope:
                scope.pop()
            i += 1
            continue
        i += 1
    return units


def _make_unit(file: SourceFile, name: str, signature: str, span: tuple[int, int],
               content: str, comment_end_lines: list[tuple[int, CommentBlock]]) -> CodeUnit:
    start, end = span
    decl_line = content.count("\n", 0, start)
    leading = None
    for end_line, block in comment_end_lines:
        if block.span[1] > start:
            break
        if end_line >= decl_line:
            continue
        gap_text = content[block.span[1]:start]
        # only whitespace between comment and declaration, at most 1 blank line
        if gap_text.strip() == "" and gap_text.count("\n") - 1 <= 1:
            leading = block
    loc = content.count("\n", start, end) + 1
    uid = f"{file.repo_id}/{file.path}#{name}@{start}"
    return CodeUnit(uid, file, name, signature, span, leading, loc)


# ---------------------------------------------------------------------------
# header expansion


_INCLUDE_RE = re.compile(r'^[ \t]*#[ \t]*include[ \t]+"([^"]+)"[ \t]*$', re.MULTILINE)


def expand_headers(file: SourceFile, search_paths: list[str | Path],
                   max_depth: int = 8) -> str:
    """Inline quoted #include directives with comment-stripped header text.

    System includes (<...>) are untouched. Headers guarded by #pragma once
    or a classic include guard expand only once; a genuine cycle leaves a
    marker line in place of the second occurrence. Missing headers keep
    their directive and log a warning.
    """
    paths = [Path(p) for p in search_paths]
    expanded_once: set[Path] = set()
    in_progress: set[Path] = set()

    def resolve(name: str, relative_to: Path | None) -> Path | None:
        candidates = []
        if relative_to is not None:
            candidates.append(relative_to / name)
        candidates.extend(p / name for p in paths)
        for cand in candidates:
            if cand.is_file():
                return cand.resolve()
        return None

    def expand(text: str, base_dir: Path | None, depth: int) -> str:
        def replace(m: re.Match) -> str:
            name = m.group(1)
            target = resolve(name, base_dir)
            if target is None:
                log.warning("header not found, leaving directive: %s", name)
                return m.group(0)
            if target in in_progress:
                return f'/* include cycle: "{name}" elided */'
            if target in expanded_once and _has_guard(target.read_text(encoding="utf-8", errors="replace")):
                return ""
            if depth >= max_depth:
                log.warning("max include depth reached at %s", name)
                return m.group(0)
            header_text = target.read_text(encoding="utf-8", errors="replace")
            in_progress.add(target)
            try:
                body = expand(strip_comments(header_text), target.parent, depth + 1)
            finally:
                in_progress.remove(target)
            expanded_once.add(target)
            return body

        return _INCLUDE_RE.sub(replace, text)

    return expand(file.content, None if not paths else paths[0], 0)


_GUARD_RE = re.compile(r"#\s*ifndef\s+(\w+)\s*\n\s*#\s*define\s+\1\b")


def _has_guard(header_text: str) -> bool:
    stripped = strip_comments(header_text)
    if re.search(r"#\s*pragma\s+once\b", stripped):
        return True
    return _GUARD_RE.search(stripped) is not None


# ---------------------------------------------------------------------------
# dataset serialization


@dataclass(frozen=True)
class DatasetRecord:
    """One exported code-comment pair, as stored in the JSONL dataset."""
    id: str
    repo: str
    path: str
    signature: str
    code: str
    comment: str | None
    loc: int

    @classmethod
    def from_unit(cls, unit: CodeUnit) -> "DatasetRecord":
        comment = unit.leading_comment.text if unit.leading_comment else None
        return cls(unit.id, unit.file.repo_id, unit.file.path, unit.signature,
                   unit.code, comment, unit.loc)


def export_dataset(units: list[CodeUnit], out: str | Path) -> int:
    """Write one JSON record per unit, ordered by (repo, path, start)."""
    ordered = sorted(units, key=lambda u: (u.file.repo_id, u.file.path, u.body_span[0]))
    out = Path(out)
    try:
        with out.open("w", encoding="utf-8") as fh:
            for unit in ordered:
                rec = DatasetRecord.from_unit(unit)
                fh.write(json.dumps(rec.__dict__, ensure_ascii=False) + "\n")
    except OSError as exc:
        raise CorpusError(f"cannot write dataset to {out}: {exc}") from exc
    return len(ordered)


def import_dataset(path: str | Path) -> list[DatasetRecord]:
    records = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            records.append(DatasetRecord(**json.loads(line)))
    return records


def mine_repo(root: str | Path, config: ScanConfig = ScanConfig(),
              repo_id: str | None = None) -> list[CodeUnit]:
    """scan_repo + extract_pairs over every file, skipping unlexable ones."""
    units: list[CodeUnit] = []
    for f in scan_repo(root, config, repo_id):
        try:
            units.extend(extract_pairs(f))
        except CorpusError as exc:
            log.warning("skipping %s: %s", f.path, exc)
    return units
