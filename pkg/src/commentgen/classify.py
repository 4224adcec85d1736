"""Label comments with the eight categories found in useful comments.

The rules method is deterministic and multi-label: one comment can be,
say, both a link to a definition site and an algorithmic walkthrough.
Semantic categories (Consistency, Irrelevance) use identifier-overlap
heuristics; a Judge method delegates those calls to an LLM and is never
silently mixed with rules output.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .docstore import split_identifier


class Category(Enum):
    CONSISTENCY = "Consistency"
    IRRELEVANCE = "Irrelevance"
    DOMAIN_MAPPING = "DomainMapping"
    POSSIBLE_EXCEPTIONS = "PossibleExceptions"
    ALTERNATIVE_SOLUTIONS = "AlternativeSolutions"
    LINKS = "Links"
    ALGORITHMIC_DETAILS = "AlgorithmicDetails"
    COMPLEXITY = "Complexity"


class LabelMethod(Enum):
    RULES = "Rules"
    JUDGE = "Judge"


class CommentSource(Enum):
    ORIGINAL = "Original"
    GENERATED = "Generated"


@dataclass(frozen=True)
class CategoryLabel:
    unit_id: str
    source: CommentSource
    categories: frozenset[Category]
    method: LabelMethod
    setup: str = ""


# ---------------------------------------------------------------------------
# rule tables


_LINK_RE = re.compile(
    r"[\w./\\-]+\.(?:h|hpp|hh|hxx|c|cc|cpp|cxx|inl|md|txt)(?::\d+)?\b"
    r"|defined\s+(?:in|at)\b"
    r"|\bsee\s+[\w./\\-]+[/.]"
)

_BIG_O_RE = re.compile(r"\bO\s*\(")

_EXCEPTION_CUES = (
    "limitation", "no bounds check", "bounds checking", "overflow", "underflow",
    "wrap", "undefined behavior", "undefined behaviour", "may fail", "can fail",
    "not thread-safe", "not thread safe", "race condition", "null pointer",
    "must not", "caller must", "assumes", "edge case", "caution", "beware",
    "unsafe", "does not check", "doesn't check", "no validation", "potential bug",
)

_ALTERNATIVE_CUES = (
    "alternative", "alternatively", "instead", "could use", "consider using",
    "better to", "another way", "more efficient to", "can be replaced",
)

_BEHAVIOR_VERBS = {
    "tests", "test", "testing", "ensures", "ensure", "ensuring", "computes",
    "compute", "computing", "returns", "return", "returning", "iterates",
    "checks", "check", "checking", "compares", "compare", "converts",
    "convert", "calculates", "walks", "parses", "parse", "validates",
    "escapes", "escaped", "escaping", "initializes", "sorts", "searches",
    "handles", "performs", "implements", "builds", "creates", "create",
    "processes", "reads", "writes", "updates", "changes", "uses", "using",
    "allocates", "frees", "serializes", "prevents", "stores", "loads",
    "needed", "defined", "provides", "explains",
}

_STOPWORDS = {
    "the", "a", "an", "of", "to", "in", "on", "for", "and", "or", "is", "are",
    "was", "be", "by", "as", "at", "it", "its", "this", "that", "with", "from",
    "if", "when", "then", "than", "so", "not", "no", "we", "all", "any", "per",
    "into", "over", "also", "via", "both", "each", "which", "whether", "there",
}

# programming-generic nouns that never signal an application domain
_GENERIC_WORDS = {
    "function", "functions", "method", "methods", "value", "values", "number",
    "numbers", "pointer", "pointers", "string", "strings", "result", "results",
    "parameter", "parameters", "param", "params", "code", "codes", "variable",
    "variables", "array", "arrays", "list", "lists", "data", "type", "types",
    "object", "objects", "class", "classes", "thread", "threads", "buffer",
    "buffers", "index", "indices", "loop", "loops", "file", "files", "standard",
    "standards", "size", "length", "call", "calls", "input", "output", "struct",
    "field", "fields", "element", "elements", "item", "items", "flag", "flags",
    "argument", "arguments", "error", "errors", "null", "byte", "bytes",
    "memory", "heap", "stack", "queue", "node", "nodes", "properly", "comment",
}

_WORD_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_:]*")
_SENTENCE_RE = re.compile(r"[.!?](?:\s|$)")

_IRRELEVANCE_COVERAGE = 0.6
_IRRELEVANCE_MAX_WORDS = 12


def _code_subtokens(code: str) -> set[str]:
    tokens: set[str] = set()
    for word in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", code):
        tokens.add(word.lower())
        for part in split_identifier(word):
            tokens.add(part.lower())
    return tokens


def _matches_code(word: str, code_tokens: set[str]) -> bool:
    if word in code_tokens:
        return True
    # prefix tolerance: "number" matches token "num", "timers" matches "timer"
    for tok in code_tokens:
        if len(tok) >= 3 and (word.startswith(tok) or tok.startswith(word)):
            return True
    return False


def classify_comment(comment: str, code: str,
                     method: LabelMethod = LabelMethod.RULES,
                     unit_id: str = "", source: CommentSource = CommentSource.GENERATED,
                     setup: str = "", judge=None) -> CategoryLabel:
    """Assign zero or more of the eight categories to a comment."""
    if not comment.strip():
        raise ValueError("classify_comment requires a non-empty comment")
    if method == LabelMethod.JUDGE:
        categories = _judge_categories(comment, code, judge)
    else:
        categories = _rule_categories(comment, code)
    return CategoryLabel(unit_id, source, frozenset(categories), method, setup)


def _rule_categories(comment: str, code: str) -> set[Category]:
    lower = comment.lower()
    categories: set[Category] = set()

    if _LINK_RE.search(comment):
        categories.add(Category.LINKS)
    if _BIG_O_RE.search(comment):
        categories.add(Category.COMPLEXITY)
    if any(cue in lower for cue in _EXCEPTION_CUES):
        categories.add(Category.POSSIBLE_EXCEPTIONS)
    if any(cue in lower for cue in _ALTERNATIVE_CUES):
        categories.add(Category.ALTERNATIVE_SOLUTIONS)

    code_tokens = _code_subtokens(code)
    words = [w.lower() for w in _WORD_RE.findall(comment)]
    content = [w for w in words if w not in _STOPWORDS and len(w) >= 3]
    ident_matches = [w for w in content if _matches_code(w, code_tokens)]
    sentences = max(len(_SENTENCE_RE.findall(comment)), 1)

    if ident_matches and any(len(w) >= 4 for w in ident_matches):
        categories.add(Category.CONSISTENCY)

    behavioral = [w for w in content if w in _BEHAVIOR_VERBS]
    if ident_matches and behavioral and (sentences >= 2 or len(words) >= 12):
        categories.add(Category.ALGORITHMIC_DETAILS)

    # nouns the code does not mention and programming vocabulary cannot explain
    domain_words = [
        w for w in content
        if len(w) >= 4 and w not in _BEHAVIOR_VERBS and w not in _GENERIC_WORDS
        and not _matches_code(w, code_tokens)
    ]
    if len(set(domain_words)) >= 2:
        categories.add(Category.DOMAIN_MAPPING)

    # short single-sentence paraphrase of what the code already says
    relevant = [w for w in content if w not in _BEHAVIOR_VERBS and w not in _GENERIC_WORDS]
    if relevant and sentences == 1 and len(words) <= _IRRELEVANCE_MAX_WORDS:
        coverage = sum(1 for w in relevant if _matches_code(w, code_tokens)) / len(relevant)
        if coverage >= _IRRELEVANCE_COVERAGE:
            categories.add(Category.IRRELEVANCE)
    return categories


_JUDGE_PROMPT = """Classify the comment below against its code into zero or more of:
Consistency - the concepts in the comment correctly talk about the code.
Irrelevance - the comment restates what is already obvious from the code.
DomainMapping - links program concepts to application-domain concepts.
PossibleExceptions - lists potential bugs or hazards from changed parameters.
AlternativeSolutions - offers a different implementation or optimization.
Links - points to files, headers, or definition sites.
AlgorithmicDetails - explains how the code works step by step.
Complexity - states time or space complexity.

Reply with the matching category names, comma-separated, or "none".

Code:
{code}

Comment:
{comment}
"""


def _judge_categories(comment: str, code: str, judge) -> set[Category]:
    if judge is None:
        raise ValueError("Judge method requires a judge callable")
    reply = judge(_JUDGE_PROMPT.format(code=code, comment=comment))
    by_name = {c.value.lower(): c for c in Category}
    found: set[Category] = set()
    for piece in re.split(r"[,\n]", reply.lower()):
        name = piece.strip().strip(".")
        if name in by_name:
            found.add(by_name[name])
    return found


# ---------------------------------------------------------------------------
# distributions


def category_distribution(labels: list[CategoryLabel]) -> dict[str, dict[Category, float]]:
    """Per-setup percentage of comments carrying each category.

    Multi-label: columns need not sum to 100. Percentages are over the
    number of comments in the group.
    """
    if not labels:
        raise ValueError("category_distribution requires at least one label")
    groups: dict[str, list[CategoryLabel]] = {}
    for label in labels:
        groups.setdefault(label.setup, []).append(label)
    table: dict[str, dict[Category, float]] = {}
    for setup, members in sorted(groups.items()):
        row = {}
        for cat in Category:
            hits = sum(1 for m in members if cat in m.categories)
            row[cat] = 100.0 * hits / len(members)
        table[setup] = row
    return table


def render_distribution(table: dict[str, dict[Category, float]]) -> str:
    """Plain-text rendering with two-decimal percentages."""
    lines = []
    header = "setup".ljust(24) + "".join(c.value.rjust(22) for c in Category)
    lines.append(header)
    for setup, row in table.items():
        cells = "".join(f"{row[c]:.2f}".rjust(22) for c in Category)
        lines.append((setup or "(all)").ljust(24) + cells)
    return "\n".join(lines)
