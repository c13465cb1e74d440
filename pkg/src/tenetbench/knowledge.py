"""Domain-knowledge rules, the formalization dictionary, and macros.

Rules file format (one declaration per line, `#` comments):

    d1: "remind"(X) => "do"(X)              implication, read as [](lhs -> rhs)
    d3: !"enough food" == "<3 meals a day"  directional definition, lhs rewritten to rhs
    macro PHI(X) := [](time(X) -> (eating(X) | () remind(X)))
    form: "remind"(X) ~> PHI(X) where X in {breakfast, lunch, dinner}
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .logic import (
    Always,
    And,
    Const,
    Expr,
    Implies,
    InformalAtom,
    Leaf,
    MacroCall,
    Occurrence,
    Polarity,
    Substitution,
    apply_subst,
    children,
    find_occurrences,
    free_vars,
    informal_atoms,
    is_formal,
    parse_expr,
    print_expr,
    unify,
    walk,
)
from .logic.exprs import with_children


class KnowledgeError(ValueError):
    pass


class RuleKind(enum.Enum):
    IMPLICATION = "implication"
    DEFINITION = "definition"


@dataclass(frozen=True)
class DomainRule:
    id: str
    kind: RuleKind
    lhs: Expr
    rhs: Expr
    note: str | None = None


@dataclass(frozen=True)
class MacroDef:
    """Named formal template.  Body variables beyond the parameters stay
    free in expansions (schematic, like the drink-interval bounds)."""

    name: str
    params: tuple[str, ...]
    body: Expr


@dataclass(frozen=True)
class FormalizationEntry:
    pattern: Expr
    template: Expr
    guard: tuple[tuple[str, frozenset[str]], ...] = ()

    def __post_init__(self) -> None:
        if not informal_atoms(self.pattern):
            raise KnowledgeError(f"formalization pattern {print_expr(self.pattern)!r} has no informal atom")
        pattern_vars = free_vars(self.pattern)
        for var, _ in self.guard:
            if var not in pattern_vars:
                raise KnowledgeError(f"guard variable {var} does not appear in the pattern")

    def guard_admits(self, theta: Substitution) -> bool:
        for var, allowed in self.guard:
            bound = theta.get(var)
            if not isinstance(bound, Const) or bound.name not in allowed:
                return False
        return True


@dataclass(frozen=True)
class KnowledgeBase:
    rules: tuple[DomainRule, ...] = ()
    formalizations: tuple[FormalizationEntry, ...] = ()
    macros: tuple[MacroDef, ...] = ()

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for rule in self.rules:
            if rule.id in seen:
                raise KnowledgeError(f"duplicate rule id {rule.id!r}")
            seen.add(rule.id)
            if rule.kind is RuleKind.DEFINITION and rule.lhs == rule.rhs:
                raise KnowledgeError(f"definition {rule.id} rewrites to itself")
        names = self.macro_names()
        for macro in self.macros:
            if not is_formal(macro.body, names):
                raise KnowledgeError(f"macro {macro.name}: body is not formal")
        for entry in self.formalizations:
            for sub in walk(entry.template):
                if isinstance(sub, MacroCall) and sub.name not in names:
                    raise KnowledgeError(f"formalization uses unknown macro {sub.name!r}")
            if not is_formal(entry.template, names):
                raise KnowledgeError(
                    f"formalization template {print_expr(entry.template)!r} is not formal"
                )

    def macro_names(self) -> frozenset[str]:
        return frozenset(m.name for m in self.macros)

    def rule(self, rule_id: str) -> DomainRule:
        for rule in self.rules:
            if rule.id == rule_id:
                return rule
        raise KnowledgeError(f"unknown rule id {rule_id!r}")


@dataclass(frozen=True)
class Case1Move:
    """A domain-knowledge rewrite: replace the occurrence with `replacement`."""

    rule: DomainRule
    occurrence: Occurrence
    replacement: Expr


@dataclass(frozen=True)
class Case0Move:
    """A formalization: the node becomes the fully formal `result`."""

    result: Expr


def rule_semantics(rule: DomainRule) -> Expr:
    """The rule as a trace constraint: [](lhs -> rhs), both ways for definitions."""
    forward = Always(Implies(rule.lhs, rule.rhs))
    if rule.kind is RuleKind.IMPLICATION:
        return forward
    return And((forward, Always(Implies(rule.rhs, rule.lhs))))


def match_rules(kb: KnowledgeBase, node: Expr) -> list[Case1Move]:
    """Every rule application available on `node`.

    Implications rewrite their right side at positive occurrences (to the
    instantiated left side) and their left side at negative occurrences (to
    the right side).  Definitions rewrite left to right in any context.
    """
    moves: list[Case1Move] = []
    for rule in kb.rules:
        candidates: list[Case1Move] = []
        if rule.kind is RuleKind.IMPLICATION:
            for occ in find_occurrences(node, rule.rhs):
                if occ.polarity is Polarity.POSITIVE:
                    candidates.append(Case1Move(rule, occ, apply_subst(rule.lhs, occ.theta)))
            for occ in find_occurrences(node, rule.lhs):
                if occ.polarity is Polarity.NEGATIVE:
                    candidates.append(Case1Move(rule, occ, apply_subst(rule.rhs, occ.theta)))
        else:
            for occ in find_occurrences(node, rule.lhs):
                candidates.append(Case1Move(rule, occ, apply_subst(rule.rhs, occ.theta)))
        candidates.sort(key=lambda m: m.occurrence.path)
        moves.extend(candidates)
    return moves


def _formalize(kb: KnowledgeBase, e: Expr) -> Expr | None:
    for entry in kb.formalizations:
        theta = unify(entry.pattern, e)
        if theta is not None and entry.guard_admits(theta):
            return apply_subst(entry.template, theta)
    if isinstance(e, Leaf):
        return None if isinstance(e.atom, InformalAtom) else e
    subs = children(e)
    if not subs:
        return e
    rebuilt = []
    for sub in subs:
        done = _formalize(kb, sub)
        if done is None:
            return None
        rebuilt.append(done)
    return with_children(e, tuple(rebuilt))


def match_formalizations(kb: KnowledgeBase, node: Expr) -> list[Case0Move]:
    """One move when every informal atom in `node` has an admissible entry."""
    if not informal_atoms(node):
        return []
    result = _formalize(kb, node)
    if result is None:
        return []
    return [Case0Move(result)]


def add_rule(kb: KnowledgeBase, rule: DomainRule) -> KnowledgeBase:
    if any(r.id == rule.id for r in kb.rules):
        raise KnowledgeError(f"duplicate rule id {rule.id!r}")
    return KnowledgeBase(kb.rules + (rule,), kb.formalizations, kb.macros)


def expand_macros(kb: KnowledgeBase, e: Expr, _stack: tuple[str, ...] = ()) -> Expr:
    if isinstance(e, MacroCall):
        if e.name in _stack:
            raise KnowledgeError(f"macro {e.name!r} expands through itself")
        macro = next((m for m in kb.macros if m.name == e.name), None)
        if macro is None:
            raise KnowledgeError(f"unknown macro {e.name!r}")
        if len(e.args) != len(macro.params):
            raise KnowledgeError(
                f"macro {e.name} takes {len(macro.params)} arguments, got {len(e.args)}"
            )
        body = apply_subst(macro.body, Substitution(dict(zip(macro.params, e.args))))
        return expand_macros(kb, body, _stack + (e.name,))
    subs = children(e)
    if not subs:
        return e
    return with_children(e, tuple(expand_macros(kb, sub, _stack) for sub in subs))


# -- rules file ---------------------------------------------------------

_MACRO_LINE = re.compile(r"macro\s+([A-Z]\w*)\s*(\(([^)]*)\))?\s*:=\s*(.+)\Z")
_GUARD_CLAUSE = re.compile(r"\s*(?:where|,)\s+([A-Z]\w*)\s+in\s*\{([^}]*)\}")
_RULE_LINE = re.compile(r"([A-Za-z_]\w*)\s*:\s*(.+)\Z")


def _split_comment(line: str) -> tuple[str, str | None]:
    in_quote = False
    for i, ch in enumerate(line):
        if ch == '"':
            in_quote = not in_quote
        elif ch == "#" and not in_quote:
            return line[:i].rstrip(), line[i + 1 :].strip() or None
    return line.rstrip(), None


def _find_operator(body: str, line_no: int) -> tuple[int, str]:
    in_quote = False
    for i, ch in enumerate(body):
        if ch == '"':
            in_quote = not in_quote
        elif not in_quote and body[i : i + 2] in ("=>", "=="):
            return i, body[i : i + 2]
    raise KnowledgeError(f"line {line_no}: expected '=>' or '==' in rule")


def _parse_guard(tail: str, line_no: int) -> tuple[tuple[tuple[str, frozenset[str]], ...], str]:
    match = re.search(r"\bwhere\b", tail)
    if not match:
        return (), tail
    template_text, guard_text = tail[: match.start()].strip(), tail[match.start() :]
    guard: list[tuple[str, frozenset[str]]] = []
    pos = 0
    for clause in _GUARD_CLAUSE.finditer(guard_text):
        if clause.start() != pos:
            raise KnowledgeError(f"line {line_no}: malformed guard clause")
        names = frozenset(n.strip() for n in clause.group(2).split(",") if n.strip())
        if not names:
            raise KnowledgeError(f"line {line_no}: empty guard set")
        guard.append((clause.group(1), names))
        pos = clause.end()
    if pos != len(guard_text.rstrip()):
        raise KnowledgeError(f"line {line_no}: malformed guard clause")
    return tuple(guard), template_text


def parse_rules(text: str) -> KnowledgeBase:
    rules: list[DomainRule] = []
    formalizations: list[FormalizationEntry] = []
    macros: list[MacroDef] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line, note = _split_comment(raw)
        line = line.strip()
        if not line:
            continue
        try:
            if line.startswith("macro "):
                match = _MACRO_LINE.match(line)
                if not match:
                    raise KnowledgeError(f"line {line_no}: malformed macro")
                params = tuple(
                    p.strip() for p in (match.group(3) or "").split(",") if p.strip()
                )
                macros.append(MacroDef(match.group(1), params, parse_expr(match.group(4))))
                continue
            if line.startswith("form:"):
                body = line[len("form:") :].strip()
                if "~>" not in body:
                    raise KnowledgeError(f"line {line_no}: expected '~>' in formalization")
                pattern_text, tail = body.split("~>", 1)
                guard, template_text = _parse_guard(tail.strip(), line_no)
                formalizations.append(
                    FormalizationEntry(
                        parse_expr(pattern_text.strip()), parse_expr(template_text), guard
                    )
                )
                continue
            match = _RULE_LINE.match(line)
            if not match:
                raise KnowledgeError(f"line {line_no}: malformed rule")
            rule_id, body = match.group(1), match.group(2)
            at, op = _find_operator(body, line_no)
            kind = RuleKind.IMPLICATION if op == "=>" else RuleKind.DEFINITION
            lhs = parse_expr(body[:at].strip())
            rhs = parse_expr(body[at + 2 :].strip())
            rules.append(DomainRule(rule_id, kind, lhs, rhs, note))
        except KnowledgeError:
            raise
        except ValueError as err:
            raise KnowledgeError(f"line {line_no}: {err}") from err
    return KnowledgeBase(tuple(rules), tuple(formalizations), tuple(macros))


def serialize_rules(kb: KnowledgeBase) -> str:
    lines: list[str] = []
    for rule in kb.rules:
        op = "=>" if rule.kind is RuleKind.IMPLICATION else "=="
        note = f"  # {rule.note}" if rule.note else ""
        lines.append(f"{rule.id}: {print_expr(rule.lhs)} {op} {print_expr(rule.rhs)}{note}")
    for macro in kb.macros:
        params = f"({', '.join(macro.params)})" if macro.params else ""
        lines.append(f"macro {macro.name}{params} := {print_expr(macro.body)}")
    for entry in kb.formalizations:
        guard = ""
        if entry.guard:
            clauses = ", ".join(f"{var} in {{{', '.join(sorted(allowed))}}}" for var, allowed in entry.guard)
            guard = f" where {clauses}"
        lines.append(f"form: {print_expr(entry.pattern)} ~> {print_expr(entry.template)}{guard}")
    return "\n".join(lines) + ("\n" if lines else "")
