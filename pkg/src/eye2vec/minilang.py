"""Tokenizer and recursive-descent parser for a small Java-like language.

Every token and AST node carries an exact 1-based line/column span over the
original text, which is what lets gaze positions be matched against syntax.
Keywords and punctuation are parsed but never become tree leaves; the leaves
are identifiers, literals, and type names.

Parsing is a pure function; the returned tree is never mutated afterwards
and is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Union

from .errors import LexError, ParseError

KEYWORDS = frozenset({"class", "int", "boolean", "void", "if", "else", "while", "for", "return"})
BUILTIN_TYPES = frozenset({"int", "boolean", "void"})

# Longest first so the scanner can try them in order.
_OPERATORS = (
    "==", "!=", "<=", ">=", "&&", "||",
    "{", "}", "(", ")", "[", "]", ";", ",", ".",
    "=", "<", ">", "+", "-", "*", "/", "%", "!",
)

INT64_MAX = 2**63 - 1

LEAF_KINDS = frozenset({"Identifier", "IntLit", "BoolLit", "StrLit", "TypeName"})


@dataclass(frozen=True)
class SourceSpan:
    """Inclusive 1-based character span in the original text."""

    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def contains(self, line: int, col: int) -> bool:
        if line < self.start_line or line > self.end_line:
            return False
        if line == self.start_line and col < self.start_col:
            return False
        if line == self.end_line and col > self.end_col:
            return False
        return True

    def contains_span(self, other: "SourceSpan") -> bool:
        return self.contains(other.start_line, other.start_col) and self.contains(
            other.end_line, other.end_col
        )


class Token(NamedTuple):
    """One lexeme. For keywords and punctuation, ``kind`` equals the lexeme."""

    kind: str
    lexeme: str
    span: SourceSpan


@dataclass(eq=False)
class LeafToken:
    """A leaf of the AST: identifier, literal, or type name."""

    text: str
    kind: str
    span: SourceSpan
    leaf_index: int = -1
    parent: "AstNode | None" = field(default=None, repr=False)


@dataclass(eq=False)
class AstNode:
    label: str
    span: SourceSpan
    children: list[Union["AstNode", LeafToken]]
    parent: "AstNode | None" = field(default=None, repr=False)

    def __post_init__(self) -> None:
        for child in self.children:
            child.parent = self


Child = Union[AstNode, LeafToken]


def tokenize(source_text: str) -> list[Token]:
    """Scan ``source_text`` into tokens; comments and whitespace are skipped
    but still advance line/column positions."""
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(source_text)

    def advance_over(text: str) -> None:
        nonlocal line, col
        for ch in text:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1

    while i < n:
        ch = source_text[i]
        if ch in " \t\r\n":
            advance_over(ch)
            i += 1
            continue
        if source_text.startswith("//", i):
            end = source_text.find("\n", i)
            end = n if end == -1 else end
            advance_over(source_text[i:end])
            i = end
            continue
        if source_text.startswith("/*", i):
            close = source_text.find("*/", i + 2)
            if close == -1:
                raise LexError(line, col, "unterminated block comment")
            advance_over(source_text[i : close + 2])
            i = close + 2
            continue
        if ch == '"':
            start_line, start_col = line, col
            j = i + 1
            while j < n:
                c = source_text[j]
                if c == "\n":
                    break
                if c == "\\":
                    if j + 1 >= n or source_text[j + 1] == "\n":
                        break  # a backslash cannot escape the line end
                    j += 2
                    continue
                if c == '"':
                    break
                j += 1
            if j >= n or source_text[j] != '"':
                raise LexError(start_line, start_col, "unterminated string literal")
            lexeme = source_text[i : j + 1]
            advance_over(lexeme)
            tokens.append(
                Token("StrLit", lexeme, SourceSpan(start_line, start_col, line, col - 1))
            )
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and source_text[j].isdigit():
                j += 1
            lexeme = source_text[i:j]
            if int(lexeme) > INT64_MAX:
                raise LexError(line, col, f"integer literal out of 64-bit signed range: {lexeme}")
            tokens.append(_single_line_token("IntLit", lexeme, line, col))
            col += len(lexeme)
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source_text[j].isalnum() or source_text[j] == "_"):
                j += 1
            lexeme = source_text[i:j]
            if lexeme in ("true", "false"):
                kind = "BoolLit"
            elif lexeme in KEYWORDS:
                kind = lexeme
            else:
                kind = "Identifier"
            tokens.append(_single_line_token(kind, lexeme, line, col))
            col += len(lexeme)
            i = j
            continue
        for op in _OPERATORS:
            if source_text.startswith(op, i):
                tokens.append(_single_line_token(op, op, line, col))
                col += len(op)
                i += len(op)
                break
        else:
            raise LexError(line, col, f"unrecognized character {ch!r}")
    return tokens


def _single_line_token(kind: str, lexeme: str, line: int, col: int) -> Token:
    return Token(kind, lexeme, SourceSpan(line, col, line, col + len(lexeme) - 1))


def parse(source_text: str) -> AstNode:
    """Parse ``source_text`` into a Program tree with spans on every node."""
    root = _Parser(tokenize(source_text)).parse_program()
    for index, leaf in enumerate(iter_leaves(root)):
        leaf.leaf_index = index
    return root


def iter_leaves(node: AstNode) -> Iterator[LeafToken]:
    for child in node.children:
        if isinstance(child, LeafToken):
            yield child
        else:
            yield from iter_leaves(child)


def leaves(root: AstNode) -> list[LeafToken]:
    """All leaves of ``root`` in source order."""
    return list(iter_leaves(root))


def _span_of(item: Child) -> SourceSpan:
    return item.span


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        # Where the next construct should begin; used for error positions.
        self.error_line = 1
        self.error_col = 1

    # token plumbing ---------------------------------------------------

    def _peek(self, offset: int = 0) -> Token | None:
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def _at(self, kind: str) -> bool:
        tok = self._peek()
        return tok is not None and tok.kind == kind

    def _advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        self.error_line = tok.span.end_line
        self.error_col = tok.span.end_col + 1
        return tok

    def _expect(self, kind: str, expected: str | None = None) -> Token:
        if self._at(kind):
            return self._advance()
        self._fail(expected or f"'{kind}'")

    def _fail(self, expected: str) -> None:
        tok = self._peek()
        found = f"'{tok.lexeme}'" if tok is not None else "end of input"
        raise ParseError(self.error_line, self.error_col, expected, found)

    def _span_from(self, start_index: int) -> SourceSpan:
        if start_index >= self.pos:  # zero-token construct (empty program)
            return SourceSpan(1, 1, 1, 1)
        first = self.tokens[start_index].span
        last = self.tokens[self.pos - 1].span
        return SourceSpan(first.start_line, first.start_col, last.end_line, last.end_col)

    def _leaf(self, tok: Token, kind: str) -> LeafToken:
        return LeafToken(text=tok.lexeme, kind=kind, span=tok.span)

    # grammar ----------------------------------------------------------

    def parse_program(self) -> AstNode:
        start = self.pos
        classes: list[Child] = []
        while self._peek() is not None:
            classes.append(self.parse_class())
        return AstNode("Program", self._span_from(start), classes)

    def parse_class(self) -> AstNode:
        start = self.pos
        self._expect("class", "'class'")
        name = self._expect("Identifier", "class name")
        self._expect("{")
        members: list[Child] = [self._leaf(name, "Identifier")]
        while not self._at("}"):
            if self._peek() is None:
                self._fail("member declaration or '}'")
            members.append(self.parse_member())
        self._expect("}")
        return AstNode("ClassDecl", self._span_from(start), members)

    def parse_member(self) -> AstNode:
        start = self.pos
        type_ref = self.parse_type()
        name = self._expect("Identifier", "member name")
        name_leaf = self._leaf(name, "Identifier")
        if self._at("("):
            return self._parse_method_rest(start, type_ref, name_leaf)
        init = None
        if self._at("="):
            self._advance()
            init = self.parse_expr()
        self._expect(";")
        children: list[Child] = [type_ref, name_leaf] + ([init] if init is not None else [])
        return AstNode("FieldDecl", self._span_from(start), children)

    def _parse_method_rest(self, start: int, type_ref: AstNode, name_leaf: LeafToken) -> AstNode:
        self._expect("(")
        params: list[Child] = []
        if not self._at(")"):
            if not self._at_type_start():
                self._fail("parameter type or ')'")
            params.append(self.parse_param())
            while self._at(","):
                self._advance()
                params.append(self.parse_param())
        self._expect(")", "',' or ')'")
        body = self.parse_block()
        children: list[Child] = [type_ref, name_leaf] + params + [body]
        return AstNode("MethodDecl", self._span_from(start), children)

    def parse_param(self) -> AstNode:
        start = self.pos
        type_ref = self.parse_type()
        name = self._expect("Identifier", "parameter name")
        return AstNode("Param", self._span_from(start), [type_ref, self._leaf(name, "Identifier")])

    def _at_type_start(self) -> bool:
        tok = self._peek()
        return tok is not None and (tok.kind in BUILTIN_TYPES or tok.kind == "Identifier")

    def parse_type(self) -> AstNode:
        tok = self._peek()
        if tok is None or not (tok.kind in BUILTIN_TYPES or tok.kind == "Identifier"):
            self._fail("type")
        tok = self._advance()
        leaf = self._leaf(tok, "TypeName")
        return AstNode("TypeRef", tok.span, [leaf])

    def parse_block(self) -> AstNode:
        start = self.pos
        self._expect("{")
        stmts: list[Child] = []
        while not self._at("}"):
            if self._peek() is None:
                self._fail("statement or '}'")
            stmts.append(self.parse_stmt())
        self._expect("}")
        return AstNode("Block", self._span_from(start), stmts)

    def parse_stmt(self) -> Child:
        tok = self._peek()
        if tok is None:
            self._fail("statement")
        if tok.kind == "{":
            return self.parse_block()
        if tok.kind == "if":
            return self.parse_if()
        if tok.kind == "while":
            return self.parse_while()
        if tok.kind == "for":
            return self.parse_for()
        if tok.kind == "return":
            return self.parse_return()
        if self._at_var_decl_start():
            return self.parse_var_decl()
        return self.parse_expr_stmt()

    def _at_var_decl_start(self) -> bool:
        tok = self._peek()
        if tok is None:
            return False
        if tok.kind in BUILTIN_TYPES:
            return True
        # "Name Name" is a declaration; "Name = ..." etc. is an expression.
        if tok.kind == "Identifier":
            after = self._peek(1)
            return after is not None and after.kind == "Identifier"
        return False

    def parse_var_decl(self) -> AstNode:
        start = self.pos
        type_ref = self.parse_type()
        name = self._expect("Identifier", "variable name")
        init = None
        if self._at("="):
            self._advance()
            init = self.parse_expr()
        self._expect(";")
        children: list[Child] = [type_ref, self._leaf(name, "Identifier")]
        if init is not None:
            children.append(init)
        return AstNode("VarDecl", self._span_from(start), children)

    def parse_if(self) -> AstNode:
        start = self.pos
        self._expect("if")
        self._expect("(")
        cond = self.parse_expr()
        self._expect(")")
        then_branch = self.parse_stmt()
        children: list[Child] = [cond, then_branch]
        if self._at("else"):
            self._advance()
            children.append(self.parse_stmt())
        return AstNode("If", self._span_from(start), children)

    def parse_while(self) -> AstNode:
        start = self.pos
        self._expect("while")
        self._expect("(")
        cond = self.parse_expr()
        self._expect(")")
        body = self.parse_stmt()
        return AstNode("While", self._span_from(start), [cond, body])

    def parse_for(self) -> AstNode:
        start = self.pos
        self._expect("for")
        self._expect("(")
        children: list[Child] = []
        if self._at(";"):
            self._advance()
        elif self._at_var_decl_start():
            children.append(self.parse_var_decl())
        else:
            children.append(self.parse_expr_stmt())
        if not self._at(";"):
            children.append(self.parse_expr())
        self._expect(";")
        if not self._at(")"):
            children.append(self.parse_expr())
        self._expect(")")
        children.append(self.parse_stmt())
        return AstNode("For", self._span_from(start), children)

    def parse_return(self) -> AstNode:
        start = self.pos
        self._expect("return")
        children: list[Child] = []
        if not self._at(";"):
            children.append(self.parse_expr())
        self._expect(";")
        return AstNode("Return", self._span_from(start), children)

    def parse_expr_stmt(self) -> AstNode:
        start = self.pos
        expr = self.parse_expr()
        self._expect(";")
        return AstNode("ExprStmt", self._span_from(start), [expr])

    # expressions, by precedence climbing ------------------------------

    def parse_expr(self) -> Child:
        return self.parse_assign()

    def parse_assign(self) -> Child:
        left = self.parse_or()
        if self._at("="):
            if not (isinstance(left, AstNode) and left.label in ("Name", "FieldAccess", "Index")):
                self._fail("assignable expression (name, field access, or index) before '='")
            self._advance()
            right = self.parse_assign()
            return self._binary_node("Assign", left, right)
        return left

    def _binary_level(self, sub, ops: tuple[str, ...], label_prefix: str = "BinExpr:") -> Child:
        left = sub()
        while True:
            tok = self._peek()
            if tok is None or tok.kind not in ops:
                return left
            op = self._advance()
            right = sub()
            left = self._binary_node(f"{label_prefix}{op.kind}", left, right)

    def _binary_node(self, label: str, left: Child, right: Child) -> AstNode:
        lspan, rspan = _span_of(left), _span_of(right)
        span = SourceSpan(lspan.start_line, lspan.start_col, rspan.end_line, rspan.end_col)
        return AstNode(label, span, [left, right])

    def parse_or(self) -> Child:
        return self._binary_level(self.parse_and, ("||",))

    def parse_and(self) -> Child:
        return self._binary_level(self.parse_equality, ("&&",))

    def parse_equality(self) -> Child:
        return self._binary_level(self.parse_relational, ("==", "!="))

    def parse_relational(self) -> Child:
        return self._binary_level(self.parse_additive, ("<", "<=", ">", ">="))

    def parse_additive(self) -> Child:
        return self._binary_level(self.parse_multiplicative, ("+", "-"))

    def parse_multiplicative(self) -> Child:
        return self._binary_level(self.parse_unary, ("*", "/", "%"))

    def parse_unary(self) -> Child:
        tok = self._peek()
        if tok is not None and tok.kind in ("!", "-"):
            op = self._advance()
            operand = self.parse_unary()
            ospan = _span_of(operand)
            span = SourceSpan(op.span.start_line, op.span.start_col, ospan.end_line, ospan.end_col)
            return AstNode(f"Unary:{op.kind}", span, [operand])
        return self.parse_postfix()

    def parse_postfix(self) -> Child:
        expr = self.parse_primary()
        while True:
            if self._at("("):
                self._advance()
                args: list[Child] = [expr]
                if not self._at(")"):
                    args.append(self.parse_expr())
                    while self._at(","):
                        self._advance()
                        args.append(self.parse_expr())
                close = self._expect(")", "',' or ')'")
                expr = self._postfix_node("Call", expr, args, close.span)
            elif self._at("."):
                self._advance()
                name = self._expect("Identifier", "field name")
                expr = self._postfix_node(
                    "FieldAccess", expr, [expr, self._leaf(name, "Identifier")], name.span
                )
            elif self._at("["):
                self._advance()
                index = self.parse_expr()
                close = self._expect("]")
                expr = self._postfix_node("Index", expr, [expr, index], close.span)
            else:
                return expr

    def _postfix_node(
        self, label: str, head: Child, children: list[Child], end: SourceSpan
    ) -> AstNode:
        hspan = _span_of(head)
        span = SourceSpan(hspan.start_line, hspan.start_col, end.end_line, end.end_col)
        return AstNode(label, span, children)

    def parse_primary(self) -> Child:
        tok = self._peek()
        if tok is None:
            self._fail("expression")
        if tok.kind == "Identifier":
            self._advance()
            leaf = self._leaf(tok, "Identifier")
            return AstNode("Name", tok.span, [leaf])
        if tok.kind in ("IntLit", "BoolLit", "StrLit"):
            self._advance()
            return self._leaf(tok, tok.kind)
        if tok.kind == "(":
            self._advance()
            inner = self.parse_expr()
            self._expect(")")
            return inner
        self._fail("expression")


# pretty printing ------------------------------------------------------

_STMT_LABELS = frozenset({"Block", "VarDecl", "If", "While", "For", "Return", "ExprStmt"})


def pretty_print(node: AstNode) -> str:
    """Render a parser-produced tree back to source text.

    Reparsing the output yields a structurally identical tree (labels and
    leaf texts; spans will differ). Composite subexpressions are emitted
    fully parenthesized, which keeps the rendering independent of operator
    precedence.
    """
    if node.label != "Program":
        raise ValueError("pretty_print expects a Program root")
    return "".join(_print_stmt(child, 0) for child in node.children)


def _indent(depth: int) -> str:
    return "    " * depth


def _print_stmt(item: Child, depth: int) -> str:
    pad = _indent(depth)
    if isinstance(item, LeafToken):
        raise ValueError("a leaf is not a statement")
    label = item.label
    ch = item.children
    if label == "ClassDecl":
        head = f"{pad}class {ch[0].text} {{\n"
        body = "".join(_print_stmt(m, depth + 1) for m in ch[1:])
        return head + body + f"{pad}}}\n"
    if label == "FieldDecl" or label == "VarDecl":
        text = f"{pad}{_print_expr(ch[0])} {ch[1].text}"
        if len(ch) == 3:
            text += f" = {_print_expr(ch[2])}"
        return text + ";\n"
    if label == "MethodDecl":
        params = ", ".join(_print_expr(p) for p in ch[2:-1])
        head = f"{pad}{_print_expr(ch[0])} {ch[1].text}({params}) "
        return head + _print_block(ch[-1], depth) + "\n"
    if label == "Block":
        return pad + _print_block(item, depth) + "\n"
    if label == "If":
        text = f"{pad}if ({_print_expr(ch[0])})\n" + _print_stmt(ch[1], depth + 1)
        if len(ch) == 3:
            text += f"{pad}else\n" + _print_stmt(ch[2], depth + 1)
        return text
    if label == "While":
        return f"{pad}while ({_print_expr(ch[0])})\n" + _print_stmt(ch[1], depth + 1)
    if label == "For":
        init, cond, update, body = _split_for_children(ch)
        init_text = _print_stmt(init, 0).strip() if init is not None else ";"
        cond_text = f" {_print_expr(cond)}" if cond is not None else ""
        update_text = f" {_print_expr(update)}" if update is not None else ""
        return f"{pad}for ({init_text}{cond_text};{update_text})\n" + _print_stmt(body, depth + 1)
    if label == "Return":
        return f"{pad}return {_print_expr(ch[0])};\n" if ch else f"{pad}return;\n"
    if label == "ExprStmt":
        return f"{pad}{_print_expr(ch[0])};\n"
    raise ValueError(f"not a statement label: {label}")


def _split_for_children(ch: list[Child]):
    body = ch[-1]
    head = list(ch[:-1])
    init = None
    if head and isinstance(head[0], AstNode) and head[0].label in ("VarDecl", "ExprStmt"):
        init = head.pop(0)
    cond = head[0] if head else None
    update = head[1] if len(head) > 1 else None
    return init, cond, update, body


def _print_block(block: AstNode, depth: int) -> str:
    if not block.children:
        return "{ }"
    inner = "".join(_print_stmt(s, depth + 1) for s in block.children)
    return "{\n" + inner + _indent(depth) + "}"


def _print_expr(item: Child) -> str:
    if isinstance(item, LeafToken):
        return item.text
    label = item.label
    ch = item.children
    if label == "Name" or label == "TypeRef":
        return ch[0].text
    if label == "Param":
        return f"{_print_expr(ch[0])} {ch[1].text}"
    if label == "Assign":
        return f"({_print_expr(ch[0])} = {_print_expr(ch[1])})"
    if label.startswith("BinExpr:"):
        op = label[len("BinExpr:") :]
        return f"({_print_expr(ch[0])} {op} {_print_expr(ch[1])})"
    if label.startswith("Unary:"):
        op = label[len("Unary:") :]
        return f"{op}({_print_expr(ch[0])})"
    if label == "Call":
        args = ", ".join(_print_expr(a) for a in ch[1:])
        return f"{_receiver(ch[0])}({args})"
    if label == "FieldAccess":
        return f"{_receiver(ch[0])}.{ch[1].text}"
    if label == "Index":
        return f"{_receiver(ch[0])}[{_print_expr(ch[1])}]"
    raise ValueError(f"not an expression label: {label}")


def _receiver(item: Child) -> str:
    # Postfix operators need a primary on the left; composites already
    # self-parenthesize, so only their output is reused directly.
    return _print_expr(item)


def ast_equal(a: Child, b: Child) -> bool:
    """Structural equality: labels, arity, and leaf kind/text. Spans ignored."""
    if isinstance(a, LeafToken) or isinstance(b, LeafToken):
        return (
            isinstance(a, LeafToken)
            and isinstance(b, LeafToken)
            and a.kind == b.kind
            and a.text == b.text
        )
    if a.label != b.label or len(a.children) != len(b.children):
        return False
    return all(ast_equal(x, y) for x, y in zip(a.children, b.children))
