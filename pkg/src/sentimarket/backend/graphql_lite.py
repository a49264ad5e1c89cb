"""Minimal GraphQL execution for this service's schema.

No GraphQL library is available in the target environment, so this
module implements the slice of the query language the platform needs:
single query/mutation operations with variables, arguments (including
input objects and lists), aliases, nested selection sets, __typename,
and typed coercion with stable error codes. Fragments, directives,
subscriptions, and introspection are deliberately out of scope; every
client of this API lives in this repository.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)


class GraphQLError(Exception):
    """Execution or validation failure surfaced in the response envelope."""

    def __init__(self, message: str, code: str = "BAD_USER_INPUT"):
        super().__init__(message)
        self.message = message
        self.code = code

    def to_json(self) -> dict:
        return {"message": self.message, "extensions": {"code": self.code}}


# --- type system ------------------------------------------------------------


@dataclass(frozen=True)
class ScalarType:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class NonNull:
    of_type: "GraphQLType"

    def __str__(self) -> str:
        return f"{self.of_type}!"


@dataclass(frozen=True)
class ListType:
    of_type: "GraphQLType"

    def __str__(self) -> str:
        return f"[{self.of_type}]"


@dataclass(frozen=True)
class InputField:
    type: "GraphQLType"


@dataclass(frozen=True)
class InputObjectType:
    name: str
    fields: dict[str, InputField]

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Argument:
    type: "GraphQLType"
    default: object = None
    has_default: bool = False


@dataclass(frozen=True)
class Field:
    type: "GraphQLType"
    args: dict[str, Argument] = field(default_factory=dict)
    resolver: object = None  # callable(context, args) -> value


@dataclass(frozen=True)
class ObjectType:
    name: str
    fields: dict[str, Field]

    def __str__(self) -> str:
        return self.name


GraphQLType = ScalarType | NonNull | ListType | InputObjectType | ObjectType

INT = ScalarType("Int")
FLOAT = ScalarType("Float")
STRING = ScalarType("String")
BOOLEAN = ScalarType("Boolean")


@dataclass(frozen=True)
class Schema:
    query: ObjectType
    mutation: ObjectType
    input_types: tuple[InputObjectType, ...] = ()
    object_types: tuple[ObjectType, ...] = ()


# --- document lexer ---------------------------------------------------------

_PUNCT = set("!$():=[]{}")


@dataclass
class _Token:
    kind: str  # punct | name | int | float | string | eof
    value: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c in " \t\r\n,":
            i += 1
            continue
        if c == "#":
            while i < n and src[i] != "\n":
                i += 1
            continue
        if c in _PUNCT:
            tokens.append(_Token("punct", c, i))
            i += 1
            continue
        if c == '"':
            j = i + 1
            out = []
            while j < n:
                ch = src[j]
                if ch == "\\":
                    if j + 1 >= n:
                        raise GraphQLError("unterminated string", "GRAPHQL_PARSE_FAILED")
                    esc = src[j + 1]
                    mapping = {'"': '"', "\\": "\\", "/": "/", "b": "\b",
                               "f": "\f", "n": "\n", "r": "\r", "t": "\t"}
                    if esc == "u":
                        out.append(chr(int(src[j + 2:j + 6], 16)))
                        j += 6
                        continue
                    if esc not in mapping:
                        raise GraphQLError(f"bad escape \\{esc}", "GRAPHQL_PARSE_FAILED")
                    out.append(mapping[esc])
                    j += 2
                    continue
                if ch == '"':
                    break
                out.append(ch)
                j += 1
            else:
                raise GraphQLError("unterminated string", "GRAPHQL_PARSE_FAILED")
            tokens.append(_Token("string", "".join(out), i))
            i = j + 1
            continue
        if c.isdigit() or c == "-":
            j = i + 1
            is_float = False
            while j < n and (src[j].isdigit() or src[j] in ".eE+-"):
                if src[j] in ".eE":
                    is_float = True
                j += 1
            text = src[i:j]
            tokens.append(_Token("float" if is_float else "int", text, i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i + 1
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(_Token("name", src[i:j], i))
            i = j
            continue
        raise GraphQLError(f"unexpected character {c!r} at {i}", "GRAPHQL_PARSE_FAILED")
    tokens.append(_Token("eof", "", n))
    return tokens


# --- document parser --------------------------------------------------------


@dataclass
class _FieldNode:
    name: str
    alias: str
    args: dict[str, object]
    selections: list["_FieldNode"] | None


@dataclass
class _VarRef:
    name: str


@dataclass
class _VarDef:
    name: str
    type_text: str
    default: object
    has_default: bool


@dataclass
class _Operation:
    kind: str  # query | mutation
    name: str | None
    variables: list[_VarDef]
    selections: list[_FieldNode]


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, value: str | None = None) -> _Token:
        tok = self.next()
        if tok.kind != kind or (value is not None and tok.value != value):
            want = value or kind
            raise GraphQLError(f"expected {want!r}, got {tok.value!r}", "GRAPHQL_PARSE_FAILED")
        return tok

    def parse_document(self) -> list[_Operation]:
        ops = []
        while self.peek().kind != "eof":
            ops.append(self.parse_operation())
        if not ops:
            raise GraphQLError("empty document", "GRAPHQL_PARSE_FAILED")
        return ops

    def parse_operation(self) -> _Operation:
        kind, name, variables = "query", None, []
        tok = self.peek()
        if tok.kind == "name":
            if tok.value not in ("query", "mutation"):
                raise GraphQLError(f"unsupported operation {tok.value!r}", "GRAPHQL_PARSE_FAILED")
            kind = self.next().value
            if self.peek().kind == "name":
                name = self.next().value
            if self.peek().kind == "punct" and self.peek().value == "(":
                variables = self.parse_variable_defs()
        return _Operation(kind, name, variables, self.parse_selection_set())

    def parse_variable_defs(self) -> list[_VarDef]:
        self.expect("punct", "(")
        defs = []
        while not (self.peek().kind == "punct" and self.peek().value == ")"):
            self.expect("punct", "$")
            var_name = self.expect("name").value
            self.expect("punct", ":")
            type_text = self.parse_type_text()
            default, has_default = None, False
            if self.peek().kind == "punct" and self.peek().value == "=":
                self.next()
                default, has_default = self.parse_value(const=True), True
            defs.append(_VarDef(var_name, type_text, default, has_default))
        self.next()
        return defs

    def parse_type_text(self) -> str:
        tok = self.next()
        if tok.kind == "punct" and tok.value == "[":
            inner = self.parse_type_text()
            self.expect("punct", "]")
            text = f"[{inner}]"
        elif tok.kind == "name":
            text = tok.value
        else:
            raise GraphQLError(f"bad type: {tok.value!r}", "GRAPHQL_PARSE_FAILED")
        if self.peek().kind == "punct" and self.peek().value == "!":
            self.next()
            text += "!"
        return text

    def parse_selection_set(self) -> list[_FieldNode]:
        self.expect("punct", "{")
        fields = []
        while not (self.peek().kind == "punct" and self.peek().value == "}"):
            fields.append(self.parse_field())
        self.next()
        if not fields:
            raise GraphQLError("empty selection set", "GRAPHQL_PARSE_FAILED")
        return fields

    def parse_field(self) -> _FieldNode:
        name = self.expect("name").value
        alias = name
        if self.peek().kind == "punct" and self.peek().value == ":":
            self.next()
            alias, name = name, self.expect("name").value
        args: dict[str, object] = {}
        if self.peek().kind == "punct" and self.peek().value == "(":
            self.next()
            while not (self.peek().kind == "punct" and self.peek().value == ")"):
                arg_name = self.expect("name").value
                self.expect("punct", ":")
                args[arg_name] = self.parse_value()
            self.next()
        selections = None
        if self.peek().kind == "punct" and self.peek().value == "{":
            selections = self.parse_selection_set()
        return _FieldNode(name, alias, args, selections)

    def parse_value(self, const: bool = False) -> object:
        tok = self.next()
        if tok.kind == "punct" and tok.value == "$":
            if const:
                raise GraphQLError("variables not allowed here", "GRAPHQL_PARSE_FAILED")
            return _VarRef(self.expect("name").value)
        if tok.kind == "int":
            return int(tok.value)
        if tok.kind == "float":
            return float(tok.value)
        if tok.kind == "string":
            return tok.value
        if tok.kind == "name":
            if tok.value == "true":
                return True
            if tok.value == "false":
                return False
            if tok.value == "null":
                return None
            raise GraphQLError(f"enum values unsupported: {tok.value!r}", "GRAPHQL_PARSE_FAILED")
        if tok.kind == "punct" and tok.value == "[":
            items = []
            while not (self.peek().kind == "punct" and self.peek().value == "]"):
                items.append(self.parse_value(const))
            self.next()
            return items
        if tok.kind == "punct" and tok.value == "{":
            obj = {}
            while not (self.peek().kind == "punct" and self.peek().value == "}"):
                key = self.expect("name").value
                self.expect("punct", ":")
                obj[key] = self.parse_value(const)
            self.next()
            return obj
        raise GraphQLError(f"unexpected value token {tok.value!r}", "GRAPHQL_PARSE_FAILED")


# --- coercion ---------------------------------------------------------------


def _coerce(value: object, gtype: GraphQLType, where: str) -> object:
    if isinstance(gtype, NonNull):
        if value is None:
            raise GraphQLError(f"{where}: must not be null")
        return _coerce(value, gtype.of_type, where)
    if value is None:
        return None
    if isinstance(gtype, ListType):
        if not isinstance(value, list):
            raise GraphQLError(f"{where}: expected a list")
        return [_coerce(v, gtype.of_type, f"{where}[{i}]") for i, v in enumerate(value)]
    if isinstance(gtype, InputObjectType):
        if not isinstance(value, dict):
            raise GraphQLError(f"{where}: expected {gtype.name} object")
        unknown = set(value) - set(gtype.fields)
        if unknown:
            raise GraphQLError(f"{where}: unknown field(s) {sorted(unknown)}")
        out = {}
        for fname, fdef in gtype.fields.items():
            if fname in value:
                out[fname] = _coerce(value[fname], fdef.type, f"{where}.{fname}")
            elif isinstance(fdef.type, NonNull):
                raise GraphQLError(f"{where}.{fname}: required field missing")
            else:
                out[fname] = None
        return out
    if isinstance(gtype, ScalarType):
        if gtype.name == "Int":
            if isinstance(value, bool) or not isinstance(value, int):
                raise GraphQLError(f"{where}: expected Int")
            return value
        if gtype.name == "Float":
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise GraphQLError(f"{where}: expected Float")
            return float(value)
        if gtype.name == "String":
            if not isinstance(value, str):
                raise GraphQLError(f"{where}: expected String")
            return value
        if gtype.name == "Boolean":
            if not isinstance(value, bool):
                raise GraphQLError(f"{where}: expected Boolean")
            return value
    raise GraphQLError(f"{where}: cannot coerce into {gtype}")


def _parse_type_ref(text: str, schema: Schema) -> GraphQLType:
    if text.endswith("!"):
        return NonNull(_parse_type_ref(text[:-1], schema))
    if text.startswith("[") and text.endswith("]"):
        return ListType(_parse_type_ref(text[1:-1], schema))
    builtin = {"Int": INT, "Float": FLOAT, "String": STRING, "Boolean": BOOLEAN}
    if text in builtin:
        return builtin[text]
    for itype in schema.input_types:
        if itype.name == text:
            return itype
    raise GraphQLError(f"unknown type {text!r} in variable definition", "GRAPHQL_PARSE_FAILED")


# --- execution --------------------------------------------------------------


def _resolve_arg_values(raw_args: dict[str, object], variables: dict[str, object]) -> dict:
    def substitute(value: object) -> object:
        if isinstance(value, _VarRef):
            if value.name not in variables:
                raise GraphQLError(f"variable ${value.name} is not defined")
            return variables[value.name]
        if isinstance(value, list):
            return [substitute(v) for v in value]
        if isinstance(value, dict):
            return {k: substitute(v) for k, v in value.items()}
        return value

    return {k: substitute(v) for k, v in raw_args.items()}


def _complete_value(value: object, gtype: GraphQLType, node: _FieldNode, path: str) -> object:
    if isinstance(gtype, NonNull):
        completed = _complete_value(value, gtype.of_type, node, path)
        if completed is None:
            raise GraphQLError(f"{path}: non-null field resolved to null", "INTERNAL")
        return completed
    if value is None:
        return None
    if isinstance(gtype, ListType):
        if not isinstance(value, (list, tuple)):
            raise GraphQLError(f"{path}: resolver did not return a list", "INTERNAL")
        return [_complete_value(v, gtype.of_type, node, f"{path}[{i}]") for i, v in enumerate(value)]
    if isinstance(gtype, ObjectType):
        if node.selections is None:
            raise GraphQLError(f"{path}: field of type {gtype.name} needs a selection set")
        return _project(value, gtype, node.selections, path)
    # scalar leaf
    if node.selections is not None:
        raise GraphQLError(f"{path}: scalar field cannot have a selection set")
    return value


def _project(value: object, gtype: ObjectType, selections: list[_FieldNode], path: str) -> dict:
    out = {}
    for sub in selections:
        if sub.name == "__typename":
            out[sub.alias] = gtype.name
            continue
        if sub.name not in gtype.fields:
            raise GraphQLError(f"{path}: unknown field {sub.name!r} on {gtype.name}")
        if sub.args:
            raise GraphQLError(f"{path}.{sub.name}: nested field arguments unsupported")
        fdef = gtype.fields[sub.name]
        if isinstance(value, dict):
            raw = value.get(sub.name)
        else:
            raw = getattr(value, sub.name, None)
        out[sub.alias] = _complete_value(raw, fdef.type, sub, f"{path}.{sub.name}")
    return out


def execute(
    schema: Schema,
    query: str,
    variables: dict[str, object] | None = None,
    operation_name: str | None = None,
    context: object = None,
) -> dict:
    """Run one operation and return the standard response envelope."""
    errors: list[dict] = []
    try:
        ops = _Parser(query).parse_document()
        if operation_name is not None:
            matching = [op for op in ops if op.name == operation_name]
            if not matching:
                raise GraphQLError(f"unknown operation {operation_name!r}", "GRAPHQL_PARSE_FAILED")
            op = matching[0]
        elif len(ops) == 1:
            op = ops[0]
        else:
            raise GraphQLError("operationName required for multi-operation documents",
                               "GRAPHQL_PARSE_FAILED")

        coerced_vars: dict[str, object] = {}
        supplied = variables or {}
        for var in op.variables:
            vtype = _parse_type_ref(var.type_text, schema)
            if var.name in supplied:
                coerced_vars[var.name] = _coerce(supplied[var.name], vtype, f"${var.name}")
            elif var.has_default:
                coerced_vars[var.name] = _coerce(var.default, vtype, f"${var.name}")
            elif isinstance(vtype, NonNull):
                raise GraphQLError(f"missing required variable ${var.name}")
            else:
                coerced_vars[var.name] = None

        root = schema.query if op.kind == "query" else schema.mutation
    except GraphQLError as exc:
        return {"errors": [exc.to_json()]}

    data: dict[str, object] = {}
    for node in op.selections:
        path = node.alias
        try:
            if node.name == "__typename":
                data[node.alias] = root.name
                continue
            if node.name not in root.fields:
                raise GraphQLError(f"unknown field {node.name!r} on {root.name}")
            fdef = root.fields[node.name]
            raw_args = _resolve_arg_values(node.args, coerced_vars)
            unknown = set(raw_args) - set(fdef.args)
            if unknown:
                raise GraphQLError(f"{path}: unknown argument(s) {sorted(unknown)}")
            args = {}
            for arg_name, arg_def in fdef.args.items():
                if arg_name in raw_args:
                    args[arg_name] = _coerce(raw_args[arg_name], arg_def.type, f"{path}.{arg_name}")
                elif arg_def.has_default:
                    args[arg_name] = arg_def.default
                elif isinstance(arg_def.type, NonNull):
                    raise GraphQLError(f"{path}: missing required argument {arg_name!r}")
                else:
                    args[arg_name] = None
            value = fdef.resolver(context, args)  # type: ignore[operator]
            data[node.alias] = _complete_value(value, fdef.type, node, path)
        except GraphQLError as exc:
            errors.append({**exc.to_json(), "path": [path]})
            data[node.alias] = None
        except Exception:  # resolver bug: mask details, keep the envelope valid
            logger.exception("resolver failure at %s", path)
            errors.append({"message": "internal error",
                           "extensions": {"code": "INTERNAL"}, "path": [path]})
            data[node.alias] = None

    response: dict[str, object] = {"data": data}
    if errors:
        response["errors"] = errors
    return response


# --- SDL emission -----------------------------------------------------------


def emit_sdl(schema: Schema) -> str:
    """Deterministic schema document; the committed file must equal this."""
    blocks: list[str] = []
    for itype in schema.input_types:
        lines = [f"input {itype.name} {{"]
        lines += [f"  {name}: {fdef.type}" for name, fdef in itype.fields.items()]
        lines.append("}")
        blocks.append("\n".join(lines))
    for otype in schema.object_types + (schema.query, schema.mutation):
        lines = [f"type {otype.name} {{"]
        for name, fdef in otype.fields.items():
            if fdef.args:
                args = ", ".join(
                    f"{arg_name}: {arg.type}" + (f" = {json.dumps(arg.default)}" if arg.has_default else "")
                    for arg_name, arg in fdef.args.items()
                )
                lines.append(f"  {name}({args}): {fdef.type}")
            else:
                lines.append(f"  {name}: {fdef.type}")
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
