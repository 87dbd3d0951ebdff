"""Plain-text catalog format for monoids, acts, equation systems and homs.

::

    monoid NAME
    elements L0 L1 ...
    identity LABEL
    mul
    <n rows of n labels>
    end

    act NAME over MONOIDNAME
    elements A0 ...
    action
    <m rows of n labels>
    end

    system NAME in ACTNAME
    vars V1 V2 ...
    eq VAR.MLABEL = @ALABEL
    end

    hom NAME : ACTNAME -> ACTNAME
    map A -> B
    end

``#`` starts a comment.  The constants of a parsed system are the subact
generated by the constants it mentions (the whole act if it mentions none).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import Act, ActHom, Monoid, generated_subact, validate_act, validate_monoid
from .equations import ConstTerm, EquationSystem, VarTerm
from .errors import ActError

_BAD_LABEL = re.compile(r"[\s.=@#]")


class CatalogError(ActError):
    def __init__(self, msg, line=None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


class CatalogSyntaxError(CatalogError):
    pass


class UnknownReference(CatalogError):
    def __init__(self, name, line):
        super().__init__(f"unknown reference {name!r}", line)
        self.name = name


class ValidationError(CatalogError):
    def __init__(self, block, cause, line=None):
        super().__init__(f"in block {block!r}: {cause}", line)
        self.block = block
        self.cause = cause


@dataclass
class CatalogDocument:
    monoids: dict[str, Monoid] = field(default_factory=dict)
    acts: dict[str, Act] = field(default_factory=dict)
    systems: dict[str, EquationSystem] = field(default_factory=dict)
    homs: dict[str, ActHom] = field(default_factory=dict)
    order: list[tuple[str, str]] = field(default_factory=list)

    def add_monoid(self, S: Monoid):
        self._add("monoid", S.name, S, self.monoids)

    def add_act(self, A: Act):
        if A.monoid.name not in self.monoids:
            self.add_monoid(A.monoid)
        self._add("act", A.name, A, self.acts)

    def add_system(self, name: str, sys: EquationSystem):
        self._add("system", name, sys, self.systems)

    def add_hom(self, name: str, h: ActHom):
        self._add("hom", name, h, self.homs)

    def _add(self, kind, name, obj, table):
        if name in table:
            raise CatalogError(f"duplicate {kind} name {name!r}")
        table[name] = obj
        self.order.append((kind, name))

    def get(self, kind: str, name: str):
        table = {"monoid": self.monoids, "act": self.acts, "system": self.systems, "hom": self.homs}[kind]
        try:
            return table[name]
        except KeyError:
            raise UnknownReference(name, None) from None


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _labels(tokens, no):
    for t in tokens:
        if _BAD_LABEL.search(t):
            raise CatalogSyntaxError(f"bad label {t!r}", no)
    return tokens


class _Reader:
    def __init__(self, text):
        self.items = list(_lines(text))
        self.pos = 0

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else (None, None)

    def take(self, keyword=None, block=None):
        if self.pos >= len(self.items):
            raise CatalogSyntaxError(f"unexpected end of input in block {block!r}", self.items[-1][0] if self.items else 1)
        no, toks = self.items[self.pos]
        if keyword is not None and toks[0] != keyword:
            raise CatalogSyntaxError(f"expected {keyword!r}, got {toks[0]!r}", no)
        self.pos += 1
        return no, toks


def _rows(rd, count, block, index):
    rows = []
    for _ in range(count):
        no, toks = rd.take(block=block)
        if toks[0] == "end":
            raise CatalogSyntaxError(f"table in {block!r} has too few rows", no)
        try:
            rows.append([index[t] for t in toks])
        except KeyError as e:
            raise CatalogSyntaxError(f"unknown label {e.args[0]!r} in table", no) from None
    return rows


def _end(rd, block):
    no, toks = rd.take(block=block)
    if toks != ["end"]:
        raise CatalogSyntaxError(f"expected 'end', got {' '.join(toks)!r}", no)


def _parse_monoid(rd, doc, no, toks):
    if len(toks) != 2:
        raise CatalogSyntaxError("expected 'monoid NAME'", no)
    name = toks[1]
    eno, etoks = rd.take("elements", name)
    labels = _labels(etoks[1:], eno)
    if not labels or len(set(labels)) != len(labels):
        raise ValidationError(name, "monoid labels must be nonempty and distinct", eno)
    index = {l: i for i, l in enumerate(labels)}
    ino, itoks = rd.take("identity", name)
    if len(itoks) != 2 or itoks[1] not in index:
        raise CatalogSyntaxError("bad identity line", ino)
    rd.take("mul", name)
    rows = _rows(rd, len(labels), name, index)
    _end(rd, name)
    try:
        S = validate_monoid(rows, index[itoks[1]], labels, name)
    except ActError as e:
        raise ValidationError(name, e, no) from e
    doc.add_monoid(S)


def _parse_act(rd, doc, no, toks):
    if len(toks) != 4 or toks[2] != "over":
        raise CatalogSyntaxError("expected 'act NAME over MONOID'", no)
    name, mname = toks[1], toks[3]
    if mname not in doc.monoids:
        raise UnknownReference(mname, no)
    S = doc.monoids[mname]
    eno, etoks = rd.take("elements", name)
    labels = _labels(etoks[1:], eno)
    if not labels or len(set(labels)) != len(labels):
        raise ValidationError(name, "act labels must be nonempty and distinct", eno)
    index = {l: i for i, l in enumerate(labels)}
    rd.take("action", name)
    rows = _rows(rd, len(labels), name, index)
    _end(rd, name)
    try:
        A = validate_act(S, rows, labels, name)
    except ActError as e:
        raise ValidationError(name, e, no) from e
    doc.add_act(A)


def _parse_term(text, A, var_index, no):
    text = text.strip()
    if text.startswith("@"):
        label = text[1:].strip()
        if label not in A._index:
            raise CatalogSyntaxError(f"unknown constant {label!r}", no)
        return ConstTerm(A.index(label))
    var, dot, scalar = text.partition(".")
    var, scalar = var.strip(), scalar.strip()
    if not dot or var not in var_index:
        raise CatalogSyntaxError(f"bad term {text!r}", no)
    if scalar not in A.monoid._index:
        raise CatalogSyntaxError(f"unknown monoid element {scalar!r}", no)
    return VarTerm(var_index[var], A.monoid.index(scalar))


def _parse_system(rd, doc, no, toks):
    if len(toks) != 4 or toks[2] != "in":
        raise CatalogSyntaxError("expected 'system NAME in ACT'", no)
    name, aname = toks[1], toks[3]
    if aname not in doc.acts:
        raise UnknownReference(aname, no)
    A = doc.acts[aname]
    vno, vtoks = rd.take("vars", name)
    names = _labels(vtoks[1:], vno)
    if len(set(names)) != len(names):
        raise ValidationError(name, "variable names must be distinct", vno)
    var_index = {v: i for i, v in enumerate(names)}
    eqs = []
    while True:
        eno, etoks = rd.take(block=name)
        if etoks == ["end"]:
            break
        if etoks[0] != "eq":
            raise CatalogSyntaxError(f"expected 'eq' or 'end', got {etoks[0]!r}", eno)
        body = " ".join(etoks[1:])
        sides = body.split("=")
        if len(sides) != 2:
            raise CatalogSyntaxError("equation needs exactly one '='", eno)
        eqs.append(tuple(_parse_term(s, A, var_index, eno) for s in sides))
    consts = sorted({t.elem for eq in eqs for t in eq if isinstance(t, ConstTerm)})
    sub = generated_subact(A, consts) if consts else A.whole()
    try:
        sys = EquationSystem(len(names), sub, tuple(eqs), tuple(names))
    except ActError as e:
        raise ValidationError(name, e, no) from e
    doc.add_system(name, sys)


def _parse_hom(rd, doc, no, toks):
    if len(toks) != 6 or toks[2] != ":" or toks[4] != "->":
        raise CatalogSyntaxError("expected 'hom NAME : ACT -> ACT'", no)
    name, sname, tname = toks[1], toks[3], toks[5]
    for n in (sname, tname):
        if n not in doc.acts:
            raise UnknownReference(n, no)
    A, B = doc.acts[sname], doc.acts[tname]
    m = {}
    while True:
        mno, mtoks = rd.take(block=name)
        if mtoks == ["end"]:
            break
        if len(mtoks) != 4 or mtoks[0] != "map" or mtoks[2] != "->":
            raise CatalogSyntaxError("expected 'map A -> B'", mno)
        if mtoks[1] not in A._index or mtoks[3] not in B._index:
            raise CatalogSyntaxError("unknown element in map line", mno)
        a = A.index(mtoks[1])
        if a in m:
            raise ValidationError(name, f"{mtoks[1]} mapped twice", mno)
        m[a] = B.index(mtoks[3])
    if len(m) != A.size:
        raise ValidationError(name, "map must list every source element", no)
    h = ActHom(A, B, tuple(m[a] for a in range(A.size)))
    if A.monoid.key != B.monoid.key:
        raise ValidationError(name, "acts are over different monoids", no)
    if not h.is_hom():
        raise ValidationError(name, "map does not preserve the action", no)
    doc.add_hom(name, h)


_PARSERS = {"monoid": _parse_monoid, "act": _parse_act, "system": _parse_system, "hom": _parse_hom}


def parse_catalog(text: str) -> CatalogDocument:
    doc = CatalogDocument()
    rd = _Reader(text)
    while rd.pos < len(rd.items):
        no, toks = rd.take()
        parser = _PARSERS.get(toks[0])
        if parser is None:
            raise CatalogSyntaxError(f"unknown block keyword {toks[0]!r}", no)
        try:
            parser(rd, doc, no, toks)
        except CatalogError:
            raise
        except ActError as e:
            raise ValidationError(toks[1] if len(toks) > 1 else toks[0], e, no) from e
    return doc


def monoid_text(S: Monoid) -> list[str]:
    out = [f"monoid {S.name}", "elements " + " ".join(S.elements), f"identity {S.elements[S.identity]}", "mul"]
    out += [" ".join(S.elements[x] for x in row) for row in S.mul]
    return out + ["end"]


def act_text(A: Act) -> list[str]:
    out = [f"act {A.name} over {A.monoid.name}", "elements " + " ".join(A.elements), "action"]
    out += [" ".join(A.elements[x] for x in row) for row in A.action]
    return out + ["end"]


def system_text(name: str, sys: EquationSystem, act_name: str | None = None) -> list[str]:
    out = [f"system {name} in {act_name or sys.act.name}", " ".join(["vars", *sys.names()])]
    out += [f"eq {line}" for line in sys.format()]
    return out + ["end"]


def hom_text(name: str, h: ActHom) -> list[str]:
    out = [f"hom {name} : {h.source.name} -> {h.target.name}"]
    out += [f"map {h.source.elements[a]} -> {h.target.elements[v]}" for a, v in enumerate(h.map)]
    return out + ["end"]


def serialize_catalog(doc: CatalogDocument) -> str:
    blocks = []
    for kind, name in doc.order:
        if kind == "monoid":
            blocks.append(monoid_text(doc.monoids[name]))
        elif kind == "act":
            blocks.append(act_text(doc.acts[name]))
        elif kind == "system":
            blocks.append(system_text(name, doc.systems[name]))
        else:
            blocks.append(hom_text(name, doc.homs[name]))
    return "\n".join("\n".join(b) + "\n" for b in blocks)


def load_catalog(path) -> CatalogDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_catalog(fh.read())


def document_for(acts=(), monoids=()) -> CatalogDocument:
    doc = CatalogDocument()
    for S in monoids:
        if S.name not in doc.monoids:
            doc.add_monoid(S)
    for A in acts:
        if A.monoid.name not in doc.monoids:
            doc.add_monoid(A.monoid)
        doc.add_act(A)
    return doc
