"""Formula language, pool DSL, closure and coding.

A pool is a finite universe of sentences.  Statement ``i`` (0-based) gets code
``i + 1``; code 0 is always a spare non-sentence code.  Self reference is
syntactic: ``#name`` is replaced by the numeral of ``name``'s code, so the
truth-teller literally is ``Tr(n)`` for its own code ``n``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

DEFAULT_CAP = 4096


class PoolError(Exception):
    """Raised for malformed pools (syntax, names, sizes)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


# --------------------------------------------------------------------- terms


class Term:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Numeral(Term):
    n: int


@dataclass(frozen=True, slots=True)
class SelfCode(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Var(Term):
    v: str


@dataclass(frozen=True, slots=True)
class Succ(Term):
    t: Term


@dataclass(frozen=True, slots=True)
class Plus(Term):
    a: Term
    b: Term


# ------------------------------------------------------------------ formulas


class Formula:
    __slots__ = ()


def _cached_hash(cls):
    # formulas are hashed constantly (pool lookups), so cache the hash
    orig_init = cls.__init__

    def __init__(self, *args, **kwargs):
        orig_init(self, *args, **kwargs)
        object.__setattr__(self, "_h", hash(tuple(getattr(self, f) for f in cls._fields) + (cls.__name__,)))

    def __hash__(self):
        return self._h

    cls.__init__ = __init__
    cls.__hash__ = __hash__
    return cls


@_cached_hash
@dataclass(frozen=True, eq=True)
class ArithAtom(Formula):
    rel: str  # one of = != < <=
    lhs: Term
    rhs: Term
    _fields = ("rel", "lhs", "rhs")


@_cached_hash
@dataclass(frozen=True, eq=True)
class SentAtom(Formula):
    t: Term
    _fields = ("t",)


@_cached_hash
@dataclass(frozen=True, eq=True)
class TrAtom(Formula):
    t: Term
    _fields = ("t",)


@_cached_hash
@dataclass(frozen=True, eq=True)
class Not(Formula):
    f: Formula
    _fields = ("f",)


@_cached_hash
@dataclass(frozen=True, eq=True)
class And(Formula):
    a: Formula
    b: Formula
    _fields = ("a", "b")


@_cached_hash
@dataclass(frozen=True, eq=True)
class Or(Formula):
    a: Formula
    b: Formula
    _fields = ("a", "b")


@_cached_hash
@dataclass(frozen=True, eq=True)
class ForAll(Formula):
    v: str
    body: Formula
    _fields = ("v", "body")


@_cached_hash
@dataclass(frozen=True, eq=True)
class Exists(Formula):
    v: str
    body: Formula
    _fields = ("v", "body")


RELS = ("=", "!=", "<", "<=")
Quantified = (ForAll, Exists)


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Or(Not(a), b), Or(Not(b), a))


def is_arith_literal(f: Formula) -> bool:
    """Tr-free atoms and their single negations (the True0 shapes)."""
    if isinstance(f, Not):
        f = f.f
    return isinstance(f, (ArithAtom, SentAtom))


def has_tr(f: Formula) -> bool:
    if isinstance(f, TrAtom):
        return True
    if isinstance(f, (ArithAtom, SentAtom)):
        return False
    if isinstance(f, Not):
        return has_tr(f.f)
    if isinstance(f, (And, Or)):
        return has_tr(f.a) or has_tr(f.b)
    return has_tr(f.body)


def is_tr_positive(f: Formula, negs: int = 0) -> bool:
    """Every Tr atom sits under an even number of negations."""
    if isinstance(f, TrAtom):
        return negs % 2 == 0
    if isinstance(f, (ArithAtom, SentAtom)):
        return True
    if isinstance(f, Not):
        return is_tr_positive(f.f, negs + 1)
    if isinstance(f, (And, Or)):
        return is_tr_positive(f.a, negs) and is_tr_positive(f.b, negs)
    return is_tr_positive(f.body, negs)


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.v}
    if isinstance(t, Succ):
        return term_vars(t.t)
    if isinstance(t, Plus):
        return term_vars(t.a) | term_vars(t.b)
    return set()


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, ArithAtom):
        return term_vars(f.lhs) | term_vars(f.rhs)
    if isinstance(f, (SentAtom, TrAtom)):
        return term_vars(f.t)
    if isinstance(f, Not):
        return free_vars(f.f)
    if isinstance(f, (And, Or)):
        return free_vars(f.a) | free_vars(f.b)
    return free_vars(f.body) - {f.v}


def subst_term(t: Term, v: str, d: int) -> Term:
    if isinstance(t, Var):
        return Numeral(d) if t.v == v else t
    if isinstance(t, Succ):
        return Succ(subst_term(t.t, v, d))
    if isinstance(t, Plus):
        return Plus(subst_term(t.a, v, d), subst_term(t.b, v, d))
    return t


def subst(f: Formula, v: str, d: int) -> Formula:
    """Replace free occurrences of variable v by the numeral d."""
    if isinstance(f, ArithAtom):
        return ArithAtom(f.rel, subst_term(f.lhs, v, d), subst_term(f.rhs, v, d))
    if isinstance(f, SentAtom):
        return SentAtom(subst_term(f.t, v, d))
    if isinstance(f, TrAtom):
        return TrAtom(subst_term(f.t, v, d))
    if isinstance(f, Not):
        return Not(subst(f.f, v, d))
    if isinstance(f, And):
        return And(subst(f.a, v, d), subst(f.b, v, d))
    if isinstance(f, Or):
        return Or(subst(f.a, v, d), subst(f.b, v, d))
    if f.v == v:
        return f
    return type(f)(f.v, subst(f.body, v, d))


def instances(f: Formula, qrange: int) -> list[Formula]:
    """Numeral instances body(d) for d < qrange of a quantified formula."""
    return [subst(f.body, f.v, d) for d in range(qrange)]


def resolve_selfcodes(f, codes: dict[str, int]):
    if isinstance(f, SelfCode):
        return Numeral(codes[f.name])
    if isinstance(f, (Numeral, Var)):
        return f
    if isinstance(f, Succ):
        return Succ(resolve_selfcodes(f.t, codes))
    if isinstance(f, Plus):
        return Plus(resolve_selfcodes(f.a, codes), resolve_selfcodes(f.b, codes))
    if isinstance(f, ArithAtom):
        return ArithAtom(f.rel, resolve_selfcodes(f.lhs, codes), resolve_selfcodes(f.rhs, codes))
    if isinstance(f, SentAtom):
        return SentAtom(resolve_selfcodes(f.t, codes))
    if isinstance(f, TrAtom):
        return TrAtom(resolve_selfcodes(f.t, codes))
    if isinstance(f, Not):
        return Not(resolve_selfcodes(f.f, codes))
    if isinstance(f, (And, Or)):
        return type(f)(resolve_selfcodes(f.a, codes), resolve_selfcodes(f.b, codes))
    return type(f)(f.v, resolve_selfcodes(f.body, codes))


def selfcode_names(f) -> set[str]:
    if isinstance(f, SelfCode):
        return {f.name}
    if isinstance(f, (Numeral, Var)):
        return set()
    if isinstance(f, Succ):
        return selfcode_names(f.t)
    if isinstance(f, Plus):
        return selfcode_names(f.a) | selfcode_names(f.b)
    if isinstance(f, ArithAtom):
        return selfcode_names(f.lhs) | selfcode_names(f.rhs)
    if isinstance(f, (SentAtom, TrAtom)):
        return selfcode_names(f.t)
    if isinstance(f, Not):
        return selfcode_names(f.f)
    if isinstance(f, (And, Or)):
        return selfcode_names(f.a) | selfcode_names(f.b)
    return selfcode_names(f.body)


# ------------------------------------------------------------ pretty printing


def term_text(t: Term) -> str:
    if isinstance(t, Numeral):
        return str(t.n)
    if isinstance(t, SelfCode):
        return "#" + t.name
    if isinstance(t, Var):
        return t.v
    if isinstance(t, Succ):
        return f"succ({term_text(t.t)})"
    rhs = t.b
    if isinstance(rhs, Plus):
        # the grammar is left associative; right nesting needs succ-free rewriting
        raise ValueError("right-nested sums are not printable")
    return f"{term_text(t.a)} + {term_text(rhs)}"


def to_text(f: Formula) -> str:
    """Render in pool DSL syntax; parse_formula(to_text(f)) == f."""
    if isinstance(f, ArithAtom):
        return f"{term_text(f.lhs)} {f.rel} {term_text(f.rhs)}"
    if isinstance(f, SentAtom):
        return f"Sent({term_text(f.t)})"
    if isinstance(f, TrAtom):
        return f"Tr({term_text(f.t)})"
    if isinstance(f, Not):
        inner = to_text(f.f)
        if isinstance(f.f, ArithAtom):
            inner = f"({inner})"
        return "not " + inner
    if isinstance(f, And):
        return f"({to_text(f.a)} and {to_text(f.b)})"
    if isinstance(f, Or):
        return f"({to_text(f.a)} or {to_text(f.b)})"
    q = "forall" if isinstance(f, ForAll) else "exists"
    return f"({q} {f.v} . {to_text(f.body)})"


# -------------------------------------------------------------------- parser

_GRAMMAR = r"""
start: item*
?item: "domain" INT ";"                 -> domain
     | "range" INT ";"                  -> qrange
     | "sentence" NAME ":=" formula ";" -> sentence
     | "close" NAME ";"                 -> close
     | "witness" formula ";"            -> witness

?formula: iff
?iff: imp
    | imp "<->" imp                     -> iff
?imp: disj
    | disj "->" imp                     -> imp
?disj: conj
     | disj "or" conj                   -> or_
?conj: unary
     | conj "and" unary                 -> and_
?unary: "not" unary                     -> not_
      | QUANT NAME "." formula          -> quant
      | atom
?atom: "Tr" "(" term ")"                -> tr
     | "Sent" "(" term ")"              -> sent
     | term REL term                    -> rel
     | "@" NAME                         -> inline
     | "(" formula ")"

?term: primary
     | term "+" primary                 -> plus
?primary: INT                           -> num
        | "#" NAME                      -> selfcode
        | "succ" "(" term ")"           -> succ
        | NAME                          -> var

QUANT.2: "forall" | "exists"
REL: "<=" | ">=" | "!=" | "=" | "<" | ">"
NAME: /[A-Za-z_][A-Za-z0-9_']*/
COMMENT: /\/\/[^\n]*/
%import common.INT
%import common.WS
%ignore WS
%ignore COMMENT
"""

_parser = Lark(_GRAMMAR, parser="lalr", propagate_positions=True)
_formula_parser = Lark(_GRAMMAR, parser="lalr", start="formula", propagate_positions=True)


@v_args(meta=True)
class _Build(Transformer):
    def __init__(self, inline: dict[str, Formula] | None = None):
        super().__init__()
        self.bodies = inline if inline is not None else {}

    def num(self, meta, c):
        return Numeral(int(c[0]))

    def selfcode(self, meta, c):
        return SelfCode(str(c[0]))

    def var(self, meta, c):
        name = str(c[0])
        if name in ("not", "and", "or", "succ", "Tr", "Sent"):
            raise PoolError(f"keyword {name!r} used as a variable", meta.line, meta.column)
        return Var(name)

    def succ(self, meta, c):
        return Succ(c[0])

    def plus(self, meta, c):
        return Plus(c[0], c[1])

    def tr(self, meta, c):
        return TrAtom(c[0])

    def sent(self, meta, c):
        return SentAtom(c[0])

    def rel(self, meta, c):
        lhs, op, rhs = c
        op = str(op)
        if op == ">=":
            return ArithAtom("<=", rhs, lhs)
        if op == ">":
            return ArithAtom("<", rhs, lhs)
        return ArithAtom(op, lhs, rhs)

    def inline(self, meta, c):
        name = str(c[0])
        if name not in self.bodies:
            raise PoolError(f"@{name} must name an earlier sentence", meta.line, meta.column)
        return self.bodies[name]

    def not_(self, meta, c):
        return Not(c[0])

    def and_(self, meta, c):
        return And(c[0], c[1])

    def or_(self, meta, c):
        return Or(c[0], c[1])

    def imp(self, meta, c):
        return implies(c[0], c[1])

    def iff(self, meta, c):
        return iff(c[0], c[1])

    def quant(self, meta, c):
        q, v, body = c
        cls = ForAll if str(q) == "forall" else Exists
        return cls(str(v), body)


@dataclass(frozen=True)
class NamedSentence:
    name: str
    body: Formula
    line: int = 0


@dataclass
class UnresolvedPool:
    domain_size: int | None
    qrange: int
    sentences: list[NamedSentence]
    closures: list[str]
    witnesses: list[Formula]


CLOSURES = ("negation", "instances", "duals", "trneg", "it10", "con", "com")


def _raise_syntax(err: UnexpectedInput, source: str):
    line = getattr(err, "line", None)
    col = getattr(err, "column", None)
    token = getattr(err, "token", None)
    msg = f"unexpected {token!r}" if token is not None else "syntax error"
    raise PoolError(msg, line, col) from None


def parse_formula(text: str, names: dict[str, int] | None = None) -> Formula:
    """Parse one formula; #name is resolved when a name->code map is given."""
    try:
        tree = _formula_parser.parse(text)
        f = _Build().transform(tree)
    except UnexpectedInput as e:
        _raise_syntax(e, text)
    except VisitError as e:
        if isinstance(e.orig_exc, PoolError):
            raise e.orig_exc from None
        raise
    if names is not None:
        missing = selfcode_names(f) - set(names)
        if missing:
            raise PoolError(f"undeclared name {sorted(missing)[0]}")
        f = resolve_selfcodes(f, names)
    return f


def parse_pool(source: str) -> UnresolvedPool:
    try:
        tree = _parser.parse(source)
    except UnexpectedInput as e:
        _raise_syntax(e, source)

    domain = None
    qrange = 1
    sentences: list[NamedSentence] = []
    closures: list[str] = []
    witnesses: list[Formula] = []
    bodies: dict[str, Formula] = {}
    refs: list[tuple[str, int, int]] = []

    def build(sub):
        try:
            return _Build(bodies).transform(sub)
        except VisitError as e:
            if isinstance(e.orig_exc, PoolError):
                raise e.orig_exc from None
            raise

    for item in tree.children:
        line, col = item.meta.line, item.meta.column
        kind = item.data
        if kind == "domain":
            domain = int(item.children[0])
        elif kind == "qrange":
            qrange = int(item.children[0])
            if qrange < 1:
                raise PoolError("range must be at least 1", line, col)
        elif kind == "close":
            name = str(item.children[0])
            if name not in CLOSURES:
                raise PoolError(f"unknown closure directive {name!r}", line, col)
            if name not in closures:
                closures.append(name)
        elif kind == "witness":
            f = build(item.children[1] if len(item.children) > 1 else item.children[0])
            if free_vars(f):
                raise PoolError("witness has free variables", line, col)
            for n in selfcode_names(f):
                refs.append((n, line, col))
            witnesses.append(f)
        else:
            name = str(item.children[0])
            if name in bodies:
                raise PoolError(f"duplicate name {name}", line, col)
            body = build(item.children[1])
            fv = free_vars(body)
            if fv:
                raise PoolError(f"sentence {name} has free variable {sorted(fv)[0]}", line, col)
            for n in selfcode_names(body):
                refs.append((n, line, col))
            bodies[name] = body
            sentences.append(NamedSentence(name, body, line))

    for n, line, col in refs:
        if n not in bodies:
            raise PoolError(f"undeclared name {n}", line, col)
    return UnresolvedPool(domain, qrange, sentences, closures, witnesses)


# ---------------------------------------------------------------------- pool


@dataclass(frozen=True)
class SentencePool:
    """Resolved, closure-complete, injectively coded pool (immutable)."""

    domain_size: int
    qrange: int
    statements: tuple[Formula, ...]
    names: tuple[str, ...]
    origins: tuple[str, ...]
    closures: tuple[str, ...]
    declared: dict = field(hash=False, compare=False)
    extra_witnesses: tuple[Formula, ...] = ()
    user_count: int = 0  # statements present before theory-driven closure
    index: dict = field(default=None, hash=False, compare=False, repr=False)
    by_name: dict = field(default=None, hash=False, compare=False, repr=False)
    # per-pool memo space for engines built over this pool
    cache: dict = field(default_factory=dict, hash=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {f: i for i, f in enumerate(self.statements)})
        object.__setattr__(self, "by_name", {n: i for i, n in enumerate(self.names)})

    # coding
    def __len__(self):
        return len(self.statements)

    def code(self, f: Formula) -> int:
        return self.index[f] + 1

    def idx(self, f: Formula) -> int | None:
        return self.index.get(f)

    def decode(self, code: int) -> Formula:
        if not self.is_sentence_code(code):
            raise KeyError(f"{code} is not a sentence code")
        return self.statements[code - 1]

    def is_sentence_code(self, code: int) -> bool:
        return 1 <= code <= len(self.statements)

    def lookup(self, key: str) -> int:
        """Statement index for a name or a code literal."""
        key = key.strip()
        if key in self.by_name:
            return self.by_name[key]
        if key.isdigit() and self.is_sentence_code(int(key)):
            return int(key) - 1
        raise KeyError(f"unknown statement {key!r}")

    def name_of_code(self, code: int) -> str:
        return self.names[code - 1] if self.is_sentence_code(code) else f"<{code}>"

    @property
    def witnesses(self) -> tuple[Formula, ...]:
        return self.statements + tuple(And(f, f) for f in self.statements) + self.extra_witnesses

    @property
    def declared_codes(self) -> dict[str, int]:
        return dict(self.declared)

    def describe(self, i: int) -> str:
        return f"{self.names[i]} = {to_text(self.statements[i])}"

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(f"{self.domain_size};{self.qrange};".encode())
        for n, f in zip(self.names, self.statements):
            h.update(f"{n}:{to_text(f)}\n".encode())
        for w in self.extra_witnesses:
            h.update(f"w:{to_text(w)}\n".encode())
        return h.hexdigest()[:16]

    def extend(self, additions: Iterable[tuple[Formula, str, str]], closures: Sequence[str] | None = None,
               cap: int = DEFAULT_CAP, theory: bool = True) -> "SentencePool":
        """New pool with extra (formula, name, origin) statements appended and re-closed.

        Existing codes never move.
        """
        b = _Builder(self.domain_size, self.qrange, cap)
        for f, n, o in zip(self.statements, self.names, self.origins):
            b.add(f, n, o)
        for f, n, o in additions:
            b.add(f, n, o)
        cl = tuple(dict.fromkeys(list(self.closures) + list(closures or ())))
        b.close(cl, user_count=self.user_count if theory else None)
        return b.finish(cl, self.declared, self.extra_witnesses, self.user_count if theory else len(b.stmts))


# ------------------------------------------------------------------- closure


def term_value(t: Term, domain_size: int) -> int:
    top = domain_size - 1
    if isinstance(t, Numeral):
        return min(t.n, top)
    if isinstance(t, Succ):
        return min(term_value(t.t, domain_size) + 1, top)
    if isinstance(t, Plus):
        return min(term_value(t.a, domain_size) + term_value(t.b, domain_size), top)
    raise ValueError(f"term {t} is not closed")


def it10_sentence() -> Formula:
    return ForAll("x", Or(Not(TrAtom(Var("x"))), SentAtom(Var("x"))))


def con_instance(code: int, neg_code: int) -> Formula:
    return Not(And(TrAtom(Numeral(code)), TrAtom(Numeral(neg_code))))


def com_instance(code: int, neg_code: int) -> Formula:
    return iff(Not(TrAtom(Numeral(code))), TrAtom(Numeral(neg_code)))


class _Builder:
    def __init__(self, domain_size: int, qrange: int, cap: int):
        self.N = domain_size
        self.R = qrange
        self.cap = cap
        self.stmts: list[Formula] = []
        self.names: list[str] = []
        self.origins: list[str] = []
        self.index: dict[Formula, int] = {}

    def add(self, f: Formula, name: str, origin: str) -> bool:
        if f in self.index:
            return False
        if len(self.stmts) >= self.cap:
            raise PoolError(f"closure exceeds the cap of {self.cap} statements")
        if free_vars(f):
            raise PoolError(f"statement {name} has free variables")
        base, k = name, 1
        while name in self.names:  # keep names unique
            k += 1
            name = f"{base}#{k}"
        self.index[f] = len(self.stmts)
        self.stmts.append(f)
        self.names.append(name)
        self.origins.append(origin)
        return True

    def stmt_at(self, code: int) -> Formula | None:
        if 1 <= code <= len(self.stmts):
            return self.stmts[code - 1]
        return None

    def _local(self, i: int, closures: Sequence[str]) -> Iterator[tuple[Formula, str, str]]:
        f, n = self.stmts[i], self.names[i]
        if "instances" in closures and isinstance(f, Quantified):
            for d, g in enumerate(instances(f, self.R)):
                yield g, f"{n}[{d}]", "instance"
        if "negation" in closures and not isinstance(f, Not):
            yield Not(f), "~" + n, "negation"
        if "duals" in closures and isinstance(f, Not):
            g = f.f
            if isinstance(g, Or):
                na, nb = Not(g.a), Not(g.b)
                if na in self.index and nb in self.index:
                    yield And(na, nb), f"dual({n})", "dual"
            elif isinstance(g, Exists):
                negs = [Not(h) for h in instances(g, self.R)]
                if all(h in self.index for h in negs):
                    yield ForAll(g.v, Not(g.body)), f"dual({n})", "dual"
        if "trneg" in closures and isinstance(f, Not) and isinstance(f.f, TrAtom):
            c = term_value(f.f.t, self.N)
            target = self.stmt_at(c)
            if target is not None:
                yield Not(target), "~" + self.names[c - 1], "trneg"

    def close(self, closures: Sequence[str], user_count: int | None = None):
        """Close under local rules; theory rules run once the user part is stable."""
        theory = [c for c in closures if c in ("it10", "con", "com")]
        while True:
            i = 0
            while i < len(self.stmts):
                for g, n, o in list(self._local(i, closures)):
                    self.add(g, n, o)
                i += 1
            self.user_end = len(self.stmts) if user_count is None else user_count
            added = False
            if "it10" in theory:
                q = it10_sentence()
                if q not in self.index:
                    self.add(q, "it10", "it10")
                    added = True
                    # the instances' Tr-literal disjuncts, so xi can see them
                    for d in range(self.R):
                        self.add(Not(TrAtom(Numeral(d))), f"it10.lit[{d}]", "it10")
            for kind, make in (("con", con_instance), ("com", com_instance)):
                if kind not in theory:
                    continue
                limit = self.user_end
                for j in range(limit):
                    f = self.stmts[j]
                    nf = Not(f)
                    if nf in self.index:
                        g = make(j + 1, self.index[nf] + 1)
                        if g not in self.index:
                            self.add(g, f"{kind}({self.names[j]})", kind)
                            added = True
            if not added:
                break
            user_count = self.user_end

    def finish(self, closures, declared, extra_witnesses, user_count) -> SentencePool:
        if self.N < len(self.stmts) + 1:
            raise PoolError(
                f"domain size {self.N} too small for {len(self.stmts)} statements plus a spare code")
        return SentencePool(self.N, self.R, tuple(self.stmts), tuple(self.names), tuple(self.origins),
                            tuple(closures), dict(declared), tuple(extra_witnesses), user_count)


def resolve_pool(p: UnresolvedPool, extra_closures: Sequence[str] = (), cap: int = DEFAULT_CAP) -> SentencePool:
    """Assign codes, resolve self reference and compute closures."""
    n_decl = len(p.sentences)
    codes = {s.name: i + 1 for i, s in enumerate(p.sentences)}
    domain = p.domain_size
    if domain is None:
        raise PoolError("missing 'domain N;' line")
    b = _Builder(domain, p.qrange, cap)
    for s in p.sentences:
        body = resolve_selfcodes(s.body, codes)
        if body in b.index:
            raise PoolError(f"sentence {s.name} duplicates {b.names[b.index[body]]}", s.line)
        b.add(body, s.name, "declared")
    assert len(b.stmts) == n_decl
    closures = tuple(dict.fromkeys(list(p.closures) + list(extra_closures)))
    b.close(closures)
    witnesses = [resolve_selfcodes(w, codes) for w in p.witnesses]
    return b.finish(closures, codes, witnesses, b.user_end)


def load_pool(source: str, extra_closures: Sequence[str] = (), cap: int = DEFAULT_CAP) -> SentencePool:
    return resolve_pool(parse_pool(source), extra_closures, cap)
