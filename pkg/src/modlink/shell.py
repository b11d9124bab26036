"""Worksheets: a line-oriented declaration language, its runner and reports.

A worksheet declares rings, ideals, modules and primes, then lists tasks::

    ring S = poly(char=32003, vars=[x,y], order=grevlex)
    ring R = quotient(S, [x*y])
    module M = cyclic(R, [x])
    task iso lambda_M N expect=true

Names must be declared before use, so the statement order is already a
topological order of the computation graph.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from . import __version__
from .gbres import (
    HomMatrix,
    Ideal,
    ModulePres,
    QuotientRing,
    TruncationError,
    hilbert_dims,
    set_limits,
)
from .polycore import PolyRing, PolySyntaxError, PrimeField


class WorksheetError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line, self.col = line, col


# ---------- syntax tree ----------

@dataclass(frozen=True)
class Atom:
    text: str
    col: int = field(default=0, compare=False)

    def render(self) -> str:
        return self.text


@dataclass(frozen=True)
class Seq:
    items: tuple
    col: int = field(default=0, compare=False)

    def render(self) -> str:
        return "[" + ", ".join(v.render() for v in self.items) + "]"


@dataclass(frozen=True)
class Statement:
    kind: str            # ring, ideal, module, prime, primes or task
    name: str            # declared name; for tasks the operation
    op: str              # constructor; for tasks the first word after the operation, if any
    args: tuple          # ((key or None, Atom | Seq), ...)
    line: int = field(default=0, compare=False)

    def render(self) -> str:
        parts = [(f"{k}=" if k else "") + v.render() for k, v in self.args]
        if self.kind == "task":
            head = f"task {self.name}" + (f" {self.op}" if self.op else "")
            return " ".join([head] + [p.replace(", ", ",") for p in parts])
        return f"{self.kind} {self.name} = {self.op}({', '.join(parts)})"


@dataclass
class WorksheetFile:
    statements: list = field(default_factory=list)

    @property
    def tasks(self) -> list:
        return [s for s in self.statements if s.kind == "task"]

    def render(self) -> str:
        return "".join(s.render() + "\n" for s in self.statements)

    def __eq__(self, other):
        return isinstance(other, WorksheetFile) and self.statements == other.statements


# ---------- signatures ----------
# argument types: ring ideal module prime primes int ints bool range names polys matrix
# a trailing "?" marks an optional keyword, "*" a repeated positional

DECLS = {
    ("ring", "poly"): ([], {"vars": "names", "char": "int?", "order": "name?", "weights": "ints?"}),
    ("ring", "quotient"): (["ring", "polys"], {}),
    ("ideal", "ideal"): (["ring", "polys"], {}),
    ("module", "coker"): (["ring"], {"rows": "ints", "cols": "ints", "matrix": "matrix"}),
    ("module", "cyclic"): (["ring", "polys"], {"twist": "int?"}),
    ("module", "free"): (["ring", "ints"], {}),
    ("module", "ideal_module"): (["ring", "polys"], {}),
    ("module", "residue"): (["ring"], {}),
    ("module", "canonical"): (["ring"], {}),
    ("module", "lambda"): (["module"], {}),
    ("module", "lambda_c"): (["module", "module"], {}),
    ("module", "transpose"): (["module"], {}),
    ("module", "syzygy"): (["module", "int"], {}),
    ("module", "dual"): (["module"], {}),
    ("module", "tensor"): (["module", "module"], {}),
    ("module", "twist"): (["module", "int"], {}),
    ("module", "ideal_times"): (["ideal", "module"], {}),
    ("module", "over"): (["module", "ring"], {}),
    ("module", "ambient"): (["module"], {}),
    ("prime", "prime"): (["ring", "polys"], {}),
    ("primes", "set"): (["prime*"], {}),
    ("primes", "variable_primes"): (["ring"], {}),
}

_CANDS = {"candidates": "primes"}
TASKS = {
    "linked": (["module"], {"expect": "bool?"}),
    "iso": (["module", "module"], {"expect": "bool?"}),
    "linked_by": (["module", "module", "ideal"], {}),
    "dims": (["module"], {"window": "range?", "expect": "ints?"}),
    "cohomology": (["module"], {"window": "range?"}),
    "depth": (["module"], {"expect": "int?"}),
    "gdim": (["module"], {"expect": "int?", "C": "module?"}),
    "torsionfree": (["module", "int"], {"expect": "bool?"}),
    "semidualizing": (["module"], {"expect": "bool?"}),
}
VERIFY = {
    "thm2.4": (["module"], {"n": "int", **_CANDS}),
    "lemma3.2": (["module", "module"], {"n": "int", **_CANDS}),
    "thm3.3": (["module"], {"n": "int", "X": "primes", "candidates": "primes?", "assume": "bool?"}),
    "cor3.4": (["ideal"], {"n": "int", "X": "primes", "candidates": "primes?"}),
    "cor3.5": (["module"], {"n": "int", **_CANDS}),
    "cor3.6": (["module"], {"n": "int", **_CANDS}),
    "thm3.7": (["module"], {"n": "int", "X": "primes", "candidates": "primes?", "assume": "bool?"}),
    "cor3.8": (["module"], {"X": "primes", **_CANDS}),
    "cor3.11": (["module", "ideal"], {"n": "int", "X": "primes", "candidates": "primes?"}),
    "thm3.12": (["module"], dict(_CANDS)),
    "cor3.13": (["module"], {"n": "int", **_CANDS}),
    "thm4.1": (["module", "ideal"], {"candidates": "primes?"}),
    "thmB": (["module", "module", "ideal", "ideal"], {}),
    "thm4.5": (["module"], {}),
    "prop4.6": (["ring"], {"modules": "modules?"}),
    "thm5.1": (["module"], {"n": "int", **_CANDS}),
    "cor5.3": (["module"], {"n": "int", **_CANDS}),
    "cor5.4": (["module", "ideal"], {"n": "int", **_CANDS}),
}
KINDS = ("ring", "ideal", "module", "prime", "primes")


# ---------- parsing ----------

class _Line:
    def __init__(self, text: str, lineno: int):
        self.text, self.lineno, self.pos = text, lineno, 0

    def err(self, msg, col=None):
        return WorksheetError(msg, self.lineno, (self.pos if col is None else col) + 1)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise self.err(f"expected {ch!r}")
        self.pos += 1

    def word(self) -> str:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "_."):
            self.pos += 1
        if start == self.pos:
            raise self.err("expected a name")
        return self.text[start:self.pos]

    def value(self, stops: str):
        if self.peek() == "[":
            col = self.pos
            self.pos += 1
            items = []
            if self.peek() == "]":
                self.pos += 1
                return Seq((), col)
            while True:
                items.append(self.value(",]"))
                ch = self.peek()
                self.pos += 1
                if ch == "]":
                    return Seq(tuple(items), col)
                if ch != ",":
                    raise self.err("expected ',' or ']'", self.pos - 1)
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stops and self.text[self.pos] not in "[]":
            self.pos += 1
        raw = self.text[start:self.pos].strip()
        if not raw:
            raise self.err("expected a value", start)
        return Atom(raw, start)

    def keyed(self, stops: str):
        """``key=value`` or ``value``."""
        self.ws()
        save = self.pos
        if self.peek().isalpha():
            k = self.word()
            if self.peek() == "=":
                self.pos += 1
                return k, self.value(stops)
        self.pos = save
        return None, self.value(stops)


def _strip_comment(text: str) -> str:
    i = text.find("#")
    return text if i < 0 else text[:i]


def parse_statement(text: str, lineno: int) -> Statement:
    ln = _Line(_strip_comment(text).rstrip(), lineno)
    head = ln.word()
    if head == "task":
        op = ln.word()
        sub = ln.word() if op == "verify" else ""
        args = []
        while ln.peek():
            args.append(ln.keyed(" \t"))
        return Statement("task", op, sub, tuple(args), lineno)
    if head not in KINDS:
        raise ln.err(f"unknown statement {head!r}", 0)
    name = ln.word()
    ln.expect("=")
    ctor = ln.word()
    ln.expect("(")
    args = []
    if ln.peek() != ")":
        while True:
            args.append(ln.keyed(",)"))
            ch = ln.peek()
            ln.pos += 1
            if ch == ")":
                break
            if ch != ",":
                raise ln.err("expected ',' or ')'", ln.pos - 1)
    if ln.peek():
        raise ln.err("trailing text")
    return Statement(head, name, ctor, tuple(args), lineno)


def _signature(st: Statement):
    if st.kind == "task":
        if st.name == "verify":
            if st.op not in VERIFY:
                return None
            return VERIFY[st.op]
        return TASKS.get(st.name)
    return DECLS.get((st.kind, st.op))


class _Scope:
    """Names seen so far with their kinds and, for rings, their variables."""

    def __init__(self):
        self.kinds = {}
        self.vars = {}

    def check_name(self, v, want: str, line: int):
        if not isinstance(v, Atom):
            raise WorksheetError(f"expected a {want} name", line, v.col + 1)
        got = self.kinds.get(v.text)
        if got is None:
            raise WorksheetError(f"undefined name {v.text!r}", line, v.col + 1)
        if got != want:
            raise WorksheetError(f"{v.text!r} is a {got}, expected a {want}", line, v.col + 1)

    def check_polys(self, items, ring_name, line):
        if ring_name not in self.vars:
            return
        S = PolyRing(self.vars[ring_name])
        for a in items:
            if not isinstance(a, Atom):
                raise WorksheetError("expected a polynomial", line, a.col + 1)
            try:
                S(a.text)
            except PolySyntaxError as e:
                raise WorksheetError(f"bad polynomial: {e}", line, a.col + e.pos + 1) from None
            except ValueError as e:
                raise WorksheetError(f"bad polynomial: {e}", line, a.col + 1) from None


def _check_value(scope: _Scope, v, typ: str, line: int, ring_name):
    base = typ.rstrip("?*")
    if base in KINDS:
        if base == "primes" and isinstance(v, Seq):
            for it in v.items:
                scope.check_name(it, "prime", line)
            return
        scope.check_name(v, base, line)
    elif base == "modules":
        items = v.items if isinstance(v, Seq) else (v,)
        for it in items:
            scope.check_name(it, "module", line)
    elif base in ("int", "name", "bool", "range"):
        if not isinstance(v, Atom):
            raise WorksheetError(f"expected a single {base}", line, v.col + 1)
        ok = {"int": lambda t: t.lstrip("-").isdigit(),
              "bool": lambda t: t in ("true", "false"),
              "range": lambda t: _parse_range(t) is not None,
              "name": lambda t: t.replace("_", "").isalnum()}[base](v.text)
        if not ok:
            raise WorksheetError(f"expected {base}, got {v.text!r}", line, v.col + 1)
    elif base in ("ints", "names", "polys", "matrix"):
        if not isinstance(v, Seq):
            raise WorksheetError(f"expected a list for {base}", line, v.col + 1)
        if base == "ints":
            for it in v.items:
                _check_value(scope, it, "int", line, ring_name)
        elif base == "polys":
            scope.check_polys(v.items, ring_name, line)
        elif base == "matrix":
            for row in v.items:
                if not isinstance(row, Seq):
                    raise WorksheetError("matrix rows must be lists", line, row.col + 1)
                scope.check_polys(row.items, ring_name, line)


def _parse_range(t: str):
    lo, sep, hi = t.partition("..")
    try:
        return (int(lo), int(hi)) if sep else None
    except ValueError:
        return None


def _check(scope: _Scope, st: Statement):
    sig = _signature(st)
    if sig is None:
        what = f"verify target {st.op!r}" if st.name == "verify" else (
            f"task {st.name!r}" if st.kind == "task" else f"constructor {st.op!r} for {st.kind}")
        raise WorksheetError(f"unknown {what}", st.line, 1)
    pos_types, key_types = sig
    positional = [v for k, v in st.args if k is None]
    keyed = {k: v for k, v in st.args if k is not None}
    star = pos_types and pos_types[-1].endswith("*")
    if not star and len(positional) != len(pos_types):
        raise WorksheetError(f"{st.op or st.name} takes {len(pos_types)} positional arguments, "
                             f"got {len(positional)}", st.line, 1)
    ring_name = None
    for i, v in enumerate(positional):
        typ = pos_types[min(i, len(pos_types) - 1)]
        _check_value(scope, v, typ, st.line, ring_name)
        if typ == "ring":
            ring_name = v.text
        elif typ in ("module", "ideal") and ring_name is None:
            ring_name = scope.vars.get("@" + v.text)
    for k, v in keyed.items():
        if k not in key_types:
            raise WorksheetError(f"unknown keyword {k!r}", st.line, v.col + 1)
        _check_value(scope, v, key_types[k], st.line, ring_name)
    for k, t in key_types.items():
        if not t.endswith("?") and k not in keyed:
            raise WorksheetError(f"missing keyword {k!r}", st.line, 1)
    if st.kind != "task":
        if st.name in scope.kinds:
            raise WorksheetError(f"{st.name!r} is already declared", st.line, 1)
        scope.kinds[st.name] = st.kind
        if st.op == "poly":
            scope.vars[st.name] = tuple(a.text for a in keyed["vars"].items)
        elif st.op == "quotient":
            scope.vars[st.name] = scope.vars.get(positional[0].text)
        elif ring_name is not None:
            # remember which ring a module or ideal lives over, for polynomial checks
            scope.vars["@" + st.name] = ring_name


def parse_worksheet(text: str) -> WorksheetFile:
    ws = WorksheetFile()
    scope = _Scope()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not _strip_comment(raw).strip():
            continue
        st = parse_statement(raw, lineno)
        _check(scope, st)
        ws.statements.append(st)
    return ws


# ---------- evaluation ----------

def _to_int(a: Atom) -> int:
    return int(a.text)


class Environment:
    """Evaluates declarations in order and holds the resulting objects."""

    def __init__(self):
        self.values = {}

    def get(self, v):
        return self.values[v.text]

    def primes(self, v):
        if isinstance(v, Seq):
            return [self.values[a.text] for a in v.items]
        return self.values[v.text]

    def declare(self, st: Statement):
        from . import cohatt, linkverify, modops
        from .homlat import prime as make_prime

        pos = [v for k, v in st.args if k is None]
        kw = {k: v for k, v in st.args if k is not None}
        op = st.op

        def polys(R, seq):
            return [R.ambient(a.text) for a in seq.items]

        if op == "poly":
            char = _to_int(kw["char"]) if "char" in kw else 32003
            order = kw["order"].text if "order" in kw else "grevlex"
            weights = tuple(_to_int(a) for a in kw["weights"].items) if "weights" in kw else None
            S = PolyRing(tuple(a.text for a in kw["vars"].items), order, PrimeField(char), weights)
            val = QuotientRing.make(S, [])
        elif op == "quotient":
            R = self.get(pos[0])
            val = R.quotient(polys(R, pos[1]))
        elif op == "ideal":
            R = self.get(pos[0])
            val = Ideal.make(R, polys(R, pos[1]))
        elif op == "coker":
            R = self.get(pos[0])
            rows = tuple(_to_int(a) for a in kw["rows"].items)
            cols = tuple(_to_int(a) for a in kw["cols"].items)
            entries = [[R.ambient(a.text) for a in row.items] for row in kw["matrix"].items]
            val = ModulePres.coker(HomMatrix.from_rows(R, entries, target=rows, source=cols))
        elif op == "cyclic":
            R = self.get(pos[0])
            t = _to_int(kw["twist"]) if "twist" in kw else 0
            val = ModulePres.cyclic(R, polys(R, pos[1]), t)
        elif op == "free":
            val = ModulePres.free(self.get(pos[0]), tuple(_to_int(a) for a in pos[1].items))
        elif op == "ideal_module":
            R = self.get(pos[0])
            val = modops.ideal_times_module(Ideal.make(R, polys(R, pos[1])), ModulePres.free(R))
        elif op == "residue":
            R = self.get(pos[0])
            val = ModulePres.cyclic(R, R.ambient.gens())
        elif op == "canonical":
            val = cohatt.canonical_module(self.get(pos[0]))
        elif op == "lambda":
            val = modops.lambda_(self.get(pos[0]))
        elif op == "lambda_c":
            val = modops.lambda_C(self.get(pos[0]), self.get(pos[1]))
        elif op == "transpose":
            val = modops.transpose(self.get(pos[0]))
        elif op == "syzygy":
            val = modops.syzygy(self.get(pos[0]), _to_int(pos[1]))
        elif op == "dual":
            val = modops.dual(self.get(pos[0]))
        elif op == "tensor":
            val = modops.tensor(self.get(pos[0]), self.get(pos[1]))
        elif op == "twist":
            val = self.get(pos[0]).twist(_to_int(pos[1]))
        elif op == "ideal_times":
            val = modops.ideal_times_module(self.get(pos[0]), self.get(pos[1]))
        elif op == "over":
            val = self.get(pos[0]).over(self.get(pos[1]))
        elif op == "ambient":
            val = self.get(pos[0]).over_ambient()
        elif op == "prime":
            R = self.get(pos[0])
            val = make_prime(R, polys(R, pos[1]))
        elif op == "set":
            val = [self.get(a) for a in pos]
        elif op == "variable_primes":
            val = linkverify.ring_variable_primes(self.get(pos[0]))
        else:  # the parser rejects anything else
            raise AssertionError(op)
        if isinstance(val, ModulePres):
            val.name = st.name
        self.values[st.name] = val


# ---------- tasks ----------

@dataclass
class TaskResult:
    task: str
    verdict: str
    evidence: dict = field(default_factory=dict)
    timing_ms: float = 0.0
    error: str = ""

    def as_dict(self) -> dict:
        d = {"task": self.task, "verdict": self.verdict, "evidence": self.evidence,
             "timing_ms": round(self.timing_ms, 1)}
        if self.error:
            d["error"] = self.error
        return d


@dataclass
class RunReport:
    results: list = field(default_factory=list)
    seed: int = 0
    engine: str = __version__

    @property
    def exit_code(self) -> int:
        if any(r.verdict == "Error" for r in self.results):
            return 2
        if any(r.verdict == "Fail" for r in self.results):
            return 1
        return 0

    def as_dict(self, timings: bool = True) -> dict:
        rows = [r.as_dict() for r in self.results]
        if not timings:
            for r in rows:
                r.pop("timing_ms")
        return {"engine": self.engine, "seed": self.seed, "results": rows, "exit_code": self.exit_code}

    def machine(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, default=str)

    def text(self) -> str:
        out = []
        for r in self.results:
            out.append(f"[{r.verdict}] {r.task}  ({r.timing_ms:.0f} ms)")
            if r.error:
                out.append(f"    error: {r.error}")
            for k, v in r.evidence.items():
                out.append(f"    {k}: {v}")
        counts = {}
        for r in self.results:
            counts[r.verdict] = counts.get(r.verdict, 0) + 1
        summary = ", ".join(f"{n} {k}" for k, n in sorted(counts.items())) or "no tasks"
        out.append(f"engine {self.engine}, seed {self.seed}: {summary}")
        return "\n".join(out) + "\n"


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, float):
        return x if x == x and abs(x) != float("inf") else str(x)
    return str(x)


def _expectation(value, kw, key="expect"):
    if key not in kw:
        return "Pass"
    want = kw[key]
    if isinstance(want, Seq):
        want = [int(a.text) for a in want.items]
    elif want.text in ("true", "false"):
        want = want.text == "true"
    else:
        want = int(want.text)
    return "Pass" if value == want else "Fail"


def execute_task(env: Environment, st: Statement, seed: int, window) -> TaskResult:
    from . import cohatt, homlat, linkverify as lv, modops
    from .oracle import oracle_dims

    pos = [v for k, v in st.args if k is None]
    kw = {k: v for k, v in st.args if k is not None}
    label = st.render()[len("task "):]
    get = env.get
    t0 = time.perf_counter()
    try:
        if st.name == "verify":
            v = _run_verify(env, st.op, pos, kw, seed)
            ev = {"hypotheses": v.hypotheses, "sides": v.sides, **v.evidence}
            if v.reason:
                ev["reason"] = v.reason
            res = TaskResult(label, v.verdict, ev)
        elif st.name == "linked":
            c = lv.is_horizontally_linked(get(pos[0]), seed=seed)
            verdict = _expectation(c.verdict, kw) if c.coherent else "Fail"
            res = TaskResult(label, verdict, {"stable": c.stable, "ext1_vanishes": c.ext1_vanishes,
                                              "roundtrip": str(c.lambda_roundtrip), "linked": c.verdict})
        elif st.name == "iso":
            r = modops.iso_probe(get(pos[0]), get(pos[1]), seed=seed,
                                 twist_window=modops.DEFAULT_TWIST_WINDOW)
            verdict = "Inconclusive" if r.kind == "Unknown" else _expectation(r.isomorphic, kw)
            res = TaskResult(label, verdict, {"probe": str(r)})
        elif st.name == "linked_by":
            v = lv.linked_by_ideal(get(pos[0]), get(pos[1]), get(pos[2]), seed=seed)
            res = TaskResult(label, v.verdict, {"sides": v.sides, "reason": v.reason} if v.reason else {"sides": v.sides})
        elif st.name == "dims":
            w = _parse_range(kw["window"].text) if "window" in kw else window
            M = get(pos[0])
            a, b = hilbert_dims(M, w), oracle_dims(M, w)
            verdict = "Pass" if a.dims == b.dims else "Fail"
            if verdict == "Pass":
                verdict = _expectation(a.values(), kw)
            res = TaskResult(label, verdict, {"hilbert": str(a), "oracle": str(b)})
        elif st.name == "cohomology":
            w = _parse_range(kw["window"].text) if "window" in kw else window
            tab = cohatt.cohomology_table(get(pos[0]), w)
            res = TaskResult(label, "Pass", {"depth": tab.depth, "dim": tab.dim,
                                             **{f"H^{i}": str(t) for i, t in tab.tables.items()}})
        elif st.name == "depth":
            d = homlat.depth(get(pos[0]))
            res = TaskResult(label, _expectation(d, kw), {"depth": d})
        elif st.name == "gdim":
            C = get(kw["C"]) if "C" in kw else None
            g = homlat.gdim(get(pos[0]), C)
            res = TaskResult(label, _expectation(g.value, kw), {"gdim": str(g), "certificate": g.certificate})
        elif st.name == "torsionfree":
            ok = homlat.n_torsionfree(get(pos[0]), _to_int(pos[1]))
            res = TaskResult(label, _expectation(ok, kw), {"torsionfree": ok})
        elif st.name == "semidualizing":
            chk = homlat.semidualizing_check(get(pos[0]))
            res = TaskResult(label, _expectation(bool(chk), kw), {"failed": chk.failed, "bound": chk.bound})
        else:
            raise AssertionError(st.name)
    except TruncationError as e:
        res = TaskResult(label, "Error", error=f"truncated: {e}")
    except Exception as e:  # engine errors are reported, not raised
        res = TaskResult(label, "Error", error=f"{type(e).__name__}: {e}")
    res.evidence = _jsonable(res.evidence)
    res.timing_ms = (time.perf_counter() - t0) * 1000
    return res


def _run_verify(env: Environment, thm: str, pos, kw, seed):
    from . import linkverify as lv

    g = env.get
    n = _to_int(kw["n"]) if "n" in kw else None
    cands = env.primes(kw["candidates"]) if "candidates" in kw else None
    X = env.primes(kw["X"]) if "X" in kw else None
    assume = kw["assume"].text == "true" if "assume" in kw else False
    if thm == "thm2.4":
        return lv.verify_thm_2_4(g(pos[0]), n, cands)
    if thm == "lemma3.2":
        return lv.verify_lemma_3_2(g(pos[0]), g(pos[1]), n, cands)
    if thm == "thm3.3":
        return lv.verify_thm_3_3(g(pos[0]), X, n, cands, assume)
    if thm == "cor3.4":
        return lv.verify_cor_3_4(g(pos[0]), X, n, cands)
    if thm == "cor3.5":
        return lv.verify_cor_3_5(g(pos[0]), n, cands)
    if thm == "cor3.6":
        return lv.verify_cor_3_6(g(pos[0]), n, cands)
    if thm == "thm3.7":
        return lv.verify_thm_3_7(g(pos[0]), X, n, cands, assume)
    if thm == "cor3.8":
        return lv.verify_cor_3_8(g(pos[0]), X, cands)
    if thm == "cor3.11":
        return lv.verify_cor_3_11(g(pos[0]), g(pos[1]), X, n, cands)
    if thm == "thm3.12":
        return lv.verify_thm_3_12(g(pos[0]), cands)
    if thm == "cor3.13":
        return lv.verify_cor_3_13(g(pos[0]), n, cands)
    if thm == "thm4.1":
        return lv.verify_thm_4_1(g(pos[0]), g(pos[1]), cands, seed=seed)
    if thm == "thmB":
        return lv.verify_thm_B(g(pos[0]), g(pos[1]), g(pos[2]), g(pos[3]), seed=seed)
    if thm == "thm4.5":
        return lv.verify_thm_4_5(g(pos[0]))
    if thm == "prop4.6":
        mods = kw.get("modules")
        mods = [env.get(a) for a in (mods.items if isinstance(mods, Seq) else [mods])] if mods else []
        return lv.verify_prop_4_6_forward(g(pos[0]), mods, seed=seed)
    if thm == "thm5.1":
        return lv.verify_thm_5_1(g(pos[0]), n, cands)
    if thm == "cor5.3":
        return lv.verify_cor_5_3(g(pos[0]), n, cands)
    if thm == "cor5.4":
        return lv.verify_cor_5_4(g(pos[0]), g(pos[1]), n, cands)
    raise AssertionError(thm)


# ---------- running ----------

_WORKER = {}


def _worker_run(i: int) -> TaskResult:
    w = _WORKER
    return execute_task(w["env"], w["tasks"][i], w["seed"], w["window"])


def run(ws: WorksheetFile, seed: int = 0, window=(-2, 8), max_degree=None, max_basis=None,
        jobs: int = 1) -> RunReport:
    """Evaluate declarations in order, then the tasks (in parallel when ``jobs > 1``)."""
    if max_degree is not None or max_basis is not None:
        set_limits(max_degree, max_basis)
    report = RunReport(seed=seed)
    env = Environment()
    for st in ws.statements:
        if st.kind == "task":
            continue
        t0 = time.perf_counter()
        try:
            env.declare(st)
        except TruncationError as e:
            report.results.append(TaskResult(f"declare {st.name}", "Error", error=f"truncated: {e}",
                                             timing_ms=(time.perf_counter() - t0) * 1000))
            return report
        except Exception as e:
            report.results.append(TaskResult(f"declare {st.name}", "Error", error=f"{type(e).__name__}: {e}",
                                             timing_ms=(time.perf_counter() - t0) * 1000))
            return report
    tasks = ws.tasks
    if jobs > 1 and len(tasks) > 1 and "fork" in _start_methods():
        import multiprocessing as mp
        _WORKER.update(env=env, tasks=tasks, seed=seed, window=window)
        with ProcessPoolExecutor(max_workers=jobs, mp_context=mp.get_context("fork")) as pool:
            report.results.extend(pool.map(_worker_run, range(len(tasks))))
        _WORKER.clear()
    else:
        report.results.extend(execute_task(env, st, seed, window) for st in tasks)
    return report


def _start_methods() -> list:
    import multiprocessing as mp
    return mp.get_all_start_methods()


def corpus_worksheets() -> dict:
    """Worksheets shipped with the package, by stem."""
    root = resources.files("modlink") / "worksheets"
    return {p.name.rsplit(".", 1)[0]: p for p in sorted(root.iterdir(), key=lambda p: p.name)
            if p.name.endswith(".mlw")}


def read_worksheet(path: str) -> str:
    """A file path, or ``corpus:<name>`` for a shipped worksheet."""
    if path.startswith("corpus:"):
        return corpus_worksheets()[path[len("corpus:"):]].read_text()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def env_defaults() -> dict:
    return {"max_degree": int(os.environ.get("MODLINK_MAX_DEGREE", 24)),
            "max_basis": int(os.environ.get("MODLINK_MAX_BASIS", 50000))}
