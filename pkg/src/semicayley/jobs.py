"""Job documents (YAML or JSON in, structured reports out).

Input schema::

    group:   {kind: symmetric, params: {n: 3}}
    sets:    {t11: ["(1 2)"], t22: ["(1 2 3)"], t12: ["(1 2)"], t21: ["(1 2)"]}
    options: {strict: true, verify: false}

A connection set is one of ``empty`` (or ``[]``), ``all``, ``nonidentity``, a
list of class representatives (each expands to its whole conjugacy class), or
a mapping with any of ``classes`` (representatives), ``elements`` (explicit
elements), ``subgroup`` (generators) and ``exclude_identity``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

import yaml

from .chartable import CharacterTable, character_table
from .cyclotomic import CycNum, format_cycnum
from .digraph import SemiCayleyDigraph, eigenvalues, i_multisets, is_undirected
from .groups import FiniteGroup, GMultiset, GroupError, build_group, split_class_witness
from .splitting import DEFAULT_OPTIONS, DegreeReport, SquareOptions, algebraic_degree

SET_KEYS = ("t11", "t22", "t12", "t21")
DEFAULT_JOB_OPTIONS = {"strict": True, "verify": False}


class InputError(ValueError):
    """Malformed or inconsistent job document (exit status 2)."""


# ---------------------------------------------------------------------------
# job specs


@dataclass
class JobSpec:
    group: dict
    sets: dict = field(default_factory=dict)
    options: dict = field(default_factory=lambda: dict(DEFAULT_JOB_OPTIONS))

    def to_document(self) -> dict:
        doc: dict[str, Any] = {"group": self.group}
        if self.sets:
            doc["sets"] = self.sets
        doc["options"] = self.options
        return doc


def _normalize_group(g) -> dict:
    if isinstance(g, str):
        return {"kind": "catalog", "params": {"name": g}}
    if not isinstance(g, Mapping) or "kind" not in g:
        raise InputError("group must be a mapping with a 'kind' (or a catalog name)")
    params = g.get("params") or {}
    if not isinstance(params, Mapping):
        raise InputError("group params must be a mapping")
    return {"kind": str(g["kind"]), "params": dict(params)}


def parse_input(document) -> JobSpec:
    """Parse a YAML/JSON string or an already-loaded mapping into a JobSpec."""
    if isinstance(document, (str, bytes)):
        try:
            document = yaml.safe_load(document)
        except yaml.YAMLError as exc:
            raise InputError(f"could not parse document: {exc}") from exc
    if not isinstance(document, Mapping):
        raise InputError("document must be a mapping with a 'group' entry")
    unknown = set(document) - {"group", "sets", "options"}
    if unknown:
        raise InputError(f"unknown top-level keys: {sorted(unknown)}")
    if "group" not in document:
        raise InputError("missing 'group'")
    group = _normalize_group(document["group"])
    sets_in = document.get("sets") or {}
    if not isinstance(sets_in, Mapping):
        raise InputError("'sets' must be a mapping")
    sets = {}
    for k, v in sets_in.items():
        key = str(k).lower()
        if key not in SET_KEYS:
            raise InputError(f"unknown connection set {k!r} (expected t11, t22, t12, t21)")
        sets[key] = v if v is not None else "empty"
    options = dict(DEFAULT_JOB_OPTIONS)
    opts_in = document.get("options") or {}
    if not isinstance(opts_in, Mapping):
        raise InputError("'options' must be a mapping")
    for k, v in opts_in.items():
        if k not in DEFAULT_JOB_OPTIONS:
            raise InputError(f"unknown option {k!r}")
        options[k] = bool(v)
    return JobSpec(group, sets, options)


def render_spec(spec: JobSpec, fmt: str = "yaml") -> str:
    doc = spec.to_document()
    if fmt == "json":
        return json.dumps(doc, indent=2)
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True)


def resolve_group(group: Mapping) -> FiniteGroup:
    try:
        if group["kind"] == "catalog":
            from .catalog import catalog_group

            return catalog_group(str(group["params"]["name"]))
        return build_group(group)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad group parameters: {exc}") from exc


def _lookup(G: FiniteGroup, label) -> int:
    """Labels in documents are always labels: YAML turns ``1`` into an int, which must not mean index 1."""
    if isinstance(label, bool) or not isinstance(label, (int, str)):
        raise InputError(f"bad element label {label!r}")
    return G.index(str(label))


def _subgroup(G: FiniteGroup, gens) -> set[int]:
    idx = [_lookup(G, g) for g in gens]
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g in idx:
            y = int(G.mul[x, g])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def _class_of_label(G: FiniteGroup, label) -> list[int]:
    cc = G.conjugacy
    return list(cc.classes[cc.class_of[_lookup(G, label)]])


def resolve_set(G: FiniteGroup, raw, name: str, strict: bool = True) -> tuple[GMultiset, list[str]]:
    """Turn one set description into a GMultiset; returns (set, warnings)."""
    notes: list[str] = []
    members: set[int] = set()
    explicit: set[int] = set()
    if raw is None or raw == [] or (isinstance(raw, str) and raw.lower() in ("empty", "none")):
        pass
    elif isinstance(raw, str) and raw.lower() == "all":
        members = set(range(G.order))
    elif isinstance(raw, str) and raw.lower() == "nonidentity":
        members = set(range(1, G.order))
    elif isinstance(raw, (list, tuple)):
        for lab in raw:
            members.update(_class_of_label(G, lab))
    elif isinstance(raw, Mapping):
        extra = set(raw) - {"classes", "elements", "subgroup", "exclude_identity"}
        if extra:
            raise InputError(f"{name}: unknown keys {sorted(extra)}")
        for lab in raw.get("classes") or []:
            members.update(_class_of_label(G, lab))
        for lab in raw.get("elements") or []:
            explicit.add(_lookup(G, lab))
        if raw.get("subgroup") is not None:
            explicit.update(_subgroup(G, raw["subgroup"]))
        members |= explicit
        if raw.get("exclude_identity"):
            members.discard(0)
    else:
        raise InputError(f"{name}: cannot interpret set {raw!r}")
    X = GMultiset.from_elements(G, sorted(members))
    w = split_class_witness(X)
    if w is not None:
        if strict:
            raise InputError(f"{name.upper()} is not a union of conjugacy classes: "
                             f"it splits the class of {G.labels[w]}")
        cc = G.conjugacy
        closed = sorted({x for m in members for x in cc.classes[cc.class_of[m]]})
        notes.append(f"{name.upper()} closed under conjugation (non-strict mode)")
        X = GMultiset.from_elements(G, closed)
    return X, notes


def resolve(spec: JobSpec) -> tuple[SemiCayleyDigraph, list[str]]:
    G = resolve_group(spec.group)
    strict = spec.options.get("strict", True)
    sets = {}
    notes: list[str] = []
    for key in SET_KEYS:
        X, n = resolve_set(G, spec.sets.get(key, "empty"), key, strict)
        sets[key] = X
        notes += n
    graph = SemiCayleyDigraph(G, sets["t11"], sets["t22"], sets["t12"], sets["t21"])
    return graph, notes


# ---------------------------------------------------------------------------
# reports


def fmt_float(x: float) -> str:
    s = f"{x:.10g}"
    return "0" if s in ("-0", "0") else s


def fmt_complex(z: complex) -> str:
    scale = max(1.0, abs(z))
    re = 0.0 if abs(z.real) < 1e-12 * scale else z.real
    im = 0.0 if abs(z.imag) < 1e-12 * scale else z.imag
    if im == 0.0:
        return fmt_float(re)
    if re == 0.0:
        return f"{fmt_float(im)}i"
    sign = "+" if im > 0 else "-"
    return f"{fmt_float(re)} {sign} {fmt_float(abs(im))}i"


def _cyc(x: CycNum) -> str:
    return format_cycnum(x)


def _multiset_doc(X: GMultiset) -> list[list]:
    """[[class representative, multiplicity per element, class size], ...]."""
    G = X.group
    cc = G.conjugacy
    out = []
    for k, rep in enumerate(cc.representatives):
        c = int(X.counts[rep])
        if c:
            out.append([G.labels[rep], c, int(cc.sizes[k])])
    return out


def _eigen_row(e) -> dict:
    d = e.degree
    row = {
        "character": e.char_index + 1,
        "degree": d,
        "chi_I1": _cyc(e.trace_part),
        "radicand": _cyc(e.radicand),
    }
    exact = e.exact_rational_values()
    den = f"{2 * d}"
    if e.collapsed:
        row["eigenvalues"] = _cyc(e.pair_sum * Fraction(1, 2))
        row["multiplicity"] = 2 * d * d
        row["numeric"] = [fmt_complex(e.numeric_pair()[0])]
    else:
        if exact is not None:
            a, b = max(exact), min(exact)
            row["eigenvalues"] = f"{_frac(a)}, {_frac(b)}"
        else:
            row["eigenvalues"] = f"({_cyc(e.trace_part)} ± sqrt({_cyc(e.radicand)}))/{den}"
        row["multiplicity"] = d * d
        plus, minus = e.numeric_pair()
        row["numeric"] = [fmt_complex(plus), fmt_complex(minus)]
    return row


def _frac(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def chartable_doc(tbl: CharacterTable) -> dict:
    G = tbl.group
    cc = G.conjugacy
    return {
        "method": tbl.method,
        "modulus": tbl.m,
        "classes": [G.labels[r] for r in cc.representatives],
        "class_sizes": [int(s) for s in cc.sizes],
        "rows": [[_cyc(v) for v in chi.values] for chi in tbl],
    }


def group_doc(G: FiniteGroup) -> dict:
    cc = G.conjugacy
    return {
        "name": G.name,
        "order": G.order,
        "exponent": G.exponent,
        "classes": [[G.labels[r], int(s)] for r, s in zip(cc.representatives, cc.sizes)],
    }


def degree_doc(rep: DegreeReport) -> dict:
    return {
        "T": list(rep.T.elements),
        "phi_m": rep.phi,
        "K": rep.K_description,
        "K_degree": rep.K_degree,
        "M_basis": [_cyc(b) for b in rep.basis],
        "M_order": rep.M_order,
        "splitting_field": rep.sf_description,
        "degree": rep.deg,
        "integral": rep.integral,
        "confidence": rep.confidence,
    }


def oracle_doc(graph: SemiCayleyDigraph, tbl: CharacterTable, rep: DegreeReport | None = None) -> dict:
    from .oracle import integrality_bruteforce, numeric_spectrum_check, spectrum_identity_check

    ident = spectrum_identity_check(graph, tbl)
    brute = integrality_bruteforce(graph)
    num = numeric_spectrum_check(graph, tbl)
    doc = {
        "charpoly_identity": ident.ok,
        "charpoly_message": ident.message(),
        "bruteforce_integral": brute,
        "numeric_spectrum": num.ok,
        "numeric_message": num.message(),
    }
    ok = ident.ok and num.ok
    if rep is not None:
        doc["integrality_agrees"] = brute == rep.integral
        ok = ok and brute == rep.integral
    doc["ok"] = ok
    return doc


def run_report(spec: JobSpec, command: str = "degree", options: SquareOptions = DEFAULT_OPTIONS,
               verify: bool | None = None, include_table: bool = False) -> dict:
    """Full pipeline for one job; the returned mapping is what every renderer prints."""
    graph, notes = resolve(spec)
    G = graph.group
    tbl = character_table(G)
    doc: dict[str, Any] = {"command": command, "input": spec.to_document(), "group": group_doc(G)}
    comp = graph.class_composition()
    doc["sets"] = {k.lower(): {"classes": [G.labels[G.conjugacy.representatives[c]] for c in comp[k]],
                               "size": X.size}
                   for k, X in graph.sets.items()}
    doc["undirected"] = is_undirected(graph)
    I = i_multisets(graph)
    doc["i_multisets"] = {"I1": _multiset_doc(I.I1), "I2": _multiset_doc(I.I2), "I3": _multiset_doc(I.I3)}
    if include_table:
        doc["character_table"] = chartable_doc(tbl)
    evs = eigenvalues(graph, tbl)
    doc["eigenvalues"] = [_eigen_row(e) for e in evs]
    rep = None
    if command in ("degree", "integral", "verify"):
        rep = algebraic_degree(graph, tbl, options)
        doc["splitting"] = degree_doc(rep)
    if verify if verify is not None else spec.options.get("verify", False):
        doc["oracle"] = oracle_doc(graph, tbl, rep)
    if notes:
        doc["notes"] = notes
    return doc


# ---------------------------------------------------------------------------
# renderers


def render_structured(doc: Mapping) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False)


def _text_lines(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, Mapping):
        for k, v in obj.items():
            if isinstance(v, (Mapping, list)) and v and not _is_flat(v):
                lines.append(f"{pad}{k}:")
                lines += _text_lines(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, Mapping):
                inner = _text_lines(item, indent + 1)
                lines.append(f"{pad}- " + inner[0].lstrip())
                lines += inner[1:]
            else:
                lines.append(f"{pad}- {_flat(item)}")
    else:
        lines.append(pad + _flat(obj))
    return lines


def _is_flat(v) -> bool:
    if isinstance(v, Mapping):
        return False
    return all(not isinstance(x, (Mapping, list)) for x in v) or all(
        isinstance(x, list) and all(not isinstance(y, (Mapping, list)) for y in x) for x in v) and len(v) <= 12


def _flat(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, Mapping):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in v.items()) + "}"
    return str(v)


def render_text(doc: Mapping) -> str:
    return "\n".join(_text_lines(doc)) + "\n"


def render(doc: Mapping, fmt: str = "text") -> str:
    return render_structured(doc) + "\n" if fmt == "structured" else render_text(doc)
