"""Structured-text file formats for instances, splits, and witnesses.

An instance directory holds:
  graph.txt          layered edge list (see graphcore)
  params.txt         one "name value" pair per line, exact rationals
  decomposition.txt  sections H / E / cluster / spot, one entry per line;
                     spots use the single-line form
                     "spot: U=<ids> W=<ids> F=<u-v pairs>"
  matching_a.txt,    optional regularized matchings:
  matching_b.txt       header lines "eps/d/ell/layer <value>" then one
                       "ids | ids" line per pair
  split.txt          optional: "fractions <q0> <q1> ..." then "v class" lines

Witness files: "config <tag>" then "field = value" lines; vertex sets as
comma ids, families separated by ";", matchings as "pair|pair;..." with an
inline parameter suffix, edges as "u-v" pairs.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .configurations import ConfigParams, ConfigurationWitness
from .decomposition import BoundedDecomposition, Params, SparseDecomposition
from .graphcore import LayeredGraph, fmt_vertex_set, load_graph
from .regularity import RegularizedMatching
from .splitting import Split
from .spots import DenseCover, DenseSpot

PARAM_NAMES = ("k", "Lambda", "gamma", "eps", "eps_prime", "nu", "rho", "eta",
               "pi", "alpha_hat", "tau", "d", "omega_star", "omega_sstar", "b")


def parse_params(text: str) -> Params:
    kw = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        name, value = ln.split(None, 1)
        if name not in PARAM_NAMES:
            raise ValueError("unknown parameter %r" % name)
        kw[name] = int(value) if name == "k" else Fraction(value)
    return Params(**kw)


def dump_params(p: Params) -> str:
    lines = []
    for name in PARAM_NAMES:
        lines.append("%s %s" % (name, getattr(p, name)))
    return "\n".join(lines) + "\n"


def parse_spot_line(line: str, m=0, gamma=Fraction(1, 10**6)) -> DenseSpot:
    body = line.split(":", 1)[1]
    fields = {}
    for part in body.split():
        key, val = part.split("=", 1)
        fields[key] = val
    U = frozenset(int(x) for x in fields["U"].split(",") if x)
    W = frozenset(int(x) for x in fields["W"].split(",") if x)
    F = [tuple(int(v) for v in e.split("-")) for e in fields["F"].split(",") if e]
    return DenseSpot(U, W, F, m, gamma)


def dump_spot_line(s: DenseSpot) -> str:
    return "spot: U=%s W=%s F=%s" % (
        ",".join(str(v) for v in sorted(s.U)),
        ",".join(str(v) for v in sorted(s.W)),
        ",".join("%d-%d" % e for e in sorted(s.F)))


def parse_decomposition(text: str, g: LayeredGraph, p: Params,
                        reg_layer="G_reg", exp_layer="G_exp"
                        ) -> SparseDecomposition:
    H, E = set(), set()
    clusters = []
    spots = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        if ln.startswith("spot:"):
            spots.append(parse_spot_line(ln, p.gamma * p.k, p.gamma))
            continue
        if ln.startswith("section "):
            section = ln.split()[1]
            if section == "cluster":
                clusters.append(set())
            continue
        if section in ("H", "E"):
            (H if section == "H" else E).update(int(x) for x in ln.split())
        elif section == "cluster":
            clusters[-1].update(int(x) for x in ln.split())
        else:
            raise ValueError("line %d outside any section: %r" % (lineno, raw))
    bd = BoundedDecomposition([frozenset(c) for c in clusters],
                              DenseCover(spots), reg_layer, exp_layer,
                              frozenset(E), [g.vertices()])
    return SparseDecomposition(frozenset(H), bd)


def dump_decomposition(sd: SparseDecomposition) -> str:
    lines = ["section H"]
    lines += [str(v) for v in sorted(sd.H)]
    lines.append("section E")
    lines += [str(v) for v in sorted(sd.bd.E)]
    for C in sd.bd.clusters:
        lines.append("section cluster")
        lines += [str(v) for v in sorted(C)]
    for s in sd.bd.spots:
        lines.append(dump_spot_line(s))
    return "\n".join(lines) + "\n"


def parse_matching(text: str) -> RegularizedMatching:
    eps = d = Fraction(1, 2)
    ell = 1
    layer = "G"
    pairs = []
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        head = ln.split(None, 1)
        if head[0] in ("eps", "d", "ell"):
            val = Fraction(head[1])
            if head[0] == "eps":
                eps = val
            elif head[0] == "d":
                d = val
            else:
                ell = val
            continue
        if head[0] == "layer":
            layer = head[1]
            continue
        left, right = ln.split("|")
        pairs.append((frozenset(int(x) for x in left.replace(",", " ").split()),
                      frozenset(int(x) for x in right.replace(",", " ").split())))
    return RegularizedMatching(pairs, eps, d, ell, layer)


def dump_matching(m: RegularizedMatching) -> str:
    lines = ["eps %s" % m.eps, "d %s" % m.d, "ell %s" % m.ell,
             "layer %s" % m.layer]
    for a, b in m.pairs:
        lines.append("%s | %s" % (fmt_vertex_set(a), fmt_vertex_set(b)))
    return "\n".join(lines) + "\n"


def parse_split(text: str, target) -> Split:
    fractions = None
    assign = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        parts = ln.split()
        if parts[0] == "fractions":
            fractions = tuple(Fraction(x) for x in parts[1:])
            continue
        assign[int(parts[0])] = int(parts[1])
    if fractions is None:
        raise ValueError("split file missing 'fractions' header")
    p = len(fractions)
    classes = [set() for _ in range(p)]
    for v, c in assign.items():
        classes[c].add(v)
    return Split(frozenset(target), tuple(frozenset(c) for c in classes),
                 fractions, seed=0)


def dump_split(split: Split) -> str:
    head = "fractions " + " ".join(str(q) for q in split.fractions)
    return head + "\n" + split.dump()


# -- witness files ------------------------------------------------------


def _fmt_edges(edges) -> str:
    return ",".join("%d-%d" % e for e in sorted(edges))


def _parse_edges(text: str):
    return [tuple(int(v) for v in e.split("-")) for e in text.split(",") if e]


def _fmt_family(fam) -> str:
    return ";".join(",".join(str(v) for v in sorted(x)) for x in fam)


def _parse_family(text: str):
    out = []
    for part in text.split(";"):
        part = part.strip()
        if part:
            out.append(frozenset(int(v) for v in part.split(",")))
    return tuple(out)


def _fmt_pairs(pairs) -> str:
    return ";".join("%s|%s" % (",".join(str(v) for v in sorted(a)),
                               ",".join(str(v) for v in sorted(b)))
                    for a, b in pairs)


def _parse_pairs(text: str):
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        left, right = part.split("|")
        out.append((frozenset(int(v) for v in left.split(",") if v),
                    frozenset(int(v) for v in right.split(",") if v)))
    return tuple(out)


SET_FIELDS = {"V0", "V1", "V2", "V3", "V4", "A", "B", "H1", "H2", "L1", "L2",
              "E1"}
FAMILY_FIELDS = {"F", "Lstar", "ensemble"}
PAIR_FIELDS = {"pairs"}
EDGE_FIELDS = {"F_edges", "Gt_edges"}
MATCHING_FIELDS = {"N", "M"}
STR_FIELDS = {"precfg"}
INT_FIELDS = {"heart"}


def parse_witness(text: str) -> ConfigurationWitness:
    tag = None
    data = {}
    params = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        if ln.startswith("config "):
            tag = ln.split(None, 1)[1].strip()
            continue
        if ln.startswith("param "):
            name, val = ln[6:].split("=", 1)
            params[name.strip()] = _parse_param_value(val.strip())
            continue
        name, val = (x.strip() for x in ln.split("=", 1))
        if name in SET_FIELDS:
            data[name] = frozenset(int(v) for v in val.replace(",", " ").split())
        elif name == "F" and tag == "D1":
            data[name] = _parse_edges(val)
        elif name in EDGE_FIELDS:
            data["Gt_edges" if name == "Gt_edges" else name] = _parse_edges(val)
        elif name in FAMILY_FIELDS:
            data[name] = _parse_family(val)
        elif name in PAIR_FIELDS:
            data[name] = _parse_pairs(val)
        elif name in MATCHING_FIELDS:
            body, _, suffix = val.partition("@")
            pairs = _parse_pairs(body)
            kw = {"eps": Fraction(1, 2), "d": Fraction(0), "ell": 0,
                  "layer": "G"}
            for tokenpair in suffix.split():
                kname, kval = tokenpair.split("=")
                kw[kname] = kval if kname == "layer" else Fraction(kval)
            data[name] = RegularizedMatching(pairs, kw["eps"], kw["d"],
                                             kw["ell"], kw["layer"])
        elif name in STR_FIELDS:
            data[name] = val
        elif name in INT_FIELDS:
            data[name] = int(val)
        else:
            raise ValueError("unknown witness field %r" % name)
    if tag is None:
        raise ValueError("witness file missing 'config <tag>' line")
    w = ConfigurationWitness(tag, data)
    w.params = ConfigParams(**params) if params else None
    return w


def _parse_param_value(text: str):
    """Rational, or "c * x^(1/n)" for an exact root value."""
    from .exactmath import RootVal

    if "^(1/" in text:
        coef_part, root_part = (x.strip() for x in text.split("*", 1))
        base, deg = root_part.split("^(1/")
        return RootVal(Fraction(coef_part), Fraction(base),
                       int(deg.rstrip(")")))
    return Fraction(text)


def _fmt_param_value(v) -> str:
    from .exactmath import RootVal

    if isinstance(v, RootVal):
        if v.degree == 1:
            return str(v.coef)
        return "%s * %s^(1/%d)" % (v.coef, v.radicand, v.degree)
    return str(v)


def dump_witness(w: ConfigurationWitness, cp=None) -> str:
    lines = ["config %s" % w.tag]
    for name in sorted(w.data):
        val = w.data[name]
        if name == "F" and w.tag == "D1":
            lines.append("F = %s" % _fmt_edges(val))
        elif name in SET_FIELDS:
            lines.append("%s = %s" % (name, fmt_vertex_set(val)))
        elif name in EDGE_FIELDS:
            lines.append("%s = %s" % (name, _fmt_edges(val)))
        elif name in FAMILY_FIELDS:
            lines.append("%s = %s" % (name, _fmt_family(val)))
        elif name in PAIR_FIELDS:
            lines.append("%s = %s" % (name, _fmt_pairs(val)))
        elif name in MATCHING_FIELDS:
            m = val
            lines.append("%s = %s @ eps=%s d=%s ell=%s layer=%s" % (
                name, _fmt_pairs(m.pairs), m.eps, m.d, m.ell, m.layer))
        else:
            lines.append("%s = %s" % (name, val))
    if cp is not None:
        for f in cp.__dataclass_fields__:
            v = getattr(cp, f)
            if v is not None:
                lines.append("param %s = %s" % (f, _fmt_param_value(v)))
    return "\n".join(lines) + "\n"


def load_instance_dir(path) -> tuple:
    """Read (graph, params, sd, MA, MB, split-or-None) from a directory."""
    path = Path(path)
    g = load_graph((path / "graph.txt").read_text())
    p = parse_params((path / "params.txt").read_text())
    dec_file = path / "decomposition.txt"
    sd = parse_decomposition(dec_file.read_text(), g, p) if dec_file.exists() \
        else SparseDecomposition(frozenset(), BoundedDecomposition(
            [], DenseCover([]), "G_reg", "G_exp", frozenset(), [g.vertices()]))
    for name in ("G_reg", "G_exp"):
        if not g.has_layer(name):
            g = g.with_layer(name, [])
    ma_file = path / "matching_a.txt"
    mb_file = path / "matching_b.txt"
    MA = parse_matching(ma_file.read_text()) if ma_file.exists() else \
        RegularizedMatching([], Fraction(1, 2), Fraction(0), 0)
    MB = parse_matching(mb_file.read_text()) if mb_file.exists() else \
        RegularizedMatching([], Fraction(1, 2), Fraction(0), 0)
    split_file = path / "split.txt"
    split = parse_split(split_file.read_text(), g.vertices() - sd.H) \
        if split_file.exists() else None
    return g, p, sd, MA, MB, split
